#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "helixkit/jet.hpp"

namespace helixkit {

/// One node of an expression tree. Nodes are immutable and shared, so
/// copying an Expression is cheap and thread-safe.
struct ExprNode {
    enum class Op {
        kNumber,
        kPi,
        kE,
        kParam,
        kNeg,
        kAdd,
        kSub,
        kMul,
        kDiv,
        kPow,
        kSin,
        kCos,
        kTan,
        kExp,
        kLog,
        kSqrt,
        kSinh,
        kCosh,
    };

    Op op;
    double number = 0.0;
    std::shared_ptr<const ExprNode> a;
    std::shared_ptr<const ExprNode> b;
    bool has_param = false;
};

/// A closed-form scalar function of one parameter, e.g. "2*cos(t) + t^2".
///
/// Supported pieces: the parameter symbol, decimal/scientific literals, the
/// constants pi and e, binary + - * / ^ (exponent restricted to constant
/// subexpressions), unary negation, and sin cos tan exp log sqrt sinh cosh.
class Expression {
public:
    Expression() = default;

    /// Parses source text; any identifier other than `parameter`, the named
    /// constants, and the function names is a ParseError.
    static Expression parse(std::string_view source, std::string_view parameter = "t");

    /// Plain value evaluation. Shares the jet path's domain rules.
    double value(double t) const;

    /// Value plus derivatives up to `order` at t.
    Jet jets(double t, int order) const;

    /// Evaluation on an arbitrary jet standing in for the parameter.
    Jet eval(const Jet& parameter_jet) const;

    /// Deterministic text form; parse(str()) rebuilds an identical tree.
    std::string str() const;

    bool identical_to(const Expression& other) const;

    bool valid() const { return root_ != nullptr; }
    const std::string& parameter() const { return param_; }
    const std::shared_ptr<const ExprNode>& root() const { return root_; }

    Expression(std::shared_ptr<const ExprNode> root, std::string parameter)
        : root_(std::move(root)), param_(std::move(parameter)) {}

private:
    std::shared_ptr<const ExprNode> root_;
    std::string param_ = "t";
};

}  // namespace helixkit

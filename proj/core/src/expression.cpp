#include "helixkit/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "expr_parser.hpp"
#include "helixkit/errors.hpp"

namespace helixkit {

namespace detail {

void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.column);
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](TokKind k, std::string text, double num = 0.0) {
        out.push_back(Token{k, num, std::move(text), line, col});
    };
    while (i < src.size()) {
        const char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        const int tok_line = line, tok_col = col;
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && i + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    ++k;
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            const std::string text(src.substr(i, j - i));
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (end != text.c_str() + text.size())
                throw ParseError("malformed number literal '" + text + "'", tok_line, tok_col);
            out.push_back(Token{TokKind::kNumber, v, text, tok_line, tok_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                      src[j] == '_'))
                ++j;
            out.push_back(Token{TokKind::kIdent, 0.0, std::string(src.substr(i, j - i)),
                                tok_line, tok_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        TokKind kind;
        switch (ch) {
            case '+': kind = TokKind::kPlus; break;
            case '-': kind = TokKind::kMinus; break;
            case '*': kind = TokKind::kStar; break;
            case '/': kind = TokKind::kSlash; break;
            case '^': kind = TokKind::kCaret; break;
            case '(': kind = TokKind::kLParen; break;
            case ')': kind = TokKind::kRParen; break;
            case '[': kind = TokKind::kLBracket; break;
            case ']': kind = TokKind::kRBracket; break;
            case ',': kind = TokKind::kComma; break;
            case ';': kind = TokKind::kSemicolon; break;
            case ':': kind = TokKind::kColon; break;
            case '=': kind = TokKind::kEquals; break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", tok_line,
                                 tok_col);
        }
        push(kind, std::string(1, ch));
        ++col;
        ++i;
    }
    out.push_back(Token{TokKind::kEnd, 0.0, "<end>", line, col});
    return out;
}

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using Op = ExprNode::Op;

NodePtr make_leaf(Op op, double number, bool has_param) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->number = number;
    n->has_param = has_param;
    return n;
}

NodePtr make_node(Op op, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->has_param = (a && a->has_param) || (b && b->has_param);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool function_op(const std::string& name, Op& op) {
    if (name == "sin") op = Op::kSin;
    else if (name == "cos") op = Op::kCos;
    else if (name == "tan") op = Op::kTan;
    else if (name == "exp") op = Op::kExp;
    else if (name == "log") op = Op::kLog;
    else if (name == "sqrt") op = Op::kSqrt;
    else if (name == "sinh") op = Op::kSinh;
    else if (name == "cosh") op = Op::kCosh;
    else return false;
    return true;
}

NodePtr parse_sum(TokenStream& ts, const std::string& param);

NodePtr parse_atom(TokenStream& ts, const std::string& param) {
    const Token& t = ts.peek();
    switch (t.kind) {
        case TokKind::kNumber: {
            ts.next();
            return make_leaf(Op::kNumber, t.number, false);
        }
        case TokKind::kIdent: {
            ts.next();
            Op fop;
            if (t.text == param) return make_leaf(Op::kParam, 0.0, true);
            if (t.text == "pi") return make_leaf(Op::kPi, std::numbers::pi, false);
            if (t.text == "e") return make_leaf(Op::kE, std::numbers::e, false);
            if (function_op(t.text, fop)) {
                if (ts.peek().kind != TokKind::kLParen)
                    fail("expected '(' after function '" + t.text + "'", ts.peek());
                ts.next();
                NodePtr arg = parse_sum(ts, param);
                if (ts.peek().kind != TokKind::kRParen)
                    fail("expected ')' to close call of '" + t.text + "'", ts.peek());
                ts.next();
                return make_node(fop, std::move(arg));
            }
            fail("unknown identifier '" + t.text + "'", t);
        }
        case TokKind::kLParen: {
            ts.next();
            NodePtr inner = parse_sum(ts, param);
            if (ts.peek().kind != TokKind::kRParen) fail("expected ')'", ts.peek());
            ts.next();
            return inner;
        }
        default:
            fail("expected a number, identifier, or '('", t);
    }
}

NodePtr parse_power(TokenStream& ts, const std::string& param);

// Exponent position: unary minus allowed, chain stays right-associative.
NodePtr parse_exponent(TokenStream& ts, const std::string& param) {
    if (ts.peek().kind == TokKind::kMinus) {
        ts.next();
        return make_node(Op::kNeg, parse_exponent(ts, param));
    }
    return parse_power(ts, param);
}

NodePtr parse_power(TokenStream& ts, const std::string& param) {
    NodePtr base = parse_atom(ts, param);
    if (ts.peek().kind == TokKind::kCaret) {
        const Token caret = ts.peek();
        ts.next();
        NodePtr expo = parse_exponent(ts, param);
        if (expo->has_param)
            fail("exponent must be a constant expression (contains '" + param + "')", caret);
        return make_node(Op::kPow, std::move(base), std::move(expo));
    }
    return base;
}

NodePtr parse_factor(TokenStream& ts, const std::string& param) {
    if (ts.peek().kind == TokKind::kMinus) {
        ts.next();
        return make_node(Op::kNeg, parse_factor(ts, param));
    }
    return parse_power(ts, param);
}

NodePtr parse_term(TokenStream& ts, const std::string& param) {
    NodePtr lhs = parse_factor(ts, param);
    while (ts.peek().kind == TokKind::kStar || ts.peek().kind == TokKind::kSlash) {
        const bool mul = ts.peek().kind == TokKind::kStar;
        ts.next();
        lhs = make_node(mul ? Op::kMul : Op::kDiv, std::move(lhs), parse_factor(ts, param));
    }
    return lhs;
}

NodePtr parse_sum(TokenStream& ts, const std::string& param) {
    NodePtr lhs = parse_term(ts, param);
    while (ts.peek().kind == TokKind::kPlus || ts.peek().kind == TokKind::kMinus) {
        const bool add = ts.peek().kind == TokKind::kPlus;
        ts.next();
        lhs = make_node(add ? Op::kAdd : Op::kSub, std::move(lhs), parse_term(ts, param));
    }
    return lhs;
}

}  // namespace

std::shared_ptr<const ExprNode> parse_expression(TokenStream& ts, const std::string& parameter) {
    return parse_sum(ts, parameter);
}

}  // namespace detail

namespace {

using Op = ExprNode::Op;

double eval_value_node(const ExprNode* n, double t) {
    switch (n->op) {
        case Op::kNumber:
        case Op::kPi:
        case Op::kE: return n->number;
        case Op::kParam: return t;
        case Op::kNeg: return -eval_value_node(n->a.get(), t);
        case Op::kAdd: return eval_value_node(n->a.get(), t) + eval_value_node(n->b.get(), t);
        case Op::kSub: return eval_value_node(n->a.get(), t) - eval_value_node(n->b.get(), t);
        case Op::kMul: return eval_value_node(n->a.get(), t) * eval_value_node(n->b.get(), t);
        case Op::kDiv: {
            const double d = eval_value_node(n->b.get(), t);
            if (d == 0.0) throw DomainError("division by zero while evaluating expression");
            return eval_value_node(n->a.get(), t) / d;
        }
        case Op::kPow: {
            const double base = eval_value_node(n->a.get(), t);
            const double expo = eval_value_node(n->b.get(), t);
            const double rounded = std::nearbyint(expo);
            const bool integral = std::abs(expo - rounded) <= 1e-9;
            if (!integral && base <= 0.0)
                throw DomainError("pow: fractional exponent requires a positive base value");
            if (integral && rounded < 0.0 && base == 0.0)
                throw DomainError("pow: negative exponent with zero base value");
            return std::pow(base, integral ? rounded : expo);
        }
        case Op::kSin: return std::sin(eval_value_node(n->a.get(), t));
        case Op::kCos: return std::cos(eval_value_node(n->a.get(), t));
        case Op::kTan: return std::tan(eval_value_node(n->a.get(), t));
        case Op::kExp: return std::exp(eval_value_node(n->a.get(), t));
        case Op::kLog: {
            const double v = eval_value_node(n->a.get(), t);
            if (v <= 0.0) throw DomainError("log of nonpositive value");
            return std::log(v);
        }
        case Op::kSqrt: {
            const double v = eval_value_node(n->a.get(), t);
            if (v < 0.0) throw DomainError("sqrt of negative value");
            return std::sqrt(v);
        }
        case Op::kSinh: return std::sinh(eval_value_node(n->a.get(), t));
        case Op::kCosh: return std::cosh(eval_value_node(n->a.get(), t));
    }
    throw Error("unreachable expression op");
}

Jet eval_jet_node(const ExprNode* n, const Jet& tj) {
    switch (n->op) {
        case Op::kNumber:
        case Op::kPi:
        case Op::kE: return Jet::constant(n->number, tj.order());
        case Op::kParam: return tj;
        case Op::kNeg: return -eval_jet_node(n->a.get(), tj);
        case Op::kAdd: return eval_jet_node(n->a.get(), tj) + eval_jet_node(n->b.get(), tj);
        case Op::kSub: return eval_jet_node(n->a.get(), tj) - eval_jet_node(n->b.get(), tj);
        case Op::kMul: return eval_jet_node(n->a.get(), tj) * eval_jet_node(n->b.get(), tj);
        case Op::kDiv: return eval_jet_node(n->a.get(), tj) / eval_jet_node(n->b.get(), tj);
        case Op::kPow: {
            // The parser guarantees a constant exponent.
            const double expo = eval_value_node(n->b.get(), 0.0);
            return pow(eval_jet_node(n->a.get(), tj), expo);
        }
        case Op::kSin: return sin(eval_jet_node(n->a.get(), tj));
        case Op::kCos: return cos(eval_jet_node(n->a.get(), tj));
        case Op::kTan: return tan(eval_jet_node(n->a.get(), tj));
        case Op::kExp: return exp(eval_jet_node(n->a.get(), tj));
        case Op::kLog: return log(eval_jet_node(n->a.get(), tj));
        case Op::kSqrt: return sqrt(eval_jet_node(n->a.get(), tj));
        case Op::kSinh: return sinh(eval_jet_node(n->a.get(), tj));
        case Op::kCosh: return cosh(eval_jet_node(n->a.get(), tj));
    }
    throw Error("unreachable expression op");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Precedence levels: sum 1, product 2, unary minus 3, power 4, atom 5.
int node_prec(const ExprNode* n) {
    switch (n->op) {
        case Op::kAdd:
        case Op::kSub: return 1;
        case Op::kMul:
        case Op::kDiv: return 2;
        case Op::kNeg: return 3;
        case Op::kPow: return 4;
        default: return 5;
    }
}

void print_node(const ExprNode* n, const std::string& param, int min_prec, std::string& out) {
    const int prec = node_prec(n);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (n->op) {
        case Op::kNumber: out += format_number(n->number); break;
        case Op::kPi: out += "pi"; break;
        case Op::kE: out += "e"; break;
        case Op::kParam: out += param; break;
        case Op::kNeg:
            out += '-';
            print_node(n->a.get(), param, 3, out);
            break;
        case Op::kAdd:
        case Op::kSub:
            print_node(n->a.get(), param, 1, out);
            out += n->op == Op::kAdd ? " + " : " - ";
            print_node(n->b.get(), param, 2, out);
            break;
        case Op::kMul:
        case Op::kDiv:
            print_node(n->a.get(), param, 2, out);
            out += n->op == Op::kMul ? "*" : "/";
            print_node(n->b.get(), param, 3, out);
            break;
        case Op::kPow:
            print_node(n->a.get(), param, 5, out);
            out += '^';
            print_node(n->b.get(), param, 4, out);
            break;
        case Op::kSin: out += "sin("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kCos: out += "cos("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kTan: out += "tan("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kExp: out += "exp("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kLog: out += "log("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kSqrt: out += "sqrt("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kSinh: out += "sinh("; print_node(n->a.get(), param, 0, out); out += ')'; break;
        case Op::kCosh: out += "cosh("; print_node(n->a.get(), param, 0, out); out += ')'; break;
    }
    if (parens) out += ')';
}

bool nodes_identical(const ExprNode* x, const ExprNode* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->op != y->op) return false;
    if (x->op == Op::kNumber && x->number != y->number) return false;
    return nodes_identical(x->a.get(), y->a.get()) && nodes_identical(x->b.get(), y->b.get());
}

}  // namespace

Expression Expression::parse(std::string_view source, std::string_view parameter) {
    detail::TokenStream ts(detail::lex(source));
    auto root = detail::parse_expression(ts, std::string(parameter));
    if (!ts.at_end()) detail::fail("unexpected trailing input", ts.peek());
    return Expression(std::move(root), std::string(parameter));
}

double Expression::value(double t) const {
    if (!root_) throw ValidationError("evaluating an empty expression");
    return eval_value_node(root_.get(), t);
}

Jet Expression::jets(double t, int order) const {
    return eval(Jet::variable(t, order));
}

Jet Expression::eval(const Jet& parameter_jet) const {
    if (!root_) throw ValidationError("evaluating an empty expression");
    return eval_jet_node(root_.get(), parameter_jet);
}

std::string Expression::str() const {
    if (!root_) return "";
    std::string out;
    print_node(root_.get(), param_, 0, out);
    return out;
}

bool Expression::identical_to(const Expression& other) const {
    return param_ == other.param_ && nodes_identical(root_.get(), other.root_.get());
}

}  // namespace helixkit

#pragma once

// Internal lexer/parser shared by the expression and curve-grammar front ends.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "helixkit/expression.hpp"

namespace helixkit::detail {

enum class TokKind {
    kNumber,
    kIdent,
    kPlus,
    kMinus,
    kStar,
    kSlash,
    kCaret,
    kLParen,
    kRParen,
    kLBracket,
    kRBracket,
    kComma,
    kSemicolon,
    kColon,
    kEquals,
    kEnd,
};

struct Token {
    TokKind kind;
    double number = 0.0;
    std::string text;
    int line = 1;
    int column = 1;
};

std::vector<Token> lex(std::string_view source);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == TokKind::kEnd; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

/// Parses one expression from the stream; stops at the first token that
/// cannot extend it (';', ':', ']', ',', ')', end).
std::shared_ptr<const ExprNode> parse_expression(TokenStream& ts, const std::string& parameter);

[[noreturn]] void fail(const std::string& message, const Token& at);

}  // namespace helixkit::detail

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chtw/dsl.hpp"

namespace chtw::dsl::detail {

enum class TokenKind { Ident, Number, String, LBrace, RBrace, LBracket, RBracket, Semicolon, Comma, Colon, Arrow, End, Invalid };

struct Token {
  TokenKind kind;
  std::string text;  // identifier, number spelling, unescaped string, or offending character
  SourceLocation location;
};

std::vector<Token> lex(std::string_view text);

std::string_view describe(TokenKind kind);

}  // namespace chtw::dsl::detail

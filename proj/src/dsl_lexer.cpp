#include "dsl_lexer.hpp"

#include <cctype>

namespace chtw::dsl::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      const SourceLocation at{line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back({TokenKind::End, "", at});
        return out;
      }
      const char c = text_[pos_];
      if (ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
        out.push_back({TokenKind::Ident, std::string(text_.substr(start, pos_ - start)), at});
      } else if (c == '-' && peek(1) == '>') {
        advance();
        advance();
        out.push_back({TokenKind::Arrow, "->", at});
      } else if (digit(c) || c == '.' || ((c == '-' || c == '+') && (digit(peek(1)) || peek(1) == '.'))) {
        out.push_back({TokenKind::Number, number(), at});
      } else if (c == '"') {
        out.push_back(string(at));
      } else {
        advance();
        out.push_back({punct(c), std::string(1, c), at});
      }
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;  // count UTF-8 code points, not bytes
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string number() {
    const std::size_t start = pos_;
    if (text_[pos_] == '-' || text_[pos_] == '+') advance();
    while (pos_ < text_.size() && digit(text_[pos_])) advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      while (pos_ < text_.size() && digit(text_[pos_])) advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const char next = peek(1);
      if (digit(next) || ((next == '-' || next == '+') && digit(peek(2)))) {
        advance();
        if (text_[pos_] == '-' || text_[pos_] == '+') advance();
        while (pos_ < text_.size() && digit(text_[pos_])) advance();
      }
    }
    // A number glued to letters (e.g. "3x") is one malformed token.
    while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  Token string(SourceLocation at) {
    advance();
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
      if (text_[pos_] == '\\' && (peek(1) == '"' || peek(1) == '\\')) advance();
      value.push_back(text_[pos_]);
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != '"') return {TokenKind::Invalid, "unterminated string", at};
    advance();
    return {TokenKind::String, value, at};
  }

  static TokenKind punct(char c) {
    switch (c) {
      case '{': return TokenKind::LBrace;
      case '}': return TokenKind::RBrace;
      case '[': return TokenKind::LBracket;
      case ']': return TokenKind::RBracket;
      case ';': return TokenKind::Semicolon;
      case ',': return TokenKind::Comma;
      case ':': return TokenKind::Colon;
      default: return TokenKind::Invalid;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Colon: return "':'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::End: return "end of input";
    case TokenKind::Invalid: return "invalid character";
  }
  return "token";
}

}  // namespace chtw::dsl::detail

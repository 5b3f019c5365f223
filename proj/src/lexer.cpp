#include "contextml/lexer.hpp"

#include <array>
#include <cctype>

namespace contextml {

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {
    "fun", "let", "in", "if", "then", "else", "with", "requires", "int", "ly"};

bool is_keyword(std::string_view text) {
  for (auto kw : kKeywords) {
    if (text == kw) return true;
  }
  return false;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c));
}

bool is_ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Byte length of the UTF-8 sequence starting at c, for error spans.
std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) return 2;
  if ((c & 0xF0) == 0xE0) return 3;
  if ((c & 0xF8) == 0xF0) return 4;
  return 1;
}

class Cursor {
 public:
  explicit Cursor(std::string_view source) : source_(source) {}

  bool done() const { return pos_ >= source_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < source_.size() ? source_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (source_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  std::uint32_t line() const { return line_; }
  std::uint32_t col() const { return col_; }
  std::string_view slice(std::size_t from) const {
    return source_.substr(from, pos_ - from);
  }

 private:
  std::string_view source_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

TokenizeResult tokenize(std::string_view source) {
  TokenizeResult result;
  Cursor cur(source);

  auto push = [&](TokenKind kind, std::size_t from, Span span) {
    result.tokens.push_back(Token{kind, std::string(cur.slice(from)), span});
  };

  while (!cur.done()) {
    const char c = cur.peek();

    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }
    if (c == '-' && cur.peek(1) == '-') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }

    const std::size_t from = cur.pos();
    Span span{cur.line(), cur.col(), cur.line(), cur.col()};

    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        cur.advance();
      span.end_line = cur.line();
      span.end_col = cur.col();
      push(TokenKind::Number, from, span);
      continue;
    }

    if (is_ident_start(c)) {
      while (!cur.done() && is_ident_tail(cur.peek())) cur.advance();
      span.end_line = cur.line();
      span.end_col = cur.col();
      const std::string_view text = cur.slice(from);
      TokenKind kind = TokenKind::LowerIdent;
      if (is_keyword(text)) {
        kind = TokenKind::Keyword;
      } else if (std::isupper(static_cast<unsigned char>(text[0]))) {
        kind = TokenKind::UpperIdent;
      }
      push(kind, from, span);
      continue;
    }

    // Multi-character symbols first: => -> -[ ]->
    std::size_t symbol_len = 0;
    switch (c) {
      case '=':
        symbol_len = cur.peek(1) == '>' ? 2 : 1;
        break;
      case '-':
        if (cur.peek(1) == '[') symbol_len = 2;
        else if (cur.peek(1) == '>') symbol_len = 2;
        else symbol_len = 1;
        break;
      case ']':
        symbol_len = (cur.peek(1) == '-' && cur.peek(2) == '>') ? 3 : 1;
        break;
      case '(': case ')': case '{': case '}': case ',': case '.': case ':':
      case '+': case '*': case '/': case '<': case '>':
        symbol_len = 1;
        break;
      default:
        symbol_len = 0;
        break;
    }

    if (symbol_len > 0) {
      for (std::size_t i = 0; i < symbol_len; ++i) cur.advance();
      span.end_line = cur.line();
      span.end_col = cur.col();
      push(TokenKind::Symbol, from, span);
      continue;
    }

    const std::size_t bad_len = utf8_len(static_cast<unsigned char>(c));
    for (std::size_t i = 0; i < bad_len && !cur.done(); ++i) cur.advance();
    span.end_line = cur.line();
    span.end_col = cur.col();
    result.diagnostics.push_back(Diagnostic{
        std::string(diag_code::parse_bad_char),
        "unrecognized character '" + std::string(cur.slice(from)) + "'", span,
        std::nullopt, std::nullopt});
    return result;
  }

  Span eof_span{cur.line(), cur.col(), cur.line(), cur.col()};
  result.tokens.push_back(Token{TokenKind::Eof, "", eof_span});
  return result;
}

}  // namespace contextml

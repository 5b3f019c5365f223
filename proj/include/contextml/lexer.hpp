#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "contextml/diagnostics.hpp"

namespace contextml {

enum class TokenKind { Keyword, Number, LowerIdent, UpperIdent, Symbol, Eof };

/// Keywords: fun let in if then else with requires int ly.
/// Symbols: ( ) { } , . : => -> -[ ]-> + - * / = < >
struct Token {
  TokenKind kind;
  std::string text;
  Span span;

  bool is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_symbol(std::string_view t) const { return is(TokenKind::Symbol, t); }
};

struct TokenizeResult {
  std::vector<Token> tokens;  // ends with an Eof token on success
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

/// Longest-match lexing. `--` starts a comment running to end of line.
/// An unrecognized character produces a PARSE001 diagnostic at its span.
TokenizeResult tokenize(std::string_view source);

}  // namespace contextml

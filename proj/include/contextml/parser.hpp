#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "contextml/ast.hpp"
#include "contextml/diagnostics.hpp"

namespace contextml {

struct ParseResult {
  ExprPtr expr;  // null on failure
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return expr != nullptr; }
};

/// Parses a complete source text into an expression.
///
/// Grammar (precedence low to high): lambda/let/if/with extend to the right;
/// comparison over additive over multiplicative, all left-associative;
/// application by juxtaposition; atoms are literals, variables,
/// parenthesized expressions, and brace-delimited layered expressions.
ParseResult parse(std::string_view source);

/// Parses a type in the surface syntax ("int", "ly {A}",
/// "int -[{L1}]-> int"; "->" is sugar for "-[{}]->").
struct ParseTypeResult {
  TypePtr type;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return type != nullptr; }
};
ParseTypeResult parse_type(std::string_view source);

/// One interactive input: either a session binding `let x = e` (no `in`) or
/// a bare expression. `binder` is set for the binding form.
struct ReplInput {
  std::optional<Ident> binder;
  ExprPtr expr;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return expr != nullptr; }
};
ReplInput parse_repl_input(std::string_view source);

}  // namespace contextml

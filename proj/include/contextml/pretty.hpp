#pragma once

#include <string>

#include "contextml/ast.hpp"

namespace contextml {

/// Renders an expression in the surface syntax with minimal parentheses.
/// Re-parsing the output yields a structurally equal expression.
std::string pretty(const Expr& e);
inline std::string pretty(const ExprPtr& e) { return pretty(*e); }

}  // namespace contextml

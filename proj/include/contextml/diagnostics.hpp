#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contextml {

/// Half-open source range, 1-based lines and columns. `end_col` points one
/// past the last character on `end_line`. Columns count bytes.
struct Span {
  std::uint32_t line = 1;
  std::uint32_t col = 1;
  std::uint32_t end_line = 1;
  std::uint32_t end_col = 1;

  static Span join(const Span& from, const Span& to) {
    return Span{from.line, from.col, to.end_line, to.end_col};
  }

  bool operator==(const Span&) const = default;
};

/// Stable machine-readable diagnostic codes. Codes never change meaning
/// across releases; new conditions get new codes.
namespace diag_code {
inline constexpr std::string_view parse_bad_char = "PARSE001";
inline constexpr std::string_view parse_number_overflow = "PARSE002";
inline constexpr std::string_view parse_unexpected = "PARSE003";
inline constexpr std::string_view parse_trailing = "PARSE004";

inline constexpr std::string_view type_unbound = "TYPE_UNBOUND";
inline constexpr std::string_view type_mismatch = "TYPE_MISMATCH";
inline constexpr std::string_view type_precond = "TYPE_PRECOND";
inline constexpr std::string_view type_dispatch = "TYPE_DISPATCH";
inline constexpr std::string_view type_needannot = "TYPE_NEEDANNOT";
inline constexpr std::string_view type_emptylayerset = "TYPE_EMPTYLAYERSET";
inline constexpr std::string_view type_join = "TYPE_JOIN";
inline constexpr std::string_view type_meet = "TYPE_MEET";
inline constexpr std::string_view type_depth = "TYPE_DEPTH";

inline constexpr std::string_view runtime_dispatch = "RUNTIME_DISPATCH";
inline constexpr std::string_view runtime_divzero = "RUNTIME_DIVZERO";
inline constexpr std::string_view runtime_illformed = "RUNTIME_ILLFORMED";
}  // namespace diag_code

/// A structured error. All diagnostics are errors; `code` is machine-stable.
struct Diagnostic {
  std::string code;
  std::string message;
  Span span;
  std::optional<std::string> expected;
  std::optional<std::string> found;

  /// "TYPE_PRECOND at 3:5-3:9: message (expected: ..., found: ...)"
  std::string render() const;

  /// {"code", "message", "line", "col", "end_line", "end_col",
  ///  "expected"?, "found"?}
  std::string to_json() const;
};

std::string diagnostics_to_json(const std::vector<Diagnostic>& diags);

}  // namespace contextml

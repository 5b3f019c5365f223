#include "contextml/diagnostics.hpp"

#include <sstream>

#include "json.hpp"

namespace contextml {

std::string Diagnostic::render() const {
  std::ostringstream out;
  out << code << " at " << span.line << ':' << span.col << '-' << span.end_line
      << ':' << span.end_col << ": " << message;
  if (expected || found) {
    out << " (";
    if (expected) out << "expected: " << *expected;
    if (expected && found) out << ", ";
    if (found) out << "found: " << *found;
    out << ')';
  }
  return out.str();
}

namespace {

nlohmann::json diagnostic_json(const Diagnostic& d) {
  nlohmann::json j{{"code", d.code},          {"message", d.message},
                   {"line", d.span.line},     {"col", d.span.col},
                   {"end_line", d.span.end_line}, {"end_col", d.span.end_col}};
  if (d.expected) j["expected"] = *d.expected;
  if (d.found) j["found"] = *d.found;
  return j;
}

}  // namespace

std::string Diagnostic::to_json() const { return diagnostic_json(*this).dump(); }

std::string diagnostics_to_json(const std::vector<Diagnostic>& diags) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : diags) arr.push_back(diagnostic_json(d));
  return arr.dump();
}

}  // namespace contextml

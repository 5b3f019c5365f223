#include "contextml/names.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace contextml {

namespace {

bool is_ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

LayerName::LayerName(std::string text) : text_(std::move(text)) {
  if (!is_valid(text_)) {
    throw std::invalid_argument("not a layer name: '" + text_ + "'");
  }
}

bool LayerName::is_valid(std::string_view text) {
  if (text.empty() || !std::isupper(static_cast<unsigned char>(text[0]))) {
    return false;
  }
  return std::all_of(text.begin() + 1, text.end(), is_ident_tail);
}

std::optional<LayerName> LayerName::parse(std::string_view text) {
  if (!is_valid(text)) return std::nullopt;
  return LayerName(std::string(text));
}

Ident::Ident(std::string text) : text_(std::move(text)) {
  if (!is_valid(text_)) {
    throw std::invalid_argument("not an identifier: '" + text_ + "'");
  }
}

bool Ident::is_valid(std::string_view text) {
  if (text.empty() || !std::islower(static_cast<unsigned char>(text[0]))) {
    return false;
  }
  return std::all_of(text.begin() + 1, text.end(), is_ident_tail);
}

std::optional<Ident> Ident::parse(std::string_view text) {
  if (!is_valid(text)) return std::nullopt;
  return Ident(std::string(text));
}

LayerSet::LayerSet(std::initializer_list<LayerName> names)
    : names_(names.begin(), names.end()) {}

LayerSet LayerSet::united(const LayerSet& other) const {
  std::set<LayerName> result = names_;
  result.insert(other.names_.begin(), other.names_.end());
  return LayerSet(std::move(result));
}

LayerSet LayerSet::intersected(const LayerSet& other) const {
  std::set<LayerName> result;
  for (const auto& name : names_) {
    if (other.contains(name)) result.insert(name);
  }
  return LayerSet(std::move(result));
}

bool LayerSet::is_subset_of(const LayerSet& other) const {
  return std::all_of(names_.begin(), names_.end(),
                     [&](const LayerName& n) { return other.contains(n); });
}

std::vector<LayerName> LayerSet::missing_from(const LayerSet& other) const {
  std::vector<LayerName> missing;
  for (const auto& name : names_) {
    if (!other.contains(name)) missing.push_back(name);
  }
  return missing;
}

std::string LayerSet::str() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& name : names_) {
    if (!first) out << ", ";
    out << name.str();
    first = false;
  }
  out << '}';
  return out.str();
}

Context Context::pushed(const LayerName& layer) const {
  std::vector<LayerName> stack;
  stack.reserve(stack_.size() + 1);
  stack.push_back(layer);
  stack.insert(stack.end(), stack_.begin(), stack_.end());
  return Context(std::move(stack));
}

std::optional<Context> Context::popped() const {
  if (stack_.empty()) return std::nullopt;
  return Context(std::vector<LayerName>(stack_.begin() + 1, stack_.end()));
}

std::string Context::str() const {
  std::ostringstream out;
  out << '[';
  bool first = true;
  for (const auto& name : stack_) {
    if (!first) out << ", ";
    out << name.str();
    first = false;
  }
  out << ']';
  return out.str();
}

LayerSet layers_of(const Context& context) {
  LayerSet set;
  for (const auto& name : context.entries()) set.insert(name);
  return set;
}

Context push(const Context& context, const LayerName& layer) {
  return context.pushed(layer);
}

}  // namespace contextml

#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace contextml {

/// A layer name: uppercase first letter, then alphanumerics or underscores.
/// Layers and ordinary identifiers live in disjoint namespaces, split by the
/// case of the first character.
class LayerName {
 public:
  explicit LayerName(std::string text);

  static bool is_valid(std::string_view text);
  static std::optional<LayerName> parse(std::string_view text);

  const std::string& str() const { return text_; }

  auto operator<=>(const LayerName&) const = default;

 private:
  std::string text_;
};

/// A term-level identifier: lowercase first letter.
class Ident {
 public:
  explicit Ident(std::string text);

  static bool is_valid(std::string_view text);
  static std::optional<Ident> parse(std::string_view text);

  const std::string& str() const { return text_; }

  auto operator<=>(const Ident&) const = default;

 private:
  std::string text_;
};

/// A finite set of layer names. Annotations on layer and arrow types are
/// layer sets, as is the checker's static context.
class LayerSet {
 public:
  LayerSet() = default;
  LayerSet(std::initializer_list<LayerName> names);
  explicit LayerSet(std::set<LayerName> names) : names_(std::move(names)) {}

  bool contains(const LayerName& name) const { return names_.count(name) > 0; }
  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }

  void insert(const LayerName& name) { names_.insert(name); }

  LayerSet united(const LayerSet& other) const;
  LayerSet intersected(const LayerSet& other) const;
  bool is_subset_of(const LayerSet& other) const;

  /// Layers of `other` missing from this set, for diagnostics.
  std::vector<LayerName> missing_from(const LayerSet& other) const;

  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  /// Renders as "{A, B}".
  std::string str() const;

  bool operator==(const LayerSet&) const = default;

 private:
  std::set<LayerName> names_;
};

/// The run-time context: a stack of active layers, top at index 0.
/// Duplicates are permitted; repeated activation pushes again.
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<LayerName> stack) : stack_(std::move(stack)) {}

  /// New context with `layer` on top; this context is unchanged.
  Context pushed(const LayerName& layer) const;

  /// New context without the top entry; nullopt when empty.
  std::optional<Context> popped() const;

  bool empty() const { return stack_.empty(); }
  std::size_t size() const { return stack_.size(); }
  const LayerName& at(std::size_t i) const { return stack_[i]; }
  const std::vector<LayerName>& entries() const { return stack_; }

  /// Renders as "[A, B]" with the top first.
  std::string str() const;

  bool operator==(const Context&) const = default;

 private:
  std::vector<LayerName> stack_;
};

/// The set of layers active anywhere in the stack (the stack's underlying
/// set; duplicates collapse).
LayerSet layers_of(const Context& context);

/// push(C, L): L becomes the new top. Non-mutating counterpart of
/// Context::pushed for call sites that read better in operator form.
Context push(const Context& context, const LayerName& layer);

}  // namespace contextml

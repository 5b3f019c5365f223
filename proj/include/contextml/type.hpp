#pragma once

#include <memory>
#include <string>
#include <variant>

#include "contextml/names.hpp"

namespace contextml {

class Type;
using TypePtr = std::shared_ptr<const Type>;

/// int
struct IntType {};

/// ly_phi: the type of layer values; phi over-approximates the layers the
/// expression can reduce to.
struct LyType {
  LayerSet layers;
};

/// dom -[precond]-> cod: precond is the set of layers that must be active
/// wherever the function is applied.
struct ArrowType {
  TypePtr dom;
  LayerSet precond;
  TypePtr cod;
};

class Type {
 public:
  using Node = std::variant<IntType, LyType, ArrowType>;

  explicit Type(Node node) : node_(std::move(node)) {}

  static TypePtr intt();
  static TypePtr ly(LayerSet layers);
  static TypePtr arrow(TypePtr dom, LayerSet precond, TypePtr cod);

  const Node& node() const { return node_; }

  bool is_int() const { return std::holds_alternative<IntType>(node_); }
  const LyType* as_ly() const { return std::get_if<LyType>(&node_); }
  const ArrowType* as_arrow() const { return std::get_if<ArrowType>(&node_); }

 private:
  Node node_;
};

/// Structural equality; layer-set annotations compare as sets.
bool type_equal(const TypePtr& a, const TypePtr& b);

/// "int", "ly {A, B}", "int -[{L1}]-> int". An empty precondition renders
/// with the "->" sugar. Re-parses to an equal type.
std::string type_to_string(const TypePtr& type);

}  // namespace contextml

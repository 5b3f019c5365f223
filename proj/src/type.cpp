#include "contextml/type.hpp"

#include <sstream>

namespace contextml {

TypePtr Type::intt() {
  static const TypePtr instance = std::make_shared<Type>(Node{IntType{}});
  return instance;
}

TypePtr Type::ly(LayerSet layers) {
  return std::make_shared<Type>(Node{LyType{std::move(layers)}});
}

TypePtr Type::arrow(TypePtr dom, LayerSet precond, TypePtr cod) {
  return std::make_shared<Type>(
      Node{ArrowType{std::move(dom), std::move(precond), std::move(cod)}});
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node().index() != b->node().index()) return false;
  if (a->is_int()) return true;
  if (const auto* la = a->as_ly()) return la->layers == b->as_ly()->layers;
  const auto* fa = a->as_arrow();
  const auto* fb = b->as_arrow();
  return fa->precond == fb->precond && type_equal(fa->dom, fb->dom) &&
         type_equal(fa->cod, fb->cod);
}

namespace {

void render(const TypePtr& type, std::ostringstream& out) {
  if (type->is_int()) {
    out << "int";
    return;
  }
  if (const auto* ly = type->as_ly()) {
    out << "ly " << ly->layers.str();
    return;
  }
  const auto* arrow = type->as_arrow();
  // The arrow is right-associative, so an arrow domain needs parentheses.
  const bool dom_parens = arrow->dom->as_arrow() != nullptr;
  if (dom_parens) out << '(';
  render(arrow->dom, out);
  if (dom_parens) out << ')';
  if (arrow->precond.empty()) {
    out << " -> ";
  } else {
    out << " -[" << arrow->precond.str() << "]-> ";
  }
  render(arrow->cod, out);
}

}  // namespace

std::string type_to_string(const TypePtr& type) {
  std::ostringstream out;
  render(type, out);
  return out.str();
}

}  // namespace contextml

#pragma once

// Random expressions of arbitrary shape (not necessarily well-typed or
// closed), for structural properties: substitution, printing, determinism.
// Well-typed generation lives in the testkit; this builder stays independent
// and dumb.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "contextml/ast.hpp"

namespace contextml::testing {

class ArbitraryExpr {
 public:
  explicit ArbitraryExpr(std::uint64_t seed) : rng_(seed) {}

  ExprPtr expr(int depth) {
    if (depth <= 0) return leaf();
    switch (range(10)) {
      case 0: return leaf();
      case 1:
        return make_fun(ident(), ident(), type(2), range(2) ? type(2) : nullptr,
                        layerset(), expr(depth - 1));
      case 2: return make_app(expr(depth - 1), expr(depth - 1));
      case 3: return make_let(ident(), expr(depth - 1), expr(depth - 1));
      case 4:
        return make_binop(static_cast<BinOpKind>(range(7)), expr(depth - 1),
                          expr(depth - 1));
      case 5:
        return make_if(expr(depth - 1), expr(depth - 1), expr(depth - 1));
      case 6: return make_with(expr(depth - 1), expr(depth - 1));
      case 7: {
        std::vector<LExpBranch> branches;
        const int n = 1 + static_cast<int>(range(3));
        for (int i = 0; i < n; ++i) {
          branches.push_back(LExpBranch{layer(), expr(depth - 1)});
        }
        return make_lexp(std::move(branches));
      }
      default: return leaf();
    }
  }

  ExprPtr leaf() {
    switch (range(3)) {
      case 0: return make_num(range(100));
      case 1: return make_layer(layer());
      default: return make_var(ident());
    }
  }

  ExprPtr closed_value(int depth = 1) {
    switch (range(3)) {
      case 0: return make_num(range(100));
      case 1: return make_layer(layer());
      default:
        // fun id (x: int) => <literal>: closed by construction.
        return make_fun(Ident("self"), Ident("arg"), Type::intt(), nullptr,
                        LayerSet{}, make_num(range(10)));
    }
  }

  Ident ident() {
    static const std::vector<std::string> pool = {"x", "y", "z", "f", "g"};
    return Ident(pool[range(pool.size())]);
  }

  LayerName layer() {
    static const std::vector<std::string> pool = {"A", "B", "C", "D"};
    return LayerName(pool[range(pool.size())]);
  }

  LayerSet layerset() {
    LayerSet set;
    const int n = static_cast<int>(range(3));
    for (int i = 0; i < n; ++i) set.insert(layer());
    return set;
  }

  TypePtr type(int depth) {
    if (depth <= 0 || range(2) == 0) {
      return range(2) ? Type::intt() : Type::ly(layerset());
    }
    return Type::arrow(type(depth - 1), layerset(), type(depth - 1));
  }

  Context context() {
    std::vector<LayerName> stack;
    const int n = static_cast<int>(range(4));
    for (int i = 0; i < n; ++i) stack.push_back(layer());
    return Context(std::move(stack));
  }

  std::uint64_t range(std::uint64_t bound) {
    return bound == 0 ? 0 : rng_() % bound;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace contextml::testing

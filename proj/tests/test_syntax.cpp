#include "doctest.h"

#include <set>

#include "contextml/ast.hpp"
#include "contextml/names.hpp"
#include "support/arbitrary.hpp"

using namespace contextml;

namespace {

Context ctx(std::initializer_list<const char*> names) {
  std::vector<LayerName> stack;
  for (const char* n : names) stack.emplace_back(n);
  return Context(std::move(stack));
}

LayerSet set(std::initializer_list<const char*> names) {
  LayerSet s;
  for (const char* n : names) s.insert(LayerName(n));
  return s;
}

}  // namespace

TEST_CASE("layer names and identifiers split by initial case") {
  CHECK(LayerName::is_valid("A"));
  CHECK(LayerName::is_valid("PowerSavingMode"));
  CHECK(LayerName::is_valid("L1_x"));
  CHECK_FALSE(LayerName::is_valid(""));
  CHECK_FALSE(LayerName::is_valid("a"));
  CHECK_FALSE(LayerName::is_valid("A b"));

  CHECK(Ident::is_valid("x"));
  CHECK(Ident::is_valid("getBatteryProfile"));
  CHECK_FALSE(Ident::is_valid("X"));
  CHECK_FALSE(Ident::is_valid(""));
}

TEST_CASE("layers_of deduplicates the stack") {
  CHECK(layers_of(ctx({"A", "B", "A"})) == set({"A", "B"}));
  CHECK(layers_of(ctx({})) == set({}));
  CHECK(layers_of(ctx({"A"})) == set({"A"}));
}

TEST_CASE("push puts the layer on top and preserves the original") {
  const Context original = ctx({"A"});
  const Context pushed = push(original, LayerName("B"));
  CHECK(pushed == ctx({"B", "A"}));
  CHECK(original == ctx({"A"}));

  CHECK(push(ctx({}), LayerName("A")) == ctx({"A"}));

  const Context doubled = push(ctx({"A"}), LayerName("A"));
  CHECK(doubled == ctx({"A", "A"}));
  CHECK(layers_of(doubled) == set({"A"}));
}

TEST_CASE("push then pop is identity") {
  const Context original = ctx({"B", "C"});
  const auto popped = push(original, LayerName("A")).popped();
  REQUIRE(popped.has_value());
  CHECK(*popped == original);
  CHECK_FALSE(ctx({}).popped().has_value());
}

TEST_CASE("layers_of after push equals union with the singleton") {
  testing::ArbitraryExpr gen(42);
  for (int i = 0; i < 500; ++i) {
    const Context c = gen.context();
    const LayerName layer = gen.layer();
    LayerSet expected = layers_of(c);
    expected.insert(layer);
    CHECK(layers_of(push(c, layer)) == expected);
  }
}

TEST_CASE("free variables") {
  const Ident x("x");
  const Ident y("y");
  const Ident f("f");

  CHECK(free_vars(make_var(x)) == std::set<Ident>{x});

  // fun f (x: int) => f x: both binders in scope.
  const ExprPtr fn =
      make_fun(f, x, Type::intt(), nullptr, LayerSet{},
               make_app(make_var(f), make_var(x)));
  CHECK(free_vars(fn).empty());

  // let x = y in x: only y free.
  const ExprPtr let = make_let(x, make_var(y), make_var(x));
  CHECK(free_vars(let) == std::set<Ident>{y});
}

TEST_CASE("substitute replaces free occurrences only") {
  const Ident x("x");
  const Ident y("y");
  const Ident f("f");
  const ExprPtr five = make_num(5);

  CHECK(structurally_equal(substitute(make_var(x), x, five), five));

  const ExprPtr shadowing =
      make_fun(f, x, Type::intt(), nullptr, LayerSet{}, make_var(x));
  CHECK(substitute(shadowing, x, five) == shadowing);  // untouched, shared

  const ExprPtr sum = make_binop(BinOpKind::Add, make_var(x), make_var(y));
  const ExprPtr substituted = substitute(sum, x, make_num(2));
  CHECK(structurally_equal(
      substituted, make_binop(BinOpKind::Add, make_num(2), make_var(y))));
}

TEST_CASE("substitution laws on random terms") {
  testing::ArbitraryExpr gen(7);
  int replaced = 0;
  for (int i = 0; i < 1000; ++i) {
    const ExprPtr e = gen.expr(3);
    const Ident x = gen.ident();
    const ExprPtr v = gen.closed_value();
    REQUIRE(is_closed(v));

    const ExprPtr result = substitute(e, x, v);

    // free_vars(e[x := v]) = free_vars(e) \ {x} for closed v.
    std::set<Ident> expected = free_vars(e);
    const bool was_free = expected.erase(x) > 0;
    CHECK(free_vars(result) == expected);

    // Identity when x is not free.
    if (!was_free) {
      CHECK(result == e);
    } else {
      ++replaced;
    }
  }
  CHECK(replaced > 100);  // the law is exercised on both sides
}

TEST_CASE("values are numbers, layers, and functions") {
  CHECK(is_value(make_num(0)));
  CHECK(is_value(make_layer(LayerName("A"))));
  CHECK(is_value(make_fun(Ident("f"), Ident("x"), Type::intt(), nullptr,
                          LayerSet{}, make_var(Ident("x")))));
  CHECK_FALSE(is_value(make_var(Ident("x"))));
  CHECK_FALSE(is_value(make_app(make_num(1), make_num(2))));
}

TEST_CASE("layer set rendering and operations") {
  CHECK(set({}).str() == "{}");
  CHECK(set({"B", "A"}).str() == "{A, B}");
  CHECK(set({"A"}).united(set({"B"})) == set({"A", "B"}));
  CHECK(set({"A", "B"}).intersected(set({"B", "C"})) == set({"B"}));
  CHECK(set({"A"}).is_subset_of(set({"A", "B"})));
  CHECK_FALSE(set({"A", "C"}).is_subset_of(set({"A", "B"})));
}

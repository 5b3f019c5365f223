#include "doctest.h"

#include "contextml/lexer.hpp"
#include "contextml/parser.hpp"
#include "contextml/pretty.hpp"
#include "support/arbitrary.hpp"

using namespace contextml;

namespace {

ExprPtr parse_ok(std::string_view source) {
  ParseResult result = parse(source);
  if (!result.ok()) {
    for (const auto& d : result.diagnostics) MESSAGE(d.render());
  }
  REQUIRE(result.ok());
  return result.expr;
}

std::string first_code(const std::vector<Diagnostic>& diags) {
  REQUIRE(!diags.empty());
  return diags.front().code;
}

}  // namespace

TEST_CASE("tokenize a with expression") {
  TokenizeResult lexed = tokenize("with (A) in 5");
  REQUIRE(lexed.ok());
  REQUIRE(lexed.tokens.size() == 7);  // incl. eof
  CHECK(lexed.tokens[0].is_keyword("with"));
  CHECK(lexed.tokens[1].is_symbol("("));
  CHECK(lexed.tokens[2].kind == TokenKind::UpperIdent);
  CHECK(lexed.tokens[2].text == "A");
  CHECK(lexed.tokens[3].is_symbol(")"));
  CHECK(lexed.tokens[4].is_keyword("in"));
  CHECK(lexed.tokens[5].kind == TokenKind::Number);
  CHECK(lexed.tokens[5].text == "5");
  CHECK(lexed.tokens[6].kind == TokenKind::Eof);
}

TEST_CASE("longest match wins over keyword prefixes") {
  TokenizeResult lexed = tokenize("letx");
  REQUIRE(lexed.ok());
  REQUIRE(lexed.tokens.size() == 2);
  CHECK(lexed.tokens[0].kind == TokenKind::LowerIdent);
  CHECK(lexed.tokens[0].text == "letx");
}

TEST_CASE("unrecognized character is PARSE001 at its column") {
  TokenizeResult lexed = tokenize("\xE2\x82\xAC");  // euro sign
  REQUIRE_FALSE(lexed.ok());
  const Diagnostic& d = lexed.diagnostics.front();
  CHECK(d.code == "PARSE001");
  CHECK(d.span.line == 1);
  CHECK(d.span.col == 1);
}

TEST_CASE("comments and whitespace are skipped") {
  TokenizeResult lexed = tokenize("1 -- the rest is ignored\n+ 2");
  REQUIRE(lexed.ok());
  REQUIRE(lexed.tokens.size() == 4);
  CHECK(lexed.tokens[1].is_symbol("+"));
  CHECK(lexed.tokens[1].span.line == 2);
}

TEST_CASE("multi-character symbols lex greedily") {
  TokenizeResult lexed = tokenize("=> -> -[ ]-> = - <");
  REQUIRE(lexed.ok());
  std::vector<std::string> texts;
  for (const auto& t : lexed.tokens) texts.push_back(t.text);
  CHECK(texts == std::vector<std::string>{"=>", "->", "-[", "]->", "=", "-",
                                          "<", ""});
}

TEST_CASE("parse with expression") {
  const ExprPtr e = parse_ok("with (A) in 5");
  CHECK(structurally_equal(
      e, make_with(make_layer(LayerName("A")), make_num(5))));
}

TEST_CASE("parse layered expression") {
  const ExprPtr e = parse_ok("{A. 1, B. 2}");
  CHECK(structurally_equal(
      e, make_lexp({LExpBranch{LayerName("A"), make_num(1)},
                    LExpBranch{LayerName("B"), make_num(2)}})));
}

TEST_CASE("parse function with precondition") {
  const ExprPtr e = parse_ok("fun f (x: int) requires {L1} => {L1. 0}");
  const ExprPtr expected = make_fun(
      Ident("f"), Ident("x"), Type::intt(), nullptr,
      LayerSet{LayerName("L1")},
      make_lexp({LExpBranch{LayerName("L1"), make_num(0)}}));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("precedence and associativity") {
  // * binds over + binds over <; everything left-associative.
  const ExprPtr e = parse_ok("1 + 2 * 3 < 4 - 2 - 1");
  const ExprPtr expected = make_binop(
      BinOpKind::Lt,
      make_binop(BinOpKind::Add, make_num(1),
                 make_binop(BinOpKind::Mul, make_num(2), make_num(3))),
      make_binop(BinOpKind::Sub,
                 make_binop(BinOpKind::Sub, make_num(4), make_num(2)),
                 make_num(1)));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("application is left-associative juxtaposition") {
  const ExprPtr e = parse_ok("f a b");
  const ExprPtr expected =
      make_app(make_app(make_var(Ident("f")), make_var(Ident("a"))),
               make_var(Ident("b")));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("types parse with arrow sugar and annotations") {
  CHECK(type_equal(parse_type("int").type, Type::intt()));
  CHECK(type_equal(parse_type("ly {A, B}").type,
                   Type::ly(LayerSet{LayerName("A"), LayerName("B")})));
  CHECK(type_equal(parse_type("int -> int").type,
                   Type::arrow(Type::intt(), LayerSet{}, Type::intt())));
  CHECK(type_equal(
      parse_type("int -[{L1}]-> int").type,
      Type::arrow(Type::intt(), LayerSet{LayerName("L1")}, Type::intt())));
  // Right-associative arrows.
  CHECK(type_equal(parse_type("int -> int -> int").type,
                   Type::arrow(Type::intt(), LayerSet{},
                               Type::arrow(Type::intt(), LayerSet{},
                                           Type::intt()))));
  CHECK(type_equal(parse_type("(int -> int) -> int").type,
                   Type::arrow(Type::arrow(Type::intt(), LayerSet{},
                                           Type::intt()),
                               LayerSet{}, Type::intt())));
}

TEST_CASE("parse errors carry spans inside the input") {
  for (const char* bad : {"with A in 5", "let = 2 in x", "{A 1}", "1 +",
                          "fun f x => x", "{}", "((1)", "5 6 7 )"}) {
    ParseResult result = parse(bad);
    REQUIRE_FALSE(result.ok());
    const Diagnostic& d = result.diagnostics.front();
    CHECK(d.span.line >= 1);
    CHECK(d.span.col >= 1);
  }
}

TEST_CASE("trailing input is rejected") {
  ParseResult result = parse("1 2 }");
  REQUIRE_FALSE(result.ok());
}

TEST_CASE("number literals out of range are rejected") {
  ParseResult result = parse("99999999999999999999999999");
  REQUIRE_FALSE(result.ok());
  CHECK(first_code(result.diagnostics) == "PARSE002");
}

TEST_CASE("pretty prints the golden forms") {
  CHECK(pretty(make_with(make_layer(LayerName("A")), make_num(5))) ==
        "with (A) in 5");
  CHECK(pretty(make_lexp({LExpBranch{LayerName("A"), make_num(1)}})) ==
        "{A. 1}");
  const ExprPtr nested =
      make_app(make_app(make_var(Ident("f")), make_var(Ident("a"))),
               make_var(Ident("b")));
  CHECK(pretty(nested) == "f a b");
}

TEST_CASE("pretty round-trips on arbitrary terms") {
  testing::ArbitraryExpr gen(2024);
  for (int i = 0; i < 2000; ++i) {
    const ExprPtr e = gen.expr(4);
    const std::string text = pretty(e);
    CAPTURE(text);
    TokenizeResult lexed = tokenize(text);
    CHECK(lexed.ok());
    ParseResult reparsed = parse(text);
    REQUIRE(reparsed.ok());
    CHECK(structurally_equal(e, reparsed.expr));
  }
}

TEST_CASE("type rendering round-trips") {
  testing::ArbitraryExpr gen(99);
  for (int i = 0; i < 500; ++i) {
    const TypePtr t = gen.type(3);
    ParseTypeResult reparsed = parse_type(type_to_string(t));
    REQUIRE(reparsed.ok());
    CHECK(type_equal(t, reparsed.type));
  }
}

TEST_CASE("repl input distinguishes bindings from expressions") {
  ReplInput binding = parse_repl_input("let x = 1 + 2");
  REQUIRE(binding.ok());
  REQUIRE(binding.binder.has_value());
  CHECK(binding.binder->str() == "x");

  ReplInput expr = parse_repl_input("let x = 1 in x");
  REQUIRE(expr.ok());
  CHECK_FALSE(expr.binder.has_value());

  ReplInput nested = parse_repl_input("let x = let y = 1 in y");
  REQUIRE(nested.ok());
  REQUIRE(nested.binder.has_value());

  ReplInput with_in = parse_repl_input("let w = with (A) in {A. 3}");
  REQUIRE(with_in.ok());
  REQUIRE(with_in.binder.has_value());
}

TEST_CASE("diagnostic spans stay within the input bounds") {
  testing::ArbitraryExpr gen(5);
  const std::vector<std::string> bads = {"(", "{A.", "fun f (", "1 + + 2",
                                         "with () in 3", "let x = in 4"};
  for (const auto& bad : bads) {
    ParseResult result = parse(bad);
    REQUIRE_FALSE(result.ok());
    for (const auto& d : result.diagnostics) {
      CHECK(d.span.line >= 1);
      CHECK(d.span.end_line >= d.span.line);
      // Columns may point one past the end (eof), never further.
      CHECK(d.span.end_col <= bad.size() + 2);
    }
  }
}

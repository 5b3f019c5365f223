#include "contextml/parser.hpp"

#include <charconv>
#include <utility>

#include "contextml/lexer.hpp"

namespace contextml {

namespace {

struct ParseError {
  Diagnostic diagnostic;
};

[[noreturn]] void fail(std::string code, std::string message, Span span,
                       std::optional<std::string> expected = std::nullopt,
                       std::optional<std::string> found = std::nullopt) {
  throw ParseError{Diagnostic{std::move(code), std::move(message), span,
                              std::move(expected), std::move(found)}};
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse_expr() {
    const Token& tok = peek();
    if (tok.is_keyword("fun")) return parse_fun();
    if (tok.is_keyword("let")) return parse_let();
    if (tok.is_keyword("if")) return parse_if();
    if (tok.is_keyword("with")) return parse_with();
    return parse_cmp();
  }

  TypePtr parse_type() {
    TypePtr lhs = parse_type_atom();
    const Token& tok = peek();
    if (tok.is_symbol("->")) {
      advance();
      return Type::arrow(std::move(lhs), LayerSet{}, parse_type());
    }
    if (tok.is_symbol("-[")) {
      advance();
      LayerSet precond = parse_layerset();
      expect_symbol("]->");
      return Type::arrow(std::move(lhs), std::move(precond), parse_type());
    }
    return lhs;
  }

  void expect_eof(std::string_view code = diag_code::parse_trailing) {
    if (peek().kind != TokenKind::Eof) {
      fail(std::string(code), "unexpected input after the expression",
           peek().span, "end of input", describe(peek()));
    }
  }

  // `let IDENT = expr <eof>` — the interactive binding form.
  std::optional<std::pair<Ident, ExprPtr>> try_parse_binding() {
    if (!peek().is_keyword("let")) return std::nullopt;
    // A binding has no matching `in` at depth 0; find out before committing.
    if (has_toplevel_in()) return std::nullopt;
    advance();
    Ident name = expect_lower_ident();
    expect_symbol("=");
    ExprPtr bound = parse_expr();
    expect_eof();
    return std::make_pair(std::move(name), std::move(bound));
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() { return tokens_[pos_++]; }

  static std::string describe(const Token& tok) {
    if (tok.kind == TokenKind::Eof) return "end of input";
    return "'" + tok.text + "'";
  }

  void expect_symbol(std::string_view sym) {
    if (!peek().is_symbol(sym)) {
      fail(std::string(diag_code::parse_unexpected),
           "expected '" + std::string(sym) + "'", peek().span,
           "'" + std::string(sym) + "'", describe(peek()));
    }
    advance();
  }

  void expect_keyword(std::string_view kw) {
    if (!peek().is_keyword(kw)) {
      fail(std::string(diag_code::parse_unexpected),
           "expected '" + std::string(kw) + "'", peek().span,
           "'" + std::string(kw) + "'", describe(peek()));
    }
    advance();
  }

  Ident expect_lower_ident() {
    if (peek().kind != TokenKind::LowerIdent) {
      fail(std::string(diag_code::parse_unexpected), "expected an identifier",
           peek().span, "identifier", describe(peek()));
    }
    return Ident(advance().text);
  }

  LayerName expect_upper_ident() {
    if (peek().kind != TokenKind::UpperIdent) {
      fail(std::string(diag_code::parse_unexpected), "expected a layer name",
           peek().span, "layer name", describe(peek()));
    }
    return LayerName(advance().text);
  }

  // Scans forward for an `in` belonging to the `let` at the current
  // position, skipping nested let/with pairs.
  bool has_toplevel_in() const {
    std::size_t depth = 0;
    for (std::size_t i = pos_; i < tokens_.size(); ++i) {
      const Token& tok = tokens_[i];
      if (tok.is_keyword("let") || tok.is_keyword("with")) {
        ++depth;
      } else if (tok.is_keyword("in")) {
        if (depth == 1) return true;
        if (depth > 0) --depth;
      }
    }
    return false;
  }

  ExprPtr parse_fun() {
    const Span start = peek().span;
    expect_keyword("fun");
    Ident self = expect_lower_ident();
    expect_symbol("(");
    Ident param = expect_lower_ident();
    expect_symbol(":");
    TypePtr param_type = parse_type();
    expect_symbol(")");
    TypePtr ret_type;
    if (peek().is_symbol(":")) {
      advance();
      ret_type = parse_type();
    }
    LayerSet precond;
    if (peek().is_keyword("requires")) {
      advance();
      precond = parse_layerset();
    }
    expect_symbol("=>");
    ExprPtr body = parse_expr();
    const Span span = Span::join(start, body->span());
    return make_fun(std::move(self), std::move(param), std::move(param_type),
                    std::move(ret_type), std::move(precond), std::move(body),
                    span);
  }

  ExprPtr parse_let() {
    const Span start = peek().span;
    expect_keyword("let");
    Ident name = expect_lower_ident();
    expect_symbol("=");
    ExprPtr bound = parse_expr();
    expect_keyword("in");
    ExprPtr body = parse_expr();
    const Span span = Span::join(start, body->span());
    return make_let(std::move(name), std::move(bound), std::move(body), span);
  }

  ExprPtr parse_if() {
    const Span start = peek().span;
    expect_keyword("if");
    ExprPtr cond = parse_expr();
    expect_keyword("then");
    ExprPtr then_branch = parse_expr();
    expect_keyword("else");
    ExprPtr else_branch = parse_expr();
    const Span span = Span::join(start, else_branch->span());
    return make_if(std::move(cond), std::move(then_branch),
                   std::move(else_branch), span);
  }

  ExprPtr parse_with() {
    const Span start = peek().span;
    expect_keyword("with");
    expect_symbol("(");
    ExprPtr scrutinee = parse_expr();
    expect_symbol(")");
    expect_keyword("in");
    ExprPtr body = parse_expr();
    const Span span = Span::join(start, body->span());
    return make_with(std::move(scrutinee), std::move(body), span);
  }

  std::optional<BinOpKind> peek_op(int level) const {
    const Token& tok = peek();
    if (tok.kind != TokenKind::Symbol) return std::nullopt;
    switch (level) {
      case 0:
        if (tok.text == "=") return BinOpKind::Eq;
        if (tok.text == "<") return BinOpKind::Lt;
        if (tok.text == ">") return BinOpKind::Gt;
        return std::nullopt;
      case 1:
        if (tok.text == "+") return BinOpKind::Add;
        if (tok.text == "-") return BinOpKind::Sub;
        return std::nullopt;
      default:
        if (tok.text == "*") return BinOpKind::Mul;
        if (tok.text == "/") return BinOpKind::Div;
        return std::nullopt;
    }
  }

  ExprPtr parse_cmp() { return parse_binop_level(0); }

  ExprPtr parse_binop_level(int level) {
    if (level > 2) return parse_app();
    ExprPtr lhs = parse_binop_level(level + 1);
    while (auto op = peek_op(level)) {
      advance();
      ExprPtr rhs = parse_binop_level(level + 1);
      const Span span = Span::join(lhs->span(), rhs->span());
      lhs = make_binop(*op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  bool at_atom_start() const {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Number:
      case TokenKind::LowerIdent:
      case TokenKind::UpperIdent:
        return true;
      case TokenKind::Symbol:
        return tok.text == "(" || tok.text == "{";
      default:
        return false;
    }
  }

  ExprPtr parse_app() {
    ExprPtr fn = parse_atom();
    while (at_atom_start()) {
      ExprPtr arg = parse_atom();
      const Span span = Span::join(fn->span(), arg->span());
      fn = make_app(std::move(fn), std::move(arg), span);
    }
    return fn;
  }

  ExprPtr parse_atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Number: {
        advance();
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(
            tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
          fail(std::string(diag_code::parse_number_overflow),
               "number literal out of range", tok.span);
        }
        return make_num(value, tok.span);
      }
      case TokenKind::UpperIdent: {
        advance();
        return make_layer(LayerName(tok.text), tok.span);
      }
      case TokenKind::LowerIdent: {
        advance();
        return make_var(Ident(tok.text), tok.span);
      }
      case TokenKind::Symbol:
        if (tok.text == "(") {
          advance();
          ExprPtr inner = parse_expr();
          expect_symbol(")");
          return inner;
        }
        if (tok.text == "{") return parse_lexp();
        break;
      default:
        break;
    }
    fail(std::string(diag_code::parse_unexpected), "expected an expression",
         tok.span, "expression", describe(tok));
  }

  ExprPtr parse_lexp() {
    const Span start = peek().span;
    expect_symbol("{");
    std::vector<LExpBranch> branches;
    while (true) {
      LayerName layer = expect_upper_ident();
      expect_symbol(".");
      ExprPtr body = parse_expr();
      branches.push_back(LExpBranch{std::move(layer), std::move(body)});
      if (peek().is_symbol(",")) {
        advance();
        continue;
      }
      break;
    }
    const Span end = peek().span;
    expect_symbol("}");
    return make_lexp(std::move(branches), Span::join(start, end));
  }

  TypePtr parse_type_atom() {
    const Token& tok = peek();
    if (tok.is_keyword("int")) {
      advance();
      return Type::intt();
    }
    if (tok.is_keyword("ly")) {
      advance();
      return Type::ly(parse_layerset());
    }
    if (tok.is_symbol("(")) {
      advance();
      TypePtr inner = parse_type();
      expect_symbol(")");
      return inner;
    }
    fail(std::string(diag_code::parse_unexpected), "expected a type", tok.span,
         "type", describe(tok));
  }

  LayerSet parse_layerset() {
    expect_symbol("{");
    LayerSet layers;
    if (!peek().is_symbol("}")) {
      layers.insert(expect_upper_ident());
      while (peek().is_symbol(",")) {
        advance();
        layers.insert(expect_upper_ident());
      }
    }
    expect_symbol("}");
    return layers;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
  TokenizeResult lexed = tokenize(source);
  if (!lexed.ok()) return ParseResult{nullptr, std::move(lexed.diagnostics)};
  Parser parser(std::move(lexed.tokens));
  try {
    ExprPtr expr = parser.parse_expr();
    parser.expect_eof();
    return ParseResult{std::move(expr), {}};
  } catch (const ParseError& err) {
    return ParseResult{nullptr, {err.diagnostic}};
  }
}

ParseTypeResult parse_type(std::string_view source) {
  TokenizeResult lexed = tokenize(source);
  if (!lexed.ok())
    return ParseTypeResult{nullptr, std::move(lexed.diagnostics)};
  Parser parser(std::move(lexed.tokens));
  try {
    TypePtr type = parser.parse_type();
    parser.expect_eof();
    return ParseTypeResult{std::move(type), {}};
  } catch (const ParseError& err) {
    return ParseTypeResult{nullptr, {err.diagnostic}};
  }
}

ReplInput parse_repl_input(std::string_view source) {
  TokenizeResult lexed = tokenize(source);
  if (!lexed.ok()) {
    return ReplInput{std::nullopt, nullptr, std::move(lexed.diagnostics)};
  }
  Parser parser(std::move(lexed.tokens));
  try {
    if (auto binding = parser.try_parse_binding()) {
      return ReplInput{std::move(binding->first), std::move(binding->second),
                       {}};
    }
    ExprPtr expr = parser.parse_expr();
    parser.expect_eof();
    return ReplInput{std::nullopt, std::move(expr), {}};
  } catch (const ParseError& err) {
    return ReplInput{std::nullopt, nullptr, {err.diagnostic}};
  }
}

}  // namespace contextml

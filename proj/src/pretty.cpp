#include "contextml/pretty.hpp"

#include <sstream>

namespace contextml {

namespace {

// Precedence levels: 0 right-extending forms (fun/let/if/with), 1 comparison,
// 2 additive, 3 multiplicative, 4 application, 5 atoms.
int level_of(const Expr& e) {
  if (e.as<NumExpr>() || e.as<LayerExpr>() || e.as<VarExpr>() ||
      e.as<LExpExpr>()) {
    return 5;
  }
  if (e.as<AppExpr>()) return 4;
  if (const auto* binop = e.as<BinOpExpr>()) {
    switch (binop->op) {
      case BinOpKind::Mul:
      case BinOpKind::Div:
        return 3;
      case BinOpKind::Add:
      case BinOpKind::Sub:
        return 2;
      default:
        return 1;
    }
  }
  return 0;
}

void render(const Expr& e, int min_level, std::ostringstream& out) {
  const int level = level_of(e);
  const bool parens = level < min_level;
  if (parens) out << '(';

  if (const auto* num = e.as<NumExpr>()) {
    out << num->value;
  } else if (const auto* layer = e.as<LayerExpr>()) {
    out << layer->name.str();
  } else if (const auto* var = e.as<VarExpr>()) {
    out << var->name.str();
  } else if (const auto* fun = e.as<FunExpr>()) {
    out << "fun " << fun->self.str() << " (" << fun->param.str() << ": "
        << type_to_string(fun->param_type) << ")";
    if (fun->ret_type) out << ": " << type_to_string(fun->ret_type);
    if (!fun->precond.empty()) out << " requires " << fun->precond.str();
    out << " => ";
    render(*fun->body, 0, out);
  } else if (const auto* app = e.as<AppExpr>()) {
    render(*app->fn, 4, out);
    out << ' ';
    render(*app->arg, 5, out);
  } else if (const auto* let = e.as<LetExpr>()) {
    out << "let " << let->name.str() << " = ";
    render(*let->bound, 0, out);
    out << " in ";
    render(*let->body, 0, out);
  } else if (const auto* binop = e.as<BinOpExpr>()) {
    render(*binop->lhs, level, out);
    out << ' ' << binop_symbol(binop->op) << ' ';
    render(*binop->rhs, level + 1, out);
  } else if (const auto* ife = e.as<IfExpr>()) {
    out << "if ";
    render(*ife->cond, 0, out);
    out << " then ";
    render(*ife->then_branch, 0, out);
    out << " else ";
    render(*ife->else_branch, 0, out);
  } else if (const auto* with = e.as<WithExpr>()) {
    out << "with (";
    render(*with->scrutinee, 0, out);
    out << ") in ";
    render(*with->body, 0, out);
  } else if (const auto* lexp = e.as<LExpExpr>()) {
    out << '{';
    bool first = true;
    for (const auto& branch : lexp->branches) {
      if (!first) out << ", ";
      out << branch.layer.str() << ". ";
      render(*branch.body, 0, out);
      first = false;
    }
    out << '}';
  }

  if (parens) out << ')';
}

}  // namespace

std::string pretty(const Expr& e) {
  std::ostringstream out;
  render(e, 0, out);
  return out.str();
}

}  // namespace contextml

#include "contextml/ast.hpp"

#include <utility>

namespace contextml {

std::string_view binop_symbol(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add: return "+";
    case BinOpKind::Sub: return "-";
    case BinOpKind::Mul: return "*";
    case BinOpKind::Div: return "/";
    case BinOpKind::Eq: return "=";
    case BinOpKind::Lt: return "<";
    case BinOpKind::Gt: return ">";
  }
  return "?";
}

ExprPtr make_num(std::uint64_t value, Span span) {
  return std::make_shared<Expr>(Expr::Node{NumExpr{value}}, span);
}

ExprPtr make_layer(LayerName name, Span span) {
  return std::make_shared<Expr>(Expr::Node{LayerExpr{std::move(name)}}, span);
}

ExprPtr make_var(Ident name, Span span) {
  return std::make_shared<Expr>(Expr::Node{VarExpr{std::move(name)}}, span);
}

ExprPtr make_fun(Ident self, Ident param, TypePtr param_type, TypePtr ret_type,
                 LayerSet precond, ExprPtr body, Span span) {
  return std::make_shared<Expr>(
      Expr::Node{FunExpr{std::move(self), std::move(param),
                         std::move(param_type), std::move(ret_type),
                         std::move(precond), std::move(body)}},
      span);
}

ExprPtr make_app(ExprPtr fn, ExprPtr arg, Span span) {
  return std::make_shared<Expr>(
      Expr::Node{AppExpr{std::move(fn), std::move(arg)}}, span);
}

ExprPtr make_let(Ident name, ExprPtr bound, ExprPtr body, Span span) {
  return std::make_shared<Expr>(
      Expr::Node{LetExpr{std::move(name), std::move(bound), std::move(body)}},
      span);
}

ExprPtr make_binop(BinOpKind op, ExprPtr lhs, ExprPtr rhs, Span span) {
  return std::make_shared<Expr>(
      Expr::Node{BinOpExpr{op, std::move(lhs), std::move(rhs)}}, span);
}

ExprPtr make_if(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch,
                Span span) {
  return std::make_shared<Expr>(
      Expr::Node{IfExpr{std::move(cond), std::move(then_branch),
                        std::move(else_branch)}},
      span);
}

ExprPtr make_with(ExprPtr scrutinee, ExprPtr body, Span span) {
  return std::make_shared<Expr>(
      Expr::Node{WithExpr{std::move(scrutinee), std::move(body)}}, span);
}

ExprPtr make_lexp(std::vector<LExpBranch> branches, Span span) {
  return std::make_shared<Expr>(Expr::Node{LExpExpr{std::move(branches)}},
                                span);
}

bool is_value(const Expr& e) {
  return e.as<NumExpr>() || e.as<LayerExpr>() || e.as<FunExpr>();
}

namespace {

struct EqualVisitor {
  const Expr::Node& other;

  bool operator()(const NumExpr& a) const {
    const auto* b = std::get_if<NumExpr>(&other);
    return b && a.value == b->value;
  }
  bool operator()(const LayerExpr& a) const {
    const auto* b = std::get_if<LayerExpr>(&other);
    return b && a.name == b->name;
  }
  bool operator()(const VarExpr& a) const {
    const auto* b = std::get_if<VarExpr>(&other);
    return b && a.name == b->name;
  }
  bool operator()(const FunExpr& a) const {
    const auto* b = std::get_if<FunExpr>(&other);
    if (!b) return false;
    const bool ret_equal = (a.ret_type == nullptr) == (b->ret_type == nullptr) &&
                           (a.ret_type == nullptr ||
                            type_equal(a.ret_type, b->ret_type));
    return a.self == b->self && a.param == b->param && ret_equal &&
           a.precond == b->precond && type_equal(a.param_type, b->param_type) &&
           structurally_equal(a.body, b->body);
  }
  bool operator()(const AppExpr& a) const {
    const auto* b = std::get_if<AppExpr>(&other);
    return b && structurally_equal(a.fn, b->fn) &&
           structurally_equal(a.arg, b->arg);
  }
  bool operator()(const LetExpr& a) const {
    const auto* b = std::get_if<LetExpr>(&other);
    return b && a.name == b->name && structurally_equal(a.bound, b->bound) &&
           structurally_equal(a.body, b->body);
  }
  bool operator()(const BinOpExpr& a) const {
    const auto* b = std::get_if<BinOpExpr>(&other);
    return b && a.op == b->op && structurally_equal(a.lhs, b->lhs) &&
           structurally_equal(a.rhs, b->rhs);
  }
  bool operator()(const IfExpr& a) const {
    const auto* b = std::get_if<IfExpr>(&other);
    return b && structurally_equal(a.cond, b->cond) &&
           structurally_equal(a.then_branch, b->then_branch) &&
           structurally_equal(a.else_branch, b->else_branch);
  }
  bool operator()(const WithExpr& a) const {
    const auto* b = std::get_if<WithExpr>(&other);
    return b && structurally_equal(a.scrutinee, b->scrutinee) &&
           structurally_equal(a.body, b->body);
  }
  bool operator()(const LExpExpr& a) const {
    const auto* b = std::get_if<LExpExpr>(&other);
    if (!b || a.branches.size() != b->branches.size()) return false;
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
      if (a.branches[i].layer != b->branches[i].layer ||
          !structurally_equal(a.branches[i].body, b->branches[i].body)) {
        return false;
      }
    }
    return true;
  }
};

void collect_free(const Expr& e, std::set<Ident>& bound,
                  std::set<Ident>& free) {
  if (const auto* var = e.as<VarExpr>()) {
    if (!bound.count(var->name)) free.insert(var->name);
    return;
  }
  if (const auto* fun = e.as<FunExpr>()) {
    const bool self_added = bound.insert(fun->self).second;
    const bool param_added = bound.insert(fun->param).second;
    collect_free(*fun->body, bound, free);
    if (param_added) bound.erase(fun->param);
    if (self_added) bound.erase(fun->self);
    return;
  }
  if (const auto* let = e.as<LetExpr>()) {
    collect_free(*let->bound, bound, free);
    const bool added = bound.insert(let->name).second;
    collect_free(*let->body, bound, free);
    if (added) bound.erase(let->name);
    return;
  }
  if (const auto* app = e.as<AppExpr>()) {
    collect_free(*app->fn, bound, free);
    collect_free(*app->arg, bound, free);
    return;
  }
  if (const auto* binop = e.as<BinOpExpr>()) {
    collect_free(*binop->lhs, bound, free);
    collect_free(*binop->rhs, bound, free);
    return;
  }
  if (const auto* ife = e.as<IfExpr>()) {
    collect_free(*ife->cond, bound, free);
    collect_free(*ife->then_branch, bound, free);
    collect_free(*ife->else_branch, bound, free);
    return;
  }
  if (const auto* with = e.as<WithExpr>()) {
    collect_free(*with->scrutinee, bound, free);
    collect_free(*with->body, bound, free);
    return;
  }
  if (const auto* lexp = e.as<LExpExpr>()) {
    for (const auto& branch : lexp->branches) {
      collect_free(*branch.body, bound, free);
    }
    return;
  }
  // NumExpr, LayerExpr: no variables.
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  return std::visit(EqualVisitor{b.node()}, a.node());
}

std::set<Ident> free_vars(const Expr& e) {
  std::set<Ident> bound;
  std::set<Ident> free;
  collect_free(e, bound, free);
  return free;
}

bool is_closed(const Expr& e) { return free_vars(e).empty(); }

ExprPtr substitute(const ExprPtr& e, const Ident& name, const ExprPtr& value) {
  if (const auto* var = e->as<VarExpr>()) {
    return var->name == name ? value : e;
  }
  if (e->as<NumExpr>() || e->as<LayerExpr>()) return e;
  if (const auto* fun = e->as<FunExpr>()) {
    if (fun->self == name || fun->param == name) return e;  // shadowed
    ExprPtr body = substitute(fun->body, name, value);
    if (body == fun->body) return e;
    return make_fun(fun->self, fun->param, fun->param_type, fun->ret_type,
                    fun->precond, std::move(body), e->span());
  }
  if (const auto* app = e->as<AppExpr>()) {
    ExprPtr fn = substitute(app->fn, name, value);
    ExprPtr arg = substitute(app->arg, name, value);
    if (fn == app->fn && arg == app->arg) return e;
    return make_app(std::move(fn), std::move(arg), e->span());
  }
  if (const auto* let = e->as<LetExpr>()) {
    ExprPtr bound = substitute(let->bound, name, value);
    ExprPtr body = let->name == name ? let->body  // shadowed in the body
                                     : substitute(let->body, name, value);
    if (bound == let->bound && body == let->body) return e;
    return make_let(let->name, std::move(bound), std::move(body), e->span());
  }
  if (const auto* binop = e->as<BinOpExpr>()) {
    ExprPtr lhs = substitute(binop->lhs, name, value);
    ExprPtr rhs = substitute(binop->rhs, name, value);
    if (lhs == binop->lhs && rhs == binop->rhs) return e;
    return make_binop(binop->op, std::move(lhs), std::move(rhs), e->span());
  }
  if (const auto* ife = e->as<IfExpr>()) {
    ExprPtr cond = substitute(ife->cond, name, value);
    ExprPtr then_branch = substitute(ife->then_branch, name, value);
    ExprPtr else_branch = substitute(ife->else_branch, name, value);
    if (cond == ife->cond && then_branch == ife->then_branch &&
        else_branch == ife->else_branch) {
      return e;
    }
    return make_if(std::move(cond), std::move(then_branch),
                   std::move(else_branch), e->span());
  }
  if (const auto* with = e->as<WithExpr>()) {
    ExprPtr scrutinee = substitute(with->scrutinee, name, value);
    ExprPtr body = substitute(with->body, name, value);
    if (scrutinee == with->scrutinee && body == with->body) return e;
    return make_with(std::move(scrutinee), std::move(body), e->span());
  }
  const auto* lexp = e->as<LExpExpr>();
  std::vector<LExpBranch> branches;
  branches.reserve(lexp->branches.size());
  bool changed = false;
  for (const auto& branch : lexp->branches) {
    ExprPtr body = substitute(branch.body, name, value);
    changed = changed || body != branch.body;
    branches.push_back(LExpBranch{branch.layer, std::move(body)});
  }
  if (!changed) return e;
  return make_lexp(std::move(branches), e->span());
}

std::size_t expr_size(const Expr& e) {
  std::size_t n = 1;
  if (const auto* fun = e.as<FunExpr>()) {
    n += expr_size(*fun->body);
  } else if (const auto* app = e.as<AppExpr>()) {
    n += expr_size(*app->fn) + expr_size(*app->arg);
  } else if (const auto* let = e.as<LetExpr>()) {
    n += expr_size(*let->bound) + expr_size(*let->body);
  } else if (const auto* binop = e.as<BinOpExpr>()) {
    n += expr_size(*binop->lhs) + expr_size(*binop->rhs);
  } else if (const auto* ife = e.as<IfExpr>()) {
    n += expr_size(*ife->cond) + expr_size(*ife->then_branch) +
         expr_size(*ife->else_branch);
  } else if (const auto* with = e.as<WithExpr>()) {
    n += expr_size(*with->scrutinee) + expr_size(*with->body);
  } else if (const auto* lexp = e.as<LExpExpr>()) {
    for (const auto& branch : lexp->branches) n += expr_size(*branch.body);
  }
  return n;
}

}  // namespace contextml

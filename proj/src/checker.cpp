#include "contextml/checker.hpp"

#include <sstream>
#include <utility>

namespace contextml {

TypeEnv TypeEnv::extended(Ident name, TypePtr type) const {
  TypeEnv env;
  env.head_ = std::make_shared<Node>(
      Node{std::move(name), std::move(type), head_});
  return env;
}

const TypePtr* TypeEnv::lookup(const Ident& name) const {
  for (const Node* node = head_.get(); node; node = node->next.get()) {
    if (node->name == name) return &node->type;
  }
  return nullptr;
}

bool subtype(const TypePtr& t1, const TypePtr& t2) {
  if (t1->is_int() && t2->is_int()) return true;
  if (const auto* ly1 = t1->as_ly()) {
    const auto* ly2 = t2->as_ly();
    return ly2 && ly1->layers.is_subset_of(ly2->layers);
  }
  if (const auto* f1 = t1->as_arrow()) {
    const auto* f2 = t2->as_arrow();
    return f2 && subtype(f2->dom, f1->dom) && subtype(f1->cod, f2->cod) &&
           f1->precond.is_subset_of(f2->precond);
  }
  return false;
}

std::optional<TypePtr> join(const TypePtr& t1, const TypePtr& t2) {
  if (t1->is_int() && t2->is_int()) return Type::intt();
  if (const auto* ly1 = t1->as_ly()) {
    const auto* ly2 = t2->as_ly();
    if (!ly2) return std::nullopt;
    return Type::ly(ly1->layers.united(ly2->layers));
  }
  if (const auto* f1 = t1->as_arrow()) {
    const auto* f2 = t2->as_arrow();
    if (!f2) return std::nullopt;
    auto dom = meet(f1->dom, f2->dom);
    auto cod = join(f1->cod, f2->cod);
    if (!dom || !cod) return std::nullopt;
    return Type::arrow(std::move(*dom), f1->precond.united(f2->precond),
                       std::move(*cod));
  }
  return std::nullopt;
}

std::optional<TypePtr> meet(const TypePtr& t1, const TypePtr& t2) {
  if (t1->is_int() && t2->is_int()) return Type::intt();
  if (const auto* ly1 = t1->as_ly()) {
    const auto* ly2 = t2->as_ly();
    if (!ly2) return std::nullopt;
    return Type::ly(ly1->layers.intersected(ly2->layers));
  }
  if (const auto* f1 = t1->as_arrow()) {
    const auto* f2 = t2->as_arrow();
    if (!f2) return std::nullopt;
    auto dom = join(f1->dom, f2->dom);
    auto cod = meet(f1->cod, f2->cod);
    if (!dom || !cod) return std::nullopt;
    return Type::arrow(std::move(*dom), f1->precond.intersected(f2->precond),
                       std::move(*cod));
  }
  return std::nullopt;
}

namespace {

class Checker {
 public:
  Checker(const CheckOptions& options, const CheckFaults& faults)
      : options_(options), faults_(faults) {}

  std::vector<Diagnostic>& diagnostics() { return diagnostics_; }

  TypePtr synth_expr(const TypeEnv& env, const StaticContext& ctx,
                     const ExprPtr& e) {
    if (e->as<NumExpr>()) return Type::intt();
    if (const auto* layer = e->as<LayerExpr>()) {
      return Type::ly(LayerSet{layer->name});
    }
    if (const auto* var = e->as<VarExpr>()) {
      const TypePtr* bound = env.lookup(var->name);
      if (!bound) {
        report(diag_code::type_unbound,
               "unbound variable '" + var->name.str() + "'", e->span());
        return nullptr;
      }
      return *bound;  // may be null for a poisoned binding; stay quiet
    }
    if (const auto* fun = e->as<FunExpr>()) return synth_fun(env, *fun, e);
    if (const auto* app = e->as<AppExpr>()) return synth_app(env, ctx, *app, e);
    if (const auto* let = e->as<LetExpr>()) {
      TypePtr bound = synth_expr(env, ctx, let->bound);
      return synth_expr(env.extended(let->name, std::move(bound)), ctx,
                        let->body);
    }
    if (const auto* binop = e->as<BinOpExpr>()) {
      expect_int(env, ctx, binop->lhs);
      expect_int(env, ctx, binop->rhs);
      return Type::intt();
    }
    if (const auto* ife = e->as<IfExpr>()) {
      expect_int(env, ctx, ife->cond);
      TypePtr then_type = synth_expr(env, ctx, ife->then_branch);
      TypePtr else_type = synth_expr(env, ctx, ife->else_branch);
      if (!then_type || !else_type) return nullptr;
      auto merged = join(then_type, else_type);
      if (!merged) {
        report(diag_code::type_join,
               "branches of the conditional have incompatible types",
               e->span(), type_to_string(then_type),
               type_to_string(else_type));
        return nullptr;
      }
      return *merged;
    }
    if (const auto* with = e->as<WithExpr>()) return synth_with(env, ctx, *with, e);
    const auto* lexp = e->as<LExpExpr>();
    return synth_lexp(env, ctx, *lexp, e);
  }

 private:
  void report(std::string_view code, std::string message, Span span,
              std::optional<std::string> expected = std::nullopt,
              std::optional<std::string> found = std::nullopt) {
    diagnostics_.push_back(Diagnostic{std::string(code), std::move(message),
                                      span, std::move(expected),
                                      std::move(found)});
  }

  void expect_int(const TypeEnv& env, const StaticContext& ctx,
                  const ExprPtr& operand) {
    TypePtr type = synth_expr(env, ctx, operand);
    if (type && !subtype(type, Type::intt())) {
      report(diag_code::type_mismatch, "operand must be an int",
             operand->span(), "int", type_to_string(type));
    }
  }

  TypePtr synth_fun(const TypeEnv& env, const FunExpr& fun, const ExprPtr& e) {
    // The declared precondition plays the role of the function's activation
    // context: the body is checked under exactly that set.
    const StaticContext body_ctx{fun.precond};
    const bool self_used =
        fun.self != fun.param && free_vars(fun.body).count(fun.self) > 0;

    if (!fun.ret_type) {
      if (self_used) {
        report(diag_code::type_needannot,
               "recursive function '" + fun.self.str() +
                   "' needs a declared return type",
               e->span());
        return nullptr;
      }
      TypePtr body_type = synth_expr(env.extended(fun.param, fun.param_type),
                                     body_ctx, fun.body);
      if (!body_type) return nullptr;
      return Type::arrow(fun.param_type, fun.precond, std::move(body_type));
    }

    TypePtr self_type = Type::arrow(fun.param_type, fun.precond, fun.ret_type);
    // The param binds innermost, consistent with substitution order at
    // application time when the two names collide.
    TypeEnv body_env = env.extended(fun.self, self_type)
                           .extended(fun.param, fun.param_type);
    TypePtr body_type = synth_expr(body_env, body_ctx, fun.body);
    if (body_type && !subtype(body_type, fun.ret_type)) {
      report(diag_code::type_mismatch,
             "function body does not match the declared return type",
             fun.body->span(), type_to_string(fun.ret_type),
             type_to_string(body_type));
    }
    return self_type;
  }

  TypePtr synth_app(const TypeEnv& env, const StaticContext& ctx,
                    const AppExpr& app, const ExprPtr& e) {
    TypePtr fn_type = synth_expr(env, ctx, app.fn);
    TypePtr arg_type = synth_expr(env, ctx, app.arg);
    if (!fn_type) return nullptr;
    const auto* arrow = fn_type->as_arrow();
    if (!arrow) {
      report(diag_code::type_mismatch, "only functions can be applied",
             app.fn->span(), "a function type", type_to_string(fn_type));
      return nullptr;
    }
    if (arg_type && !subtype(arg_type, arrow->dom)) {
      report(diag_code::type_mismatch, "argument type does not match",
             app.arg->span(), type_to_string(arrow->dom),
             type_to_string(arg_type));
    }
    if (!faults_.skip_app_precondition &&
        !arrow->precond.is_subset_of(ctx.active)) {
      std::ostringstream msg;
      msg << "function precondition " << arrow->precond.str()
          << " is not satisfied; active layers " << ctx.active.str();
      report(diag_code::type_precond, msg.str(), e->span());
    }
    return arrow->cod;
  }

  TypePtr synth_with(const TypeEnv& env, const StaticContext& ctx,
                     const WithExpr& with, const ExprPtr& e) {
    TypePtr scrutinee_type = synth_expr(env, ctx, with.scrutinee);
    if (!scrutinee_type) return nullptr;
    const auto* ly = scrutinee_type->as_ly();
    if (!ly) {
      report(diag_code::type_mismatch, "with requires a layer value",
             with.scrutinee->span(), "a layer type",
             type_to_string(scrutinee_type));
      return nullptr;
    }
    if (ly->layers.empty()) {
      report(diag_code::type_emptylayerset,
             "the scrutinee can produce no layer at all",
             with.scrutinee->span());
      return nullptr;
    }
    if (with_depth_ >= options_.max_with_depth) {
      report(diag_code::type_depth,
             "nested with expressions exceed the checking depth limit",
             e->span());
      return nullptr;
    }
    ++with_depth_;
    // The body must be well-typed whichever of the possible layers ends up
    // pushed, so it is re-checked once per member of the annotation.
    TypePtr merged;
    bool poisoned = false;
    for (const LayerName& pushed : ly->layers) {
      TypePtr body_type = synth_expr(env, ctx.with_layer(pushed), with.body);
      if (!body_type) {
        poisoned = true;
        continue;
      }
      if (!merged) {
        merged = std::move(body_type);
        continue;
      }
      auto joined = join(merged, body_type);
      if (!joined) {
        report(diag_code::type_join,
               "with body types disagree across possible layers", e->span(),
               type_to_string(merged), type_to_string(body_type));
        poisoned = true;
        continue;
      }
      merged = std::move(*joined);
    }
    --with_depth_;
    return poisoned ? nullptr : merged;
  }

  TypePtr synth_lexp(const TypeEnv& env, const StaticContext& ctx,
                     const LExpExpr& lexp, const ExprPtr& e) {
    bool dispatchable = false;
    for (const auto& branch : lexp.branches) {
      if (ctx.active.contains(branch.layer)) {
        dispatchable = true;
        break;
      }
    }
    if (!dispatchable) {
      LayerSet branch_set;
      for (const auto& branch : lexp.branches) branch_set.insert(branch.layer);
      std::ostringstream msg;
      msg << "no branch layer of " << branch_set.str()
          << " is guaranteed active; active layers " << ctx.active.str();
      report(diag_code::type_dispatch, msg.str(), e->span());
    }
    // Every branch is checked, reachable or not.
    TypePtr merged;
    bool poisoned = false;
    for (const auto& branch : lexp.branches) {
      TypePtr branch_type = synth_expr(env, ctx, branch.body);
      if (!branch_type) {
        poisoned = true;
        continue;
      }
      if (!merged) {
        merged = std::move(branch_type);
        continue;
      }
      auto joined = join(merged, branch_type);
      if (!joined) {
        report(diag_code::type_join,
               "branches of the layered expression have incompatible types",
               e->span(), type_to_string(merged), type_to_string(branch_type));
        poisoned = true;
        continue;
      }
      merged = std::move(*joined);
    }
    return poisoned ? nullptr : merged;
  }

  CheckOptions options_;
  CheckFaults faults_;
  std::vector<Diagnostic> diagnostics_;
  int with_depth_ = 0;
};

}  // namespace

SynthResult synth(const TypeEnv& env, const StaticContext& context,
                  const ExprPtr& e, const CheckOptions& options,
                  const CheckFaults& faults) {
  Checker checker(options, faults);
  TypePtr type = checker.synth_expr(env, context, e);
  return SynthResult{std::move(type), std::move(checker.diagnostics())};
}

SynthResult check_program(const ExprPtr& e, const LayerSet& initial,
                          const CheckOptions& options,
                          const CheckFaults& faults) {
  return synth(TypeEnv{}, StaticContext{initial}, e, options, faults);
}

}  // namespace contextml

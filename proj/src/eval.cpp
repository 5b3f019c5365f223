#include "contextml/eval.hpp"

#include <sstream>

#include "contextml/pretty.hpp"
#include "json.hpp"

namespace contextml {

std::optional<std::size_t> dispatch(const Context& context,
                                    const std::vector<LayerName>& branch_layers,
                                    const EvalFaults& faults) {
  const auto& stack = context.entries();
  const auto scan_entry = [&](const LayerName& active)
      -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < branch_layers.size(); ++j) {
      if (branch_layers[j] == active) return j;
    }
    return std::nullopt;
  };
  if (faults.reverse_dispatch_scan) {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (auto j = scan_entry(*it)) return j;
    }
    return std::nullopt;
  }
  for (const auto& active : stack) {
    if (auto j = scan_entry(active)) return j;
  }
  return std::nullopt;
}

namespace {

StepResult stepped(ExprPtr next, std::string_view rule, Context under) {
  return StepResult{StepResult::Kind::Stepped, std::move(next), {}, rule,
                    std::move(under)};
}

StepResult stuck(std::string_view code, std::string message, Span span) {
  return StepResult{
      StepResult::Kind::Stuck,
      nullptr,
      Diagnostic{std::string(code), std::move(message), span, std::nullopt,
                 std::nullopt},
      {},
      {}};
}

StepResult value_result() {
  return StepResult{StepResult::Kind::IsValue, nullptr, {}, {}, {}};
}

std::optional<std::uint64_t> apply_op(BinOpKind op, std::uint64_t a,
                                      std::uint64_t b) {
  switch (op) {
    case BinOpKind::Add: return a + b;
    case BinOpKind::Sub: return a < b ? 0 : a - b;  // naturals: saturate
    case BinOpKind::Mul: return a * b;
    case BinOpKind::Div:
      if (b == 0) return std::nullopt;
      return a / b;
    case BinOpKind::Eq: return a == b ? 1 : 0;
    case BinOpKind::Lt: return a < b ? 1 : 0;
    case BinOpKind::Gt: return a > b ? 1 : 0;
  }
  return std::nullopt;
}

StepResult step_impl(const Context& context, const ExprPtr& e,
                     const EvalFaults& faults) {
  if (is_value(e)) return value_result();

  if (const auto* var = e->as<VarExpr>()) {
    return stuck(diag_code::runtime_illformed,
                 "unbound variable '" + var->name.str() + "' at run time",
                 e->span());
  }

  if (const auto* app = e->as<AppExpr>()) {
    StepResult fn_step = step_impl(context, app->fn, faults);
    if (fn_step.kind == StepResult::Kind::Stepped) {
      fn_step.next = make_app(std::move(fn_step.next), app->arg, e->span());
      return fn_step;
    }
    if (fn_step.kind == StepResult::Kind::Stuck) return fn_step;
    StepResult arg_step = step_impl(context, app->arg, faults);
    if (arg_step.kind == StepResult::Kind::Stepped) {
      arg_step.next = make_app(app->fn, std::move(arg_step.next), e->span());
      return arg_step;
    }
    if (arg_step.kind == StepResult::Kind::Stuck) return arg_step;
    const auto* fun = app->fn->as<FunExpr>();
    if (!fun) {
      return stuck(diag_code::runtime_illformed,
                   "application of a non-function value", e->span());
    }
    // Recursive unfolding: the param first, then the closure for the self
    // name, so the param wins if the two names collide.
    ExprPtr body = substitute(fun->body, fun->param, app->arg);
    body = substitute(body, fun->self, app->fn);
    return stepped(std::move(body), "app", context);
  }

  if (const auto* let = e->as<LetExpr>()) {
    StepResult bound_step = step_impl(context, let->bound, faults);
    if (bound_step.kind == StepResult::Kind::Stepped) {
      bound_step.next =
          make_let(let->name, std::move(bound_step.next), let->body, e->span());
      return bound_step;
    }
    if (bound_step.kind == StepResult::Kind::Stuck) return bound_step;
    return stepped(substitute(let->body, let->name, let->bound), "let",
                   context);
  }

  if (const auto* binop = e->as<BinOpExpr>()) {
    StepResult lhs_step = step_impl(context, binop->lhs, faults);
    if (lhs_step.kind == StepResult::Kind::Stepped) {
      lhs_step.next = make_binop(binop->op, std::move(lhs_step.next),
                                 binop->rhs, e->span());
      return lhs_step;
    }
    if (lhs_step.kind == StepResult::Kind::Stuck) return lhs_step;
    StepResult rhs_step = step_impl(context, binop->rhs, faults);
    if (rhs_step.kind == StepResult::Kind::Stepped) {
      rhs_step.next = make_binop(binop->op, binop->lhs,
                                 std::move(rhs_step.next), e->span());
      return rhs_step;
    }
    if (rhs_step.kind == StepResult::Kind::Stuck) return rhs_step;
    const auto* lhs = binop->lhs->as<NumExpr>();
    const auto* rhs = binop->rhs->as<NumExpr>();
    if (!lhs || !rhs) {
      return stuck(diag_code::runtime_illformed,
                   "arithmetic on a non-number value", e->span());
    }
    const auto result = apply_op(binop->op, lhs->value, rhs->value);
    if (!result) {
      return stuck(diag_code::runtime_divzero, "division by zero", e->span());
    }
    return stepped(make_num(*result, e->span()), "op", context);
  }

  if (const auto* ife = e->as<IfExpr>()) {
    StepResult cond_step = step_impl(context, ife->cond, faults);
    if (cond_step.kind == StepResult::Kind::Stepped) {
      cond_step.next = make_if(std::move(cond_step.next), ife->then_branch,
                               ife->else_branch, e->span());
      return cond_step;
    }
    if (cond_step.kind == StepResult::Kind::Stuck) return cond_step;
    const auto* cond = ife->cond->as<NumExpr>();
    if (!cond) {
      return stuck(diag_code::runtime_illformed,
                   "if condition is not a number", e->span());
    }
    if (cond->value != 0) {
      return stepped(ife->then_branch, "if_true", context);
    }
    return stepped(ife->else_branch, "if_false", context);
  }

  if (const auto* with = e->as<WithExpr>()) {
    if (!is_value(with->scrutinee)) {
      // with3: evaluate the scrutinee in the unchanged context.
      StepResult scrutinee_step = step_impl(context, with->scrutinee, faults);
      if (scrutinee_step.kind == StepResult::Kind::Stepped) {
        scrutinee_step.next = make_with(std::move(scrutinee_step.next),
                                        with->body, e->span());
        return scrutinee_step;
      }
      return scrutinee_step;
    }
    const auto* layer = with->scrutinee->as<LayerExpr>();
    if (!layer) {
      return stuck(diag_code::runtime_illformed,
                   "with scrutinee is not a layer", with->scrutinee->span());
    }
    if (is_value(with->body)) {
      // with2: the activation scope ends; the layer is discarded.
      return stepped(with->body, "with2", context);
    }
    // with1: evaluate the body under the pushed layer.
    StepResult body_step =
        step_impl(context.pushed(layer->name), with->body, faults);
    if (body_step.kind == StepResult::Kind::Stepped) {
      body_step.next =
          make_with(with->scrutinee, std::move(body_step.next), e->span());
    }
    return body_step;
  }

  const auto* lexp = e->as<LExpExpr>();
  std::vector<LayerName> branch_layers;
  branch_layers.reserve(lexp->branches.size());
  for (const auto& branch : lexp->branches) {
    branch_layers.push_back(branch.layer);
  }
  if (auto index = dispatch(context, branch_layers, faults)) {
    return stepped(lexp->branches[*index].body, "lexp", context);
  }
  std::ostringstream msg;
  msg << "no active layer matches: context " << context.str()
      << ", branch layers ";
  LayerSet branch_set;
  for (const auto& name : branch_layers) branch_set.insert(name);
  msg << branch_set.str();
  return stuck(diag_code::runtime_dispatch, msg.str(), e->span());
}

}  // namespace

StepResult step(const Context& context, const ExprPtr& e,
                const EvalFaults& faults) {
  return step_impl(context, e, faults);
}

EvalResult eval(const Context& context, ExprPtr e, std::uint64_t fuel,
                const EvalFaults& faults) {
  std::uint64_t steps = 0;
  while (true) {
    if (is_value(e)) {
      return EvalResult{EvalResult::Status::Value, std::move(e), {}, steps};
    }
    if (steps == fuel) {
      return EvalResult{EvalResult::Status::FuelExhausted, nullptr, {}, steps};
    }
    StepResult result = step(context, e, faults);
    if (result.kind == StepResult::Kind::Stuck) {
      return EvalResult{EvalResult::Status::Stuck, nullptr,
                        std::move(result.diagnostic), steps};
    }
    e = std::move(result.next);
    ++steps;
  }
}

TraceResult trace(const Context& context, ExprPtr e, std::uint64_t fuel,
                  const EvalFaults& faults) {
  TraceResult out;
  out.configs.push_back(TraceEntry{context, e, "", std::nullopt});
  std::uint64_t steps = 0;
  while (true) {
    if (is_value(e)) {
      out.result = EvalResult{EvalResult::Status::Value, e, {}, steps};
      return out;
    }
    if (steps == fuel) {
      out.result =
          EvalResult{EvalResult::Status::FuelExhausted, nullptr, {}, steps};
      return out;
    }
    StepResult result = step(context, e, faults);
    if (result.kind == StepResult::Kind::Stuck) {
      out.result = EvalResult{EvalResult::Status::Stuck, nullptr,
                              std::move(result.diagnostic), steps};
      return out;
    }
    e = result.next;
    ++steps;
    out.configs.push_back(TraceEntry{context, e, std::string(result.rule),
                                     std::move(result.redex_context)});
  }
}

std::string TraceResult::render_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const TraceEntry& entry = configs[i];
    if (i > 0) {
      out << "  --" << entry.rule;
      if (entry.under) out << " under " << entry.under->str();
      out << "-->\n";
    }
    out << entry.context.str() << " |- " << pretty(entry.expr) << '\n';
  }
  switch (result.status) {
    case EvalResult::Status::Value:
      out << "=> value " << pretty(result.value) << " (" << result.steps
          << " steps)\n";
      break;
    case EvalResult::Status::Stuck:
      out << "=> stuck: " << result.diagnostic.render() << '\n';
      break;
    case EvalResult::Status::FuelExhausted:
      out << "=> fuel exhausted after " << result.steps << " steps\n";
      break;
  }
  return out.str();
}

std::string TraceResult::render_json_lines() const {
  std::ostringstream out;
  const auto stack_json = [](const Context& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& name : c.entries()) arr.push_back(name.str());
    return arr;
  };
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const TraceEntry& entry = configs[i];
    nlohmann::json j{{"step", i},
                     {"stack", stack_json(entry.context)},
                     {"expr", pretty(entry.expr)}};
    if (i > 0) {
      j["rule"] = entry.rule;
      if (entry.under) j["under"] = stack_json(*entry.under);
    }
    out << j.dump() << '\n';
  }
  nlohmann::json last;
  switch (result.status) {
    case EvalResult::Status::Value:
      last = {{"result", "value"},
              {"value", pretty(result.value)},
              {"steps", result.steps}};
      break;
    case EvalResult::Status::Stuck:
      last = {{"result", "stuck"},
              {"diagnostic", nlohmann::json::parse(result.diagnostic.to_json())},
              {"steps", result.steps}};
      break;
    case EvalResult::Status::FuelExhausted:
      last = {{"result", "fuel_exhausted"}, {"steps", result.steps}};
      break;
  }
  out << last.dump() << '\n';
  return out.str();
}

}  // namespace contextml

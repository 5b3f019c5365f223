#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contextml/ast.hpp"
#include "contextml/diagnostics.hpp"
#include "contextml/names.hpp"

namespace contextml {

/// Fault injection for the soundness suite's mutation-sensitivity tests.
/// Production entry points default every fault to off.
struct EvalFaults {
  /// Scan the context bottom-up instead of top-down in `dispatch`.
  bool reverse_dispatch_scan = false;
};

/// Scans the context top-down; at the first stack entry equal to some branch
/// layer, returns the index of the first branch carrying that layer.
/// nullopt when no stack entry matches any branch.
std::optional<std::size_t> dispatch(const Context& context,
                                    const std::vector<LayerName>& branch_layers,
                                    const EvalFaults& faults = {});

struct StepResult {
  enum class Kind { Stepped, IsValue, Stuck };

  Kind kind;
  ExprPtr next;                  // Stepped
  Diagnostic diagnostic;         // Stuck
  std::string_view rule;         // Stepped: the axiom fired at the redex
  Context redex_context;         // Stepped: the stack in force at the redex
};

/// One deterministic call-by-value step of the closed expression `e` in
/// `context`. The reported rule is the axiom applied at the redex (with2,
/// lexp, app, let, op, if_true, if_false); congruence descents, including
/// the layer pushes of nested with bodies, are folded into `redex_context`.
StepResult step(const Context& context, const ExprPtr& e,
                const EvalFaults& faults = {});

struct EvalResult {
  enum class Status { Value, Stuck, FuelExhausted };

  Status status;
  ExprPtr value;          // Value
  Diagnostic diagnostic;  // Stuck
  std::uint64_t steps = 0;

  bool is_value() const { return status == Status::Value; }
  bool is_stuck() const { return status == Status::Stuck; }
};

/// Iterates `step` until a value, a stuck state, or fuel exhaustion after
/// exactly `fuel` steps.
EvalResult eval(const Context& context, ExprPtr e, std::uint64_t fuel,
                const EvalFaults& faults = {});

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// One configuration of a run. `rule` and `under` describe the transition
/// that produced it and are empty for the initial configuration. The
/// top-level `context` never changes along a trace; pushes are local to
/// with bodies and show up in `under`.
struct TraceEntry {
  Context context;
  ExprPtr expr;
  std::string rule;
  std::optional<Context> under;
};

struct TraceResult {
  std::vector<TraceEntry> configs;
  EvalResult result;

  /// One line per configuration, "[L1, L2] |- <expr>", with transition
  /// annotations between lines and a terminal status line.
  std::string render_text() const;

  /// One JSON object per configuration plus a final result object.
  std::string render_json_lines() const;
};

TraceResult trace(const Context& context, ExprPtr e, std::uint64_t fuel,
                  const EvalFaults& faults = {});

}  // namespace contextml

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "contextml/ast.hpp"
#include "contextml/diagnostics.hpp"
#include "contextml/names.hpp"
#include "contextml/type.hpp"

namespace contextml {

/// Immutable type environment; extension shadows, lookup returns the
/// innermost binding. A binding may carry a null type when the bound
/// expression failed to check; such bindings stay quiet at use sites.
class TypeEnv {
 public:
  TypeEnv() = default;

  TypeEnv extended(Ident name, TypePtr type) const;

  /// nullptr when unbound; otherwise the bound (possibly null) type.
  const TypePtr* lookup(const Ident& name) const;

 private:
  struct Node {
    Ident name;
    TypePtr type;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

/// The checker's knowledge of the active layers: the set abstraction of the
/// run-time stack. Grows along with bodies, never shrinks within a scope.
struct StaticContext {
  LayerSet active;

  StaticContext with_layer(const LayerName& layer) const {
    StaticContext extended = *this;
    extended.active.insert(layer);
    return extended;
  }
};

/// t1 <= t2: int <= int; ly phi <= ly phi' iff phi is a subset of phi';
/// arrows contravariant in the domain, covariant in the precondition and
/// codomain.
bool subtype(const TypePtr& t1, const TypePtr& t2);

/// Least upper bound under `subtype`; nullopt when the shapes are
/// incompatible (reported as TYPE_JOIN at merge points).
std::optional<TypePtr> join(const TypePtr& t1, const TypePtr& t2);

/// Greatest lower bound; nullopt on incompatible shapes (TYPE_MEET).
std::optional<TypePtr> meet(const TypePtr& t1, const TypePtr& t2);

struct CheckOptions {
  /// Nested with bodies are re-checked once per possible pushed layer; this
  /// bounds the exponential recursion. Exceeding it is a TYPE_DEPTH error.
  int max_with_depth = 16;
};

/// Fault injection for the soundness suite's mutation-sensitivity tests.
struct CheckFaults {
  /// Drop the "precondition is active" requirement at application sites.
  bool skip_app_precondition = false;
};

struct SynthResult {
  TypePtr type;  // null when synthesis failed at the root
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return type != nullptr && diagnostics.empty(); }
};

/// Synthesizes the minimal type of `e` under `env` and the static context.
/// Collects diagnostics instead of stopping at the first; a node whose type
/// cannot be recovered poisons its parents without cascading reports.
SynthResult synth(const TypeEnv& env, const StaticContext& context,
                  const ExprPtr& e, const CheckOptions& options = {},
                  const CheckFaults& faults = {});

/// Whole-program entry point: synthesis in the empty environment with the
/// given initial active set. Open programs report TYPE_UNBOUND per use.
SynthResult check_program(const ExprPtr& e, const LayerSet& initial,
                          const CheckOptions& options = {},
                          const CheckFaults& faults = {});

}  // namespace contextml

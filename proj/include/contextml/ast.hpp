#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "contextml/diagnostics.hpp"
#include "contextml/names.hpp"
#include "contextml/type.hpp"

namespace contextml {

class Expr;

/// Expressions are immutable and shared; substitution builds new spines and
/// shares untouched subtrees.
using ExprPtr = std::shared_ptr<const Expr>;

/// Binary operators. Comparisons yield 1 for true and 0 for false.
enum class BinOpKind { Add, Sub, Mul, Div, Eq, Lt, Gt };

std::string_view binop_symbol(BinOpKind op);

struct NumExpr {
  std::uint64_t value = 0;
};

struct LayerExpr {
  LayerName name;
};

struct VarExpr {
  Ident name;
};

/// fun self (param: param_type) [: ret_type] [requires precond] => body
/// `self` and `param` both bind in `body`; `param` wins if they collide.
/// The annotations drive the checker and are inert at run time.
struct FunExpr {
  Ident self;
  Ident param;
  TypePtr param_type;
  TypePtr ret_type;  // null when omitted
  LayerSet precond;
  ExprPtr body;
};

struct AppExpr {
  ExprPtr fn;
  ExprPtr arg;
};

struct LetExpr {
  Ident name;
  ExprPtr bound;
  ExprPtr body;
};

struct BinOpExpr {
  BinOpKind op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct IfExpr {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

/// with (scrutinee) in body: activates the layer the scrutinee evaluates to
/// for the extent of body.
struct WithExpr {
  ExprPtr scrutinee;
  ExprPtr body;
};

struct LExpBranch {
  LayerName layer;
  ExprPtr body;
};

/// {L1. e1, ..., Ln. en}: a behavioural variation resolved against the
/// context by the dispatch scan. Always has at least one branch.
struct LExpExpr {
  std::vector<LExpBranch> branches;
};

class Expr {
 public:
  using Node = std::variant<NumExpr, LayerExpr, VarExpr, FunExpr, AppExpr,
                            LetExpr, BinOpExpr, IfExpr, WithExpr, LExpExpr>;

  Expr(Node node, Span span) : node_(std::move(node)), span_(span) {}

  const Node& node() const { return node_; }
  const Span& span() const { return span_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
  Span span_;
};

ExprPtr make_num(std::uint64_t value, Span span = {});
ExprPtr make_layer(LayerName name, Span span = {});
ExprPtr make_var(Ident name, Span span = {});
ExprPtr make_fun(Ident self, Ident param, TypePtr param_type, TypePtr ret_type,
                 LayerSet precond, ExprPtr body, Span span = {});
ExprPtr make_app(ExprPtr fn, ExprPtr arg, Span span = {});
ExprPtr make_let(Ident name, ExprPtr bound, ExprPtr body, Span span = {});
ExprPtr make_binop(BinOpKind op, ExprPtr lhs, ExprPtr rhs, Span span = {});
ExprPtr make_if(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch,
                Span span = {});
ExprPtr make_with(ExprPtr scrutinee, ExprPtr body, Span span = {});
ExprPtr make_lexp(std::vector<LExpBranch> branches, Span span = {});

/// True for numbers, layer literals, and functions: the value grammar.
/// Closedness is an invariant of evaluation, not checked here.
bool is_value(const Expr& e);
inline bool is_value(const ExprPtr& e) { return is_value(*e); }

/// Structural equality, ignoring spans. Layer sets and the optional return
/// annotation participate (an omitted annotation differs from a declared
/// one).
bool structurally_equal(const Expr& a, const Expr& b);
inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  return structurally_equal(*a, *b);
}

/// Free variables. FunExpr binds both its self and param names in the body.
std::set<Ident> free_vars(const Expr& e);
inline std::set<Ident> free_vars(const ExprPtr& e) { return free_vars(*e); }

bool is_closed(const Expr& e);
inline bool is_closed(const ExprPtr& e) { return is_closed(*e); }

/// Replaces every free occurrence of `name` in `e` by `value`. `value` must
/// be closed, so capture cannot occur. Returns `e` itself when `name` is not
/// free in it.
ExprPtr substitute(const ExprPtr& e, const Ident& name, const ExprPtr& value);

/// Node count, used by the shrinker to order candidates.
std::size_t expr_size(const Expr& e);

}  // namespace contextml

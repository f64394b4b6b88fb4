#pragma once

// Substitution, evaluation, simplification and bounded comparison of
// predicates.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"

namespace gclrip {

// ---------------------------------------------------------------------------
// Substitution

Expr substitute(const Expr& e, const std::string& name, const Expr& value);
/// Simultaneous substitution; every right-hand side sees the old values.
Expr substitute_all(const Expr& e, const std::map<std::string, Expr>& values);

/// Replaces free occurrences of `name`; markers record [name\value].
Pred substitute(const Pred& p, const std::string& name, const Expr& value);
/// Simultaneous substitution. Markers receive an equivalent sequential list,
/// routed through fresh temporaries when the substitutions interfere.
Pred substitute_all(const Pred& p, const std::map<std::string, Expr>& values);

/// Collapses a sequential substitution list (leftmost applied first) into
/// the equivalent simultaneous map.
std::map<std::string, Expr> compose(const std::vector<Substitution>& sequential);

/// True for names minted internally ("x$1"); they never appear in sources.
bool is_fresh_name(const std::string& name);

// ---------------------------------------------------------------------------
// Evaluation

Rational eval_expr(const Expr& e, const State& s);
/// Marker nodes raise EvalError(marker_not_ground).
bool eval_pred(const Pred& p, const State& s);
/// Evaluates with markers answered by `marker_value`.
bool eval_pred(const Pred& p, const State& s,
               const std::function<bool(const pred::Marker&)>& marker_value);

// ---------------------------------------------------------------------------
// Simplification

struct SimplifyOptions {
  /// When set, marker substitutions for names outside the scope are dropped:
  /// the postcondition is taken to mention only these names.
  std::optional<std::set<std::string>> marker_scope;
};

/// Sound rewriting to a fixpoint: constant absorption, double negation,
/// negation pushed onto comparisons, complement and duplicate detection in
/// flattened conjunctions/disjunctions, ground and same-operand comparison
/// folding, and marker canonicalisation. Implications are kept.
Pred simplify(const Pred& p, const SimplifyOptions& options = {});

/// Canonical marker: composed, identity and fresh-name entries dropped, and
/// emitted in name order when the remaining entries do not interfere.
pred::Marker canonical_marker(const pred::Marker& m,
                              const std::optional<std::set<std::string>>& scope = {});

// ---------------------------------------------------------------------------
// Bounded comparison

/// Projection semantics: a marker M[σ] stands for an opaque proposition keyed
/// by its tag and the σ-images of `projection`. Two predicates differ at a
/// state when some truth assignment to the distinct keys separates them.
struct MarkerPolicy {
  std::vector<std::string> projection;
};

struct CompareOptions {
  std::uint64_t max_states = default_state_cap;
  std::size_t max_witnesses = 100;
  /// States failing this predicate are skipped.
  std::optional<Pred> assume;
  MarkerPolicy markers;
};

enum class Verdict { equivalent_on_domain, differ };

struct ComparisonResult {
  Verdict verdict = Verdict::equivalent_on_domain;
  std::vector<State> witnesses;
  DomainSpec domain;
  std::uint64_t states_checked = 0;
  std::uint64_t differing_states = 0;
};

/// True when p1 and p2 take different values at `s` under the policy.
bool differ_at(const Pred& p1, const Pred& p2, const State& s,
               const MarkerPolicy& markers = {});

ComparisonResult bounded_compare(const Pred& p1, const Pred& p2,
                                 const DomainSpec& domain,
                                 const CompareOptions& options = {});

const char* to_string(Verdict v);

}  // namespace gclrip

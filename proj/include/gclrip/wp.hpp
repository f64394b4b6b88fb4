#pragma once

// Weakest preconditions with bounded loop unrolling, and checking of loop
// annotations (invariant preservation, variant decrease and positivity).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"
#include "gclrip/predicate.hpp"

namespace gclrip {

struct DerivationStep {
  std::string rule;
  Pred before;
  Pred after;
};

struct WpOptions {
  /// Loop iterations considered: H_0 through H_unroll.
  int unroll = 1;
  /// Result variable assigned by return(E).
  std::string program_name;
  /// Postcondition established by a return; defaults to the normal one.
  std::optional<Pred> return_post;
  std::optional<std::set<std::string>> marker_scope;
  bool simplify_result = true;
  bool record_derivation = false;
};

struct WpResult {
  Pred predicate;
  std::vector<DerivationStep> derivation;
};

/// Statement-level wp. A return ends execution: its continuation within
/// enclosing sequences is skipped and the return postcondition applies.
WpResult wp(const Stmt& s, const Pred& post, const WpOptions& options = {});

/// wp of a program body with the program name as result variable.
WpResult wp(const Program& program, const Pred& post, int unroll = 1);

/// Raw transformer with separate normal and return postconditions, no
/// simplification.
Pred wp_raw(const Stmt& s, const Pred& normal, const Pred& on_return,
            const std::string& program_name, int unroll);

/// Disjunction H_0 .. H_k for a loop.
Pred loop_wp(const Stmt& loop, const Pred& normal, const Pred& on_return,
             const std::string& program_name, int unroll);

enum class LwdcObligation { none, invariant_preserved, variant_decreases, variant_positive };

const char* to_string(LwdcObligation o);

struct ObligationOutcome {
  LwdcObligation obligation;
  /// Guarded command the obligation belongs to; positivity has none.
  std::optional<std::size_t> branch;
  bool holds = true;
  std::optional<State> counterexample;
};

struct LwdcResult {
  bool holds_on_domain = true;
  LwdcObligation failing_obligation = LwdcObligation::none;
  std::optional<State> counterexample;
  /// Guarded command whose obligation failed, when one did.
  std::optional<std::size_t> branch;
  std::uint64_t states_checked = 0;
  /// Every obligation, each checked over the whole domain.
  std::vector<ObligationOutcome> outcomes;
};

/// Checks the annotation of `loop` on every state of `domain` restricted to
/// the names the obligations mention. Returns inside the body count as
/// leaving the loop, so their obligations are vacuous.
LwdcResult check_lwdc(const Stmt& loop, const DomainSpec& domain,
                      std::uint64_t max_states = default_state_cap);

/// The obligations themselves, in check order: for each command i the
/// preservation, then the decrease formula; finally positivity.
struct LwdcObligations {
  std::vector<Pred> preserved;
  std::vector<Pred> decreases;
  Pred positive;
  std::string fresh;
};

LwdcObligations lwdc_obligations(const Stmt& loop);

}  // namespace gclrip

#pragma once

// Reachability, infection and propagation conditions for a mutant, computed
// symbolically and checked against bounded concrete execution.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"
#include "gclrip/mutation.hpp"
#include "gclrip/oracle.hpp"
#include "gclrip/rc.hpp"

namespace gclrip {

enum class Classification { strongly_killable, weakly_killable_only, no_kill_found_on_domain };

const char* to_string(Classification c);

struct InfectionResult {
  /// Closed form for the recognised shapes of change; absent otherwise.
  std::optional<Pred> symbolic;
  /// L-states after which the original and mutated statement disagree.
  std::set<State> semantic_witnesses;
  /// Every L-state reached by some input.
  std::set<State> reachable_l_states;
  /// Whether `symbolic` selects exactly the witnesses among reachable L-states.
  std::optional<bool> symbolic_agrees;
};

struct PropagationResult {
  /// wp of the original and mutated suffix against the postcondition marker.
  Pred wp_u = truth(true);
  Pred wp_m = truth(true);
  /// Infected L-states from which the outputs differ.
  std::set<State> semantic;
  /// Whether wp_u/wp_m differ exactly at the propagating infected L-states.
  /// Absent when the suffix starts at an enclosing loop.
  std::optional<bool> symbolic_agrees;
};

struct RipOptions {
  int unroll = 1;
  std::uint64_t fuel = default_fuel;
  std::uint64_t max_states = default_state_cap;
};

struct RipReport {
  std::string program_name;
  ModificationTemplate modification;
  ModificationClass modification_class{ModificationRow::statement_replaced, std::nullopt};
  Pred reachability = truth(true);
  LoopPolicy reachability_policy = LoopPolicy::none;
  /// Reachability evaluated true at every L-state; only checked when no
  /// loop rule was involved and the statements between the innermost guard
  /// and L do not write the guard variables.
  std::optional<bool> reachability_consistent;
  InfectionResult infection;
  PropagationResult propagation;
  /// Inputs that reach L, infect, and propagate.
  std::set<State> full_spec;
  std::set<State> reached_inputs;
  std::set<State> infected_inputs;
  Classification classification = Classification::no_kill_found_on_domain;
  /// Independent whole-program runs for cross-checking.
  KillReport oracle;
  DomainSpec domain;
  int unroll_bound = 1;
  std::uint64_t timeouts = 0;
};

/// rc(prog_b), conjoined with the guards on the path and rc(prog_jb) for a
/// guarded-command change.
Pred reachability(const ModificationTemplate& t, LoopPolicy* policy = nullptr);

std::optional<Pred> symbolic_infection(const ModificationTemplate& t);

/// The statements whose wp is compared for propagation: the changed
/// statement followed by everything after it, or from the innermost
/// enclosing loop when there is one.
Stmt propagation_suffix(const ModificationTemplate& t, bool mutant);

RipReport full_test_spec(const Program& original, const Program& mutant,
                         const DomainSpec& domain, const RipOptions& options = {});

InfectionResult infection(const Program& original, const Program& mutant,
                          const DomainSpec& domain, const RipOptions& options = {});

PropagationResult propagation(const Program& original, const Program& mutant,
                              const DomainSpec& domain, const RipOptions& options = {});

}  // namespace gclrip

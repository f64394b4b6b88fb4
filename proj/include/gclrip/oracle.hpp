#pragma once

// Concrete kill analysis: run original and mutant on every input of a
// domain and compare outputs (strong) and stores right after the changed
// statement (weak).

#include <cstdint>
#include <set>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"
#include "gclrip/interpreter.hpp"
#include "gclrip/mutation.hpp"

namespace gclrip {

struct KillReport {
  std::set<State> strong_kill;
  std::set<State> weak_kill;
  std::set<State> reached;
  std::uint64_t total_enumerated = 0;
  /// Inputs excluded because either run ran out of fuel.
  std::uint64_t timeouts = 0;
};

struct OracleOptions {
  std::uint64_t fuel = default_fuel;
  std::uint64_t max_states = default_state_cap;
};

/// `location` addresses the changed statement in both normalised bodies.
KillReport kill_analysis(const Program& original, const Program& mutant, const Location& location,
                         const DomainSpec& domain, const OracleOptions& options = {});

/// Locates the change first, then runs kill_analysis.
KillReport kill_analysis(const Program& original, const Program& mutant,
                         const DomainSpec& domain, const OracleOptions& options = {});

}  // namespace gclrip

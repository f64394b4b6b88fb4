#include "gclrip/oracle.hpp"

namespace gclrip {

namespace {

struct TracedRun {
  Outcome outcome;
  std::vector<Machine::Visit> visits;
};

TracedRun traced(const Program& p, const StmtNode* watched, const State& input,
                 std::uint64_t fuel) {
  Machine m(p.name, input, fuel);
  m.trace(watched);
  m.push(p.body);
  m.run();
  return {m.outcome(), m.visits()};
}

bool same_after(const Machine::Visit& a, const Machine::Visit& b) {
  return a.status_after == b.status_after && a.value_after == b.value_after && a.after == b.after;
}

}  // namespace

KillReport kill_analysis(const Program& original, const Program& mutant, const Location& location,
                         const DomainSpec& domain, const OracleOptions& options) {
  const Program u = normalize(original);
  const Program m = normalize(mutant);
  const StmtNode* l_u = resolve(u.body, location).id();
  const StmtNode* l_m = resolve(m.body, location).id();

  KillReport report;
  for_each_state(domain, options.max_states, [&](const State& input) {
    ++report.total_enumerated;
    TracedRun ru = traced(u, l_u, input, options.fuel);
    TracedRun rm = traced(m, l_m, input, options.fuel);
    if (ru.outcome.kind == OutcomeKind::fuel_exhausted ||
        rm.outcome.kind == OutcomeKind::fuel_exhausted) {
      ++report.timeouts;
      return;
    }
    if (!ru.visits.empty()) report.reached.insert(input);
    if (!ru.outcome.same_output(rm.outcome)) report.strong_kill.insert(input);
    const std::size_t n = std::min(ru.visits.size(), rm.visits.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (ru.visits[k].before != rm.visits[k].before) break;
      if (!same_after(ru.visits[k], rm.visits[k])) {
        report.weak_kill.insert(input);
        break;
      }
    }
  });
  return report;
}

KillReport kill_analysis(const Program& original, const Program& mutant,
                         const DomainSpec& domain, const OracleOptions& options) {
  return kill_analysis(original, mutant, locate_mutation(original, mutant).location, domain,
                       options);
}

}  // namespace gclrip

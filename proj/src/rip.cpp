#include "gclrip/rip.hpp"

#include <map>

#include "gclrip/errors.hpp"
#include "gclrip/predicate.hpp"
#include "gclrip/wp.hpp"

namespace gclrip {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::strongly_killable: return "strongly_killable";
    case Classification::weakly_killable_only: return "weakly_killable_only";
    case Classification::no_kill_found_on_domain: return "no_kill_found_on_domain";
  }
  return "no_kill_found_on_domain";
}

Pred reachability(const ModificationTemplate& t, LoopPolicy* policy) {
  RcResult before = rc(t.prog_b);
  LoopPolicy used = before.loop_policy_used;
  std::vector<Pred> parts{before.predicate};
  if (t.kind == ModificationKind::guarded_command) {
    for (const auto& step : t.guard_path) parts.push_back(step.guard);
    RcResult inner = rc(t.prog_jb);
    used = std::max(used, inner.loop_policy_used);
    parts.push_back(inner.predicate);
  }
  if (policy) *policy = used;
  return simplify(conjunction(parts));
}

std::optional<Pred> symbolic_infection(const ModificationTemplate& t) {
  const Stmt& u = t.changed_u();
  const Stmt& m = t.changed_m();
  const auto* au = u.get<stmt::Assign>();
  const auto* am = m.get<stmt::Assign>();
  if (au && am && au->targets.size() == am->targets.size()) {
    if (au->targets == am->targets) {
      std::vector<Pred> parts;
      for (std::size_t i = 0; i < au->values.size(); ++i) {
        if (!(au->values[i] == am->values[i])) parts.push_back(ne(au->values[i], am->values[i]));
      }
      return simplify(disjunction(parts));
    }
    if (au->targets.size() == 1 && au->values[0] == am->values[0]) {
      const Expr& e = au->values[0];
      return simplify(ne(var(au->targets[0]), e) || ne(var(am->targets[0]), e));
    }
    return std::nullopt;
  }
  const auto* cu = guarded_commands(u);
  const auto* cm = guarded_commands(m);
  if (cu && cm && is_loop(u) == is_loop(m) && cu->size() == cm->size()) {
    std::vector<Pred> parts;
    for (std::size_t j = 0; j < cu->size(); ++j) {
      if (!((*cu)[j].body == (*cm)[j].body)) return std::nullopt;
      const Pred& g = (*cu)[j].guard;
      const Pred& gm = (*cm)[j].guard;
      if (!(g == gm)) parts.push_back((g && !gm) || (!g && gm));
    }
    if (parts.empty()) return std::nullopt;
    return simplify(disjunction(parts));
  }
  return std::nullopt;
}

Stmt propagation_suffix(const ModificationTemplate& t, bool mutant) {
  std::vector<Stmt> items;
  if (t.kind == ModificationKind::statement) {
    items.push_back(mutant ? t.st_m : t.st_u);
  } else {
    std::optional<std::size_t> loop_level;
    for (std::size_t i = 0; i < t.guard_path.size(); ++i) {
      if (t.guard_path[i].kind == GuardKind::iteration) loop_level = i;
    }
    std::size_t outer;
    if (loop_level) {
      const auto& step = t.guard_path[*loop_level];
      items.push_back(mutant ? step.enclosing_m : step.enclosing_u);
      outer = *loop_level;
    } else {
      items.push_back(mutant ? t.st_jm : t.st_ju);
      outer = t.guard_path.size();
    }
    for (std::size_t i = outer; i-- > 0;) {
      const auto& after = t.guard_path[i].after;
      items.insert(items.end(), after.begin(), after.end());
    }
  }
  items.insert(items.end(), t.after.begin(), t.after.end());
  return sequence(items);
}

namespace {

struct Timeout {};

bool same_effect(const Machine& a, const Machine& b) {
  return a.status() == b.status() && a.value() == b.value() && a.store() == b.store();
}

void check_status(Machine::Status s) {
  if (s == Machine::Status::fuel_exhausted) throw Timeout{};
  if (s == Machine::Status::nondeterministic) {
    throw NondeterministicChoice("more than one guard holds during analysis");
  }
}

struct Analysis {
  const Program& u;
  const Program& m;
  const Stmt& l_u;
  const Stmt& l_m;
  const std::unordered_map<const StmtNode*, Stmt>& node_map;
  const RipOptions& options;

  std::map<State, bool> infected_cache;
  std::map<State, bool> propagates_cache;

  bool infected(const State& l_state) {
    if (auto it = infected_cache.find(l_state); it != infected_cache.end()) return it->second;
    Machine a(u.name, l_state, options.fuel);
    a.push(l_u);
    check_status(a.run());
    Machine b(m.name, l_state, options.fuel);
    b.push(l_m);
    check_status(b.run());
    bool result = !same_effect(a, b);
    infected_cache.emplace(l_state, result);
    return result;
  }

  bool propagates(const Machine& paused) {
    if (auto it = propagates_cache.find(paused.store()); it != propagates_cache.end()) {
      return it->second;
    }
    Machine a = paused;
    Machine b = paused;
    b.remap(node_map);
    check_status(a.run());
    check_status(b.run());
    bool result = !a.outcome().same_output(b.outcome());
    propagates_cache.emplace(paused.store(), result);
    return result;
  }
};

}  // namespace

RipReport full_test_spec(const Program& original, const Program& mutant,
                         const DomainSpec& domain, const RipOptions& options) {
  const Program u = normalize(original);
  const Program m = normalize(mutant);

  RipReport report;
  report.program_name = u.name;
  report.domain = domain;
  report.unroll_bound = options.unroll;
  report.modification = locate_mutation(u, m);
  const ModificationTemplate& t = report.modification;
  report.modification_class = classify(t);
  report.reachability = reachability(t, &report.reachability_policy);

  const Stmt l_u = resolve(u.body, t.location);
  const Stmt l_m = resolve(m.body, t.location);
  const auto node_map = zip_nodes(u.body, m.body, l_u.id(), l_m);

  report.infection.symbolic = symbolic_infection(t);

  WpOptions wo;
  wo.unroll = options.unroll;
  wo.program_name = u.name;
  wo.marker_scope = std::set<std::string>{u.name};
  const Pred post = marker("A");
  report.propagation.wp_u = wp(propagation_suffix(t, false), post, wo).predicate;
  report.propagation.wp_m = wp(propagation_suffix(t, true), post, wo).predicate;

  Analysis analysis{u, m, l_u, l_m, node_map, options, {}, {}};

  for_each_state(domain, options.max_states, [&](const State& input) {
    try {
      Machine run(u.name, input, options.fuel);
      run.push(u.body);
      std::vector<State> l_states;
      std::vector<State> infected;
      std::vector<State> propagated;
      bool first_infected_propagates = false;
      for (;;) {
        Machine::Status s = run.run(l_u.id());
        if (s != Machine::Status::paused) {
          check_status(s);
          break;
        }
        const State& l_state = run.store();
        l_states.push_back(l_state);
        if (!analysis.infected(l_state)) continue;
        const bool first = infected.empty();
        infected.push_back(l_state);
        const bool p = analysis.propagates(run);
        if (p) propagated.push_back(l_state);
        if (first) first_infected_propagates = p;
      }
      // Commit only when no execution for this input ran out of fuel.
      if (!l_states.empty()) report.reached_inputs.insert(input);
      if (!infected.empty()) report.infected_inputs.insert(input);
      if (first_infected_propagates) report.full_spec.insert(input);
      report.infection.reachable_l_states.insert(l_states.begin(), l_states.end());
      report.infection.semantic_witnesses.insert(infected.begin(), infected.end());
      report.propagation.semantic.insert(propagated.begin(), propagated.end());
    } catch (const Timeout&) {
      ++report.timeouts;
    }
  });

  const auto& reachable = report.infection.reachable_l_states;
  if (report.infection.symbolic) {
    bool agree = true;
    for (const State& s : reachable) {
      bool sym;
      try {
        sym = eval_pred(*report.infection.symbolic, s);
      } catch (const EvalError&) {
        sym = false;
      }
      if (sym != (report.infection.semantic_witnesses.count(s) != 0)) agree = false;
    }
    report.infection.symbolic_agrees = agree;
  }

  bool loop_suffix = false;
  for (const auto& step : t.guard_path) loop_suffix |= step.kind == GuardKind::iteration;
  if (!loop_suffix) {
    bool agree = true;
    MarkerPolicy policy{{u.name}};
    for (const State& s : report.infection.semantic_witnesses) {
      bool sym;
      try {
        sym = differ_at(report.propagation.wp_u, report.propagation.wp_m, s, policy);
      } catch (const EvalError&) {
        agree = false;
        continue;
      }
      if (sym != (report.propagation.semantic.count(s) != 0)) agree = false;
    }
    report.propagation.symbolic_agrees = agree;
  }

  // Path guards describe the state on entry to the guarded body, so the
  // check is only meaningful when prog_jb leaves their variables alone.
  bool guards_stable = true;
  if (t.kind == ModificationKind::guarded_command) {
    const auto written = assigned_vars(t.prog_jb);
    for (const auto& step : t.guard_path) {
      const FreeVars fv = free_vars(step.guard);
      for (const auto& v : fv.names) guards_stable &= written.count(v) == 0;
    }
  }
  if (report.reachability_policy == LoopPolicy::none && guards_stable) {
    bool ok = true;
    for (const State& s : reachable) {
      try {
        if (!eval_pred(report.reachability, s)) ok = false;
      } catch (const EvalError&) {
        ok = false;
      }
    }
    report.reachability_consistent = ok;
  }

  OracleOptions oo{options.fuel, options.max_states};
  report.oracle = kill_analysis(u, m, t.location, domain, oo);
  report.timeouts = std::max(report.timeouts, report.oracle.timeouts);

  if (!report.full_spec.empty()) {
    report.classification = Classification::strongly_killable;
  } else if (!report.infected_inputs.empty()) {
    report.classification = Classification::weakly_killable_only;
  } else {
    report.classification = Classification::no_kill_found_on_domain;
  }
  return report;
}

InfectionResult infection(const Program& original, const Program& mutant,
                          const DomainSpec& domain, const RipOptions& options) {
  return full_test_spec(original, mutant, domain, options).infection;
}

PropagationResult propagation(const Program& original, const Program& mutant,
                              const DomainSpec& domain, const RipOptions& options) {
  return full_test_spec(original, mutant, domain, options).propagation;
}

}  // namespace gclrip

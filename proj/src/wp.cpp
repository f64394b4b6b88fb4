#include "gclrip/wp.hpp"

#include "gclrip/errors.hpp"

namespace gclrip {

namespace {

struct Engine {
  const std::string& program_name;
  int unroll;
  std::vector<DerivationStep>* log;

  void note(const char* rule, const Pred& before, const Pred& after) const {
    if (log) log->push_back({rule, before, after});
  }

  Pred run(const Stmt& s, const Pred& normal, const Pred& on_return) const {
    Pred out = std::visit(
        overloaded{
            [&](const stmt::Assign& a) {
              Pred r = [&] {
                if (a.targets.size() == 1) return substitute(normal, a.targets[0], a.values[0]);
                std::map<std::string, Expr> values;
                for (std::size_t i = 0; i < a.targets.size(); ++i) {
                  values.emplace(a.targets[i], a.values[i]);
                }
                return substitute_all(normal, values);
              }();
              note("assign: substitute targets", normal, r);
              return r;
            },
            [&](const stmt::Skip&) {
              note("skip: identity", normal, normal);
              return normal;
            },
            [&](const stmt::Null&) {
              note("null: identity", normal, normal);
              return normal;
            },
            [&](const stmt::Return& r) {
              Pred p = r.value ? substitute(on_return, program_name, *r.value) : on_return;
              note("return: result substituted, rest of sequence skipped", normal, p);
              return p;
            },
            [&](const stmt::Abort&) {
              note("abort: false", normal, truth(false));
              return truth(false);
            },
            [&](const stmt::Seq& q) {
              Pred p = run(q.first, run(q.second, normal, on_return), on_return);
              note("seq: compose", normal, p);
              return p;
            },
            [&](const stmt::If& i) {
              std::vector<Pred> guards;
              std::vector<Pred> branches;
              for (const auto& gc : i.commands) {
                guards.push_back(gc.guard);
                branches.push_back(implies(gc.guard, run(gc.body, normal, on_return)));
              }
              Pred p = disjunction(guards) && conjunction(branches);
              note("if: some guard holds and each branch establishes post", normal, p);
              return p;
            },
            [&](const stmt::Do&) {
              Pred p = loop(s, normal, on_return);
              note("do: disjunction of H_0..H_k", normal, p);
              return p;
            },
        },
        s.node().value);
    return out;
  }

  Pred loop(const Stmt& s, const Pred& normal, const Pred& on_return) const {
    const auto& d = *s.get<stmt::Do>();
    std::vector<Pred> guards;
    for (const auto& gc : d.commands) guards.push_back(gc.guard);
    const Pred guard = disjunction(guards);
    // The unrolled step adds an explicit exit branch: if G -> body [] !G -> skip fi.
    auto commands = d.commands;
    commands.push_back({!guard, skip()});
    const Stmt step = if_stmt(commands);

    Pred h = normal && !guard;
    note("H_0: post and no guard holds", normal, h);
    std::vector<Pred> hs{h};
    for (int k = 1; k <= unroll; ++k) {
      h = simplify(run(step, h, on_return));
      note("H_k: one more iteration", hs.back(), h);
      hs.push_back(h);
    }
    return disjunction(hs);
  }
};

}  // namespace

Pred wp_raw(const Stmt& s, const Pred& normal, const Pred& on_return,
            const std::string& program_name, int unroll) {
  return Engine{program_name, unroll, nullptr}.run(s, normal, on_return);
}

Pred loop_wp(const Stmt& loop, const Pred& normal, const Pred& on_return,
             const std::string& program_name, int unroll) {
  if (!is_loop(loop)) throw Error("loop_wp expects a do statement");
  return Engine{program_name, unroll, nullptr}.loop(loop, normal, on_return);
}

WpResult wp(const Stmt& s, const Pred& post, const WpOptions& options) {
  WpResult result{truth(true), {}};
  Engine engine{options.program_name, options.unroll,
                options.record_derivation ? &result.derivation : nullptr};
  Pred raw = engine.run(s, post, options.return_post.value_or(post));
  if (options.simplify_result) {
    SimplifyOptions so;
    so.marker_scope = options.marker_scope;
    result.predicate = simplify(raw, so);
    if (options.record_derivation) result.derivation.push_back({"simplify", raw, result.predicate});
  } else {
    result.predicate = raw;
  }
  return result;
}

WpResult wp(const Program& program, const Pred& post, int unroll) {
  WpOptions options;
  options.unroll = unroll;
  options.program_name = program.name;
  options.marker_scope = std::set<std::string>{program.name};
  return wp(program.body, post, options);
}

const char* to_string(LwdcObligation o) {
  switch (o) {
    case LwdcObligation::none: return "none";
    case LwdcObligation::invariant_preserved: return "invariant_preserved";
    case LwdcObligation::variant_decreases: return "variant_decreases";
    case LwdcObligation::variant_positive: return "variant_positive";
  }
  return "none";
}

LwdcObligations lwdc_obligations(const Stmt& loop) {
  const auto* d = loop.get<stmt::Do>();
  if (!d) throw Error("loop annotation check expects a do statement");
  if (!d->annotation) throw MissingAnnotation("loop has no @invariant/@variant annotation");
  const auto& ann = *d->annotation;

  std::set<std::string> taken = free_vars(loop).names;
  for (const auto& n : free_vars(ann.invariant).names) taken.insert(n);
  for (const auto& n : assigned_vars(loop)) taken.insert(n);
  std::string fresh;
  for (int n = 0;; ++n) {
    fresh = "x$" + std::to_string(n);
    if (!taken.count(fresh)) break;
  }

  // A return leaves the loop, so nothing is owed on that path.
  const Pred done = truth(true);
  LwdcObligations out{{}, {}, truth(true), fresh};
  std::vector<Pred> guards;
  for (const auto& gc : d->commands) {
    guards.push_back(gc.guard);
    const Pred pre = ann.invariant && gc.guard;
    out.preserved.push_back(
        simplify(implies(pre, wp_raw(gc.body, ann.invariant, done, "", 1))));
    const Stmt with_copy = seq(assign(fresh, ann.variant), gc.body);
    out.decreases.push_back(
        simplify(implies(pre, wp_raw(with_copy, lt(ann.variant, var(fresh)), done, "", 1))));
  }
  out.positive = simplify(implies(ann.invariant && disjunction(guards), gt(ann.variant, 0)));
  return out;
}

LwdcResult check_lwdc(const Stmt& loop, const DomainSpec& domain, std::uint64_t max_states) {
  const LwdcObligations ob = lwdc_obligations(loop);

  std::vector<ObligationOutcome> outcomes;
  std::vector<const Pred*> formulas;
  for (std::size_t i = 0; i < ob.preserved.size(); ++i) {
    outcomes.push_back({LwdcObligation::invariant_preserved, i, true, std::nullopt});
    formulas.push_back(&ob.preserved[i]);
  }
  for (std::size_t i = 0; i < ob.decreases.size(); ++i) {
    outcomes.push_back({LwdcObligation::variant_decreases, i, true, std::nullopt});
    formulas.push_back(&ob.decreases[i]);
  }
  outcomes.push_back({LwdcObligation::variant_positive, std::nullopt, true, std::nullopt});
  formulas.push_back(&ob.positive);

  std::set<std::string> names;
  for (const Pred* f : formulas) {
    for (const auto& n : free_vars(*f).names) names.insert(n);
  }
  for (const auto& n : names) {
    if (!domain.covers(n)) throw DomainError("domain does not cover '" + n + "'");
  }
  const DomainSpec used = domain.restricted(names);

  LwdcResult result;
  for_each_state(used, max_states, [&](const State& s) {
    ++result.states_checked;
    for (std::size_t k = 0; k < formulas.size(); ++k) {
      if (!outcomes[k].holds) continue;
      bool ok;
      try {
        ok = eval_pred(*formulas[k], s);
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) {
        outcomes[k].holds = false;
        outcomes[k].counterexample = s;
      }
    }
  });
  for (const auto& o : outcomes) {
    if (!o.holds) {
      result.holds_on_domain = false;
      result.failing_obligation = o.obligation;
      result.counterexample = o.counterexample;
      result.branch = o.branch;
      break;
    }
  }
  result.outcomes = std::move(outcomes);
  return result;
}

}  // namespace gclrip

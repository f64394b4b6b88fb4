#include "gclrip/rc.hpp"

#include <algorithm>

#include "gclrip/errors.hpp"

namespace gclrip {

const char* to_string(LoopPolicy p) {
  switch (p) {
    case LoopPolicy::none: return "none";
    case LoopPolicy::k0: return "k0";
    case LoopPolicy::k1: return "k1";
    case LoopPolicy::declared_false: return "declared_false";
  }
  return "none";
}

namespace {

bool straight_line(const Stmt& s) {
  return std::visit(overloaded{
                        [](const stmt::Assign&) { return true; },
                        [](const stmt::Skip&) { return true; },
                        [](const stmt::Null&) { return true; },
                        [](const stmt::Seq& q) {
                          return straight_line(q.first) && straight_line(q.second);
                        },
                        [](const auto&) { return false; },
                    },
                    s.node().value);
}

struct Generator {
  const RcOptions& options;
  RcResult& out;

  void note(const char* rule, const Pred& p) { out.derivation.push_back({rule, truth(true), p}); }

  void use(LoopPolicy p) { out.loop_policy_used = std::max(out.loop_policy_used, p); }

  Pred run(const Stmt& s) {
    return std::visit(
        overloaded{
            [&](const stmt::Assign&) { return truth(true); },
            [&](const stmt::Skip&) { return truth(true); },
            [&](const stmt::Null&) { return truth(true); },
            [&](const stmt::Return&) {
              note("return: successor unreachable", truth(false));
              return truth(false);
            },
            [&](const stmt::Abort&) {
              note("abort: successor unreachable", truth(false));
              return truth(false);
            },
            [&](const stmt::Seq& q) {
              Pred first = run(q.first);
              Pred second = run(q.second);
              Pred p = first && second;
              note("seq: conjunction", p);
              return p;
            },
            [&](const stmt::If& i) {
              std::vector<Pred> parts;
              for (const auto& gc : i.commands) parts.push_back(gc.guard && run(gc.body));
              Pred p = disjunction(parts);
              note("if: disjunction of guarded branch conditions", p);
              return p;
            },
            [&](const stmt::Do&) { return loop(s); },
        },
        s.node().value);
  }

  Pred loop(const Stmt& s) {
    const auto& d = *s.get<stmt::Do>();
    if (options.lwdc_failed.count(s.id())) {
      use(LoopPolicy::declared_false);
      note("do: annotation fails, loop condition false", truth(false));
      return truth(false);
    }
    std::vector<Pred> guards;
    for (const auto& gc : d.commands) guards.push_back(gc.guard);
    const Pred exit = simplify(!disjunction(guards));
    if (!(exit == truth(false))) {
      use(LoopPolicy::k0);
      note("do: R_0 = no guard holds", exit);
      return exit;
    }
    use(LoopPolicy::k1);
    bool all_straight = std::all_of(d.commands.begin(), d.commands.end(),
                                    [](const GuardedCommand& gc) { return straight_line(gc.body); });
    if (all_straight) {
      note("do: R_1 with straight-line bodies is true", truth(true));
      return truth(true);
    }
    // One iteration: enter a branch, reach its end, then leave the loop.
    std::vector<Pred> parts;
    for (const auto& gc : d.commands) {
      Pred after = wp_raw(gc.body, exit, truth(false), "", 1);
      parts.push_back(gc.guard && run(gc.body) && after);
    }
    Pred p = disjunction(parts);
    note("do: R_1 = one iteration then exit", p);
    return p;
  }
};

}  // namespace

RcResult rc(const Stmt& s, const RcOptions& options) {
  RcResult result{truth(true), LoopPolicy::none, {}};
  Generator g{options, result};
  Pred raw = g.run(s);
  result.predicate = simplify(raw);
  result.derivation.push_back({"simplify", raw, result.predicate});
  return result;
}

RcResult rc_loop(const Stmt& loop, const RcOptions& options) {
  if (!is_loop(loop)) throw Error("rc_loop expects a do statement");
  return rc(loop, options);
}

RcResult rc_upto(const Program& program, int line, const RcOptions& options) {
  std::vector<Stmt> prefix;
  for (const Stmt& s : flatten(program.body)) {
    if (s.span().line >= line) break;
    prefix.push_back(s);
  }
  return rc(sequence(prefix), options);
}

}  // namespace gclrip

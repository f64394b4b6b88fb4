// Acceptance checks for the worked examples. Prints one PASS/FAIL line per
// criterion; `--only N` runs a single criterion and sets the exit status.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "gclrip/errors.hpp"
#include "gclrip/interpreter.hpp"
#include "gclrip/parser.hpp"
#include "gclrip/predicate.hpp"
#include "gclrip/rip.hpp"
#include "gclrip/wp.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace gclrip;
using testing_support::corpus;
using testing_support::int_of;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [" << what << "]";
    }
  }
};

using Predicate = std::function<bool(const State&)>;

std::set<State> select(const DomainSpec& d, const Predicate& keep) {
  std::set<State> out;
  for_each_state(d, default_state_cap, [&](const State& s) {
    if (keep(s)) out.insert(s);
  });
  return out;
}

/// Describes how two input sets differ, for the failure line.
std::string set_diff(const std::set<State>& got, const std::set<State>& want) {
  std::size_t extra = 0, missing = 0;
  std::string first;
  for (const State& s : got) {
    if (!want.count(s)) {
      if (first.empty()) first = "unexpected " + to_string(s);
      ++extra;
    }
  }
  for (const State& s : want) {
    if (!got.count(s)) {
      if (first.empty()) first = "missing " + to_string(s);
      ++missing;
    }
  }
  return std::to_string(got.size()) + " vs " + std::to_string(want.size()) + ", +" +
         std::to_string(extra) + " -" + std::to_string(missing) + (first.empty() ? "" : ", " + first);
}

void expect_set(Check& c, const char* name, const std::set<State>& got, const std::set<State>& want) {
  c.expect(got == want, std::string(name) + ": " + set_diff(got, want));
}

bool digits_below(long a, long b) {
  do {
    if (a % 10 >= b) return false;
    a /= 10;
  } while (a > 0);
  return true;
}

Rational output(const Program& p, const State& in) {
  const Outcome o = execute(p, in);
  if (o.kind != OutcomeKind::returned) return Rational(-999);
  return *o.value;
}

Stmt loop_of(const Program& p) {
  for (const Stmt& s : flatten(p.body)) {
    if (is_loop(s)) return s;
  }
  throw Error("no loop");
}

State input(std::initializer_list<std::pair<const char*, long>> v) { return testing_support::scalars(v); }

void criterion1(Check& c) {
  const DomainSpec d = parse_domain("a=-3..3,b=-3..3");
  const auto r = full_test_spec(corpus("min"), corpus("min_m1"), d);
  const auto b_gt_a = select(d, [](const State& s) { return int_of(s, "b") > int_of(s, "a"); });
  const auto a_ne_b = select(d, [](const State& s) { return int_of(s, "b") != int_of(s, "a"); });
  expect_set(c, "full spec", r.full_spec, b_gt_a);
  expect_set(c, "strong kill", r.oracle.strong_kill, b_gt_a);
  expect_set(c, "weak kill", r.oracle.weak_kill, a_ne_b);
  c.notes << " full spec " << r.full_spec.size() << "/49, weak " << r.oracle.weak_kill.size() << "/49";
}

void criterion2(Check& c) {
  const auto r = full_test_spec(corpus("min"), corpus("min_m2"), parse_domain("a=-5..5,b=-5..5"));
  c.expect(r.classification == Classification::no_kill_found_on_domain,
           std::string("classification ") + to_string(r.classification));
  c.expect(r.oracle.strong_kill.empty(), "strong kill not empty");
  c.expect(r.oracle.weak_kill.empty(), "weak kill not empty");
  c.expect(r.infection.semantic_witnesses.empty(), "infection witnesses not empty");
  c.notes << " " << to_string(r.classification);
}

void criterion3(Check& c) {
  const DomainSpec d = parse_domain("a=-10..10");
  const auto r = full_test_spec(corpus("iseven"), corpus("iseven_m"), d);
  std::set<State> odd_negative;
  for (long a : {-9, -7, -5, -3, -1}) odd_negative.insert(input({{"a", a}}));
  expect_set(c, "strong kill", r.oracle.strong_kill, odd_negative);
  expect_set(c, "full spec", r.full_spec, odd_negative);
  expect_set(c, "weak kill", r.oracle.weak_kill, select(d, [](const State& s) { return int_of(s, "a") < 0; }));
}

void criterion4(Check& c) {
  const DomainSpec d = parse_domain("a=0..40,b=0..12");
  const Program u = corpus("chkdig");
  const Program m = corpus("chkdig_m1");
  const auto r = full_test_spec(u, m, d);
  const auto want = select(d, [](const State& s) {
    const long a = int_of(s, "a"), b = int_of(s, "b");
    return b > 1 && b <= 10 && a >= 10 && digits_below(a, b);
  });
  expect_set(c, "strong kill", r.oracle.strong_kill, want);
  expect_set(c, "full spec", r.full_spec, want);
  const State i6 = input({{"a", 15}, {"b", 6}});
  const State i4 = input({{"a", 15}, {"b", 4}});
  c.expect(output(u, i6) == 3 && output(m, i6) == 2, "a=15,b=6 outputs");
  c.expect(output(u, i4) == 2 && output(m, i4) == 2, "a=15,b=4 outputs");
  c.expect(r.infected_inputs.count(i4) && !r.full_spec.count(i4), "a=15,b=4 infected but not propagated");
  c.notes << " strong kill " << r.oracle.strong_kill.size();
}

void criterion5(Check& c) {
  const DomainSpec d = parse_domain("a=0..40,b=0..12");
  const auto r = full_test_spec(corpus("chkdig"), corpus("chkdig_m2"), d);
  const auto want = select(d, [](const State& s) {
    const long a = int_of(s, "a"), b = int_of(s, "b");
    return b > 1 && b <= 10 && a > 0 && a % 10 >= b;
  });
  expect_set(c, "strong kill", r.oracle.strong_kill, want);
  c.expect(r.propagation.semantic == r.infection.semantic_witnesses, "propagation != infection");
}

void criterion6(Check& c) {
  const DomainSpec d = parse_domain("x=0..5", "b=len:1..2,elem:0..5");
  const Program u = corpus("search");
  const Program m = corpus("search_m");
  const auto r = full_test_spec(u, m, d);
  const auto want = select(d, [](const State& s) {
    const long x = int_of(s, "x");
    bool member = false, bigger = false;
    for (const auto& v : s.arrays.at("b")) {
      member |= v == x;
      bigger |= x < v;
    }
    return !member && bigger;
  });
  expect_set(c, "strong kill", r.oracle.strong_kill, want);
  expect_set(c, "full spec", r.full_spec, want);
  State inst = input({{"x", 2}});
  inst.arrays["b"] = {5};
  c.expect(r.oracle.strong_kill.count(inst) != 0, "b=[5],x=2 not in set");
  c.expect(output(u, inst) == 0 && output(m, inst) == 1, "b=[5],x=2 outputs");
  c.notes << " strong kill " << r.oracle.strong_kill.size() << "/" << r.oracle.total_enumerated;
}

void criterion7(Check& c) {
  const Pred got = wp(corpus("min"), marker("A")).predicate;
  const Pred want = parse_predicate("(b < a => A[Min\\b]) && (b >= a => A[Min\\a])");
  c.expect(got == want, "got " + to_string(got));
}

void criterion8(Check& c) {
  WpOptions o;
  o.unroll = 0;
  o.program_name = "Chkdig";
  const Pred got = wp(loop_of(corpus("chkdig")), marker("A"), o).predicate;
  const Pred want = simplify(parse_predicate("A && !(r > 0 && d < b)"));
  c.expect(got == want, "got " + to_string(got));
}

void criterion9(Check& c) {
  const DomainSpec d = parse_domain("a=0..30,r=0..30,d=0..10,b=0..11,t=0..30");
  const Stmt loop = loop_of(corpus("chkdig"));
  const LwdcResult paper = check_lwdc(loop, d);
  if (!paper.holds_on_domain) {
    c.expect(false, std::string("stated annotation fails ") + to_string(paper.failing_obligation) +
                        " at " + to_string(*paper.counterexample));
  }
  const auto& dl = *loop.get<stmt::Do>();
  LoopAnnotation wrong = *dl.annotation;
  wrong.variant = var("d");
  const LwdcResult bad = check_lwdc(do_stmt(dl.commands, wrong), d);
  c.expect(!bad.holds_on_domain && bad.counterexample.has_value(), "wrong variant accepted");
  bool decreases_failed = false;
  for (const auto& o : bad.outcomes) {
    decreases_failed |= o.obligation == LwdcObligation::variant_decreases && !o.holds;
  }
  c.expect(decreases_failed, "wrong variant: decrease obligation held");
}

bool establishes(const Stmt& body, const State& s, const Pred& post) {
  Machine m("P", s, 1000);
  m.push(body);
  switch (m.run()) {
    case Machine::Status::completed: return eval_pred(post, m.store());
    case Machine::Status::returned: {
      State end = m.store();
      end.scalars["P"] = *m.value();
      return eval_pred(post, end);
    }
    default: return false;
  }
}

void criterion10(Check& c) {
  testing_support::AstGen gen(10);
  const auto states = enumerate(parse_domain("x=-4..4,y=-4..4,z=-4..4"));
  int wp_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const Stmt body = gen.stmt(4, {"x", "y", "z"});
    const Pred post = gen.pred(2);
    WpOptions o;
    o.program_name = "P";
    // Returned values land in P; keep it out of the normal postcondition.
    o.return_post = post && cmp(CmpOp::ne, var("P"), lit(gen.pick(-4, 4)));
    const Pred w = wp(body, post, o).predicate;
    for (const State& s : states) {
      Machine m("P", s, 1000);
      m.push(body);
      bool truth_value = false;
      switch (m.run()) {
        case Machine::Status::completed: truth_value = eval_pred(post, m.store()); break;
        case Machine::Status::returned: {
          State end = m.store();
          end.scalars["P"] = *m.value();
          truth_value = eval_pred(*o.return_post, end);
          break;
        }
        default: break;
      }
      if (eval_pred(w, s) != truth_value) {
        ++wp_failures;
        break;
      }
    }
  }
  c.expect(wp_failures == 0, std::to_string(wp_failures) + " wp soundness failures");

  int lemma_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const Pred p = gen.pred(3);
    const std::string w = gen.any_var();
    const Expr e = gen.expr(2);
    const State s = gen.state({"x", "y", "z"}, -4, 4);
    State shifted = s;
    shifted.scalars[w] = eval_expr(e, s);
    if (eval_pred(substitute(p, w, e), s) != eval_pred(p, shifted)) ++lemma_failures;
  }
  c.expect(lemma_failures == 0, std::to_string(lemma_failures) + " substitution failures");

  int trip_failures = 0;
  const char* names[] = {"min", "min_m1", "min_m2", "iseven", "iseven_m", "chkdig", "chkdig_m1",
                         "chkdig_m2", "search", "search_m"};
  for (const char* n : names) {
    const Program p = corpus(n);
    if (!(parse_program(pretty_print(p)) == p)) ++trip_failures;
  }
  for (int i = 0; i < 1000; ++i) {
    const Program p = gen.program(4);
    try {
      if (!(parse_program(pretty_print(p)) == p)) ++trip_failures;
    } catch (const SyntaxError&) {
      ++trip_failures;
    }
  }
  c.expect(trip_failures == 0, std::to_string(trip_failures) + " round-trip failures");

  struct Pair {
    const char *u, *m, *scalars, *arrays;
  };
  const Pair pairs[] = {{"min", "min_m1", "a=-3..3,b=-3..3", ""},
                        {"min", "min_m2", "a=-3..3,b=-3..3", ""},
                        {"iseven", "iseven_m", "a=-10..10", ""},
                        {"chkdig", "chkdig_m1", "a=0..40,b=0..12", ""},
                        {"chkdig", "chkdig_m2", "a=0..40,b=0..12", ""},
                        {"search", "search_m", "x=0..5", "b=len:1..2,elem:0..5"}};
  for (const Pair& p : pairs) {
    const KillReport k = kill_analysis(corpus(p.u), corpus(p.m), parse_domain(p.scalars, p.arrays));
    bool chain = true;
    for (const State& s : k.strong_kill) chain &= k.weak_kill.count(s) != 0;
    for (const State& s : k.weak_kill) chain &= k.reached.count(s) != 0;
    c.expect(chain, std::string("kill chain broken for ") + p.m);
  }
}

struct Criterion {
  int id;
  const char* title;
  double seconds;  // 0: no time limit
  void (*run)(Check&);
};

const Criterion criteria[] = {
    {1, "Min mutant 1 full spec b > a, weak kill a != b", 1, criterion1},
    {2, "Min mutant 2 has no kill on the domain", 1, criterion2},
    {3, "isEven kills exactly the negative odd inputs", 1, criterion3},
    {4, "Chkdig mutant 1 kills when every digit is below the base", 5, criterion4},
    {5, "Chkdig mutant 2 kills when the last digit reaches the base", 5, criterion5},
    {6, "Search mutant kills when x is missing and below some element", 5, criterion6},
    {7, "wp of Min against A", 0, criterion7},
    {8, "Chkdig loop wp at unroll 0", 0, criterion8},
    {9, "Chkdig loop annotation obligations", 5, criterion9},
    {10, "Property suites", 0, criterion10},
};

bool run(const Criterion& cr) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    cr.run(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cr.seconds > 0 && elapsed >= cr.seconds) {
    c.expect(false, "took " + std::to_string(elapsed) + " s, limit " + std::to_string(cr.seconds));
  }
  std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.title << " ("
            << static_cast<int>(elapsed * 1000) << " ms)" << c.notes.str() << std::endl;
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--only") only = std::atoi(argv[2]);
  bool all = true;
  for (const auto& cr : criteria) {
    if (only == 0 || only == cr.id) all &= run(cr);
  }
  return all ? 0 : 1;
}

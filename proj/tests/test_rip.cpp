#include <gtest/gtest.h>

#include "gclrip/errors.hpp"
#include "gclrip/parser.hpp"
#include "gclrip/predicate.hpp"
#include "gclrip/rip.hpp"
#include "support.hpp"

using namespace gclrip;
using testing_support::corpus;
using testing_support::int_of;
using testing_support::scalars;

namespace {

Pred P(const char* text) { return parse_predicate(text); }

ModificationTemplate tmpl(const char* u, const char* m) {
  return locate_mutation(normalize(corpus(u)), normalize(corpus(m)));
}

struct Case {
  const char* u;
  const char* m;
  const char* scalars;
  const char* arrays;
};

const std::vector<Case> cases = {
    {"min", "min_m1", "a=-3..3,b=-3..3", ""},
    {"min", "min_m2", "a=-3..3,b=-3..3", ""},
    {"iseven", "iseven_m", "a=-6..6", ""},
    {"chkdig", "chkdig_m1", "a=0..40,b=0..12", ""},
    {"chkdig", "chkdig_m2", "a=0..40,b=0..12", ""},
    {"search", "search_m", "x=0..5", "b=len:1..2,elem:0..5"},
};

bool digits_below(long a, long b) {
  do {
    if (a % 10 >= b) return false;
    a /= 10;
  } while (a > 0);
  return true;
}

}  // namespace

TEST(Reachability, PaperResults) {
  EXPECT_EQ(reachability(tmpl("min", "min_m1")), truth(true));
  EXPECT_EQ(reachability(tmpl("iseven", "iseven_m")), P("a < 0"));
  EXPECT_EQ(reachability(tmpl("chkdig", "chkdig_m1")),
            simplify(P("(b > 1 && b <= 10 && a >= 0) && (r > 0 && d < b)")));
  LoopPolicy policy = LoopPolicy::none;
  EXPECT_EQ(reachability(tmpl("chkdig", "chkdig_m2"), &policy),
            simplify(P("(b > 1 && b <= 10 && a >= 0) && (r <= 0 || d >= b)")));
  EXPECT_EQ(policy, LoopPolicy::k0);
}

TEST(Infection, SymbolicForms) {
  EXPECT_EQ(*symbolic_infection(tmpl("min", "min_m1")), P("a != b"));
  EXPECT_EQ(*symbolic_infection(tmpl("iseven", "iseven_m")), P("0 - a != 0"));
  EXPECT_EQ(*symbolic_infection(tmpl("chkdig", "chkdig_m1")), P("t - r * 10 != t + r * 10"));
  EXPECT_EQ(*symbolic_infection(tmpl("min", "min_m2")),
            simplify(P("b < a && !(b < m) || !(b < a) && b < m")));
  const Program u = parse_program("program P(a) { x := a; return (x) }");
  const Program m = parse_program("program P(a) { y := a; return (x) }");
  EXPECT_EQ(*symbolic_infection(locate_mutation(u, m)), P("x != a || y != a"));
}

TEST(Infection, MinFirstMutantWitnesses) {
  const auto r = full_test_spec(corpus("min"), corpus("min_m1"), parse_domain("a=-3..3,b=-3..3"));
  EXPECT_EQ(r.infection.semantic_witnesses.size(), 42u);
  for (const State& s : r.infection.semantic_witnesses) EXPECT_NE(int_of(s, "a"), int_of(s, "b"));
  EXPECT_EQ(r.infection.symbolic_agrees, true);
}

TEST(Infection, MinSecondMutantIsEmpty) {
  const auto r = full_test_spec(corpus("min"), corpus("min_m2"), parse_domain("a=-5..5,b=-5..5"));
  EXPECT_TRUE(r.infection.semantic_witnesses.empty());
  EXPECT_EQ(r.infection.symbolic_agrees, true);
  // The symbolic condition is contradictory once m = a.
  CompareOptions o;
  o.assume = P("m = a");
  EXPECT_EQ(bounded_compare(*r.infection.symbolic, truth(false),
                            parse_domain("a=-5..5,b=-5..5,m=-5..5"), o)
                .verdict,
            Verdict::equivalent_on_domain);
}

TEST(Infection, ChkdigFirstMutantMeansPositiveR) {
  const auto r = full_test_spec(corpus("chkdig"), corpus("chkdig_m1"), parse_domain("a=0..40,b=0..12"));
  ASSERT_FALSE(r.infection.reachable_l_states.empty());
  for (const State& s : r.infection.reachable_l_states) {
    EXPECT_EQ(r.infection.semantic_witnesses.count(s) != 0, int_of(s, "r") > 0) << to_string(s);
  }
}

TEST(Propagation, MinFirstMutant) {
  const auto r = full_test_spec(corpus("min"), corpus("min_m1"), parse_domain("a=-3..3,b=-3..3"));
  for (const State& s : r.infection.semantic_witnesses) {
    EXPECT_EQ(r.propagation.semantic.count(s) != 0, int_of(s, "b") >= int_of(s, "a"));
  }
  EXPECT_EQ(r.propagation.symbolic_agrees, true);
}

TEST(Propagation, IsEvenOddAfterNegation) {
  const auto r = full_test_spec(corpus("iseven"), corpus("iseven_m"), parse_domain("a=-6..6"));
  for (const State& s : r.infection.semantic_witnesses) {
    EXPECT_EQ(r.propagation.semantic.count(s) != 0, (-int_of(s, "a")) % 2 != 0);
  }
}

TEST(Propagation, ChkdigSecondMutantAlwaysPropagates) {
  const auto r = full_test_spec(corpus("chkdig"), corpus("chkdig_m2"), parse_domain("a=0..40,b=0..12"));
  EXPECT_FALSE(r.infection.semantic_witnesses.empty());
  EXPECT_EQ(r.propagation.semantic, r.infection.semantic_witnesses);
}

TEST(Propagation, SearchNeedsXOutsideB) {
  const auto r = full_test_spec(corpus("search"), corpus("search_m"),
                                parse_domain("x=0..5", "b=len:1..2,elem:0..5"));
  for (const State& s : r.infection.semantic_witnesses) {
    const long x = int_of(s, "x");
    bool member = false;
    for (const auto& v : s.arrays.at("b")) member |= v == x;
    EXPECT_EQ(r.propagation.semantic.count(s) != 0, !member) << to_string(s);
  }
}

TEST(FullSpec, MinAndIsEven) {
  const auto m1 = full_test_spec(corpus("min"), corpus("min_m1"), parse_domain("a=-3..3,b=-3..3"));
  EXPECT_EQ(m1.full_spec.size(), 21u);
  for (const State& s : m1.full_spec) EXPECT_GT(int_of(s, "b"), int_of(s, "a"));
  EXPECT_EQ(m1.classification, Classification::strongly_killable);

  const auto m2 = full_test_spec(corpus("min"), corpus("min_m2"), parse_domain("a=-3..3,b=-3..3"));
  EXPECT_TRUE(m2.full_spec.empty());
  EXPECT_EQ(m2.classification, Classification::no_kill_found_on_domain);

  const auto e = full_test_spec(corpus("iseven"), corpus("iseven_m"), parse_domain("a=-6..6"));
  EXPECT_EQ(e.full_spec, (std::set<State>{scalars({{"a", -5}}), scalars({{"a", -3}}), scalars({{"a", -1}})}));
}

TEST(FullSpec, ChkdigFirstMutantDigitsBelowBase) {
  const DomainSpec d = parse_domain("a=0..40,b=0..12");
  const auto r = full_test_spec(corpus("chkdig"), corpus("chkdig_m1"), d);
  for (const State& s : enumerate(d)) {
    const long a = int_of(s, "a");
    const long b = int_of(s, "b");
    const bool expected = b > 1 && b <= 10 && a >= 10 && digits_below(a, b);
    EXPECT_EQ(r.full_spec.count(s) != 0, expected) << to_string(s);
  }
}

TEST(FullSpec, WeakOnlyClassification) {
  // The mutant changes x, which is overwritten before it is observed.
  const Program u = parse_program("program P(a) { x := a; x := 0; return (x) }");
  const Program m = parse_program("program P(a) { x := a + 1; x := 0; return (x) }");
  const auto r = full_test_spec(u, m, parse_domain("a=0..3"));
  EXPECT_TRUE(r.full_spec.empty());
  EXPECT_EQ(r.infected_inputs.size(), 4u);
  EXPECT_EQ(r.classification, Classification::weakly_killable_only);
}

TEST(FullSpec, NondeterminismIsAnError) {
  const Program u = parse_program("program P(a) { if a >= 0 -> x := 1 [] a <= 0 -> x := 2 fi; return (x) }");
  const Program m = parse_program("program P(a) { if a >= 0 -> x := 1 [] a <= 0 -> x := 3 fi; return (x) }");
  EXPECT_THROW(full_test_spec(u, m, parse_domain("a=-1..1")), NondeterministicChoice);
}

TEST(Invariants, HoldOnEveryCorpusPair) {
  for (const Case& c : cases) {
    SCOPED_TRACE(c.m);
    const auto r = full_test_spec(corpus(c.u), corpus(c.m), parse_domain(c.scalars, c.arrays));
    const KillReport& k = r.oracle;
    // Oracle agreement and strong within weak within reached.
    EXPECT_EQ(r.full_spec, k.strong_kill);
    for (const State& s : k.strong_kill) EXPECT_TRUE(k.weak_kill.count(s));
    for (const State& s : k.weak_kill) EXPECT_TRUE(k.reached.count(s));
    EXPECT_EQ(r.reached_inputs, k.reached);
    // Conjunction law: every full-spec input was reached and infected.
    for (const State& s : r.full_spec) {
      EXPECT_TRUE(r.reached_inputs.count(s));
      EXPECT_TRUE(r.infected_inputs.count(s));
    }
    for (const State& s : r.propagation.semantic) EXPECT_TRUE(r.infection.semantic_witnesses.count(s));
    if (r.infection.symbolic_agrees) EXPECT_TRUE(*r.infection.symbolic_agrees);
    if (r.propagation.symbolic_agrees) EXPECT_TRUE(*r.propagation.symbolic_agrees);
    if (r.reachability_consistent) EXPECT_TRUE(*r.reachability_consistent);
    EXPECT_EQ(r.classification == Classification::strongly_killable, !r.full_spec.empty());
  }
}

TEST(Suffix, FollowsTheMatchingShape) {
  const auto chk = tmpl("chkdig", "chkdig_m1");
  EXPECT_EQ(flatten(propagation_suffix(chk, false)).front(), chk.st_u);
  const auto ise = tmpl("iseven", "iseven_m");
  EXPECT_EQ(flatten(propagation_suffix(ise, true)).front(), ise.st_jm);
  const auto min = tmpl("min", "min_m1");
  EXPECT_EQ(flatten(propagation_suffix(min, true)).size(), 3u);
}

#include <gtest/gtest.h>

#include <chrono>

#include "gclrip/errors.hpp"
#include "gclrip/interpreter.hpp"
#include "gclrip/parser.hpp"
#include "gclrip/predicate.hpp"
#include "gclrip/wp.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace gclrip;
using testing_support::corpus;

namespace {

Pred P(const char* text) { return parse_predicate(text); }

Stmt loop_of(const Program& p) {
  for (const Stmt& s : flatten(p.body)) {
    if (is_loop(s)) return s;
  }
  throw std::runtime_error("no loop");
}

Stmt with_variant(const Stmt& loop, Expr variant) {
  const auto& d = *loop.get<stmt::Do>();
  LoopAnnotation a = *d.annotation;
  a.variant = std::move(variant);
  return do_stmt(d.commands, a, loop.span());
}

/// Ground truth for wp: run the statement and test the postcondition.
bool establishes(const Stmt& body, const State& s, const Pred& normal, const Pred& on_return) {
  Machine m("P", s, 1000);
  m.push(body);
  switch (m.run()) {
    case Machine::Status::completed: return eval_pred(normal, m.store());
    case Machine::Status::returned: {
      State end = m.store();
      end.scalars["P"] = *m.value();
      return eval_pred(on_return, end);
    }
    case Machine::Status::aborted: return false;
    default: throw std::runtime_error("unexpected machine status");
  }
}

}  // namespace

TEST(Wp, Basics) {
  EXPECT_EQ(wp(skip(), marker("A")).predicate, marker("A"));
  EXPECT_EQ(wp(null_stmt(), marker("A")).predicate, marker("A"));
  EXPECT_EQ(wp(abort_stmt(), P("b > a")).predicate, truth(false));
  EXPECT_EQ(wp(assign("x", parse_expression("x + 1")), P("x > 0")).predicate, P("x + 1 > 0"));
  EXPECT_EQ(wp(assign({"x", "y"}, {var("y"), var("x")}), P("x < y")).predicate, P("y < x"));
}

TEST(Wp, MinExample) {
  const Program p = corpus("min");
  const WpResult r = wp(p, marker("A"));
  EXPECT_EQ(r.predicate, P("(b < a => A[Min\\b]) && (b >= a => A[Min\\a])"));
}

TEST(Wp, DerivationEndsAtResult) {
  const Program p = corpus("min");
  WpOptions o;
  o.program_name = p.name;
  o.marker_scope = std::set<std::string>{p.name};
  o.record_derivation = true;
  const WpResult r = wp(p.body, marker("A"), o);
  ASSERT_FALSE(r.derivation.empty());
  EXPECT_EQ(r.derivation.back().after, r.predicate);
  EXPECT_EQ(simplify(r.derivation.back().before, {o.marker_scope}), r.predicate);
}

TEST(Wp, EarlyReturnDiscardsRest) {
  WpOptions o;
  o.program_name = "F";
  const Stmt s = seq(return_stmt(var("a")), assign("a", lit(0)));
  EXPECT_EQ(wp(s, P("F > 0"), o).predicate, P("a > 0"));
}

TEST(Wp, ChkdigLoopAtUnrollZero) {
  WpOptions o;
  o.unroll = 0;
  o.program_name = "Chkdig";
  const Pred h0 = wp(loop_of(corpus("chkdig")), marker("A"), o).predicate;
  EXPECT_EQ(h0, simplify(P("A && !(r > 0 && d < b)")));
  EXPECT_EQ(h0, P("A && (r <= 0 || d >= b)"));
}

TEST(Wp, SkipPrefixIsNeutral) {
  testing_support::AstGen gen(5);
  for (int i = 0; i < 50; ++i) {
    const Stmt s = gen.stmt(3, {"x", "y"});
    const Pred post = gen.pred(2);
    EXPECT_EQ(wp(seq(skip(), s), post).predicate, wp(s, post).predicate);
  }
}

TEST(Wp, UnrollingIsMonotone) {
  const Stmt loop = loop_of(corpus("chkdig"));
  const Pred post = P("d < b && r = 0");
  const DomainSpec d = parse_domain("r=0..40,d=0..9,b=0..11,t=0..0");
  std::vector<Pred> by_k;
  for (int k = 0; k <= 3; ++k) {
    WpOptions o;
    o.unroll = k;
    by_k.push_back(wp(loop, post, o).predicate);
  }
  for_each_state(d, default_state_cap, [&](const State& s) {
    for (int k = 0; k < 3; ++k) {
      if (eval_pred(by_k[k], s)) ASSERT_TRUE(eval_pred(by_k[k + 1], s)) << k << " " << to_string(s);
    }
  });
}

TEST(Wp, SoundOnRandomLoopFreePrograms) {
  testing_support::AstGen gen(31337);
  const DomainSpec d = parse_domain("x=-4..4,y=-4..4,z=-4..4");
  const auto states = enumerate(d);
  for (int i = 0; i < 200; ++i) {
    const Stmt body = gen.stmt(4, {"x", "y", "z"});
    const Pred normal = gen.pred(2);
    const Pred on_return = gen.pred(1) || cmp(CmpOp::gt, var("P"), gen.expr(1));
    WpOptions o;
    o.program_name = "P";
    o.return_post = on_return;
    const Pred w = wp(body, normal, o).predicate;
    for (const State& s : states) {
      ASSERT_EQ(eval_pred(w, s), establishes(body, s, normal, on_return))
          << pretty_print(body, 0) << "\npost " << to_string(normal) << "\nreturn post "
          << to_string(on_return) << "\nat " << to_string(s);
    }
  }
}

TEST(Wp, SoundWithSinglePostcondition) {
  testing_support::AstGen gen(1001);
  const auto states = enumerate(parse_domain("x=-4..4,y=-4..4,z=-4..4"));
  for (int i = 0; i < 50; ++i) {
    const Stmt body = gen.stmt(3, {"x", "y", "z"}, false);
    const Pred post = gen.pred(2);
    const Pred w = wp(body, post).predicate;
    for (const State& s : states) {
      ASSERT_EQ(eval_pred(w, s), establishes(body, s, post, post)) << pretty_print(body, 0);
    }
  }
}

TEST(Lwdc, ObligationsHaveFreshVariant) {
  const LwdcObligations ob = lwdc_obligations(loop_of(corpus("chkdig")));
  EXPECT_EQ(ob.preserved.size(), 1u);
  EXPECT_EQ(ob.decreases.size(), 1u);
  EXPECT_TRUE(is_fresh_name(ob.fresh));
  EXPECT_EQ(ob.decreases[0], P("0 <= r && r <= a && (d = 0 || d = r - floor(r / 10) * 10) && "
                               "r > 0 && d < b => floor(r / 10) < r"));
}

TEST(Lwdc, MissingAnnotation) {
  const Stmt loop = do_stmt({{P("x > 0"), assign("x", parse_expression("x - 1"))}});
  EXPECT_THROW(check_lwdc(loop, parse_domain("x=0..3")), MissingAnnotation);
}

TEST(Lwdc, UncoveredVariableIsAnError) {
  EXPECT_THROW(check_lwdc(loop_of(corpus("chkdig")), parse_domain("a=0..3")), DomainError);
}

// The corrected invariant ties d to the digit just removed: t still holds
// the value r had before the division.
TEST(Lwdc, ChkdigCorrectedInvariantHolds) {
  const Stmt original = loop_of(corpus("chkdig"));
  const auto& d = *original.get<stmt::Do>();
  LoopAnnotation a = *d.annotation;
  a.invariant = P("0 <= r && r <= a && (d = 0 || d = t - floor(t / 10) * 10)");
  const Stmt loop = do_stmt(d.commands, a);
  const LwdcResult r =
      check_lwdc(loop, parse_domain("a=0..15,r=0..15,d=0..9,b=0..10,t=0..15"));
  EXPECT_TRUE(r.holds_on_domain);
  EXPECT_EQ(r.failing_obligation, LwdcObligation::none);
  EXPECT_FALSE(r.counterexample.has_value());
}

TEST(Lwdc, WrongVariantFails) {
  const Stmt loop = with_variant(loop_of(corpus("chkdig")), var("d"));
  const LwdcResult r = check_lwdc(loop, parse_domain("a=0..30,r=0..30,d=0..9,b=0..11,t=0..30"));
  EXPECT_FALSE(r.holds_on_domain);
  ASSERT_TRUE(r.counterexample.has_value());
  bool decrease_failed = false;
  for (const auto& o : r.outcomes) {
    if (o.obligation == LwdcObligation::variant_decreases && !o.holds) {
      decrease_failed = true;
      ASSERT_TRUE(o.counterexample.has_value());
      // One iteration from the witness does not lower d.
      const State& s = *o.counterexample;
      Machine m("Chkdig", s, 100);
      m.push(loop.get<stmt::Do>()->commands[0].body);
      ASSERT_EQ(m.run(), Machine::Status::completed);
      EXPECT_GE(m.store().scalars.at("d"), s.scalars.at("d"));
    }
  }
  EXPECT_TRUE(decrease_failed);
}

TEST(Lwdc, SearchAnnotationHolds) {
  const LwdcResult r =
      check_lwdc(loop_of(corpus("search")), parse_domain("x=0..3,i=0..2,l=0..2", "b=len:1..2,elem:0..3"));
  EXPECT_TRUE(r.holds_on_domain) << to_string(r.failing_obligation);
}

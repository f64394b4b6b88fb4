#include <gtest/gtest.h>

#include "gclrip/errors.hpp"
#include "gclrip/parser.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace gclrip;
using testing_support::corpus;

TEST(Parser, MinProgramFromOneLine) {
  Program p = parse_program(
      "program Min(a,b){ m := a ; if b < a -> m := b [] b >= a -> skip fi ; return (m) }");
  EXPECT_EQ(p.name, "Min");
  EXPECT_EQ(p.params, (std::vector<std::string>{"a", "b"}));
  Stmt expected = seq(assign("m", var("a")),
                      seq(if_stmt({{lt(var("b"), var("a")), assign("m", var("b"))},
                                   {ge(var("b"), var("a")), skip()}}),
                          return_stmt(var("m"))));
  EXPECT_EQ(p.body, expected);
  EXPECT_EQ(p, corpus("min"));
}

TEST(Parser, EmptyParameterList) {
  Program p = parse_program("program P(){ skip }");
  EXPECT_EQ(p.name, "P");
  EXPECT_TRUE(p.params.empty());
  EXPECT_EQ(p.body, skip());
}

TEST(Parser, ChkdigHasOneLoopWithOneCommand) {
  const Program p = corpus("chkdig");
  int loops = 0;
  for (const Stmt& s : flatten(p.body)) {
    if (const auto* d = s.get<stmt::Do>()) {
      ++loops;
      EXPECT_EQ(d->commands.size(), 1u);
      ASSERT_TRUE(d->annotation.has_value());
      EXPECT_EQ(d->annotation->variant, var("r"));
      EXPECT_EQ(d->annotation->modified, (std::vector<std::string>{"t", "r", "d"}));
    }
  }
  EXPECT_EQ(loops, 1);
}

TEST(Parser, ArraysAndLength) {
  Expr e = parse_expression("b[i + 1] - b.length");
  EXPECT_EQ(e, at("b", var("i") + lit(1)) - length_of("b"));
}

TEST(Parser, Precedence) {
  EXPECT_EQ(parse_expression("1 + 2 * 3"), lit(1) + lit(2) * lit(3));
  EXPECT_EQ(parse_expression("(1 + 2) * 3"), (lit(1) + lit(2)) * lit(3));
  EXPECT_EQ(parse_expression("a - b - c"), (var("a") - var("b")) - var("c"));
  EXPECT_EQ(parse_predicate("a < b || c < d && e < f"),
            lt(var("a"), var("b")) || (lt(var("c"), var("d")) && lt(var("e"), var("f"))));
  EXPECT_EQ(parse_predicate("true => false => true"),
            implies(truth(true), implies(truth(false), truth(true))));
  EXPECT_EQ(parse_predicate("!(a = b)"), !eq(var("a"), var("b")));
}

TEST(Parser, MarkerWithSubstitutions) {
  Pred p = parse_predicate("A[Min\\b][m\\a + 1]");
  const auto* m = p.get<pred::Marker>();
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->tag, "A");
  ASSERT_EQ(m->substitutions.size(), 2u);
  EXPECT_EQ(m->substitutions[0].first, "Min");
  EXPECT_EQ(m->substitutions[1].second, var("a") + lit(1));
}

TEST(Parser, AssignmentInGuardIsRejected) {
  try {
    parse_program("program P(a){ if a := 1 -> skip fi }");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("assignment is not allowed in a guard"), std::string::npos);
  }
}

TEST(Parser, ErrorsCarryPositionAndExpectations) {
  try {
    parse_program("program P(a) {\n  a := \n}");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_program("program P(a) { if a > 0 -> skip }"), SyntaxError);
  EXPECT_THROW(parse_program("program (a) { skip }"), SyntaxError);
  EXPECT_THROW(parse_predicate("a <"), SyntaxError);
}

TEST(Parser, CommentsAndTrailingSemicolon) {
  Program p = parse_program("# header\nprogram P(a) { a := 1; # set\n a := 2; }");
  EXPECT_EQ(flatten(p.body).size(), 2u);
}

TEST(Parser, CorpusRoundTrips) {
  for (const char* name : {"min", "min_m1", "min_m2", "iseven", "iseven_m", "chkdig", "chkdig_m1",
                           "chkdig_m2", "search", "search_m"}) {
    SCOPED_TRACE(name);
    const Program p = corpus(name);
    const std::string printed = pretty_print(p);
    const Program again = parse_program(printed);
    EXPECT_EQ(again, p);
    EXPECT_EQ(pretty_print(again), printed);
  }
}

TEST(Parser, FuzzedAstsRoundTrip) {
  testing_support::AstGen gen(20240611, {"x", "y", "z"});
  for (int i = 0; i < 1000; ++i) {
    const Program p = gen.program(4);
    const std::string printed = pretty_print(p);
    std::optional<Program> again;
    ASSERT_NO_THROW(again = parse_program(printed)) << printed;
    ASSERT_EQ(*again, p) << printed;
  }
}

TEST(Parser, FuzzedPredicatesRoundTrip) {
  testing_support::AstGen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const Pred p = gen.any_pred(4, true);
    const std::string printed = to_string(p);
    ASSERT_EQ(parse_predicate(printed), p) << printed;
  }
}

TEST(Validate, CorpusIsClean) {
  for (const char* name : {"min", "iseven", "chkdig", "search"}) {
    SCOPED_TRACE(name);
    const auto diags = validate(corpus(name));
    EXPECT_TRUE(diags.empty());
    EXPECT_EQ(validate(corpus(name)), diags);
  }
}

TEST(Validate, DuplicateTargetsAreErrors) {
  const Program p{"P", {"a", "b"}, assign({"m", "m"}, {var("a"), var("b")}), {}};
  const auto diags = validate(p);
  ASSERT_FALSE(diags.empty());
  EXPECT_TRUE(has_errors(diags));
  EXPECT_NE(diags[0].message.find("duplicate"), std::string::npos);
}

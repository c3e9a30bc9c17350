#include <gtest/gtest.h>

#include "rms/expr.hpp"
#include "rms/parser.hpp"
#include "rms/printer.hpp"

using namespace rms;

TEST(Expr, EvaluatesArithmeticAndComparisons) {
  EXPECT_EQ(eval(*parse_expr("1 + 2 - 4")), Value(-1));
  EXPECT_EQ(eval(*parse_expr("-(3) + 1")), Value(-2));
  EXPECT_EQ(eval(*parse_expr("1 < 2 && !false")), Value(true));
  EXPECT_EQ(eval(*parse_expr("2 <= 1")), Value(false));
  EXPECT_EQ(eval(*parse_expr("\"a\" == \"a\"")), Value(true));
}

TEST(Expr, EvaluationNeedsBoundVariables) {
  EXPECT_THROW(eval(*parse_expr("x + 1")), EvalError);
  EXPECT_EQ(eval(*parse_expr("x + 1"), {{"x", Value(4)}}), Value(5));
}

TEST(Expr, SortsAreChecked) {
  EXPECT_EQ(sort_of(*parse_expr("1 + 2")), Sort::Int);
  EXPECT_EQ(sort_of(*parse_expr("x < 3"), {{"x", Sort::Int}}), Sort::Bool);
  EXPECT_THROW(sort_of(*parse_expr("1 + true")), SortError);
  EXPECT_THROW(sort_of(*parse_expr("!3")), SortError);
  EXPECT_THROW(sort_of(*parse_expr("y")), SortError);
}

TEST(Expr, SubstitutionReplacesFreeOccurrences) {
  auto e = substitute(parse_expr("x + y"), "x", Value(2));
  EXPECT_EQ(free_vars(*e), std::set<VarName>{"y"});
  EXPECT_EQ(eval(*e, {{"y", Value(3)}}), Value(5));
}

TEST(Expr, NegativeLiteralsRoundTrip) {
  auto e = parse_expr("-3");
  ASSERT_TRUE(std::holds_alternative<Expr::Lit>(e->node));
  EXPECT_EQ(print(*e), "-3");
  auto n = parse_expr("-(3)");
  EXPECT_TRUE(std::holds_alternative<Expr::Unary>(n->node));
  EXPECT_EQ(*parse_expr(print(*n)), *n);
}

TEST(Expr, CanonicalValues) {
  EXPECT_EQ(canonical_value(Sort::Int), Value(0));
  EXPECT_EQ(canonical_value(Sort::Bool), Value(true));
  EXPECT_EQ(canonical_value(Sort::Str), Value("s"));
}

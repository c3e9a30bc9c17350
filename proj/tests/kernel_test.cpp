#include <gtest/gtest.h>

#include "rms/kernel.hpp"
#include "rms/parser.hpp"
#include "rms/printer.hpp"

using namespace rms;

namespace {

std::vector<Constraint> constraints(const std::vector<Violation>& vs) {
  std::vector<Constraint> out;
  for (const auto& v : vs) out.push_back(v.constraint);
  return out;
}

ProcessPtr two(const char* a, const char* b) {
  return output("q", {{a, nullptr, inact()}, {b, nullptr, inact()}});
}

}  // namespace

TEST(Kernel, BranchesAreOrderedByLabel) {
  auto p = output("q", {{"b", nullptr, inact()}, {"a", nullptr, inact()}});
  EXPECT_EQ(*p, *two("a", "b"));
}

TEST(Kernel, EqualityIgnoresOccurrenceTags) {
  auto a = output("q", {{"a", nullptr, inact()}, {"b", nullptr, inact()}}, std::nullopt, 7);
  EXPECT_EQ(*a, *two("a", "b"));
}

TEST(Kernel, EmptyChoiceIsRejected) {
  EXPECT_EQ(constraints(validate(*output("q", {}))), std::vector<Constraint>{Constraint::EmptyChoice});
}

TEST(Kernel, SingletonCheckpointIsRejected) {
  auto p = output("q", {{"a", nullptr, inact()}}, "A");
  EXPECT_EQ(constraints(validate(*p)), std::vector<Constraint>{Constraint::SingletonCheckpoint});
}

TEST(Kernel, DuplicateLabelsAreRejected) {
  auto p = output("q", {{"a", nullptr, inact()}, {"a", lit(1), inact()}});
  EXPECT_EQ(constraints(validate(*p)), std::vector<Constraint>{Constraint::DuplicateLabel});
}

TEST(Kernel, SelfNamedNestingIsRejected) {
  auto inner = output("q", {{"a", nullptr, inact()}, {"b", nullptr, inact()}}, "A");
  auto p = output("q", {{"a", nullptr, inner}, {"b", nullptr, inact()}}, "A");
  auto vs = validate(*p);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].constraint, Constraint::SelfNamedNesting);
  EXPECT_EQ(vs[0].path, "/q!a");
}

TEST(Kernel, RecursionThroughACheckpointReentersIt) {
  auto body = output("q", {{"a", nullptr, proc_var("X")}, {"b", nullptr, inact()}}, "A");
  auto vs = validate(*rec("X", body));
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(vs[0].constraint, Constraint::SelfNamedNesting);
}

TEST(Kernel, UnguardedRecursionIsRejected) {
  EXPECT_EQ(constraints(validate(*rec("X", proc_var("X")))), std::vector<Constraint>{Constraint::UnguardedRecursion});
  EXPECT_TRUE(validate(*rec("X", send("q", "a", nullptr, proc_var("X")))).empty());
}

TEST(Kernel, HistoriesHoldOnlyCheckpointedChoices) {
  auto ckA = output("q", {{"a", nullptr, inact()}, {"b", nullptr, inact()}}, "A");
  EXPECT_THROW(Configuration(inact(), {inact()}), std::invalid_argument);
  EXPECT_TRUE(validate(Configuration(inact(), {ckA, ckA})).empty());
  auto g = comm("p", "q", {{"a", std::nullopt, global_end()}, {"b", std::nullopt, global_end()}}, "A");
  EXPECT_THROW(GlobalPair(global_end(), {g, g}), std::invalid_argument);
  EXPECT_NO_THROW(Configuration(inact(), {ckA}));
}

TEST(Kernel, UnfoldSubstitutesTheWholeTerm) {
  auto p = parse_process("mu X. q!a.X");
  auto u = unfold(p);
  EXPECT_EQ(print(*u), "q!a.mu X. q!a.X");
  EXPECT_EQ(*unfold_head(p), *u);
}

TEST(Kernel, StripAndAddCheckpoints) {
  auto t = parse_session_type("ckpt A { q!{ a.end, b.end } }");
  EXPECT_TRUE(is_checkpointed(*t));
  auto s = strip_checkpoint(t);
  EXPECT_FALSE(is_checkpointed(*s));
  EXPECT_EQ(*with_checkpoint(s, "A"), *t);
}

TEST(Kernel, CheckpointNamesAndNodeCount) {
  auto g = parse_global("ckpt A p -> q { a.ckpt B q -> p { c.end, d.end }, b.end }");
  EXPECT_EQ(checkpoint_names(*g), (std::set<CheckpointName>{"A", "B"}));
  EXPECT_EQ(node_count(*parse_session_type("p!{ a.end, b.end }")), 3u);
}

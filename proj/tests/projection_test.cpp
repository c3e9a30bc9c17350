#include <gtest/gtest.h>

#include "rms/parser.hpp"
#include "rms/printer.hpp"
#include "rms/projection.hpp"
#include "rms/subtyping.hpp"
#include "traveller.hpp"

using namespace rms;
namespace tv = rmstest::traveller;

TEST(Projection, RunningExample) {
  EXPECT_EQ(*project(tv::G(), "Tr").type, *tv::T_Tr());
  EXPECT_EQ(*project(tv::G(), "Ht").type, *tv::T_Ht());
  EXPECT_EQ(*project(tv::G(), "Al").type, *tv::T_Al());
  EXPECT_EQ(print(*project(tv::G(), "Ht").type), "Tr?qr(Str).ckpt A { Tr!{ av.end, nAv.end } }");
  EXPECT_TRUE(well_formed(tv::G()).ok);
  EXPECT_EQ(participants(*tv::G()), (std::set<Participant>{"Al", "Ht", "Tr"}));
}

TEST(Projection, ThirdPartyWithNothingToDoGetsEnd) {
  auto g = parse_global("p -> q { a.end, b.end }");
  EXPECT_TRUE(is_end(*project(g, "r").type));
}

TEST(Projection, ThirdPartyBranchesAreMerged) {
  auto g = parse_global("p -> q { a.q -> r x.end, b.q -> r y.end }");
  auto r = project(g, "r");
  ASSERT_TRUE(r.defined()) << r.reason;
  EXPECT_EQ(print(*r.type), "q?{ x.end, y.end }");
}

TEST(Projection, IdenticalThirdPartyBranchesClash) {
  auto g = parse_global("p -> q { a.q -> r x.end, b.q -> r x.end }");
  auto r = project(g, "r");
  EXPECT_FALSE(r.defined());
  EXPECT_FALSE(well_formed(g).ok);
}

TEST(Projection, MixedThirdPartyBehaviourIsUndefined) {
  auto g = parse_global("p -> q { a.q -> r x.end, b.end }");
  auto r = project(g, "r");
  EXPECT_FALSE(r.defined());
  EXPECT_FALSE(r.reason.empty());
  auto g2 = parse_global("p -> q { a.r -> q x.end, b.r -> q y.end }");
  EXPECT_FALSE(project(g2, "r").defined());
}

TEST(Projection, CheckpointedCommunicationKeepsItsName) {
  auto g = parse_global("ckpt A p -> q { a.end, b.end }");
  EXPECT_EQ(print(*project(g, "p").type), "ckpt A { q!{ a.end, b.end } }");
  EXPECT_EQ(print(*project(g, "q").type), "ckpt A { p?{ a.end, b.end } }");
}

TEST(Projection, CheckpointedThirdPartyMergeIsWrapped) {
  auto g = parse_global("ckpt A p -> q { a.q -> r x.end, b.q -> r y.end }");
  auto r = project(g, "r");
  ASSERT_TRUE(r.defined()) << r.reason;
  EXPECT_EQ(print(*r.type), "ckpt A { q?{ x.end, y.end } }");
}

TEST(Projection, RecursionWithoutTheParticipantIsEnd) {
  auto g = parse_global("p -> r go.mu X. p -> q a.X");
  EXPECT_EQ(print(*project(g, "r").type), "p?go.end");
  auto t = project(g, "q").type;
  EXPECT_TRUE(equal_regular(t, parse_session_type("mu t. p?a.t")));
}

TEST(Projection, MergeOfSingletonIsTheElement) {
  auto t = parse_session_type("ckpt A { p?{ a.end, b.end } }");
  auto m = merge({t});
  ASSERT_TRUE(m.defined());
  EXPECT_EQ(*m.type, *t);
}

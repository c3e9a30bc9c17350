#include <gtest/gtest.h>

#include "rms/parser.hpp"
#include "rms/printer.hpp"
#include "rms/subtyping.hpp"
#include "rms/typing.hpp"
#include "traveller.hpp"

using namespace rms;
namespace tv = rmstest::traveller;

TEST(Typing, ProcessesSynthesizeTheirProjections) {
  EXPECT_TRUE(equal_regular(type_process(tv::P_Tr()), tv::T_Tr()));
  EXPECT_TRUE(equal_regular(type_process(tv::P_Ht()), tv::T_Ht()));
  EXPECT_TRUE(equal_regular(type_process(tv::P_Al()), tv::T_Al()));
}

TEST(Typing, PayloadsAndBindersAreSorted) {
  EXPECT_EQ(print(*type_process(parse_process("q?a(x:Int).q!b(x + 1).end"))), "q?a(Int).q!b(Int).end");
  EXPECT_THROW(type_process(parse_process("q?a(x:Bool).q!b(x + 1).end")), TypingError);
  EXPECT_THROW(type_process(parse_process("q!b(y).end")), TypingError);
}

TEST(Typing, RecursionVariablesNeedTheEnvironment) {
  EXPECT_THROW(type_process(send("q", "a", nullptr, proc_var("X"))), TypingError);
  EXPECT_TRUE(equal_regular(type_process(parse_process("mu X. q!a.X")), parse_session_type("mu t. q!a.t")));
}

TEST(Typing, RunningExampleIsAccepted) {
  auto r = type_session(tv::initial(), GlobalPair(tv::G()));
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.participants.size(), 3u);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Typing, ScriptedPathIsTypedStepByStep) {
  auto sessions = tv::after_steps();
  auto pairs = tv::tracked_pairs();
  ASSERT_EQ(pairs.size(), sessions.size() + 1);
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    auto r = type_session(sessions[i], pairs[i + 1]);
    EXPECT_TRUE(r.accepted) << "pair after step " << i + 1 << ": " << (r.failures.empty() ? "" : r.failures[0].message);
  }
}

TEST(Typing, PrunedPrintedPairsTypeTheSameSessions) {
  auto sessions = tv::after_steps();
  EXPECT_TRUE(type_session(sessions[2], tv::printed_pair(4)).accepted);
  EXPECT_TRUE(type_session(sessions[5], tv::printed_pair(7)).accepted);
}

TEST(Typing, RollbackReductsAreTypedByEarlierPairs) {
  auto pairs = tv::tracked_pairs();
  EXPECT_TRUE(type_session(tv::rolled_back_to_B(), pairs[5]).accepted);
  EXPECT_TRUE(type_session(tv::rolled_back_to_A(), pairs[2]).accepted);
}

TEST(Typing, MissingLabelFailsAgreementForThatParticipant) {
  auto m = tv::initial();
  m["Al"] = Configuration(parse_process(
      "Tr?qr(x:Str).ckpt A Tr?{ ds.end, rz.ckpt B Tr!{ nAv.end, av.end } }"));
  auto r = type_session(m, GlobalPair(tv::G()));
  ASSERT_FALSE(r.accepted);
  EXPECT_EQ(r.failures[0].participant, "Al");
  EXPECT_EQ(r.failures[0].condition, "agreement-4");
}

TEST(Typing, ParticipantSetsMustMatch) {
  auto m = tv::initial();
  m.erase("Al");
  auto r = type_session(m, GlobalPair(tv::G()));
  ASSERT_FALSE(r.accepted);
  bool seen = false;
  for (const auto& f : r.failures) seen = seen || f.condition == "participants";
  EXPECT_TRUE(seen);
}

TEST(Typing, HistoryLengthsMustMatch) {
  auto gp = parse_global_pair("< [ ckpt A p -> q { a.end, b.end } ] ; end >");
  Session m{{"p", Configuration(inact())}, {"q", Configuration(inact())}};
  auto r = type_session(m, gp);
  EXPECT_FALSE(r.accepted);
}

TEST(Typing, UntypableProcessIsReportedAsTyping) {
  auto m = tv::initial();
  m["Ht"] = Configuration(parse_process("Tr?qr(x:Int).Tr!av(x && true).end"));
  auto r = type_session(m, GlobalPair(tv::G()));
  ASSERT_FALSE(r.accepted);
  EXPECT_EQ(r.failures[0].participant, "Ht");
  EXPECT_EQ(r.failures[0].condition, "typing");
}

TEST(Typing, NetworksNeedOnePairPerSession) {
  EXPECT_TRUE(type_network({tv::initial()}, {GlobalPair(tv::G())}).accepted);
  EXPECT_FALSE(type_network({tv::initial(), tv::initial()}, {GlobalPair(tv::G())}).accepted);
}

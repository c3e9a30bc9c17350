#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rms/parser.hpp"
#include "rms/printer.hpp"
#include "rms/typing.hpp"
#include "rms/verify.hpp"
#include "traveller.hpp"

using namespace rms;
namespace tv = rmstest::traveller;

namespace {

SourceFile load(const std::string& name) {
  std::ifstream f(std::string(RMS_SAMPLES_DIR) + "/" + name);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

ExploreConfig exhaustive(std::size_t depth) {
  ExploreConfig cfg;
  cfg.depth = depth;
  return cfg;
}

}  // namespace

TEST(Verify, DerivedPairsFollowTheScriptedPath) {
  auto file = load("traveller.rms");
  auto pairs = tv::tracked_pairs();
  Session m = tv::initial();
  GlobalPair gp(tv::G());
  for (std::size_t i = 0; i < file.script->size(); ++i) {
    auto step = match_directive(network_steps({m}), (*file.script)[i]);
    ASSERT_TRUE(step.has_value());
    auto d = derive_pair(gp, step->step);
    ASSERT_TRUE(d.pair.has_value()) << d.error;
    EXPECT_EQ(*d.pair, pairs[i + 1]) << "pair after step " << i + 1;
    m = step->step.next;
    gp = *d.pair;
  }
}

TEST(Verify, RollbackDerivesTheEarlierPair) {
  auto pairs = tv::tracked_pairs();
  Session m = tv::after_steps().back();
  auto step = match_directive(network_steps({m}), parse_script("roll A")[0]);
  ASSERT_TRUE(step.has_value());
  auto d = derive_pair(pairs.back(), step->step);
  ASSERT_TRUE(d.pair.has_value()) << d.error;
  EXPECT_EQ(d.rule, "G-Rb");
  EXPECT_TRUE(type_session(step->step.next, *d.pair).accepted);
}

// A checkpointed choice taken by Ht before Tr->Al:qr gives Ht a history of
// length one while Tr still has none; no pair reachable from <[] ; G> types it.
TEST(Verify, EarlyCheckpointedChoiceBreaksSubjectReduction) {
  auto r = check_subject_reduction(tv::initial(), GlobalPair(tv::G()), exhaustive(12));
  EXPECT_TRUE(r.admitted);
  EXPECT_FALSE(r.truncated);
  const auto* sr = r.find("sr");
  ASSERT_NE(sr, nullptr);
  ASSERT_EQ(sr->verdict, Verdict::Violated);
  ASSERT_EQ(sr->counterexample.size(), 2u);
  EXPECT_NE(sr->counterexample[0].step.find("Tr->Ht:qr"), std::string::npos);
  EXPECT_NE(sr->counterexample[1].step.find("[CkChc]"), std::string::npos);
  EXPECT_NE(sr->counterexample[1].step.find("Ht"), std::string::npos);
}

TEST(Verify, SubjectReductionHoldsWithoutCheckpoints) {
  auto m = parse_session("session S { p |> q!{ a(1).end, b.end }, q |> p?{ a(x:Int).end, b.end } }");
  auto r = check_subject_reduction(m, parse_global_pair("< [] ; p -> q { a(Int).end, b.end } >"), exhaustive(6));
  const auto* sr = r.find("sr");
  ASSERT_NE(sr, nullptr);
  EXPECT_EQ(sr->verdict, Verdict::Holds) << sr->message;
}

TEST(Verify, FidelityHoldsOnTheRunningExample) {
  auto r = check_fidelity(tv::initial(), GlobalPair(tv::G()), exhaustive(12));
  const auto* f = r.find("fidelity");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->verdict, Verdict::Holds) << f->message;
  EXPECT_FALSE(r.truncated);
}

TEST(Verify, MutantsAreRejectedAtAdmission) {
  for (const char* name : {"mutant_rs.rms", "mutant_ok.rms"}) {
    auto file = load(name);
    auto r = check_fidelity(file.sessions.at("Booking"), file.typings.at("Booking"), exhaustive(12));
    EXPECT_FALSE(r.admitted) << name;
    EXPECT_FALSE(r.admission_errors.empty()) << name;
  }
}

TEST(Verify, MissingLabelIsFlaggedAtTheAttemptedCommunication) {
  auto file = load("mutant_rs.rms");
  auto cfg = exhaustive(12);
  cfg.admission = false;
  auto r = check_fidelity(file.sessions.at("Booking"), file.typings.at("Booking"), cfg);
  const auto* f = r.find("fidelity");
  ASSERT_NE(f, nullptr);
  ASSERT_EQ(f->verdict, Verdict::Violated);
  ASSERT_FALSE(f->counterexample.empty());
  EXPECT_NE(f->counterexample.back().step.find("Tr->Al:rs"), std::string::npos);
  EXPECT_NE(f->message.find("rs"), std::string::npos);
}

TEST(Verify, WrongLabelIsFlaggedAtTheCommunication) {
  auto file = load("mutant_ok.rms");
  auto cfg = exhaustive(12);
  cfg.admission = false;
  auto r = check_fidelity(file.sessions.at("Booking"), file.typings.at("Booking"), cfg);
  const auto* f = r.find("fidelity");
  ASSERT_NE(f, nullptr);
  ASSERT_EQ(f->verdict, Verdict::Violated);
  EXPECT_NE(f->counterexample.back().step.find("[Com] Ht->Tr:ok"), std::string::npos);
}

TEST(Verify, ProgressHoldsAtSufficientDepth) {
  auto r = check_progress({tv::initial()}, {GlobalPair(tv::G())}, exhaustive(14));
  const auto* a = r.find("progress.prefixes");
  const auto* b = r.find("progress.rollbacks");
  ASSERT_NE(a, nullptr);
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(a->verdict, Verdict::Holds) << a->message;
  EXPECT_EQ(b->verdict, Verdict::Holds) << b->message;
}

TEST(Verify, ShallowProgressIsInconclusive) {
  auto r = check_progress({tv::initial()}, {GlobalPair(tv::G())}, exhaustive(3));
  const auto* b = r.find("progress.rollbacks");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->verdict, Verdict::Inconclusive);
  EXPECT_TRUE(r.truncated);
}

TEST(Verify, StuckSessionViolatesProgress) {
  auto m = parse_session("session S { p |> q?a.end, q |> p?a.end }");
  auto cfg = exhaustive(4);
  cfg.admission = false;
  auto r = check_progress({m}, {parse_global_pair("< [] ; p -> q a.end >")}, cfg);
  const auto* a = r.find("progress.prefixes");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->verdict, Verdict::Violated);
}

TEST(Verify, RandomSchedulerIsReproducible) {
  auto cfg = exhaustive(12);
  cfg.scheduler = SchedulerKind::Random;
  cfg.seed = 42;
  auto a = check_fidelity(tv::initial(), GlobalPair(tv::G()), cfg);
  auto b = check_fidelity(tv::initial(), GlobalPair(tv::G()), cfg);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.transitions, b.transitions);
}

TEST(Verify, ScriptedSchedulerFollowsTheScript) {
  auto cfg = exhaustive(12);
  cfg.scheduler = SchedulerKind::Scripted;
  cfg.script = *load("traveller.rms").script;
  auto r = check_subject_reduction(tv::initial(), GlobalPair(tv::G()), cfg);
  EXPECT_EQ(r.transitions, 7u);
  EXPECT_EQ(r.find("sr")->verdict, Verdict::Holds);
}

TEST(Verify, OccurrenceTagsAreFreshPerChoice) {
  std::map<OccurrenceId, std::string> paths;
  auto tagged = tag_occurrences({tv::initial()}, paths);
  EXPECT_EQ(paths.size(), 11u);
  EXPECT_TRUE(session_equiv(tagged[0], tv::initial()));
}

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "rms/cli.hpp"

using namespace rms;

namespace {

const std::string kSamples = RMS_SAMPLES_DIR;

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int rc = run(args, in, out, err);
  return {rc, out.str(), err.str()};
}

std::string traveller() { return kSamples + "/traveller.rms"; }

}  // namespace

TEST(Cli, CheckAcceptsTheRunningExample) {
  auto r = cli({"check", traveller()});
  EXPECT_EQ(r.rc, kOk) << r.err;
  EXPECT_NE(r.out.find("session Booking"), std::string::npos);
  EXPECT_NE(r.out.find("accepted"), std::string::npos);
}

TEST(Cli, CheckRejectsMutantsWithParticipantAndCondition) {
  auto r = cli({"check", kSamples + "/mutant_rs.rms", "--json"});
  EXPECT_EQ(r.rc, kRejected);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["outcome"], "rejected");
  auto dump = j.dump();
  EXPECT_NE(dump.find("\"participant\":\"Al\""), std::string::npos);
  EXPECT_NE(dump.find("agreement-4"), std::string::npos);
}

TEST(Cli, ProjectPrintsOneParticipant) {
  auto r = cli({"project", traveller(), "--type", "G", "--on", "Ht"});
  EXPECT_EQ(r.rc, kOk) << r.err;
  EXPECT_NE(r.out.find("Tr?qr(Str).ckpt A { Tr!{ av.end, nAv.end } }"), std::string::npos) << r.out;
}

TEST(Cli, ProjectJsonListsAllParticipants) {
  auto r = cli({"project", traveller(), "--type", "G", "--json"});
  ASSERT_EQ(r.rc, kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["outcome"], "defined");
  EXPECT_EQ(j["projections"].size(), 3u);
}

TEST(Cli, ProjectUnknownTypeIsInvalidInput) {
  EXPECT_EQ(cli({"project", traveller(), "--type", "Nope"}).rc, kInvalidInput);
}

TEST(Cli, ScriptedSimulationIsDeterministic) {
  auto a = cli({"simulate", traveller(), "--script", kSamples + "/booking.steps"});
  auto b = cli({"simulate", traveller(), "--script", kSamples + "/booking.steps"});
  ASSERT_EQ(a.rc, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("step 7:"), std::string::npos);
  EXPECT_EQ(a.out.find("step 8:"), std::string::npos);
  EXPECT_NE(a.out.find("status Booking: live"), std::string::npos);
}

TEST(Cli, SeededSimulationIsReproducible) {
  auto a = cli({"simulate", traveller(), "--seed", "7", "--json"});
  auto b = cli({"simulate", traveller(), "--seed", "7", "--json"});
  ASSERT_EQ(a.rc, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["outcome"], "completed");
  EXPECT_FALSE(j["steps"].empty());
}

TEST(Cli, StepLimitIsHonoured) {
  auto r = cli({"simulate", traveller(), "--seed", "1", "--steps", "2", "--json"});
  ASSERT_EQ(r.rc, kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["steps"].size(), 2u);
}

TEST(Cli, InteractiveSimulationReadsChoices) {
  auto r = cli({"simulate", traveller(), "--interactive"}, "1\nq\n");
  ASSERT_EQ(r.rc, kOk) << r.err;
  EXPECT_NE(r.out.find("step 1: [Com] Tr->Ht:qr"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("step 2:"), std::string::npos);
}

TEST(Cli, SchedulerFlagsAreExclusive) {
  EXPECT_EQ(cli({"simulate", traveller(), "--seed", "1", "--interactive"}).rc, kInvalidInput);
}

TEST(Cli, VerifyReportsTheSubjectReductionFinding) {
  auto r = cli({"verify", traveller(), "--depth", "12", "--props", "sr", "--json"});
  EXPECT_EQ(r.rc, kRejected);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["properties"][0]["property"], "sr");
  EXPECT_EQ(j["properties"][0]["verdict"], "violated");
  EXPECT_EQ(j["properties"][0]["counterexample"].size(), 2u);
}

TEST(Cli, VerifyFidelityAndProgressHold) {
  auto r = cli({"verify", traveller(), "--depth", "14", "--props", "fidelity,progress"});
  EXPECT_EQ(r.rc, kOk) << r.out;
}

TEST(Cli, VerifyRequiresAPositiveDepth) {
  EXPECT_EQ(cli({"verify", traveller(), "--depth", "0"}).rc, kInvalidInput);
  EXPECT_EQ(cli({"verify", traveller()}).rc, kInvalidInput);
  EXPECT_EQ(cli({"verify", traveller(), "--depth", "3", "--props", "liveness"}).rc, kInvalidInput);
}

TEST(Cli, FmtIsIdempotent) {
  auto a = cli({"fmt", traveller()});
  ASSERT_EQ(a.rc, kOk);
  auto j = nlohmann::json::parse(cli({"fmt", traveller(), "--json"}).out);
  EXPECT_EQ(j["text"], a.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"check", kSamples + "/does-not-exist.rms"}).rc, kIoError);
  EXPECT_EQ(cli({"check", kSamples + "/booking.steps"}).rc, kInvalidInput);
  EXPECT_EQ(cli({"frobnicate"}).rc, kInvalidInput);
  EXPECT_EQ(cli({}).rc, kInvalidInput);
}

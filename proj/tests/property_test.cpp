#include <gtest/gtest.h>

#include "properties.hpp"

using namespace rmstest;

namespace {

void expect_ok(const SuiteResult& r) {
  EXPECT_GT(r.cases, 0u);
  EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures << " of " << r.cases << " failed; first: " << r.first_failure;
}

}  // namespace

TEST(Properties, SubtypingIsReflexive) { expect_ok(subtyping_reflexivity(2000, 101)); }
TEST(Properties, SubtypingIsTransitive) { expect_ok(subtyping_transitivity(2000, 102)); }
TEST(Properties, SubtypingAgreesWithUnfoldingOracle) { expect_ok(subtyping_oracle(2000, 103)); }
TEST(Properties, InversionGivesMatchingShapes) { expect_ok(inversion_shape(2000, 104)); }
TEST(Properties, SubstitutionPreservesTypes) { expect_ok(substitution(500, 105)); }
TEST(Properties, PrintParseRoundTrip) { expect_ok(round_trip(2000, 106)); }

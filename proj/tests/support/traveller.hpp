#pragma once

#include <vector>

#include "rms/kernel.hpp"

// The traveller / hotel / airline example, assembled from constructors so that
// tests do not depend on the parser.
namespace rmstest::traveller {

rms::GlobalTypePtr G();
rms::GlobalTypePtr G1();
rms::GlobalTypePtr G2();

rms::ProcessPtr P_Tr();
rms::ProcessPtr P_Ht();
rms::ProcessPtr P_Al();

// Expected projections of G.
rms::SessionTypePtr T_Tr();
rms::SessionTypePtr T_Ht();
rms::SessionTypePtr T_Al();

/// Configurations C(1) .. C(12) visited by the booking run.
rms::Configuration C(int k);

rms::Session initial();

/// Sessions after each of the seven scripted steps.
std::vector<rms::Session> after_steps();

/// Pairs tracked along the scripted path, before any step and after each step.
/// Branches are kept whole.
std::vector<rms::GlobalPair> tracked_pairs();

/// The tracked pair after step k - 1, pruned at k = 4 and k = 7 to show only
/// the branch taken.
rms::GlobalPair printed_pair(int k);

rms::Session rolled_back_to_B();
rms::Session rolled_back_to_A();

}  // namespace rmstest::traveller

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rms/kernel.hpp"

namespace rmstest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(below(static_cast<int>(xs.size())))];
  }

 private:
  std::mt19937_64 rng_;
};

struct Alphabet {
  std::vector<std::string> participants{"p", "q", "r"};
  std::vector<std::string> labels{"a", "b", "c", "d"};
  std::vector<std::string> checkpoints{"A", "B", "C"};
  int payload_percent = 40;
  int checkpoint_percent = 20;
  int rec_percent = 20;
  int max_branches = 3;
};

/// Closed, guarded, valid session type with at most `budget` nodes.
rms::SessionTypePtr random_type(Gen& g, int budget, const Alphabet& a = {});

/// A supertype of `t`: intersections may lose branches, unions may gain them.
rms::SessionTypePtr weaken(Gen& g, const rms::SessionTypePtr& t, const Alphabet& a = {});
/// A subtype of `t`, the dual of weaken.
rms::SessionTypePtr strengthen(Gen& g, const rms::SessionTypePtr& t, const Alphabet& a = {});

/// Closed expression of sort `s` over the sorted variables in `env`.
rms::ExprPtr random_expr(Gen& g, rms::Sort s, const rms::SortEnv& env, int depth);

/// Closed, well-sorted, valid process. Variables in `env` may occur free in payloads.
rms::ProcessPtr random_process(Gen& g, int budget, const Alphabet& a = {}, const rms::SortEnv& env = {});

rms::GlobalTypePtr random_global(Gen& g, int budget, const Alphabet& a = {});

rms::Configuration random_configuration(Gen& g, int budget, const Alphabet& a = {});

}  // namespace rmstest

#pragma once

#include "rms/kernel.hpp"

namespace rmstest {

/// Subtyping approximated by comparing unfoldings up to `depth` constructors.
/// Written independently of the library's algorithm.
bool unfolding_subtype(const rms::SessionTypePtr& t, const rms::SessionTypePtr& u, int depth);

}  // namespace rmstest

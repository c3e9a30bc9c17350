#pragma once

#include "rms/kernel.hpp"

namespace rms {

/// T ≤ U, read coinductively over the regular trees of T and U.
bool is_subtype(const SessionTypePtr& t, const SessionTypePtr& u);

/// Same regular tree: subtyping in both directions.
bool equal_regular(const SessionTypePtr& t, const SessionTypePtr& u);

}  // namespace rms

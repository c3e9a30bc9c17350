#pragma once

#include <string>

#include "rms/kernel.hpp"

namespace rms {

// Canonical single-line surface syntax. Every printed term parses back to a
// structurally equal term.

std::string print(const Expr& e);
std::string print(const Process& p);
std::string print(const SessionType& t);
std::string print(const GlobalType& g);
std::string print(const Configuration& c);
std::string print(const ConfigType& c);
std::string print(const GlobalPair& gp);
std::string print(const Session& m);

}  // namespace rms

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rms/kernel.hpp"
#include "rms/parser.hpp"
#include "rms/semantics.hpp"

namespace rms {

enum class SchedulerKind { Exhaustive, Random, Scripted };
enum class ValuePolicy { Canonical, Enumerated };

struct ExploreConfig {
  std::size_t depth = 12;
  std::size_t state_cap = 100'000;
  ValuePolicy values = ValuePolicy::Canonical;
  SchedulerKind scheduler = SchedulerKind::Exhaustive;
  std::uint64_t seed = 0;
  Script script;
  /// Reject the input up front unless it type-checks.
  bool admission = true;
};

enum class Verdict { Holds, Violated, Inconclusive };
std::string_view to_string(Verdict v);

struct TraceEntry {
  std::string step;     // "[Com] Tr->Ht:qr("in") @ Tr, Ht", prefixed by the session index in networks
  std::string state;    // the successor, normalized, in surface syntax
  std::string pair;     // tracked global pair, empty when unknown
};

struct PropertyResult {
  std::string property;  // "sr", "fidelity", "progress"
  Verdict verdict = Verdict::Holds;
  std::string message;
  std::vector<TraceEntry> counterexample;
  std::vector<std::string> details;
};

struct VerifyReport {
  bool admitted = true;
  std::vector<std::string> admission_errors;
  std::size_t states = 0;
  std::size_t transitions = 0;
  bool truncated = false;
  std::vector<PropertyResult> properties;

  const PropertyResult* find(const std::string& name) const;
  bool ok() const;
};

struct PropertySet {
  bool sr = false;
  bool fidelity = false;
  bool progress = false;
};

/// Explores the network from its initial state and checks the requested properties.
VerifyReport verify(const Network& n, const std::vector<GlobalPair>& gps, const ExploreConfig& cfg, PropertySet props);

VerifyReport check_subject_reduction(const Session& m, const GlobalPair& gp, const ExploreConfig& cfg);
VerifyReport check_fidelity(const Session& m, const GlobalPair& gp, const ExploreConfig& cfg);
VerifyReport check_progress(const Network& n, const std::vector<GlobalPair>& gps, const ExploreConfig& cfg);

/// The global reduct matching a session step: [Chc] keeps the pair, [CkChc]
/// maps to [G-CkChc], [Com] on ℓ to [G-Com] at ℓ, [RbM] on A to [G-Rb] at A.
struct Derivation {
  std::optional<GlobalPair> pair;
  std::string rule;   // global rule applied, or "none"
  std::string error;  // why no reduct exists
};
Derivation derive_pair(const GlobalPair& gp, const SessionStep& step);

/// First enabled network step matching a script directive, in step order.
std::optional<NetworkStep> match_directive(const std::vector<NetworkStep>& steps, const Directive& d);

/// Tags each choice of the active and history processes with a fresh id,
/// returning the id → path table.
Network tag_occurrences(const Network& n, std::map<OccurrenceId, std::string>& paths);

}  // namespace rms

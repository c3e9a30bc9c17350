#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rms/kernel.hpp"
#include "rms/projection.hpp"

namespace rms {

class TypingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Γ: sorts of expression variables and types of process variables.
struct TypeEnv {
  SortEnv sorts;
  std::map<VarName, SessionTypePtr> procs;
};

/// Synthesizes the session type of `p`. Throws TypingError.
SessionTypePtr type_process(const TypeEnv& env, const ProcessPtr& p);
SessionTypePtr type_process(const ProcessPtr& p);

std::vector<SessionTypePtr> type_ckseq(const std::vector<ProcessPtr>& r);
ConfigType type_configuration(const Configuration& c);

struct ConditionVerdict {
  int condition = 0;  // 1..4
  bool applies = false;
  bool holds = true;
  std::string detail;
};

struct Agreement {
  bool holds = true;
  std::vector<ConditionVerdict> conditions;
};

/// ⟨ρ,T⟩ p-agrees with ⟨Υ,G⟩.
Agreement agrees(const ConfigType& ct, const Participant& p, const GlobalPair& gp, Projector& proj);
Agreement agrees(const ConfigType& ct, const Participant& p, const GlobalPair& gp);

struct Failure {
  std::string participant;  // empty for session-level conditions
  std::string condition;    // "typing", "agreement-2", "length", "participants", "well-formed", "sessions"
  std::string locus;
  std::string message;
};

struct ParticipantTyping {
  Participant participant;
  std::optional<ConfigType> type;
  Agreement agreement;
};

struct TypingReport {
  bool accepted = true;
  std::vector<ParticipantTyping> participants;
  std::vector<Failure> failures;

  void fail(Failure f) {
    accepted = false;
    failures.push_back(std::move(f));
  }
};

TypingReport type_session(const Session& m, const GlobalPair& gp, Projector& proj);
TypingReport type_session(const Session& m, const GlobalPair& gp);

struct NetworkTyping {
  bool accepted = true;
  std::vector<TypingReport> sessions;
  std::vector<Failure> failures;
};

NetworkTyping type_network(const Network& n, const std::vector<GlobalPair>& gps);

}  // namespace rms

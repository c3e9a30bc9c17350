#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rms/kernel.hpp"

namespace rms {

enum class Rule { Chc, CkChc, Snd, Rcv, CkRcv, RbP, Com, PrM, RbM };
std::string_view to_string(Rule r);

/// α ∈ { τ, p!ℓ(v), p?ℓ(v), A }
struct Action {
  enum class Kind { Tau, Send, Recv, Roll };
  Kind kind = Kind::Tau;
  Participant peer;
  Label label;
  std::optional<Value> value;
  CheckpointName checkpoint;

  static Action tau() { return {}; }
  static Action send(Participant p, Label l, std::optional<Value> v) {
    return {Kind::Send, std::move(p), std::move(l), std::move(v), {}};
  }
  static Action recv(Participant p, Label l, std::optional<Value> v) {
    return {Kind::Recv, std::move(p), std::move(l), std::move(v), {}};
  }
  static Action roll(CheckpointName a) { return {Kind::Roll, {}, {}, std::nullopt, std::move(a)}; }
};

std::string to_string(const Action& a);

/// Candidate values used when a configuration receives on its own.
struct ValueDomain {
  std::map<Sort, std::vector<Value>> values;

  const std::vector<Value>& of(Sort s) const { return values.at(s); }

  /// One value per sort: 0, true, "s".
  static ValueDomain canonical();
  /// A small finite domain per sort.
  static ValueDomain enumerated();
};

struct ConfigStep {
  Rule rule;
  Action action;
  Configuration next;
  std::size_t branch = 0;  // index into the branch list of the active choice
  bool blocked = false;    // a send whose payload does not evaluate
  std::string error;
};

std::vector<ConfigStep> config_steps(const Configuration& c, const ValueDomain& values = ValueDomain::canonical());

/// 𝒜(C): defined only when the active process is 0.
std::optional<std::set<CheckpointName>> ck_names(const Configuration& c);

/// The committed output of `c`, if its active process is a singleton unchecked output.
struct PendingSend {
  Participant to;
  Label label;
  ExprPtr payload;
  OccurrenceId occurrence = 0;
};
std::optional<PendingSend> pending_send(const Configuration& c);

/// [Rcv]/[CkRcv] for one specific message; nullopt when `c` cannot take it.
std::optional<Configuration> receive(const Configuration& c, const Participant& from, const Label& label,
                                     const std::optional<Value>& value, Rule* rule = nullptr);

struct SessionStep {
  Rule rule;                              // Chc, CkChc, Com or RbM
  std::vector<Participant> participants;  // actor first; sender then receiver for Com
  Label label;                            // chosen or communicated label
  std::optional<Value> value;
  CheckpointName checkpoint;              // RbM target
  std::vector<OccurrenceId> consumed;     // choice occurrences fired by a Com
  Rule receiver_rule = Rule::Rcv;         // Rcv or CkRcv for Com
  Session next;
  std::vector<std::string> warnings;
};

/// "[Com] Tr!qr("in") @ Tr, Ht" and friends.
std::string describe(const SessionStep& s);

std::vector<SessionStep> session_steps(const Session& m);

/// Drops ⟨ε, 0⟩ entries; the map already orders participants.
Session normalize(const Session& m);
bool session_equiv(const Session& a, const Session& b);

enum class SessionStatus { Live, Terminal, Stuck };
std::string_view to_string(SessionStatus s);
SessionStatus status(const Session& m);

struct NetworkStep {
  std::size_t session;
  SessionStep step;
};

std::vector<NetworkStep> network_steps(const Network& n);

enum class GlobalRule { CkChc, Com, Rb };
std::string_view to_string(GlobalRule r);

struct GlobalStep {
  GlobalRule rule;
  Label label;                // G-Com branch
  CheckpointName checkpoint;  // G-CkChc / G-Rb
  std::size_t index = 0;      // G-Com branch index or G-Rb history index
  GlobalPair next;
};

std::vector<GlobalStep> global_steps(const GlobalPair& gp);

}  // namespace rms

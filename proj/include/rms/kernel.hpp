#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rms/expr.hpp"

namespace rms {

using Participant = std::string;
using Label = std::string;
using CheckpointName = std::string;

/// Identifies a syntactic choice occurrence across reductions; 0 means untracked.
using OccurrenceId = std::uint32_t;

// ---------------------------------------------------------------------------
// Processes

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

struct Binder {
  VarName name;
  Sort sort;
  friend bool operator==(const Binder&, const Binder&) = default;
};

struct InputBranch {
  Label label;
  std::optional<Binder> binder;  // absent for label-only messages
  ProcessPtr cont;
};

struct OutputBranch {
  Label label;
  ExprPtr payload;  // null for label-only messages
  ProcessPtr cont;
};

struct Process {
  /// p?{ l_i(x_i:S_i).P_i }, optionally checkpointed.
  struct Input {
    std::optional<CheckpointName> checkpoint;
    Participant from;
    std::vector<InputBranch> branches;
  };
  /// p!{ l_i(e_i).P_i }, optionally checkpointed.
  struct Output {
    std::optional<CheckpointName> checkpoint;
    Participant to;
    std::vector<OutputBranch> branches;
  };
  struct Rec {
    VarName var;
    ProcessPtr body;
  };
  struct Var {
    VarName name;
  };
  struct Inact {};

  std::variant<Input, Output, Rec, Var, Inact> node;
  OccurrenceId occurrence = 0;
  std::size_t hash = 0;
};

ProcessPtr inact();
ProcessPtr proc_var(VarName name);
ProcessPtr rec(VarName var, ProcessPtr body);
ProcessPtr input(Participant from, std::vector<InputBranch> branches,
                 std::optional<CheckpointName> checkpoint = std::nullopt, OccurrenceId occ = 0);
ProcessPtr output(Participant to, std::vector<OutputBranch> branches,
                  std::optional<CheckpointName> checkpoint = std::nullopt, OccurrenceId occ = 0);

/// Single-branch output p!l(e).P; `payload` may be null.
ProcessPtr send(Participant to, Label label, ExprPtr payload, ProcessPtr cont);

bool operator==(const Process& a, const Process& b);

const std::optional<CheckpointName>& checkpoint_of(const Process& p);
bool is_checkpointed(const Process& p);

/// Same choice without its checkpoint; identity on other nodes.
ProcessPtr strip_checkpoint(const ProcessPtr& p);

/// P[v/x]; binders named x shadow.
ProcessPtr substitute(const ProcessPtr& p, const VarName& x, const Value& v);

/// P[Q/X] for process variables.
ProcessPtr substitute_proc(const ProcessPtr& p, const VarName& x, const ProcessPtr& q);

/// One unfolding of a top-level μ; identity otherwise.
ProcessPtr unfold(const ProcessPtr& p);

/// Repeats `unfold` until the head is not a μ (terminates on guarded terms).
ProcessPtr unfold_head(const ProcessPtr& p);

std::set<VarName> free_proc_vars(const Process& p);

// ---------------------------------------------------------------------------
// Session types

struct SessionType;
using SessionTypePtr = std::shared_ptr<const SessionType>;

struct TypeBranch {
  Label label;
  std::optional<Sort> sort;
  SessionTypePtr cont;
};

struct SessionType {
  /// ⋀ p?l_i(S_i).T_i
  struct Inter {
    std::optional<CheckpointName> checkpoint;
    Participant from;
    std::vector<TypeBranch> branches;
  };
  /// ⋁ p!l_i(S_i).T_i
  struct Union {
    std::optional<CheckpointName> checkpoint;
    Participant to;
    std::vector<TypeBranch> branches;
  };
  struct Rec {
    VarName var;
    SessionTypePtr body;
  };
  struct Var {
    VarName name;
  };
  struct End {};

  std::variant<Inter, Union, Rec, Var, End> node;
  std::size_t hash = 0;
};

SessionTypePtr end_type();
SessionTypePtr type_var(VarName name);
SessionTypePtr rec_type(VarName var, SessionTypePtr body);
SessionTypePtr inter(Participant from, std::vector<TypeBranch> branches,
                     std::optional<CheckpointName> checkpoint = std::nullopt);
SessionTypePtr union_type(Participant to, std::vector<TypeBranch> branches,
                          std::optional<CheckpointName> checkpoint = std::nullopt);

bool operator==(const SessionType& a, const SessionType& b);

const std::optional<CheckpointName>& checkpoint_of(const SessionType& t);
bool is_checkpointed(const SessionType& t);
SessionTypePtr strip_checkpoint(const SessionTypePtr& t);
SessionTypePtr with_checkpoint(const SessionTypePtr& t, CheckpointName name);

SessionTypePtr substitute(const SessionTypePtr& t, const VarName& x, const SessionTypePtr& u);
SessionTypePtr unfold(const SessionTypePtr& t);
SessionTypePtr unfold_head(const SessionTypePtr& t);

bool is_end(const SessionType& t);
bool is_inter(const SessionType& t);
bool is_union(const SessionType& t);

// ---------------------------------------------------------------------------
// Single-threaded global types

struct GlobalType;
using GlobalTypePtr = std::shared_ptr<const GlobalType>;

struct GlobalBranch {
  Label label;
  std::optional<Sort> sort;
  GlobalTypePtr cont;
};

struct GlobalType {
  /// p → q { l_i(S_i).G_i }, optionally checkpointed.
  struct Comm {
    std::optional<CheckpointName> checkpoint;
    Participant from;
    Participant to;
    std::vector<GlobalBranch> branches;
  };
  struct Rec {
    VarName var;
    GlobalTypePtr body;
  };
  struct Var {
    VarName name;
  };
  struct End {};

  std::variant<Comm, Rec, Var, End> node;
  std::size_t hash = 0;
};

GlobalTypePtr global_end();
GlobalTypePtr global_var(VarName name);
GlobalTypePtr global_rec(VarName var, GlobalTypePtr body);
GlobalTypePtr comm(Participant from, Participant to, std::vector<GlobalBranch> branches,
                   std::optional<CheckpointName> checkpoint = std::nullopt);

bool operator==(const GlobalType& a, const GlobalType& b);

const std::optional<CheckpointName>& checkpoint_of(const GlobalType& g);
bool is_checkpointed(const GlobalType& g);
GlobalTypePtr strip_checkpoint(const GlobalTypePtr& g);

GlobalTypePtr substitute(const GlobalTypePtr& g, const VarName& x, const GlobalTypePtr& u);
GlobalTypePtr unfold(const GlobalTypePtr& g);
GlobalTypePtr unfold_head(const GlobalTypePtr& g);

// ---------------------------------------------------------------------------
// Configurations, sessions, networks

/// ⟨R, P⟩. Every history element is a checkpointed choice.
class Configuration {
 public:
  Configuration();
  explicit Configuration(ProcessPtr active, std::vector<ProcessPtr> history = {});

  const std::vector<ProcessPtr>& history() const { return history_; }
  const ProcessPtr& active() const { return active_; }

  friend bool operator==(const Configuration& a, const Configuration& b);

 private:
  std::vector<ProcessPtr> history_;
  ProcessPtr active_;
};

/// Participant names are map keys, so they are unique by construction.
using Session = std::map<Participant, Configuration>;
using Network = std::vector<Session>;

/// ⟨Υ, G⟩ with Υ a sequence of checkpointed communications with distinct names.
class GlobalPair {
 public:
  GlobalPair();
  explicit GlobalPair(GlobalTypePtr active, std::vector<GlobalTypePtr> history = {});

  const std::vector<GlobalTypePtr>& history() const { return history_; }
  const GlobalTypePtr& active() const { return active_; }

  friend bool operator==(const GlobalPair& a, const GlobalPair& b);

 private:
  std::vector<GlobalTypePtr> history_;
  GlobalTypePtr active_;
};

/// ⟨ρ, T⟩
class ConfigType {
 public:
  ConfigType();
  explicit ConfigType(SessionTypePtr active, std::vector<SessionTypePtr> history = {});

  const std::vector<SessionTypePtr>& history() const { return history_; }
  const SessionTypePtr& active() const { return active_; }

  friend bool operator==(const ConfigType& a, const ConfigType& b);

 private:
  std::vector<SessionTypePtr> history_;
  SessionTypePtr active_;
};

// ---------------------------------------------------------------------------
// Grammar side conditions

enum class Constraint {
  EmptyChoice,          // I, J non-empty
  SingletonCheckpoint,  // J not a singleton
  DuplicateLabel,       // labels pairwise distinct
  SelfNamedNesting,     // A does not occur inside a term checkpointed by A
  UnguardedRecursion,
  UncheckpointedHistory,
  DuplicateCheckpointName,
};

std::string_view to_string(Constraint c);

struct Violation {
  Constraint constraint;
  std::string path;
  std::string message;
};

std::vector<Violation> validate(const Process& p);
std::vector<Violation> validate(const SessionType& t);
std::vector<Violation> validate(const GlobalType& g);
std::vector<Violation> validate(const Configuration& c);
std::vector<Violation> validate(const GlobalPair& gp);

/// Names of all checkpoints occurring in a term.
std::set<CheckpointName> checkpoint_names(const Process& p);
std::set<CheckpointName> checkpoint_names(const GlobalType& g);

/// Number of nodes (choices, branches excluded) of a term.
std::size_t node_count(const SessionType& t);

}  // namespace rms

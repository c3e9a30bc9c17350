#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rms/kernel.hpp"

namespace rms {

struct Location {
  int line = 0;
  int column = 0;
};

std::string to_string(const Location& loc);

class ParseError : public std::runtime_error {
 public:
  ParseError(Location loc, const std::string& message);
  Location location() const { return loc_; }

 private:
  Location loc_;
};

/// A term parsed fine but breaks a grammar side condition.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(Location loc, std::string subject, std::vector<Violation> violations);
  Location location() const { return loc_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  Location loc_;
  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// Scheduler scripts: one directive per line, '#' starts a comment.
//   choose p l | comm p q l | roll A

struct Directive {
  enum class Kind { Choose, Comm, Roll };
  Kind kind;
  std::vector<std::string> args;
  int line = 0;
};

using Script = std::vector<Directive>;

Script parse_script(std::string_view text);
std::string print(const Directive& d);

// ---------------------------------------------------------------------------
// Source files
//
//   global G = p -> q { l(Int).end, m.end };
//   process P = q?{ l(x:Int).end, m.end };
//   type T = q?{ l(Int).end, m.end };
//   session S { p |> < [] ; ... >, q |> P }
//   typing S = < [] ; G >;
//   network { S }
//   script { comm p q l }
//
// Names must be declared before they are used; a reference is replaced by the
// declared term.

struct SourceFile {
  enum class Kind { Global, Process, Type, Session, Typing, Network, Script };
  struct Decl {
    Kind kind;
    std::string name;
    Location loc;
  };

  std::vector<Decl> declarations;
  std::map<std::string, GlobalTypePtr> globals;
  std::map<std::string, ProcessPtr> processes;
  std::map<std::string, SessionTypePtr> types;
  std::map<std::string, Session> sessions;
  std::map<std::string, GlobalPair> typings;  // keyed by session name
  std::vector<std::string> session_order;
  std::optional<std::vector<std::string>> network_decl;
  std::optional<Script> script;

  /// Sessions of the explicit network, or all sessions in declaration order.
  std::vector<std::string> network_names() const;
  Network network() const;
};

SourceFile parse(std::string_view text);
std::string print(const SourceFile& file);

// Single terms, validated like declarations.
ProcessPtr parse_process(std::string_view text);
SessionTypePtr parse_session_type(std::string_view text);
GlobalTypePtr parse_global(std::string_view text);
ExprPtr parse_expr(std::string_view text);
Configuration parse_configuration(std::string_view text);
GlobalPair parse_global_pair(std::string_view text);
Session parse_session(std::string_view text);

}  // namespace rms

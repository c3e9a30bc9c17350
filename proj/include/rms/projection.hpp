#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rms/kernel.hpp"

namespace rms {

std::set<Participant> participants(const GlobalType& g);
std::set<Participant> participants(const std::vector<GlobalTypePtr>& history);
std::set<Participant> participants(const GlobalPair& gp);

/// A projection or merge outcome; `type` is null when undefined.
struct ProjResult {
  SessionTypePtr type;
  std::string reason;
  std::string path;

  bool defined() const { return type != nullptr; }
  static ProjResult of(SessionTypePtr t) { return {std::move(t), {}, {}}; }
  static ProjResult undefined(std::string reason, std::string path = "/") {
    return {nullptr, std::move(reason), std::move(path)};
  }
};

/// ⊓ over a non-empty list. Identical inputs clash like any repeated label.
ProjResult merge(const std::vector<SessionTypePtr>& ts);

/// G↾r, memoized per (G, r) for the lifetime of the projector.
class Projector {
 public:
  ProjResult project(const GlobalTypePtr& g, const Participant& r);

 private:
  ProjResult compute(const GlobalTypePtr& g, const Participant& r);

  struct Key {
    GlobalTypePtr g;
    Participant r;
    bool operator==(const Key& o) const { return r == o.r && *g == *o.g; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.g->hash ^ (std::hash<std::string>{}(k.r) << 1); }
  };
  std::unordered_map<Key, ProjResult, KeyHash> memo_;
};

ProjResult project(const GlobalTypePtr& g, const Participant& r);

struct WellFormedness {
  bool ok = true;
  std::vector<std::pair<Participant, ProjResult>> failures;
};

/// Every projection onto pt(G) is defined.
WellFormedness well_formed(const GlobalTypePtr& g);

}  // namespace rms

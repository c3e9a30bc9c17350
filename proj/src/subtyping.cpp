#include "rms/subtyping.hpp"

#include <unordered_set>

namespace rms {

namespace {

struct PairKey {
  SessionTypePtr t;
  SessionTypePtr u;
  bool operator==(const PairKey& o) const { return *t == *o.t && *u == *o.u; }
};

struct PairHash {
  std::size_t operator()(const PairKey& k) const { return k.t->hash * 31 + k.u->hash; }
};

// Assume-and-check. Every rule is deterministic, so a single failing premise
// refutes the whole query and the assumption set never needs to be retracted.
class Checker {
 public:
  bool check(SessionTypePtr t, SessionTypePtr u) {
    t = unfold_head(t);
    u = unfold_head(u);
    if (!assumed_.insert(PairKey{t, u}).second) return true;

    const auto& ct = checkpoint_of(*t);
    if (ct != checkpoint_of(*u)) return false;

    if (is_end(*t) || is_end(*u)) return is_end(*t) && is_end(*u);

    if (const auto* a = std::get_if<SessionType::Var>(&t->node)) {
      const auto* b = std::get_if<SessionType::Var>(&u->node);
      return b && a->name == b->name;
    }

    if (const auto* a = std::get_if<SessionType::Inter>(&t->node)) {
      const auto* b = std::get_if<SessionType::Inter>(&u->node);
      if (!b || a->from != b->from) return false;
      // The supertype may offer fewer inputs.
      return covers(a->branches, b->branches, /*sub_is_larger=*/true);
    }

    if (const auto* a = std::get_if<SessionType::Union>(&t->node)) {
      const auto* b = std::get_if<SessionType::Union>(&u->node);
      if (!b || a->to != b->to) return false;
      return covers(b->branches, a->branches, /*sub_is_larger=*/false);
    }
    return false;
  }

 private:
  // Every branch of `small` has a same-label, same-sort branch in `large`, and
  // the continuations are related in the direction given by `sub_is_larger`.
  bool covers(const std::vector<TypeBranch>& large, const std::vector<TypeBranch>& small, bool sub_is_larger) {
    for (const auto& s : small) {
      const TypeBranch* match = nullptr;
      for (const auto& l : large) {
        if (l.label == s.label) {
          match = &l;
          break;
        }
      }
      if (!match || match->sort != s.sort) return false;
      bool ok = sub_is_larger ? check(match->cont, s.cont) : check(s.cont, match->cont);
      if (!ok) return false;
    }
    return true;
  }

  std::unordered_set<PairKey, PairHash> assumed_;
};

}  // namespace

bool is_subtype(const SessionTypePtr& t, const SessionTypePtr& u) { return Checker{}.check(t, u); }

bool equal_regular(const SessionTypePtr& t, const SessionTypePtr& u) { return is_subtype(t, u) && is_subtype(u, t); }

}  // namespace rms

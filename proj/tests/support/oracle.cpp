#include "oracle.hpp"

#include "rms/overloaded.hpp"

namespace rmstest {

using namespace rms;

namespace {

SessionTypePtr subst(const SessionTypePtr& t, const std::string& x, const SessionTypePtr& u) {
  return std::visit(
      overloaded{
          [&](const SessionType::Inter& in) -> SessionTypePtr {
            auto bs = in.branches;
            for (auto& b : bs) b.cont = subst(b.cont, x, u);
            return inter(in.from, bs, in.checkpoint);
          },
          [&](const SessionType::Union& un) -> SessionTypePtr {
            auto bs = un.branches;
            for (auto& b : bs) b.cont = subst(b.cont, x, u);
            return union_type(un.to, bs, un.checkpoint);
          },
          [&](const SessionType::Rec& r) -> SessionTypePtr {
            if (r.var == x) return t;
            return rec_type(r.var, subst(r.body, x, u));
          },
          [&](const SessionType::Var& v) -> SessionTypePtr { return v.name == x ? u : t; },
          [&](const SessionType::End&) -> SessionTypePtr { return t; },
      },
      t->node);
}

SessionTypePtr head(SessionTypePtr t) {
  for (int guard = 0; guard < 64; ++guard) {
    const auto* r = std::get_if<SessionType::Rec>(&t->node);
    if (!r) return t;
    t = subst(r->body, r->var, t);
  }
  return t;
}

const TypeBranch* find(const std::vector<TypeBranch>& bs, const std::string& label) {
  for (const auto& b : bs) {
    if (b.label == label) return &b;
  }
  return nullptr;
}

// Every branch of `small` has a partner in `big` with the same sort, and the
// continuations relate in the direction given by `forward`.
bool covers(const std::vector<TypeBranch>& small, const std::vector<TypeBranch>& big, bool small_is_sub, int depth) {
  for (const auto& b : small) {
    const auto* c = find(big, b.label);
    if (!c || c->sort != b.sort) return false;
    bool ok = small_is_sub ? unfolding_subtype(b.cont, c->cont, depth - 1) : unfolding_subtype(c->cont, b.cont, depth - 1);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool unfolding_subtype(const SessionTypePtr& t0, const SessionTypePtr& u0, int depth) {
  if (depth <= 0) return true;
  auto t = head(t0);
  auto u = head(u0);
  if (std::holds_alternative<SessionType::End>(t->node)) return std::holds_alternative<SessionType::End>(u->node);
  if (const auto* tv = std::get_if<SessionType::Var>(&t->node)) {
    const auto* uv = std::get_if<SessionType::Var>(&u->node);
    return uv && uv->name == tv->name;
  }
  if (const auto* ti = std::get_if<SessionType::Inter>(&t->node)) {
    const auto* ui = std::get_if<SessionType::Inter>(&u->node);
    if (!ui || ui->from != ti->from || ui->checkpoint != ti->checkpoint) return false;
    // The supertype's branches must all be offered by the subtype.
    return covers(ui->branches, ti->branches, false, depth);
  }
  if (const auto* tu = std::get_if<SessionType::Union>(&t->node)) {
    const auto* uu = std::get_if<SessionType::Union>(&u->node);
    if (!uu || uu->to != tu->to || uu->checkpoint != tu->checkpoint) return false;
    return covers(tu->branches, uu->branches, true, depth);
  }
  return false;
}

}  // namespace rmstest

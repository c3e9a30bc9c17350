#include "rms/kernel.hpp"

#include <algorithm>
#include <functional>

#include "rms/overloaded.hpp"

namespace rms {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

std::size_t hash_ckpt(const std::optional<CheckpointName>& c) { return c ? mix(1, hash_str(*c)) : 0; }

std::size_t hash_sort(const std::optional<Sort>& s) { return s ? static_cast<std::size_t>(*s) + 1 : 0; }

std::size_t hash_expr(const ExprPtr& e) {
  if (!e) return 0;
  return std::visit(overloaded{
                        [](const Expr::Lit& x) { return mix(11, std::hash<std::string>{}(to_string(x.value))); },
                        [](const Expr::Var& x) { return mix(13, hash_str(x.name)); },
                        [](const Expr::Unary& x) { return mix(mix(17, static_cast<std::size_t>(x.op)), hash_expr(x.arg)); },
                        [](const Expr::Binary& x) {
                          return mix(mix(mix(19, static_cast<std::size_t>(x.op)), hash_expr(x.lhs)), hash_expr(x.rhs));
                        },
                    },
                    e->node);
}

template <class Branch>
void sort_branches(std::vector<Branch>& branches) {
  std::stable_sort(branches.begin(), branches.end(),
                   [](const Branch& a, const Branch& b) { return a.label < b.label; });
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Process construction

namespace {

ProcessPtr make_process(decltype(Process::node) node, OccurrenceId occ) {
  auto p = std::make_shared<Process>();
  p->node = std::move(node);
  p->occurrence = occ;
  p->hash = std::visit(
      overloaded{
          [](const Process::Input& x) {
            std::size_t h = mix(mix(101, hash_ckpt(x.checkpoint)), hash_str(x.from));
            for (const auto& b : x.branches) {
              h = mix(h, hash_str(b.label));
              if (b.binder) h = mix(mix(h, hash_str(b.binder->name)), static_cast<std::size_t>(b.binder->sort) + 1);
              h = mix(h, b.cont->hash);
            }
            return h;
          },
          [](const Process::Output& x) {
            std::size_t h = mix(mix(103, hash_ckpt(x.checkpoint)), hash_str(x.to));
            for (const auto& b : x.branches) {
              h = mix(mix(mix(h, hash_str(b.label)), hash_expr(b.payload)), b.cont->hash);
            }
            return h;
          },
          [](const Process::Rec& x) { return mix(mix(107, hash_str(x.var)), x.body->hash); },
          [](const Process::Var& x) { return mix(109, hash_str(x.name)); },
          [](const Process::Inact&) { return std::size_t{113}; },
      },
      p->node);
  return p;
}

}  // namespace

ProcessPtr inact() {
  static const ProcessPtr zero = make_process(Process::Inact{}, 0);
  return zero;
}

ProcessPtr proc_var(VarName name) { return make_process(Process::Var{std::move(name)}, 0); }

ProcessPtr rec(VarName var, ProcessPtr body) { return make_process(Process::Rec{std::move(var), std::move(body)}, 0); }

ProcessPtr input(Participant from, std::vector<InputBranch> branches, std::optional<CheckpointName> checkpoint,
                 OccurrenceId occ) {
  sort_branches(branches);
  return make_process(Process::Input{std::move(checkpoint), std::move(from), std::move(branches)}, occ);
}

ProcessPtr output(Participant to, std::vector<OutputBranch> branches, std::optional<CheckpointName> checkpoint,
                  OccurrenceId occ) {
  sort_branches(branches);
  return make_process(Process::Output{std::move(checkpoint), std::move(to), std::move(branches)}, occ);
}

ProcessPtr send(Participant to, Label label, ExprPtr payload, ProcessPtr cont) {
  return output(std::move(to), {OutputBranch{std::move(label), std::move(payload), std::move(cont)}});
}

bool operator==(const Process& a, const Process& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Process::Input& x) {
            const auto& y = std::get<Process::Input>(b.node);
            if (x.checkpoint != y.checkpoint || x.from != y.from || x.branches.size() != y.branches.size()) return false;
            for (std::size_t i = 0; i < x.branches.size(); ++i) {
              const auto& l = x.branches[i];
              const auto& r = y.branches[i];
              if (l.label != r.label || l.binder != r.binder || !(*l.cont == *r.cont)) return false;
            }
            return true;
          },
          [&](const Process::Output& x) {
            const auto& y = std::get<Process::Output>(b.node);
            if (x.checkpoint != y.checkpoint || x.to != y.to || x.branches.size() != y.branches.size()) return false;
            for (std::size_t i = 0; i < x.branches.size(); ++i) {
              const auto& l = x.branches[i];
              const auto& r = y.branches[i];
              if (l.label != r.label || !same_expr(l.payload, r.payload) || !(*l.cont == *r.cont)) return false;
            }
            return true;
          },
          [&](const Process::Rec& x) {
            const auto& y = std::get<Process::Rec>(b.node);
            return x.var == y.var && *x.body == *y.body;
          },
          [&](const Process::Var& x) { return x.name == std::get<Process::Var>(b.node).name; },
          [&](const Process::Inact&) { return true; },
      },
      a.node);
}

const std::optional<CheckpointName>& checkpoint_of(const Process& p) {
  static const std::optional<CheckpointName> none;
  if (const auto* in = std::get_if<Process::Input>(&p.node)) return in->checkpoint;
  if (const auto* out = std::get_if<Process::Output>(&p.node)) return out->checkpoint;
  return none;
}

bool is_checkpointed(const Process& p) { return checkpoint_of(p).has_value(); }

ProcessPtr strip_checkpoint(const ProcessPtr& p) {
  if (const auto* in = std::get_if<Process::Input>(&p->node); in && in->checkpoint) {
    return input(in->from, in->branches, std::nullopt, p->occurrence);
  }
  if (const auto* out = std::get_if<Process::Output>(&p->node); out && out->checkpoint) {
    return output(out->to, out->branches, std::nullopt, p->occurrence);
  }
  return p;
}

ProcessPtr substitute(const ProcessPtr& p, const VarName& x, const Value& v) {
  return std::visit(
      overloaded{
          [&](const Process::Input& in) -> ProcessPtr {
            bool changed = false;
            std::vector<InputBranch> branches = in.branches;
            for (auto& b : branches) {
              if (b.binder && b.binder->name == x) continue;
              auto cont = substitute(b.cont, x, v);
              changed |= cont != b.cont;
              b.cont = std::move(cont);
            }
            return changed ? input(in.from, std::move(branches), in.checkpoint, p->occurrence) : p;
          },
          [&](const Process::Output& out) -> ProcessPtr {
            bool changed = false;
            std::vector<OutputBranch> branches = out.branches;
            for (auto& b : branches) {
              if (b.payload) {
                auto e = rms::substitute(b.payload, x, v);
                changed |= e != b.payload;
                b.payload = std::move(e);
              }
              auto cont = substitute(b.cont, x, v);
              changed |= cont != b.cont;
              b.cont = std::move(cont);
            }
            return changed ? output(out.to, std::move(branches), out.checkpoint, p->occurrence) : p;
          },
          [&](const Process::Rec& r) -> ProcessPtr {
            auto body = substitute(r.body, x, v);
            return body == r.body ? p : rec(r.var, body);
          },
          [&](const auto&) -> ProcessPtr { return p; },
      },
      p->node);
}

ProcessPtr substitute_proc(const ProcessPtr& p, const VarName& x, const ProcessPtr& q) {
  return std::visit(
      overloaded{
          [&](const Process::Input& in) -> ProcessPtr {
            bool changed = false;
            std::vector<InputBranch> branches = in.branches;
            for (auto& b : branches) {
              auto cont = substitute_proc(b.cont, x, q);
              changed |= cont != b.cont;
              b.cont = std::move(cont);
            }
            return changed ? input(in.from, std::move(branches), in.checkpoint, p->occurrence) : p;
          },
          [&](const Process::Output& out) -> ProcessPtr {
            bool changed = false;
            std::vector<OutputBranch> branches = out.branches;
            for (auto& b : branches) {
              auto cont = substitute_proc(b.cont, x, q);
              changed |= cont != b.cont;
              b.cont = std::move(cont);
            }
            return changed ? output(out.to, std::move(branches), out.checkpoint, p->occurrence) : p;
          },
          [&](const Process::Rec& r) -> ProcessPtr {
            if (r.var == x) return p;
            auto body = substitute_proc(r.body, x, q);
            return body == r.body ? p : rec(r.var, body);
          },
          [&](const Process::Var& v) -> ProcessPtr { return v.name == x ? q : p; },
          [&](const Process::Inact&) -> ProcessPtr { return p; },
      },
      p->node);
}

ProcessPtr unfold(const ProcessPtr& p) {
  if (const auto* r = std::get_if<Process::Rec>(&p->node)) return substitute_proc(r->body, r->var, p);
  return p;
}

ProcessPtr unfold_head(const ProcessPtr& p) {
  ProcessPtr cur = p;
  // A guarded term has at most as many nested heads as μ binders.
  for (std::size_t guard = 0; std::holds_alternative<Process::Rec>(cur->node) && guard < 10'000; ++guard) {
    cur = unfold(cur);
  }
  return cur;
}

std::set<VarName> free_proc_vars(const Process& p) {
  std::set<VarName> out;
  std::visit(overloaded{
                 [&](const Process::Input& in) {
                   for (const auto& b : in.branches) out.merge(free_proc_vars(*b.cont));
                 },
                 [&](const Process::Output& o) {
                   for (const auto& b : o.branches) out.merge(free_proc_vars(*b.cont));
                 },
                 [&](const Process::Rec& r) {
                   out = free_proc_vars(*r.body);
                   out.erase(r.var);
                 },
                 [&](const Process::Var& v) { out.insert(v.name); },
                 [&](const Process::Inact&) {},
             },
             p.node);
  return out;
}

// ---------------------------------------------------------------------------
// Session types

namespace {

std::size_t hash_type_branches(std::size_t h, const std::vector<TypeBranch>& branches) {
  for (const auto& b : branches) h = mix(mix(mix(h, hash_str(b.label)), hash_sort(b.sort)), b.cont->hash);
  return h;
}

SessionTypePtr make_type(decltype(SessionType::node) node) {
  auto t = std::make_shared<SessionType>();
  t->node = std::move(node);
  t->hash = std::visit(
      overloaded{
          [](const SessionType::Inter& x) {
            return hash_type_branches(mix(mix(201, hash_ckpt(x.checkpoint)), hash_str(x.from)), x.branches);
          },
          [](const SessionType::Union& x) {
            return hash_type_branches(mix(mix(203, hash_ckpt(x.checkpoint)), hash_str(x.to)), x.branches);
          },
          [](const SessionType::Rec& x) { return mix(mix(207, hash_str(x.var)), x.body->hash); },
          [](const SessionType::Var& x) { return mix(209, hash_str(x.name)); },
          [](const SessionType::End&) { return std::size_t{211}; },
      },
      t->node);
  return t;
}

bool same_type_branches(const std::vector<TypeBranch>& a, const std::vector<TypeBranch>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].label != b[i].label || a[i].sort != b[i].sort || !(*a[i].cont == *b[i].cont)) return false;
  }
  return true;
}

}  // namespace

SessionTypePtr end_type() {
  static const SessionTypePtr end = make_type(SessionType::End{});
  return end;
}

SessionTypePtr type_var(VarName name) { return make_type(SessionType::Var{std::move(name)}); }

SessionTypePtr rec_type(VarName var, SessionTypePtr body) {
  return make_type(SessionType::Rec{std::move(var), std::move(body)});
}

SessionTypePtr inter(Participant from, std::vector<TypeBranch> branches, std::optional<CheckpointName> checkpoint) {
  sort_branches(branches);
  return make_type(SessionType::Inter{std::move(checkpoint), std::move(from), std::move(branches)});
}

SessionTypePtr union_type(Participant to, std::vector<TypeBranch> branches,
                          std::optional<CheckpointName> checkpoint) {
  sort_branches(branches);
  return make_type(SessionType::Union{std::move(checkpoint), std::move(to), std::move(branches)});
}

bool operator==(const SessionType& a, const SessionType& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const SessionType::Inter& x) {
                          const auto& y = std::get<SessionType::Inter>(b.node);
                          return x.checkpoint == y.checkpoint && x.from == y.from &&
                                 same_type_branches(x.branches, y.branches);
                        },
                        [&](const SessionType::Union& x) {
                          const auto& y = std::get<SessionType::Union>(b.node);
                          return x.checkpoint == y.checkpoint && x.to == y.to &&
                                 same_type_branches(x.branches, y.branches);
                        },
                        [&](const SessionType::Rec& x) {
                          const auto& y = std::get<SessionType::Rec>(b.node);
                          return x.var == y.var && *x.body == *y.body;
                        },
                        [&](const SessionType::Var& x) { return x.name == std::get<SessionType::Var>(b.node).name; },
                        [&](const SessionType::End&) { return true; },
                    },
                    a.node);
}

const std::optional<CheckpointName>& checkpoint_of(const SessionType& t) {
  static const std::optional<CheckpointName> none;
  if (const auto* i = std::get_if<SessionType::Inter>(&t.node)) return i->checkpoint;
  if (const auto* u = std::get_if<SessionType::Union>(&t.node)) return u->checkpoint;
  return none;
}

bool is_checkpointed(const SessionType& t) { return checkpoint_of(t).has_value(); }

SessionTypePtr strip_checkpoint(const SessionTypePtr& t) {
  if (const auto* i = std::get_if<SessionType::Inter>(&t->node); i && i->checkpoint) return inter(i->from, i->branches);
  if (const auto* u = std::get_if<SessionType::Union>(&t->node); u && u->checkpoint) {
    return union_type(u->to, u->branches);
  }
  return t;
}

SessionTypePtr with_checkpoint(const SessionTypePtr& t, CheckpointName name) {
  if (const auto* i = std::get_if<SessionType::Inter>(&t->node)) return inter(i->from, i->branches, std::move(name));
  if (const auto* u = std::get_if<SessionType::Union>(&t->node)) {
    return union_type(u->to, u->branches, std::move(name));
  }
  throw std::invalid_argument("only choices can carry a checkpoint");
}

namespace {

std::vector<TypeBranch> subst_branches(const std::vector<TypeBranch>& branches, const VarName& x,
                                       const SessionTypePtr& u, bool& changed) {
  std::vector<TypeBranch> out = branches;
  for (auto& b : out) {
    auto cont = substitute(b.cont, x, u);
    changed |= cont != b.cont;
    b.cont = std::move(cont);
  }
  return out;
}

}  // namespace

SessionTypePtr substitute(const SessionTypePtr& t, const VarName& x, const SessionTypePtr& u) {
  return std::visit(overloaded{
                        [&](const SessionType::Inter& i) -> SessionTypePtr {
                          bool changed = false;
                          auto bs = subst_branches(i.branches, x, u, changed);
                          return changed ? inter(i.from, std::move(bs), i.checkpoint) : t;
                        },
                        [&](const SessionType::Union& un) -> SessionTypePtr {
                          bool changed = false;
                          auto bs = subst_branches(un.branches, x, u, changed);
                          return changed ? union_type(un.to, std::move(bs), un.checkpoint) : t;
                        },
                        [&](const SessionType::Rec& r) -> SessionTypePtr {
                          if (r.var == x) return t;
                          auto body = substitute(r.body, x, u);
                          return body == r.body ? t : rec_type(r.var, body);
                        },
                        [&](const SessionType::Var& v) -> SessionTypePtr { return v.name == x ? u : t; },
                        [&](const SessionType::End&) -> SessionTypePtr { return t; },
                    },
                    t->node);
}

SessionTypePtr unfold(const SessionTypePtr& t) {
  if (const auto* r = std::get_if<SessionType::Rec>(&t->node)) return substitute(r->body, r->var, t);
  return t;
}

SessionTypePtr unfold_head(const SessionTypePtr& t) {
  SessionTypePtr cur = t;
  for (std::size_t guard = 0; std::holds_alternative<SessionType::Rec>(cur->node) && guard < 10'000; ++guard) {
    cur = unfold(cur);
  }
  return cur;
}

bool is_end(const SessionType& t) { return std::holds_alternative<SessionType::End>(t.node); }
bool is_inter(const SessionType& t) { return std::holds_alternative<SessionType::Inter>(t.node); }
bool is_union(const SessionType& t) { return std::holds_alternative<SessionType::Union>(t.node); }

// ---------------------------------------------------------------------------
// Global types

namespace {

GlobalTypePtr make_global(decltype(GlobalType::node) node) {
  auto g = std::make_shared<GlobalType>();
  g->node = std::move(node);
  g->hash = std::visit(overloaded{
                           [](const GlobalType::Comm& x) {
                             std::size_t h = mix(mix(mix(301, hash_ckpt(x.checkpoint)), hash_str(x.from)), hash_str(x.to));
                             for (const auto& b : x.branches) {
                               h = mix(mix(mix(h, hash_str(b.label)), hash_sort(b.sort)), b.cont->hash);
                             }
                             return h;
                           },
                           [](const GlobalType::Rec& x) { return mix(mix(307, hash_str(x.var)), x.body->hash); },
                           [](const GlobalType::Var& x) { return mix(309, hash_str(x.name)); },
                           [](const GlobalType::End&) { return std::size_t{311}; },
                       },
                       g->node);
  return g;
}

}  // namespace

GlobalTypePtr global_end() {
  static const GlobalTypePtr end = make_global(GlobalType::End{});
  return end;
}

GlobalTypePtr global_var(VarName name) { return make_global(GlobalType::Var{std::move(name)}); }

GlobalTypePtr global_rec(VarName var, GlobalTypePtr body) {
  return make_global(GlobalType::Rec{std::move(var), std::move(body)});
}

GlobalTypePtr comm(Participant from, Participant to, std::vector<GlobalBranch> branches,
                   std::optional<CheckpointName> checkpoint) {
  sort_branches(branches);
  return make_global(GlobalType::Comm{std::move(checkpoint), std::move(from), std::move(to), std::move(branches)});
}

bool operator==(const GlobalType& a, const GlobalType& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const GlobalType::Comm& x) {
                          const auto& y = std::get<GlobalType::Comm>(b.node);
                          if (x.checkpoint != y.checkpoint || x.from != y.from || x.to != y.to ||
                              x.branches.size() != y.branches.size()) {
                            return false;
                          }
                          for (std::size_t i = 0; i < x.branches.size(); ++i) {
                            const auto& l = x.branches[i];
                            const auto& r = y.branches[i];
                            if (l.label != r.label || l.sort != r.sort || !(*l.cont == *r.cont)) return false;
                          }
                          return true;
                        },
                        [&](const GlobalType::Rec& x) {
                          const auto& y = std::get<GlobalType::Rec>(b.node);
                          return x.var == y.var && *x.body == *y.body;
                        },
                        [&](const GlobalType::Var& x) { return x.name == std::get<GlobalType::Var>(b.node).name; },
                        [&](const GlobalType::End&) { return true; },
                    },
                    a.node);
}

const std::optional<CheckpointName>& checkpoint_of(const GlobalType& g) {
  static const std::optional<CheckpointName> none;
  if (const auto* c = std::get_if<GlobalType::Comm>(&g.node)) return c->checkpoint;
  return none;
}

bool is_checkpointed(const GlobalType& g) { return checkpoint_of(g).has_value(); }

GlobalTypePtr strip_checkpoint(const GlobalTypePtr& g) {
  if (const auto* c = std::get_if<GlobalType::Comm>(&g->node); c && c->checkpoint) {
    return comm(c->from, c->to, c->branches);
  }
  return g;
}

GlobalTypePtr substitute(const GlobalTypePtr& g, const VarName& x, const GlobalTypePtr& u) {
  return std::visit(overloaded{
                        [&](const GlobalType::Comm& c) -> GlobalTypePtr {
                          bool changed = false;
                          std::vector<GlobalBranch> bs = c.branches;
                          for (auto& b : bs) {
                            auto cont = substitute(b.cont, x, u);
                            changed |= cont != b.cont;
                            b.cont = std::move(cont);
                          }
                          return changed ? comm(c.from, c.to, std::move(bs), c.checkpoint) : g;
                        },
                        [&](const GlobalType::Rec& r) -> GlobalTypePtr {
                          if (r.var == x) return g;
                          auto body = substitute(r.body, x, u);
                          return body == r.body ? g : global_rec(r.var, body);
                        },
                        [&](const GlobalType::Var& v) -> GlobalTypePtr { return v.name == x ? u : g; },
                        [&](const GlobalType::End&) -> GlobalTypePtr { return g; },
                    },
                    g->node);
}

GlobalTypePtr unfold(const GlobalTypePtr& g) {
  if (const auto* r = std::get_if<GlobalType::Rec>(&g->node)) return substitute(r->body, r->var, g);
  return g;
}

GlobalTypePtr unfold_head(const GlobalTypePtr& g) {
  GlobalTypePtr cur = g;
  for (std::size_t guard = 0; std::holds_alternative<GlobalType::Rec>(cur->node) && guard < 10'000; ++guard) {
    cur = unfold(cur);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Configurations and pairs

Configuration::Configuration() : active_(inact()) {}

Configuration::Configuration(ProcessPtr active, std::vector<ProcessPtr> history)
    : history_(std::move(history)), active_(std::move(active)) {
  if (!active_) throw std::invalid_argument("configuration needs an active process");
  for (const auto& p : history_) {
    if (!p || !is_checkpointed(*p)) throw std::invalid_argument("checkpointed sequence holds an uncheckpointed process");
  }
}

bool operator==(const Configuration& a, const Configuration& b) {
  if (a.history_.size() != b.history_.size() || !(*a.active_ == *b.active_)) return false;
  for (std::size_t i = 0; i < a.history_.size(); ++i) {
    if (!(*a.history_[i] == *b.history_[i])) return false;
  }
  return true;
}

GlobalPair::GlobalPair() : active_(global_end()) {}

GlobalPair::GlobalPair(GlobalTypePtr active, std::vector<GlobalTypePtr> history)
    : history_(std::move(history)), active_(std::move(active)) {
  if (!active_) throw std::invalid_argument("global pair needs an active type");
  std::set<CheckpointName> seen;
  for (const auto& g : history_) {
    if (!g || !is_checkpointed(*g)) throw std::invalid_argument("global history holds an uncheckpointed type");
    if (!seen.insert(*checkpoint_of(*g)).second) {
      throw std::invalid_argument("global history repeats checkpoint " + *checkpoint_of(*g));
    }
  }
}

bool operator==(const GlobalPair& a, const GlobalPair& b) {
  if (a.history_.size() != b.history_.size() || !(*a.active_ == *b.active_)) return false;
  for (std::size_t i = 0; i < a.history_.size(); ++i) {
    if (!(*a.history_[i] == *b.history_[i])) return false;
  }
  return true;
}

ConfigType::ConfigType() : active_(end_type()) {}

ConfigType::ConfigType(SessionTypePtr active, std::vector<SessionTypePtr> history)
    : history_(std::move(history)), active_(std::move(active)) {
  if (!active_) throw std::invalid_argument("configuration type needs an active type");
  for (const auto& t : history_) {
    if (!t || !is_checkpointed(*t)) throw std::invalid_argument("type sequence holds an uncheckpointed type");
  }
}

bool operator==(const ConfigType& a, const ConfigType& b) {
  if (a.history_.size() != b.history_.size() || !(*a.active_ == *b.active_)) return false;
  for (std::size_t i = 0; i < a.history_.size(); ++i) {
    if (!(*a.history_[i] == *b.history_[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation
//
// All three term languages share the same four side conditions, so validation
// runs over a uniform view of a node.

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::EmptyChoice: return "empty-choice";
    case Constraint::SingletonCheckpoint: return "singleton-checkpoint";
    case Constraint::DuplicateLabel: return "duplicate-label";
    case Constraint::SelfNamedNesting: return "self-named-nesting";
    case Constraint::UnguardedRecursion: return "unguarded-recursion";
    case Constraint::UncheckpointedHistory: return "uncheckpointed-history";
    case Constraint::DuplicateCheckpointName: return "duplicate-checkpoint-name";
  }
  return "?";
}

namespace {

enum class ViewKind { Choice, Rec, Var, End };

template <class Ptr>
struct NodeView {
  ViewKind kind = ViewKind::End;
  std::optional<CheckpointName> checkpoint;
  std::string head;  // "p?", "p!", "p->q:"
  std::vector<std::pair<Label, Ptr>> children;
  VarName var;
};

NodeView<ProcessPtr> view(const Process& p) {
  NodeView<ProcessPtr> v;
  std::visit(overloaded{
                 [&](const Process::Input& x) {
                   v.kind = ViewKind::Choice;
                   v.checkpoint = x.checkpoint;
                   v.head = x.from + "?";
                   for (const auto& b : x.branches) v.children.emplace_back(b.label, b.cont);
                 },
                 [&](const Process::Output& x) {
                   v.kind = ViewKind::Choice;
                   v.checkpoint = x.checkpoint;
                   v.head = x.to + "!";
                   for (const auto& b : x.branches) v.children.emplace_back(b.label, b.cont);
                 },
                 [&](const Process::Rec& x) {
                   v.kind = ViewKind::Rec;
                   v.var = x.var;
                   v.children.emplace_back("", x.body);
                 },
                 [&](const Process::Var& x) {
                   v.kind = ViewKind::Var;
                   v.var = x.name;
                 },
                 [&](const Process::Inact&) {},
             },
             p.node);
  return v;
}

NodeView<SessionTypePtr> view(const SessionType& t) {
  NodeView<SessionTypePtr> v;
  std::visit(overloaded{
                 [&](const SessionType::Inter& x) {
                   v.kind = ViewKind::Choice;
                   v.checkpoint = x.checkpoint;
                   v.head = x.from + "?";
                   for (const auto& b : x.branches) v.children.emplace_back(b.label, b.cont);
                 },
                 [&](const SessionType::Union& x) {
                   v.kind = ViewKind::Choice;
                   v.checkpoint = x.checkpoint;
                   v.head = x.to + "!";
                   for (const auto& b : x.branches) v.children.emplace_back(b.label, b.cont);
                 },
                 [&](const SessionType::Rec& x) {
                   v.kind = ViewKind::Rec;
                   v.var = x.var;
                   v.children.emplace_back("", x.body);
                 },
                 [&](const SessionType::Var& x) {
                   v.kind = ViewKind::Var;
                   v.var = x.name;
                 },
                 [&](const SessionType::End&) {},
             },
             t.node);
  return v;
}

NodeView<GlobalTypePtr> view(const GlobalType& g) {
  NodeView<GlobalTypePtr> v;
  std::visit(overloaded{
                 [&](const GlobalType::Comm& x) {
                   v.kind = ViewKind::Choice;
                   v.checkpoint = x.checkpoint;
                   v.head = x.from + "->" + x.to + ":";
                   for (const auto& b : x.branches) v.children.emplace_back(b.label, b.cont);
                 },
                 [&](const GlobalType::Rec& x) {
                   v.kind = ViewKind::Rec;
                   v.var = x.var;
                   v.children.emplace_back("", x.body);
                 },
                 [&](const GlobalType::Var& x) {
                   v.kind = ViewKind::Var;
                   v.var = x.name;
                 },
                 [&](const GlobalType::End&) {},
             },
             g.node);
  return v;
}

template <class Node>
class Validator {
 public:
  std::vector<Violation> run(const Node& root) {
    walk(root, "");
    return std::move(out_);
  }

 private:
  void report(Constraint c, const std::string& path, std::string message) {
    out_.push_back(Violation{c, path.empty() ? "/" : path, std::move(message)});
  }

  void walk(const Node& n, const std::string& path) {
    auto v = view(n);
    switch (v.kind) {
      case ViewKind::End: return;
      case ViewKind::Var: {
        if (unguarded_.count(v.var)) {
          report(Constraint::UnguardedRecursion, path, "variable " + v.var + " occurs unguarded");
        }
        auto it = binder_depth_.find(v.var);
        if (it != binder_depth_.end() && it->second.back() < ckpt_stack_.size()) {
          // Unfolding the variable places an enclosing checkpoint inside itself.
          const auto& name = ckpt_stack_[it->second.back()];
          report(Constraint::SelfNamedNesting, path,
                 "recursion variable " + v.var + " re-enters the term checkpointed by " + name);
        }
        return;
      }
      case ViewKind::Rec: {
        unguarded_.insert(v.var);
        binder_depth_[v.var].push_back(ckpt_stack_.size());
        walk(*v.children.front().second, path + "/mu " + v.var);
        binder_depth_[v.var].pop_back();
        if (binder_depth_[v.var].empty()) binder_depth_.erase(v.var);
        unguarded_.erase(v.var);
        return;
      }
      case ViewKind::Choice: break;
    }

    if (v.children.empty()) report(Constraint::EmptyChoice, path, "choice " + v.head + " has no branches");
    if (v.checkpoint && v.children.size() == 1) {
      report(Constraint::SingletonCheckpoint, path, "checkpoint " + *v.checkpoint + " guards a single branch");
    }
    std::set<Label> labels;
    for (const auto& [label, child] : v.children) {
      if (!labels.insert(label).second) {
        report(Constraint::DuplicateLabel, path, "label " + label + " repeated in " + v.head);
      }
    }
    if (v.checkpoint) {
      if (std::find(ckpt_stack_.begin(), ckpt_stack_.end(), *v.checkpoint) != ckpt_stack_.end()) {
        report(Constraint::SelfNamedNesting, path, "checkpoint " + *v.checkpoint + " nested inside itself");
      }
      ckpt_stack_.push_back(*v.checkpoint);
    }
    auto saved_unguarded = std::move(unguarded_);
    unguarded_.clear();
    for (const auto& [label, child] : v.children) {
      walk(*child, path + "/" + v.head + label);
    }
    unguarded_ = std::move(saved_unguarded);
    if (v.checkpoint) ckpt_stack_.pop_back();
  }

  std::vector<Violation> out_;
  std::set<VarName> unguarded_;
  std::map<VarName, std::vector<std::size_t>> binder_depth_;
  std::vector<CheckpointName> ckpt_stack_;
};

}  // namespace

std::vector<Violation> validate(const Process& p) { return Validator<Process>{}.run(p); }
std::vector<Violation> validate(const SessionType& t) { return Validator<SessionType>{}.run(t); }
std::vector<Violation> validate(const GlobalType& g) { return Validator<GlobalType>{}.run(g); }

std::vector<Violation> validate(const Configuration& c) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < c.history().size(); ++i) {
    const auto& p = *c.history()[i];
    if (!is_checkpointed(p)) {
      out.push_back({Constraint::UncheckpointedHistory, "history[" + std::to_string(i) + "]",
                     "checkpointed sequence holds an uncheckpointed process"});
    }
    for (auto v : validate(p)) {
      v.path = "history[" + std::to_string(i) + "]" + v.path;
      out.push_back(std::move(v));
    }
  }
  for (auto v : validate(*c.active())) {
    v.path = "active" + v.path;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Violation> validate(const GlobalPair& gp) {
  std::vector<Violation> out;
  std::set<CheckpointName> seen;
  for (std::size_t i = 0; i < gp.history().size(); ++i) {
    const auto& g = *gp.history()[i];
    std::string where = "history[" + std::to_string(i) + "]";
    if (!is_checkpointed(g)) {
      out.push_back({Constraint::UncheckpointedHistory, where, "global history holds an uncheckpointed type"});
    } else if (!seen.insert(*checkpoint_of(g)).second) {
      out.push_back({Constraint::DuplicateCheckpointName, where, "checkpoint " + *checkpoint_of(g) + " repeated"});
    }
    for (auto v : validate(g)) {
      v.path = where + v.path;
      out.push_back(std::move(v));
    }
  }
  for (auto v : validate(*gp.active())) {
    v.path = "active" + v.path;
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

template <class Node>
void collect_names(const Node& n, std::set<CheckpointName>& out) {
  auto v = view(n);
  if (v.checkpoint) out.insert(*v.checkpoint);
  for (const auto& [label, child] : v.children) collect_names(*child, out);
}

}  // namespace

std::set<CheckpointName> checkpoint_names(const Process& p) {
  std::set<CheckpointName> out;
  collect_names(p, out);
  return out;
}

std::set<CheckpointName> checkpoint_names(const GlobalType& g) {
  std::set<CheckpointName> out;
  collect_names(g, out);
  return out;
}

std::size_t node_count(const SessionType& t) {
  auto v = view(t);
  std::size_t n = 1;
  for (const auto& [label, child] : v.children) n += node_count(*child);
  return n;
}

}  // namespace rms

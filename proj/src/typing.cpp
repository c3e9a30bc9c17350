#include "rms/typing.hpp"

#include <algorithm>

#include "rms/overloaded.hpp"
#include "rms/printer.hpp"
#include "rms/subtyping.hpp"

namespace rms {

namespace {

class Synth {
 public:
  SessionTypePtr run(const TypeEnv& env, const ProcessPtr& p) {
    auto t = go(env, p);
    if (auto v = validate(*t); !v.empty()) {
      throw TypingError("synthesized type " + print(*t) + " violates " + std::string(to_string(v.front().constraint)) +
                        " at " + v.front().path);
    }
    return t;
  }

 private:
  SessionTypePtr go(const TypeEnv& env, const ProcessPtr& p) {
    return std::visit(
        overloaded{
            [&](const Process::Input& in) -> SessionTypePtr {
              std::vector<TypeBranch> branches;
              for (const auto& b : in.branches) {
                TypeEnv inner = env;
                std::optional<Sort> sort;
                if (b.binder) {
                  inner.sorts[b.binder->name] = b.binder->sort;
                  sort = b.binder->sort;
                }
                branches.push_back({b.label, sort, go(inner, b.cont)});
              }
              return inter(in.from, std::move(branches), in.checkpoint);
            },
            [&](const Process::Output& out) -> SessionTypePtr {
              std::vector<TypeBranch> branches;
              for (const auto& b : out.branches) {
                std::optional<Sort> sort;
                if (b.payload) {
                  try {
                    sort = sort_of(*b.payload, env.sorts);
                  } catch (const SortError& e) {
                    throw TypingError("payload of " + out.to + "!" + b.label + ": " + e.what());
                  }
                }
                branches.push_back({b.label, sort, go(env, b.cont)});
              }
              return union_type(out.to, std::move(branches), out.checkpoint);
            },
            [&](const Process::Rec& r) -> SessionTypePtr {
              auto t = fresh();
              TypeEnv inner = env;
              inner.procs[r.var] = type_var(t);
              return rec_type(t, go(inner, r.body));
            },
            [&](const Process::Var& v) -> SessionTypePtr {
              auto it = env.procs.find(v.name);
              if (it == env.procs.end()) throw TypingError("unbound process variable " + v.name);
              return it->second;
            },
            [&](const Process::Inact&) -> SessionTypePtr { return end_type(); },
        },
        p->node);
  }

  std::string fresh() { return counter_ == 0 ? (++counter_, "t") : "t" + std::to_string(counter_++); }

  int counter_ = 0;
};


}  // namespace

SessionTypePtr type_process(const TypeEnv& env, const ProcessPtr& p) { return Synth{}.run(env, p); }
SessionTypePtr type_process(const ProcessPtr& p) { return type_process(TypeEnv{}, p); }

std::vector<SessionTypePtr> type_ckseq(const std::vector<ProcessPtr>& r) {
  std::vector<SessionTypePtr> out;
  for (const auto& p : r) out.push_back(type_process(p));
  return out;
}

ConfigType type_configuration(const Configuration& c) {
  return ConfigType(type_process(c.active()), type_ckseq(c.history()));
}

Agreement agrees(const ConfigType& ct, const Participant& p, const GlobalPair& gp, Projector& proj) {
  Agreement out;
  const auto& rho = ct.history();
  const auto& ups = gp.history();
  const std::size_t n = rho.size();
  const std::size_t m = ups.size();
  auto T = ct.active();
  auto head = unfold_head(T);

  auto fail = [&](ConditionVerdict& v, std::string detail) {
    v.holds = false;
    v.detail = std::move(detail);
    out.holds = false;
  };

  // Projections onto p are needed by several conditions; undefined ones fail
  // the condition that asks for them.
  auto projection = [&](const GlobalTypePtr& g, ConditionVerdict& v, const std::string& what) -> SessionTypePtr {
    auto r = proj.project(g, p);
    if (!r.defined()) fail(v, what + "↾" + p + " is undefined: " + r.reason);
    return r.type;
  };

  {
    ConditionVerdict v{1, true, true, {}};
    if (n > m) {
      fail(v, "history has " + std::to_string(n) + " entries but the global history only " + std::to_string(m));
    } else {
      for (std::size_t i = 0; i < n && v.holds; ++i) {
        auto g = projection(ups[i], v, "G_" + std::to_string(i + 1));
        if (g && !is_subtype(rho[i], g)) {
          fail(v, "T_" + std::to_string(i + 1) + " = " + print(*rho[i]) + " is not a subtype of " + print(*g));
        }
      }
    }
    out.conditions.push_back(std::move(v));
  }

  {
    ConditionVerdict v{2, is_end(*head), true, {}};
    if (v.applies) {
      if (n > m) {
        fail(v, "active type is end but n = " + std::to_string(n) + " > m = " + std::to_string(m));
      } else {
        for (std::size_t i = n; i < m && v.holds; ++i) {
          auto g = projection(ups[i], v, "G_" + std::to_string(i + 1));
          if (g && !equal_regular(g, end_type())) {
            fail(v, "G_" + std::to_string(i + 1) + "↾" + p + " = " + print(*g) + " is not end");
          }
        }
        if (v.holds) {
          auto g = projection(gp.active(), v, "G");
          if (g && !equal_regular(g, end_type())) fail(v, "G↾" + p + " = " + print(*g) + " is not end");
        }
      }
    }
    out.conditions.push_back(std::move(v));
  }

  {
    ConditionVerdict v{3, is_union(*head), true, {}};
    if (v.applies) {
      if (n != m) {
        fail(v, "active type is a union but n = " + std::to_string(n) + " ≠ m = " + std::to_string(m));
      } else if (auto g = projection(gp.active(), v, "G"); g && !is_subtype(T, g)) {
        fail(v, print(*T) + " is not a subtype of G↾" + p + " = " + print(*g));
      }
    }
    out.conditions.push_back(std::move(v));
  }

  {
    ConditionVerdict v{4, is_inter(*head), true, {}};
    if (v.applies) {
      std::string first;
      bool ok = false;
      if (n == m) {
        auto r = proj.project(gp.active(), p);
        if (!r.defined()) {
          first = "G↾" + p + " is undefined: " + r.reason;
        } else if (is_subtype(T, r.type)) {
          ok = true;
        } else {
          first = print(*T) + " is not a subtype of G↾" + p + " = " + print(*r.type);
        }
      } else {
        first = "n = " + std::to_string(n) + " ≠ m = " + std::to_string(m);
      }
      if (!ok) {
        std::string second;
        if (n + 1 != m) {
          second = "n = " + std::to_string(n) + " ≠ m - 1";
        } else if (!is_checkpointed(*head)) {
          second = "active type is not checkpointed";
        } else {
          auto gm = proj.project(ups[m - 1], p);
          auto g = proj.project(gp.active(), p);
          if (!gm.defined()) {
            second = "G_m↾" + p + " is undefined: " + gm.reason;
          } else if (!g.defined()) {
            second = "G↾" + p + " is undefined: " + g.reason;
          } else if (!is_subtype(T, gm.type)) {
            second = print(*T) + " is not a subtype of G_m↾" + p + " = " + print(*gm.type);
          } else if (auto inner = strip_checkpoint(head); !is_subtype(inner, g.type)) {
            second = print(*inner) + " is not a subtype of G↾" + p + " = " + print(*g.type);
          } else {
            ok = true;
          }
        }
        if (!ok) fail(v, "neither alternative holds: " + first + "; " + second);
      }
    }
    out.conditions.push_back(std::move(v));
  }
  return out;
}

Agreement agrees(const ConfigType& ct, const Participant& p, const GlobalPair& gp) {
  Projector proj;
  return agrees(ct, p, gp, proj);
}

TypingReport type_session(const Session& m, const GlobalPair& gp, Projector& proj) {
  TypingReport report;

  auto check_wf = [&](const GlobalTypePtr& g, const std::string& locus) {
    if (auto v = validate(*g); !v.empty()) {
      report.fail({"", "well-formed", locus, print(*g) + " violates " + std::string(to_string(v.front().constraint))});
      return;
    }
    for (const auto& r : participants(*g)) {
      auto res = proj.project(g, r);
      if (!res.defined()) report.fail({r, "well-formed", locus + res.path, "projection undefined: " + res.reason});
    }
  };
  for (std::size_t i = 0; i < gp.history().size(); ++i) check_wf(gp.history()[i], "history[" + std::to_string(i) + "]");
  check_wf(gp.active(), "active");

  std::size_t longest = 0;
  for (const auto& [p, c] : m) {
    ParticipantTyping pt{p, std::nullopt, {}};
    try {
      pt.type = type_configuration(c);
    } catch (const TypingError& e) {
      report.fail({p, "typing", print(c), e.what()});
      report.participants.push_back(std::move(pt));
      continue;
    }
    longest = std::max(longest, pt.type->history().size());
    pt.agreement = agrees(*pt.type, p, gp, proj);
    for (const auto& v : pt.agreement.conditions) {
      if (!v.holds) {
        report.fail({p, "agreement-" + std::to_string(v.condition), print(*pt.type) + " vs " + print(gp), v.detail});
      }
    }
    report.participants.push_back(std::move(pt));
  }

  if (gp.history().size() != longest) {
    report.fail({"", "length", print(gp),
                 "|Υ| = " + std::to_string(gp.history().size()) + " but the longest history has " +
                     std::to_string(longest) + " entries"});
  }

  for (const auto& r : participants(gp)) {
    if (!m.count(r)) report.fail({r, "participants", print(gp), "participant " + r + " is missing from the session"});
  }
  return report;
}

TypingReport type_session(const Session& m, const GlobalPair& gp) {
  Projector proj;
  return type_session(m, gp, proj);
}

NetworkTyping type_network(const Network& n, const std::vector<GlobalPair>& gps) {
  NetworkTyping out;
  if (n.size() != gps.size()) {
    out.accepted = false;
    out.failures.push_back({"", "sessions", "",
                            std::to_string(n.size()) + " sessions but " + std::to_string(gps.size()) + " global pairs"});
    return out;
  }
  Projector proj;
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto r = type_session(n[i], gps[i], proj);
    out.accepted = out.accepted && r.accepted;
    out.sessions.push_back(std::move(r));
  }
  return out;
}

}  // namespace rms

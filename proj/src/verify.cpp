#include "rms/verify.hpp"

#include <deque>
#include <random>
#include <set>
#include <unordered_map>

#include "rms/overloaded.hpp"
#include "rms/printer.hpp"
#include "rms/typing.hpp"

namespace rms {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const PropertyResult* VerifyReport::find(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.property == name) return &p;
  }
  return nullptr;
}

bool VerifyReport::ok() const {
  if (!admitted) return false;
  for (const auto& p : properties) {
    if (p.verdict == Verdict::Violated) return false;
  }
  return true;
}

Derivation derive_pair(const GlobalPair& gp, const SessionStep& step) {
  auto find_step = [&](GlobalRule rule, auto&& pred) -> std::optional<GlobalStep> {
    for (auto& g : global_steps(gp)) {
      if (g.rule == rule && pred(g)) return g;
    }
    return std::nullopt;
  };
  switch (step.rule) {
    case Rule::Chc: return {gp, "none", {}};
    case Rule::CkChc: {
      auto g = find_step(GlobalRule::CkChc, [](const GlobalStep&) { return true; });
      if (!g) return {std::nullopt, "none", "checkpointed choice but " + print(gp) + " has no [G-CkChc] reduct"};
      return {g->next, "G-CkChc", {}};
    }
    case Rule::Com: {
      auto head = unfold_head(gp.active());
      const auto* c = std::get_if<GlobalType::Comm>(&head->node);
      if (!c || c->checkpoint) {
        return {std::nullopt, "none", "communication but " + print(gp) + " has no [G-Com] reduct"};
      }
      auto g = find_step(GlobalRule::Com, [&](const GlobalStep& s) { return s.label == step.label; });
      if (!g) return {std::nullopt, "none", "label " + step.label + " is not a branch of " + print(*head)};
      return {g->next, "G-Com", {}};
    }
    case Rule::RbM: {
      auto g = find_step(GlobalRule::Rb, [&](const GlobalStep& s) { return s.checkpoint == step.checkpoint; });
      if (!g) return {std::nullopt, "none", "rollback to " + step.checkpoint + " but " + print(gp) + " never crossed it"};
      return {g->next, "G-Rb", {}};
    }
    default: return {std::nullopt, "none", "rule " + std::string(to_string(step.rule)) + " is not a session rule"};
  }
}

std::optional<NetworkStep> match_directive(const std::vector<NetworkStep>& steps, const Directive& d) {
  for (const auto& ns : steps) {
    const auto& s = ns.step;
    switch (d.kind) {
      case Directive::Kind::Choose:
        if ((s.rule == Rule::Chc || s.rule == Rule::CkChc) && s.participants[0] == d.args[0] && s.label == d.args[1]) {
          return ns;
        }
        break;
      case Directive::Kind::Comm:
        if (s.rule == Rule::Com && s.participants[0] == d.args[0] && s.participants[1] == d.args[1] &&
            s.label == d.args[2]) {
          return ns;
        }
        break;
      case Directive::Kind::Roll:
        if (s.rule == Rule::RbM && s.checkpoint == d.args[0]) return ns;
        break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Occurrences

namespace {

ProcessPtr tag(const ProcessPtr& p, const std::string& path, OccurrenceId& next,
               std::map<OccurrenceId, std::string>& paths) {
  return std::visit(overloaded{
                        [&](const Process::Input& in) -> ProcessPtr {
                          OccurrenceId id = ++next;
                          paths[id] = path + "/" + in.from + "?";
                          auto branches = in.branches;
                          for (auto& b : branches) b.cont = tag(b.cont, paths[id] + b.label, next, paths);
                          return input(in.from, std::move(branches), in.checkpoint, id);
                        },
                        [&](const Process::Output& out) -> ProcessPtr {
                          OccurrenceId id = ++next;
                          paths[id] = path + "/" + out.to + "!";
                          auto branches = out.branches;
                          for (auto& b : branches) b.cont = tag(b.cont, paths[id] + b.label, next, paths);
                          return output(out.to, std::move(branches), out.checkpoint, id);
                        },
                        [&](const Process::Rec& r) -> ProcessPtr {
                          return rec(r.var, tag(r.body, path + "/mu " + r.var, next, paths));
                        },
                        [&](const auto&) -> ProcessPtr { return p; },
                    },
                    p->node);
}

void signature(const Process& p, std::string& out) {
  std::visit(overloaded{
                 [&](const Process::Input& in) {
                   out += std::to_string(p.occurrence) + ',';
                   for (const auto& b : in.branches) signature(*b.cont, out);
                 },
                 [&](const Process::Output& o) {
                   out += std::to_string(p.occurrence) + ',';
                   for (const auto& b : o.branches) signature(*b.cont, out);
                 },
                 [&](const Process::Rec& r) { signature(*r.body, out); },
                 [](const auto&) {},
             },
             p.node);
}

}  // namespace

Network tag_occurrences(const Network& n, std::map<OccurrenceId, std::string>& paths) {
  OccurrenceId next = 0;
  Network out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    Session m;
    for (const auto& [p, c] : n[i]) {
      std::string base = "S" + std::to_string(i) + "/" + p;
      std::vector<ProcessPtr> history;
      for (std::size_t k = 0; k < c.history().size(); ++k) {
        history.push_back(tag(c.history()[k], base + "/history[" + std::to_string(k) + "]", next, paths));
      }
      m.emplace(p, Configuration(tag(c.active(), base, next, paths), std::move(history)));
    }
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exploration

namespace {

using Pairs = std::vector<std::optional<GlobalPair>>;

struct Node {
  Network net;
  Pairs pairs;   // strict: one global reduction per step
  Pairs fpairs;  // for fidelity: checkpointed choices ahead of the global head are deferred
  std::size_t parent = 0;
  std::size_t depth = 0;
  std::string via;  // step text from the parent
};

std::string state_text(const Network& n) {
  std::string out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) out += " || ";
    out += print(normalize(n[i]));
  }
  return out;
}

std::string pairs_text(const std::vector<std::optional<GlobalPair>>& pairs) {
  std::string out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += " || ";
    out += pairs[i] ? print(*pairs[i]) : "?";
  }
  return out;
}

std::string key_of(const Network& n, const Pairs& pairs, const Pairs& fpairs) {
  std::string out = state_text(n) + " :: " + pairs_text(pairs) + " :: " + pairs_text(fpairs) + " :: ";
  for (const auto& m : n) {
    for (const auto& [p, c] : m) {
      signature(*c.active(), out);
      for (const auto& h : c.history()) signature(*h, out);
      out += ';';
    }
  }
  return out;
}

// Order-only tracking: a [CkChc] whose checkpoint is not yet at the head of
// the global type leaves the pair alone; [G-CkChc] is applied when the
// communication it guards fires.
std::optional<GlobalPair> derive_lazy(const GlobalPair& gp, const SessionStep& step) {
  auto head_is_ckpt = [](const GlobalPair& g) {
    auto h = unfold_head(g.active());
    const auto* c = std::get_if<GlobalType::Comm>(&h->node);
    return c && c->checkpoint ? c : nullptr;
  };
  switch (step.rule) {
    case Rule::Chc: return gp;
    case Rule::CkChc: {
      const auto* c = head_is_ckpt(gp);
      if (c && c->from == step.participants[0]) return derive_pair(gp, step).pair;
      return gp;
    }
    case Rule::Com: {
      if (head_is_ckpt(gp)) {
        SessionStep ck;
        ck.rule = Rule::CkChc;
        auto pushed = derive_pair(gp, ck).pair;
        if (!pushed) return std::nullopt;
        return derive_pair(*pushed, step).pair;
      }
      return derive_pair(gp, step).pair;
    }
    default: return derive_pair(gp, step).pair;
  }
}

class Explorer {
 public:
  Explorer(const Network& n, const std::vector<GlobalPair>& gps, const ExploreConfig& cfg, PropertySet props)
      : cfg_(cfg), props_(props), rng_(cfg.seed) {
    initial_ = tag_occurrences(n, paths_);
    for (const auto& m : initial_) {
      for (const auto& [p, c] : m) {
        names_.merge(checkpoint_names(*c.active()));
        for (const auto& h : c.history()) names_.merge(checkpoint_names(*h));
      }
    }
    for (const auto& gp : gps) initial_pairs_.emplace_back(gp);
    initial_pairs_.resize(n.size());
  }

  VerifyReport run() {
    VerifyReport report;
    nodes_.push_back({initial_, initial_pairs_, initial_pairs_, 0, 0, {}});
    seen_.emplace(key_of(initial_, initial_pairs_, initial_pairs_), 0);
    std::deque<std::size_t> queue{0};

    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      // Copy: nodes_ grows below.
      Node node = nodes_[u];
      if (props_.fidelity) check_attempts(u, node);

      auto steps = network_steps(node.net);
      if (steps.empty()) continue;
      if (node.depth >= cfg_.depth) {
        truncated_ = true;
        continue;
      }
      steps = schedule(std::move(steps), node.depth);

      for (const auto& ns : steps) {
        ++transitions_;
        Node child;
        child.net = node.net;
        child.net[ns.session] = ns.step.next;
        child.pairs = node.pairs;
        child.fpairs = node.fpairs;
        child.parent = u;
        child.depth = node.depth + 1;
        child.via = (node.net.size() > 1 ? "S" + std::to_string(ns.session) + " " : "") + describe(ns.step);

        for (auto occ : ns.step.consumed) consumed_.insert(occ);
        if (ns.step.rule == Rule::RbM) rolled_.insert(ns.step.checkpoint);

        if (const auto& gp = node.fpairs[ns.session]) {
          if (props_.fidelity && ns.step.rule == Rule::Com) check_com(u, node, ns, *gp);
          child.fpairs[ns.session] = derive_lazy(*gp, ns.step);
        }
        if (const auto& gp = node.pairs[ns.session]) {
          auto d = derive_pair(*gp, ns.step);
          child.pairs[ns.session] = d.pair;
          if (props_.sr) check_sr(u, child, ns, d);
        }

        auto key = key_of(child.net, child.pairs, child.fpairs);
        if (seen_.count(key)) continue;
        if (seen_.size() >= cfg_.state_cap) {
          truncated_ = true;
          continue;
        }
        seen_.emplace(std::move(key), nodes_.size());
        nodes_.push_back(std::move(child));
        queue.push_back(nodes_.size() - 1);
      }
    }

    report.states = nodes_.size();
    report.transitions = transitions_;
    report.truncated = truncated_;
    if (props_.sr) {
      report.properties.push_back(finish(sr_, "sr", sr_checked_));
      if (sr_failed_) {
        report.properties.back().details.push_back(std::to_string(sr_failed_) + " of them have no typable reduct");
      }
    }
    if (props_.fidelity) report.properties.push_back(finish(fidelity_, "fidelity", coms_checked_));
    if (props_.progress) progress(report);
    return report;
  }

 private:
  std::vector<NetworkStep> schedule(std::vector<NetworkStep> steps, std::size_t depth) {
    switch (cfg_.scheduler) {
      case SchedulerKind::Exhaustive: return steps;
      case SchedulerKind::Random: {
        std::size_t k = static_cast<std::size_t>(rng_() % steps.size());
        return {steps[k]};
      }
      case SchedulerKind::Scripted: {
        if (depth >= cfg_.script.size()) return {};
        auto m = match_directive(steps, cfg_.script[depth]);
        if (!m) return {};
        return {*m};
      }
    }
    return steps;
  }

  std::vector<TraceEntry> trace_to(std::size_t u) const {
    std::vector<TraceEntry> out;
    while (u != 0) {
      const auto& n = nodes_[u];
      out.push_back({n.via, state_text(n.net), pairs_text(n.pairs)});
      u = n.parent;
    }
    return {out.rbegin(), out.rend()};
  }

  void violate(PropertyResult& r, std::size_t parent, TraceEntry last, std::string message) {
    if (r.verdict == Verdict::Violated) return;  // BFS: the first one found is shortest
    r.verdict = Verdict::Violated;
    r.message = std::move(message);
    r.counterexample = trace_to(parent);
    r.counterexample.push_back(std::move(last));
  }

  void check_sr(std::size_t parent, const Node& child, const NetworkStep& ns, const Derivation& d) {
    ++sr_checked_;
    TraceEntry last{child.via, state_text(child.net), d.pair ? print(*d.pair) : std::string()};
    if (!d.pair) {
      ++sr_failed_;
      violate(sr_, parent, last, "no global reduct: " + d.error);
      return;
    }
    auto report = type_session(child.net[ns.session], *d.pair, projector_);
    if (!report.accepted) {
      ++sr_failed_;
      const auto& f = report.failures.front();
      violate(sr_, parent, last,
              "successor does not type against " + print(*d.pair) + ": " + f.condition +
                  (f.participant.empty() ? "" : " for " + f.participant) + ": " + f.message);
    }
  }

  void check_com(std::size_t parent, const Node& node, const NetworkStep& ns, const GlobalPair& gp) {
    ++coms_checked_;
    const auto& s = ns.step;
    Session next = node.net[ns.session];
    TraceEntry last{(node.net.size() > 1 ? "S" + std::to_string(ns.session) + " " : "") + describe(s),
                    print(normalize(s.next)), print(gp)};
    auto head = unfold_head(gp.active());
    const auto* c = std::get_if<GlobalType::Comm>(&head->node);
    if (c && c->checkpoint) {
      // Lazily crossed: the communication is what the checkpoint guards.
      head = strip_checkpoint(head);
      c = std::get_if<GlobalType::Comm>(&head->node);
    }
    if (!c || c->from != s.participants[0] || c->to != s.participants[1]) {
      violate(fidelity_, parent, last, "communication " + s.participants[0] + "->" + s.participants[1] + ":" + s.label +
                                           " out of order; the global type expects " + print(*head));
      return;
    }
    const GlobalBranch* branch = nullptr;
    for (const auto& b : c->branches) {
      if (b.label == s.label) branch = &b;
    }
    if (!branch) {
      violate(fidelity_, parent, last, "label " + s.label + " is not among the branches of " + print(*head));
      return;
    }
    std::optional<Sort> sent = s.value ? std::optional<Sort>(s.value->sort()) : std::nullopt;
    if (sent != branch->sort) {
      violate(fidelity_, parent, last,
              "type mismatch on " + s.label + ": value " + (s.value ? to_string(*s.value) : "(none)") +
                  " but the global type declares " + (branch->sort ? std::string(to_string(*branch->sort)) : "no payload"));
      return;
    }
    auto receiver = unfold_head(node.net[ns.session].at(s.participants[1]).active());
    if (const auto* in = std::get_if<Process::Input>(&receiver->node)) {
      for (const auto& b : in->branches) {
        if (b.label != s.label) continue;
        std::optional<Sort> bound = b.binder ? std::optional<Sort>(b.binder->sort) : std::nullopt;
        if (bound != sent) {
          violate(fidelity_, parent, last,
                  "type mismatch on " + s.label + ": receiver " + s.participants[1] + " binds " +
                      (bound ? std::string(to_string(*bound)) : "nothing"));
        }
      }
    }
  }

  // A committed output facing an input from the same peer that cannot take it
  // is a message the receiver does not understand, even though no step fires.
  void check_attempts(std::size_t u, const Node& node) {
    for (std::size_t i = 0; i < node.net.size(); ++i) {
      for (const auto& [p, c] : node.net[i]) {
        auto send = pending_send(c);
        if (!send) continue;
        auto q = node.net[i].find(send->to);
        if (q == node.net[i].end()) continue;
        auto active = unfold_head(q->second.active());
        const auto* in = std::get_if<Process::Input>(&active->node);
        if (!in || in->from != p) continue;
        bool understood = false;
        for (const auto& b : in->branches) {
          if (b.label == send->label && b.binder.has_value() == (send->payload != nullptr)) understood = true;
        }
        if (understood) continue;
        ++coms_checked_;
        std::string what = p + "->" + send->to + ":" + send->label;
        TraceEntry last{(node.net.size() > 1 ? "S" + std::to_string(i) + " " : "") + "[Com] " + what +
                            " (attempted) @ " + p + ", " + send->to,
                        state_text(node.net), node.pairs[i] ? print(*node.pairs[i]) : std::string()};
        // `u` is the state itself, so its own trace precedes the attempt.
        if (fidelity_.verdict != Verdict::Violated) {
          fidelity_.verdict = Verdict::Violated;
          fidelity_.message = "mismatch: " + send->to + " cannot receive " + send->label + " from " + p;
          fidelity_.counterexample = trace_to(u);
          fidelity_.counterexample.push_back(std::move(last));
        }
      }
    }
  }

  PropertyResult finish(PropertyResult r, std::string name, std::size_t checked) const {
    r.property = std::move(name);
    r.details.push_back("checked " + std::to_string(checked) + " transitions");
    if (r.verdict == Verdict::Holds && truncated_) {
      r.details.push_back("exploration hit the depth or state bound; result covers explored states only");
    }
    return r;
  }

  void progress(VerifyReport& report) const {
    PropertyResult prefixes{"progress.prefixes", Verdict::Holds, {}, {}, {}};
    std::size_t missing = 0;
    for (const auto& [id, path] : paths_) {
      if (consumed_.count(id)) continue;
      ++missing;
      prefixes.details.push_back("not consumed: " + path);
    }
    if (missing) {
      prefixes.verdict = truncated_ ? Verdict::Inconclusive : Verdict::Violated;
      prefixes.message = std::to_string(missing) + " of " + std::to_string(paths_.size()) + " prefixes never fire";
    } else {
      prefixes.message = "all " + std::to_string(paths_.size()) + " prefixes fire on some path";
    }

    PropertyResult rollbacks{"progress.rollbacks", Verdict::Holds, {}, {}, {}};
    std::size_t unseen = 0;
    for (const auto& a : names_) {
      if (rolled_.count(a)) {
        rollbacks.details.push_back("rollback to " + a + " witnessed");
      } else {
        ++unseen;
        rollbacks.details.push_back("no rollback to " + a);
      }
    }
    if (unseen) {
      rollbacks.verdict = truncated_ ? Verdict::Inconclusive : Verdict::Violated;
      rollbacks.message = std::to_string(unseen) + " of " + std::to_string(names_.size()) + " checkpoints never rolled back to";
    } else {
      rollbacks.message = "rollbacks to all " + std::to_string(names_.size()) + " checkpoints witnessed";
    }
    report.properties.push_back(std::move(prefixes));
    report.properties.push_back(std::move(rollbacks));
  }

  ExploreConfig cfg_;
  PropertySet props_;
  std::mt19937_64 rng_;
  Network initial_;
  std::vector<std::optional<GlobalPair>> initial_pairs_;
  std::map<OccurrenceId, std::string> paths_;
  std::set<CheckpointName> names_;

  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> seen_;
  bool truncated_ = false;
  std::size_t transitions_ = 0;
  Projector projector_;

  PropertyResult sr_{"sr", Verdict::Holds, {}, {}, {}};
  PropertyResult fidelity_{"fidelity", Verdict::Holds, {}, {}, {}};
  std::size_t sr_checked_ = 0;
  std::size_t sr_failed_ = 0;
  std::size_t coms_checked_ = 0;
  std::set<OccurrenceId> consumed_;
  std::set<CheckpointName> rolled_;
};

}  // namespace

VerifyReport verify(const Network& n, const std::vector<GlobalPair>& gps, const ExploreConfig& cfg, PropertySet props) {
  if (cfg.admission) {
    auto typing = type_network(n, gps);
    if (!typing.accepted) {
      VerifyReport r;
      r.admitted = false;
      for (const auto& f : typing.failures) r.admission_errors.push_back(f.message);
      for (std::size_t i = 0; i < typing.sessions.size(); ++i) {
        for (const auto& f : typing.sessions[i].failures) {
          r.admission_errors.push_back("session " + std::to_string(i) + ": " + f.condition +
                                       (f.participant.empty() ? "" : " (" + f.participant + ")") + ": " + f.message);
        }
      }
      return r;
    }
  }
  return Explorer(n, gps, cfg, props).run();
}

VerifyReport check_subject_reduction(const Session& m, const GlobalPair& gp, const ExploreConfig& cfg) {
  return verify({m}, {gp}, cfg, {true, false, false});
}

VerifyReport check_fidelity(const Session& m, const GlobalPair& gp, const ExploreConfig& cfg) {
  return verify({m}, {gp}, cfg, {false, true, false});
}

VerifyReport check_progress(const Network& n, const std::vector<GlobalPair>& gps, const ExploreConfig& cfg) {
  return verify(n, gps, cfg, {false, false, true});
}

}  // namespace rms

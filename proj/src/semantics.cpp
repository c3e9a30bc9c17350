#include "rms/semantics.hpp"

#include <algorithm>

#include "rms/overloaded.hpp"

namespace rms {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Chc: return "Chc";
    case Rule::CkChc: return "CkChc";
    case Rule::Snd: return "Snd";
    case Rule::Rcv: return "Rcv";
    case Rule::CkRcv: return "CkRcv";
    case Rule::RbP: return "RbP";
    case Rule::Com: return "Com";
    case Rule::PrM: return "PrM";
    case Rule::RbM: return "RbM";
  }
  return "?";
}

std::string to_string(const Action& a) {
  auto payload = [&] { return a.value ? "(" + to_string(*a.value) + ")" : std::string(); };
  switch (a.kind) {
    case Action::Kind::Tau: return "τ";
    case Action::Kind::Send: return a.peer + "!" + a.label + payload();
    case Action::Kind::Recv: return a.peer + "?" + a.label + payload();
    case Action::Kind::Roll: return a.checkpoint;
  }
  return "?";
}

ValueDomain ValueDomain::canonical() {
  ValueDomain d;
  for (Sort s : {Sort::Int, Sort::Bool, Sort::Str}) d.values[s] = {canonical_value(s)};
  return d;
}

ValueDomain ValueDomain::enumerated() {
  ValueDomain d;
  d.values[Sort::Int] = {Value(0), Value(1), Value(-1)};
  d.values[Sort::Bool] = {Value(true), Value(false)};
  d.values[Sort::Str] = {Value("s"), Value("in")};
  return d;
}

namespace {

ProcessPtr commit(const Process::Output& out, std::size_t k, OccurrenceId occ) {
  return output(out.to, {out.branches[k]}, std::nullopt, occ);
}

std::vector<ProcessPtr> pushed(const std::vector<ProcessPtr>& history, ProcessPtr p) {
  auto out = history;
  out.push_back(std::move(p));
  return out;
}

}  // namespace

std::vector<ConfigStep> config_steps(const Configuration& c, const ValueDomain& values) {
  std::vector<ConfigStep> out;
  auto active = unfold_head(c.active());

  if (const auto* o = std::get_if<Process::Output>(&active->node)) {
    if (o->checkpoint) {
      for (std::size_t k = 0; k < o->branches.size(); ++k) {
        out.push_back({Rule::CkChc, Action::tau(),
                       Configuration(commit(*o, k, active->occurrence), pushed(c.history(), active)), k, false, {}});
      }
    } else if (o->branches.size() > 1) {
      for (std::size_t k = 0; k < o->branches.size(); ++k) {
        out.push_back(
            {Rule::Chc, Action::tau(), Configuration(commit(*o, k, active->occurrence), c.history()), k, false, {}});
      }
    } else {
      const auto& b = o->branches.front();
      std::optional<Value> v;
      std::string error;
      if (b.payload) {
        try {
          v = eval(*b.payload);
        } catch (const EvalError& e) {
          error = e.what();
        }
      }
      if (error.empty()) {
        out.push_back({Rule::Snd, Action::send(o->to, b.label, v), Configuration(b.cont, c.history()), 0, false, {}});
      } else {
        out.push_back({Rule::Snd, Action::send(o->to, b.label, std::nullopt), c, 0, true, error});
      }
    }
  } else if (const auto* in = std::get_if<Process::Input>(&active->node)) {
    Rule rule = in->checkpoint ? Rule::CkRcv : Rule::Rcv;
    auto history = in->checkpoint ? pushed(c.history(), active) : c.history();
    for (std::size_t k = 0; k < in->branches.size(); ++k) {
      const auto& b = in->branches[k];
      if (!b.binder) {
        out.push_back({rule, Action::recv(in->from, b.label, std::nullopt), Configuration(b.cont, history), k, false, {}});
        continue;
      }
      for (const auto& v : values.of(b.binder->sort)) {
        out.push_back({rule, Action::recv(in->from, b.label, v),
                       Configuration(substitute(b.cont, b.binder->name, v), history), k, false, {}});
      }
    }
  }

  for (std::size_t i = 0; i < c.history().size(); ++i) {
    const auto& target = c.history()[i];
    std::vector<ProcessPtr> prefix(c.history().begin(), c.history().begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back({Rule::RbP, Action::roll(*checkpoint_of(*target)), Configuration(target, std::move(prefix)), i,
                   false, {}});
  }
  return out;
}

std::optional<std::set<CheckpointName>> ck_names(const Configuration& c) {
  if (!std::holds_alternative<Process::Inact>(unfold_head(c.active())->node)) return std::nullopt;
  std::set<CheckpointName> out;
  for (const auto& p : c.history()) out.insert(*checkpoint_of(*p));
  return out;
}

std::optional<PendingSend> pending_send(const Configuration& c) {
  auto active = unfold_head(c.active());
  const auto* o = std::get_if<Process::Output>(&active->node);
  if (!o || o->checkpoint || o->branches.size() != 1) return std::nullopt;
  const auto& b = o->branches.front();
  return PendingSend{o->to, b.label, b.payload, active->occurrence};
}

std::optional<Configuration> receive(const Configuration& c, const Participant& from, const Label& label,
                                     const std::optional<Value>& value, Rule* rule) {
  auto active = unfold_head(c.active());
  const auto* in = std::get_if<Process::Input>(&active->node);
  if (!in || in->from != from) return std::nullopt;
  for (const auto& b : in->branches) {
    if (b.label != label) continue;
    if (b.binder.has_value() != value.has_value()) return std::nullopt;
    auto cont = b.binder ? substitute(b.cont, b.binder->name, *value) : b.cont;
    if (rule) *rule = in->checkpoint ? Rule::CkRcv : Rule::Rcv;
    return Configuration(cont, in->checkpoint ? pushed(c.history(), active) : c.history());
  }
  return std::nullopt;
}

std::string describe(const SessionStep& s) {
  std::string out = "[" + std::string(to_string(s.rule)) + "] ";
  switch (s.rule) {
    case Rule::Com:
      out += s.participants[0] + "->" + s.participants[1] + ":" + s.label;
      if (s.value) out += "(" + to_string(*s.value) + ")";
      break;
    case Rule::RbM: out += "roll " + s.checkpoint; break;
    default: out += "τ choose " + s.label; break;
  }
  out += " @ ";
  for (std::size_t i = 0; i < s.participants.size(); ++i) out += (i ? ", " : "") + s.participants[i];
  return out;
}

std::vector<SessionStep> session_steps(const Session& m) {
  std::vector<SessionStep> out;

  for (const auto& [p, c] : m) {
    auto active = unfold_head(c.active());
    const auto* o = std::get_if<Process::Output>(&active->node);
    if (!o || (!o->checkpoint && o->branches.size() < 2)) continue;
    for (auto& cs : config_steps(c)) {
      if (cs.rule != Rule::Chc && cs.rule != Rule::CkChc) continue;
      SessionStep s;
      s.rule = cs.rule;
      s.participants = {p};
      s.label = o->branches[cs.branch].label;
      s.next = m;
      s.next.insert_or_assign(p, std::move(cs.next));
      out.push_back(std::move(s));
    }
  }

  for (const auto& [p, c] : m) {
    auto send = pending_send(c);
    if (!send) continue;
    auto q = m.find(send->to);
    if (q == m.end() || send->to == p) continue;
    std::optional<Value> v;
    if (send->payload) {
      try {
        v = eval(*send->payload);
      } catch (const EvalError&) {
        continue;
      }
    }
    Rule rrule = Rule::Rcv;
    auto received = receive(q->second, p, send->label, v, &rrule);
    if (!received) continue;
    auto receiver_occ = unfold_head(q->second.active())->occurrence;
    SessionStep s;
    s.rule = Rule::Com;
    s.participants = {p, send->to};
    s.label = send->label;
    s.value = v;
    s.receiver_rule = rrule;
    for (auto occ : {send->occurrence, receiver_occ}) {
      if (occ) s.consumed.push_back(occ);
    }
    const auto* o = std::get_if<Process::Output>(&unfold_head(c.active())->node);
    s.next = m;
    s.next.insert_or_assign(p, Configuration(o->branches.front().cont, c.history()));
    s.next.insert_or_assign(send->to, std::move(*received));
    out.push_back(std::move(s));
  }

  std::set<CheckpointName> names;
  for (const auto& [p, c] : m) {
    for (const auto& h : c.history()) names.insert(*checkpoint_of(*h));
  }
  for (const auto& a : names) {
    SessionStep s;
    s.rule = Rule::RbM;
    s.checkpoint = a;
    s.next = m;
    bool enabled = true;
    for (const auto& [p, c] : m) {
      const auto& h = c.history();
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (checkpoint_of(*h[i]) == a) hits.push_back(i);
      }
      if (hits.empty()) {
        auto names_q = ck_names(c);
        if (!names_q) {
          enabled = false;
          break;
        }
        continue;
      }
      if (hits.size() > 1) {
        s.warnings.push_back(p + " holds checkpoint " + a + " " + std::to_string(hits.size()) +
                             " times; rolling back to the topmost");
      }
      std::size_t i = hits.back();
      s.participants.push_back(p);
      s.next.insert_or_assign(
          p, Configuration(h[i], std::vector<ProcessPtr>(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(i))));
    }
    if (enabled) out.push_back(std::move(s));
  }
  return out;
}

Session normalize(const Session& m) {
  Session out;
  for (const auto& [p, c] : m) {
    if (c.history().empty() && std::holds_alternative<Process::Inact>(c.active()->node)) continue;
    out.emplace(p, c);
  }
  return out;
}

bool session_equiv(const Session& a, const Session& b) { return normalize(a) == normalize(b); }

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Live: return "live";
    case SessionStatus::Terminal: return "terminal";
    case SessionStatus::Stuck: return "stuck";
  }
  return "?";
}

SessionStatus status(const Session& m) {
  if (!session_steps(m).empty()) return SessionStatus::Live;
  for (const auto& [p, c] : m) {
    if (!std::holds_alternative<Process::Inact>(unfold_head(c.active())->node)) return SessionStatus::Stuck;
  }
  return SessionStatus::Terminal;
}

std::vector<NetworkStep> network_steps(const Network& n) {
  std::vector<NetworkStep> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (auto& s : session_steps(n[i])) out.push_back({i, std::move(s)});
  }
  return out;
}

std::string_view to_string(GlobalRule r) {
  switch (r) {
    case GlobalRule::CkChc: return "G-CkChc";
    case GlobalRule::Com: return "G-Com";
    case GlobalRule::Rb: return "G-Rb";
  }
  return "?";
}

std::vector<GlobalStep> global_steps(const GlobalPair& gp) {
  std::vector<GlobalStep> out;
  auto g = unfold_head(gp.active());
  if (const auto* c = std::get_if<GlobalType::Comm>(&g->node)) {
    if (c->checkpoint) {
      auto history = gp.history();
      history.push_back(g);
      out.push_back({GlobalRule::CkChc, {}, *c->checkpoint, 0, GlobalPair(strip_checkpoint(g), std::move(history))});
    } else {
      for (std::size_t k = 0; k < c->branches.size(); ++k) {
        out.push_back({GlobalRule::Com, c->branches[k].label, {}, k, GlobalPair(c->branches[k].cont, gp.history())});
      }
    }
  }
  const auto& h = gp.history();
  for (std::size_t i = 0; i < h.size(); ++i) {
    out.push_back({GlobalRule::Rb, {}, *checkpoint_of(*h[i]), i,
                   GlobalPair(h[i], std::vector<GlobalTypePtr>(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(i)))});
  }
  return out;
}

}  // namespace rms

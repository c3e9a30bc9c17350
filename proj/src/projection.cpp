#include "rms/projection.hpp"

#include "rms/overloaded.hpp"
#include "rms/printer.hpp"

namespace rms {

std::set<Participant> participants(const GlobalType& g) {
  std::set<Participant> out;
  std::visit(overloaded{
                 [&](const GlobalType::Comm& c) {
                   out.insert(c.from);
                   out.insert(c.to);
                   for (const auto& b : c.branches) out.merge(participants(*b.cont));
                 },
                 [&](const GlobalType::Rec& r) { out = participants(*r.body); },
                 [](const auto&) {},
             },
             g.node);
  return out;
}

std::set<Participant> participants(const std::vector<GlobalTypePtr>& history) {
  std::set<Participant> out;
  for (const auto& g : history) out.merge(participants(*g));
  return out;
}

std::set<Participant> participants(const GlobalPair& gp) {
  auto out = participants(gp.history());
  out.merge(participants(*gp.active()));
  return out;
}

ProjResult merge(const std::vector<SessionTypePtr>& ts) {
  if (ts.empty()) return ProjResult::undefined("merge of no types");
  if (ts.size() == 1) return ProjResult::of(ts.front());

  const auto& name = checkpoint_of(*ts.front());
  if (name) {
    std::vector<SessionTypePtr> inner;
    for (const auto& t : ts) {
      if (checkpoint_of(*t) != name) {
        return ProjResult::undefined("merge mixes types checkpointed by " + *name + " with " +
                                     (is_checkpointed(*t) ? "checkpoint " + *checkpoint_of(*t) : "unchecked types"));
      }
      inner.push_back(strip_checkpoint(t));
    }
    auto m = merge(inner);
    if (!m.defined()) return m;
    return ProjResult::of(with_checkpoint(m.type, *name));
  }

  const auto* first = std::get_if<SessionType::Inter>(&ts.front()->node);
  if (!first) return ProjResult::undefined("merge of a non-intersection type " + print(*ts.front()));
  std::vector<TypeBranch> branches;
  std::set<Label> seen;
  for (const auto& t : ts) {
    if (is_checkpointed(*t)) return ProjResult::undefined("merge mixes checkpointed and unchecked types");
    const auto* in = std::get_if<SessionType::Inter>(&t->node);
    if (!in) return ProjResult::undefined("merge of a non-intersection type " + print(*t));
    if (in->from != first->from) {
      return ProjResult::undefined("merge of inputs from different senders " + first->from + " and " + in->from);
    }
    for (const auto& b : in->branches) {
      if (!seen.insert(b.label).second) return ProjResult::undefined("merge sees label " + b.label + " twice");
      branches.push_back(b);
    }
  }
  return ProjResult::of(inter(first->from, std::move(branches)));
}

ProjResult Projector::project(const GlobalTypePtr& g, const Participant& r) {
  Key key{g, r};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  auto result = compute(g, r);
  memo_.emplace(std::move(key), result);
  return result;
}

ProjResult Projector::compute(const GlobalTypePtr& g, const Participant& r) {
  return std::visit(
      overloaded{
          [&](const GlobalType::Comm& c) -> ProjResult {
            std::vector<SessionTypePtr> conts;
            for (const auto& b : c.branches) {
              auto sub = project(b.cont, r);
              if (!sub.defined()) {
                sub.path = "/" + c.from + "->" + c.to + ":" + b.label + (sub.path == "/" ? "" : sub.path);
                return sub;
              }
              conts.push_back(sub.type);
            }
            auto branches = [&] {
              std::vector<TypeBranch> out;
              for (std::size_t i = 0; i < c.branches.size(); ++i) {
                out.push_back({c.branches[i].label, c.branches[i].sort, conts[i]});
              }
              return out;
            };
            if (r == c.from) return ProjResult::of(union_type(c.to, branches(), c.checkpoint));
            if (r == c.to) return ProjResult::of(inter(c.from, branches(), c.checkpoint));

            bool all_end = true;
            for (const auto& t : conts) all_end = all_end && is_end(*t);
            if (all_end) return ProjResult::of(end_type());

            auto m = merge(conts);
            if (!m.defined()) return ProjResult::undefined(m.reason + " (projecting onto " + r + ")");
            if (!c.checkpoint) return m;
            if (is_checkpointed(*m.type)) {
              return ProjResult::undefined("third party " + r + " of checkpoint " + *c.checkpoint +
                                           " would receive a checkpointed type");
            }
            return ProjResult::of(with_checkpoint(m.type, *c.checkpoint));
          },
          [&](const GlobalType::Rec& rec) -> ProjResult {
            if (!participants(*rec.body).count(r)) return ProjResult::of(end_type());
            auto body = project(rec.body, r);
            if (!body.defined()) return body;
            return ProjResult::of(rec_type(rec.var, body.type));
          },
          [&](const GlobalType::Var& v) -> ProjResult { return ProjResult::of(type_var(v.name)); },
          [&](const GlobalType::End&) -> ProjResult { return ProjResult::of(end_type()); },
      },
      g->node);
}

ProjResult project(const GlobalTypePtr& g, const Participant& r) { return Projector{}.project(g, r); }

WellFormedness well_formed(const GlobalTypePtr& g) {
  WellFormedness out;
  Projector proj;
  for (const auto& r : participants(*g)) {
    auto result = proj.project(g, r);
    if (!result.defined()) {
      out.ok = false;
      out.failures.emplace_back(r, std::move(result));
    }
  }
  return out;
}

}  // namespace rms

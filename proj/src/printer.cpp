#include "rms/printer.hpp"

#include "rms/overloaded.hpp"

namespace rms {

namespace {

bool is_binary(const Expr& e) { return std::holds_alternative<Expr::Binary>(e.node); }

void emit(std::string& out, const Expr& e) {
  std::visit(overloaded{
                 [&](const Expr::Lit& x) { out += to_string(x.value); },
                 [&](const Expr::Var& x) { out += x.name; },
                 [&](const Expr::Unary& x) {
                   out += to_string(x.op);
                   // -5 would read back as a negative literal.
                   bool wrap = x.op == UnaryOp::Neg || !std::holds_alternative<Expr::Var>(x.arg->node);
                   if (wrap) out += '(';
                   emit(out, *x.arg);
                   if (wrap) out += ')';
                 },
                 [&](const Expr::Binary& x) {
                   auto side = [&](const Expr& s) {
                     if (is_binary(s)) out += '(';
                     emit(out, s);
                     if (is_binary(s)) out += ')';
                   };
                   side(*x.lhs);
                   out += ' ';
                   out += to_string(x.op);
                   out += ' ';
                   side(*x.rhs);
                 },
             },
             e.node);
}

// Shared layout for the three choice-shaped constructs.
template <class Branches, class Emit>
void emit_choice(std::string& out, const std::optional<CheckpointName>& ckpt, const std::string& head,
                 const Branches& branches, Emit&& emit_branch) {
  if (ckpt) out += "ckpt " + *ckpt + " { ";
  out += head;
  if (branches.size() == 1 && !ckpt) {
    emit_branch(branches.front());
  } else {
    out += "{ ";
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (i) out += ", ";
      emit_branch(branches[i]);
    }
    out += " }";
  }
  if (ckpt) out += " }";
}

void emit(std::string& out, const Process& p) {
  std::visit(overloaded{
                 [&](const Process::Input& x) {
                   emit_choice(out, x.checkpoint, x.from + "?", x.branches, [&](const InputBranch& b) {
                     out += b.label;
                     if (b.binder) out += "(" + b.binder->name + ":" + std::string(to_string(b.binder->sort)) + ")";
                     out += '.';
                     emit(out, *b.cont);
                   });
                 },
                 [&](const Process::Output& x) {
                   emit_choice(out, x.checkpoint, x.to + "!", x.branches, [&](const OutputBranch& b) {
                     out += b.label;
                     if (b.payload) {
                       out += '(';
                       emit(out, *b.payload);
                       out += ')';
                     }
                     out += '.';
                     emit(out, *b.cont);
                   });
                 },
                 [&](const Process::Rec& x) {
                   out += "mu " + x.var + ". ";
                   emit(out, *x.body);
                 },
                 [&](const Process::Var& x) { out += x.name; },
                 [&](const Process::Inact&) { out += "end"; },
             },
             p.node);
}

void emit(std::string& out, const SessionType& t) {
  auto branch = [&](const TypeBranch& b) {
    out += b.label;
    if (b.sort) out += "(" + std::string(to_string(*b.sort)) + ")";
    out += '.';
    emit(out, *b.cont);
  };
  std::visit(overloaded{
                 [&](const SessionType::Inter& x) { emit_choice(out, x.checkpoint, x.from + "?", x.branches, branch); },
                 [&](const SessionType::Union& x) { emit_choice(out, x.checkpoint, x.to + "!", x.branches, branch); },
                 [&](const SessionType::Rec& x) {
                   out += "mu " + x.var + ". ";
                   emit(out, *x.body);
                 },
                 [&](const SessionType::Var& x) { out += x.name; },
                 [&](const SessionType::End&) { out += "end"; },
             },
             t.node);
}

void emit(std::string& out, const GlobalType& g) {
  std::visit(overloaded{
                 [&](const GlobalType::Comm& x) {
                   if (x.checkpoint) out += "ckpt " + *x.checkpoint + " ";
                   out += x.from + " -> " + x.to + " ";
                   auto branch = [&](const GlobalBranch& b) {
                     out += b.label;
                     if (b.sort) out += "(" + std::string(to_string(*b.sort)) + ")";
                     out += '.';
                     emit(out, *b.cont);
                   };
                   if (x.branches.size() == 1 && !x.checkpoint) {
                     branch(x.branches.front());
                     return;
                   }
                   out += "{ ";
                   for (std::size_t i = 0; i < x.branches.size(); ++i) {
                     if (i) out += ", ";
                     branch(x.branches[i]);
                   }
                   out += " }";
                 },
                 [&](const GlobalType::Rec& x) {
                   out += "mu " + x.var + ". ";
                   emit(out, *x.body);
                 },
                 [&](const GlobalType::Var& x) { out += x.name; },
                 [&](const GlobalType::End&) { out += "end"; },
             },
             g.node);
}

template <class Ptr>
std::string pair_text(const std::vector<Ptr>& history, const Ptr& active) {
  std::string out = "< [";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out += i ? ", " : " ";
    emit(out, *history[i]);
    if (i + 1 == history.size()) out += ' ';
  }
  out += "] ; ";
  emit(out, *active);
  out += " >";
  return out;
}

}  // namespace

std::string print(const Expr& e) {
  std::string out;
  emit(out, e);
  return out;
}

std::string print(const Process& p) {
  std::string out;
  emit(out, p);
  return out;
}

std::string print(const SessionType& t) {
  std::string out;
  emit(out, t);
  return out;
}

std::string print(const GlobalType& g) {
  std::string out;
  emit(out, g);
  return out;
}

std::string print(const Configuration& c) { return pair_text(c.history(), c.active()); }
std::string print(const ConfigType& c) { return pair_text(c.history(), c.active()); }
std::string print(const GlobalPair& gp) { return pair_text(gp.history(), gp.active()); }

std::string print(const Session& m) {
  std::string out = "session { ";
  bool first = true;
  for (const auto& [p, c] : m) {
    if (!first) out += ", ";
    first = false;
    out += p + " |> " + print(c);
  }
  out += m.empty() ? "}" : " }";
  return out;
}

}  // namespace rms

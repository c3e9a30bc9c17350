#include "rms/report.hpp"

#include <sstream>

#include "rms/printer.hpp"

namespace rms {

namespace {

std::string paint(bool color, const char* code, const std::string& s) {
  if (!color) return s;
  return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
}

std::string verdict_word(Verdict v, bool color) {
  switch (v) {
    case Verdict::Holds: return paint(color, "32", "holds");
    case Verdict::Violated: return paint(color, "31", "violated");
    case Verdict::Inconclusive: return paint(color, "33", "inconclusive");
  }
  return "?";
}

std::string overall(const VerifyReport& r) {
  if (!r.admitted) return "rejected";
  bool inconclusive = false;
  for (const auto& p : r.properties) {
    if (p.verdict == Verdict::Violated) return "violated";
    if (p.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? "inconclusive" : "holds";
}

void failure_line(std::ostringstream& out, const Failure& f) {
  out << "  - " << f.condition;
  if (!f.participant.empty()) out << " [" << f.participant << "]";
  if (!f.locus.empty()) out << " at " << f.locus;
  out << ": " << f.message << "\n";
}

}  // namespace

Json to_json(const Failure& f) {
  return {{"participant", f.participant}, {"condition", f.condition}, {"locus", f.locus}, {"message", f.message}};
}

Json to_json(const TypingReport& r) {
  Json out;
  out["outcome"] = r.accepted ? "accepted" : "rejected";
  out["participants"] = Json::array();
  for (const auto& p : r.participants) {
    Json j;
    j["participant"] = p.participant;
    j["type"] = p.type ? Json(print(*p.type)) : Json(nullptr);
    j["agreement"] = Json::array();
    for (const auto& c : p.agreement.conditions) {
      j["agreement"].push_back(
          {{"condition", c.condition}, {"applies", c.applies}, {"holds", c.holds}, {"detail", c.detail}});
    }
    out["participants"].push_back(std::move(j));
  }
  out["failures"] = Json::array();
  for (const auto& f : r.failures) out["failures"].push_back(to_json(f));
  return out;
}

Json to_json(const std::vector<NamedTyping>& sessions, const std::vector<Failure>& network_failures, bool accepted) {
  Json out;
  out["outcome"] = accepted ? "accepted" : "rejected";
  out["sessions"] = Json::array();
  for (const auto& s : sessions) {
    Json j = to_json(s.report);
    j["session"] = s.session;
    j["pair"] = print(s.pair);
    out["sessions"].push_back(std::move(j));
  }
  out["failures"] = Json::array();
  for (const auto& f : network_failures) out["failures"].push_back(to_json(f));
  return out;
}

Json to_json(const PropertyResult& r) {
  Json out;
  out["property"] = r.property;
  out["verdict"] = std::string(to_string(r.verdict));
  out["message"] = r.message;
  out["details"] = r.details;
  out["counterexample"] = Json::array();
  for (const auto& t : r.counterexample) {
    out["counterexample"].push_back({{"step", t.step}, {"state", t.state}, {"pair", t.pair}});
  }
  return out;
}

Json to_json(const VerifyReport& r) {
  Json out;
  out["outcome"] = overall(r);
  out["admitted"] = r.admitted;
  out["admission_errors"] = r.admission_errors;
  out["states"] = r.states;
  out["transitions"] = r.transitions;
  out["truncated"] = r.truncated;
  out["properties"] = Json::array();
  for (const auto& p : r.properties) out["properties"].push_back(to_json(p));
  return out;
}

Json to_json(const TraceStep& s) {
  Json out;
  out["n"] = s.n;
  if (!s.session.empty()) out["session"] = s.session;
  out["rule"] = std::string(to_string(s.step.rule));
  out["label"] = s.step.rule == Rule::RbM ? s.step.checkpoint : s.step.label;
  if (s.step.value) out["value"] = to_string(*s.step.value);
  out["participants"] = s.step.participants;
  out["state"] = network_text(s.after);
  out["warnings"] = s.step.warnings;
  return out;
}

std::string network_text(const Network& n) {
  std::string out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) out += " || ";
    out += print(normalize(n[i]));
  }
  return out;
}

std::string render(const std::vector<NamedTyping>& sessions, const std::vector<Failure>& network_failures,
                   bool accepted, bool color) {
  std::ostringstream out;
  for (const auto& f : network_failures) failure_line(out, f);
  for (const auto& s : sessions) {
    out << "session " << s.session << " : " << print(s.pair) << "  "
        << (s.report.accepted ? paint(color, "32", "accepted") : paint(color, "31", "rejected")) << "\n";
    for (const auto& p : s.report.participants) {
      out << "  " << p.participant << " : " << (p.type ? print(*p.type) : std::string("(untypable)")) << "\n";
    }
    for (const auto& f : s.report.failures) failure_line(out, f);
  }
  out << (accepted ? paint(color, "32", "accepted") : paint(color, "31", "rejected")) << "\n";
  return out.str();
}

std::string render(const VerifyReport& r, bool color) {
  std::ostringstream out;
  if (!r.admitted) {
    out << paint(color, "31", "rejected at admission") << "\n";
    for (const auto& e : r.admission_errors) out << "  - " << e << "\n";
    return out.str();
  }
  out << "explored " << r.states << " states, " << r.transitions << " transitions"
      << (r.truncated ? " (bound reached)" : "") << "\n";
  for (const auto& p : r.properties) {
    out << p.property << ": " << verdict_word(p.verdict, color);
    if (!p.message.empty()) out << " - " << p.message;
    out << "\n";
    for (const auto& d : p.details) out << "  " << d << "\n";
    if (!p.counterexample.empty()) {
      out << "  counterexample:\n";
      for (std::size_t i = 0; i < p.counterexample.size(); ++i) {
        const auto& t = p.counterexample[i];
        out << "  step " << i + 1 << ": " << t.step << "\n    " << t.state << "\n";
        if (!t.pair.empty()) out << "    pair " << t.pair << "\n";
      }
    }
  }
  return out.str();
}

std::string render(const TraceStep& s) {
  std::ostringstream out;
  out << "step " << s.n << ": ";
  if (!s.session.empty()) out << s.session << " ";
  out << describe(s.step) << "\n  " << network_text(s.after) << "\n";
  for (const auto& w : s.step.warnings) out << "  warning: " << w << "\n";
  return out.str();
}

}  // namespace rms

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rms/semantics.hpp"
#include "rms/typing.hpp"
#include "rms/verify.hpp"

namespace rms {

using Json = nlohmann::ordered_json;

struct NamedTyping {
  std::string session;
  GlobalPair pair;
  TypingReport report;
};

struct TraceStep {
  std::size_t n = 0;
  std::string session;  // empty for single-session networks
  SessionStep step;
  Network after;
};

Json to_json(const Failure& f);
Json to_json(const TypingReport& r);
Json to_json(const std::vector<NamedTyping>& sessions, const std::vector<Failure>& network_failures, bool accepted);
Json to_json(const PropertyResult& r);
Json to_json(const VerifyReport& r);
Json to_json(const TraceStep& s);

std::string render(const std::vector<NamedTyping>& sessions, const std::vector<Failure>& network_failures,
                   bool accepted, bool color);
std::string render(const VerifyReport& r, bool color);

/// `step <n>: [<rule>] <label> @ <participants>` followed by the normalized successor.
std::string render(const TraceStep& s);

std::string network_text(const Network& n);

}  // namespace rms

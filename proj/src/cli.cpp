#include "rms/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "rms/parser.hpp"
#include "rms/printer.hpp"
#include "rms/projection.hpp"
#include "rms/report.hpp"
#include "rms/semantics.hpp"
#include "rms/typing.hpp"
#include "rms/verify.hpp"

namespace rms {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unknown names, missing typings and the like: the input is malformed.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("error while reading " + path);
  return ss.str();
}

bool use_color(const std::ostream& out) {
  const char* env = std::getenv("RMS_COLOR");
  if (env && std::string(env) == "0") return false;
  return &out == &std::cout && isatty(STDOUT_FILENO);
}

struct Options {
  std::string file;
  bool json = false;
  // project
  std::string type_name;
  std::string on;
  // simulate
  std::string script;
  std::optional<std::uint64_t> seed;
  bool interactive = false;
  std::size_t steps = 100;
  // verify
  std::size_t depth = 0;
  std::vector<std::string> props;
  std::size_t cap = 100'000;
  bool no_admission = false;
};

std::vector<GlobalPair> typings_of(const SourceFile& file, const std::vector<std::string>& names) {
  std::vector<GlobalPair> out;
  for (const auto& n : names) {
    auto it = file.typings.find(n);
    if (it == file.typings.end()) throw UsageError("session " + n + " has no typing declaration");
    out.push_back(it->second);
  }
  return out;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  auto file = parse(read_file(o.file));
  auto names = file.network_names();
  if (names.empty()) {
    err << o.file << ": no session to check\n";
    return kInvalidInput;
  }

  std::vector<Failure> network_failures;
  for (const auto& [name, g] : file.globals) {
    auto wf = well_formed(g);
    for (const auto& [r, res] : wf.failures) {
      network_failures.push_back({r, "well-formed", "global " + name + res.path, "projection undefined: " + res.reason});
    }
  }

  std::vector<NamedTyping> sessions;
  bool accepted = network_failures.empty();
  Projector proj;
  for (const auto& n : names) {
    auto it = file.typings.find(n);
    if (it == file.typings.end()) {
      network_failures.push_back({"", "sessions", "session " + n, "no typing declared for session " + n});
      accepted = false;
      continue;
    }
    auto report = type_session(file.sessions.at(n), it->second, proj);
    accepted = accepted && report.accepted;
    sessions.push_back({n, it->second, std::move(report)});
  }

  if (o.json) {
    out << to_json(sessions, network_failures, accepted).dump(2) << "\n";
  } else {
    out << render(sessions, network_failures, accepted, use_color(out));
  }
  return accepted ? kOk : kRejected;
}

int cmd_project(const Options& o, std::ostream& out, std::ostream& err) {
  auto file = parse(read_file(o.file));
  GlobalTypePtr g;
  if (auto it = file.globals.find(o.type_name); it != file.globals.end()) {
    g = it->second;
  } else if (auto t = file.typings.find(o.type_name); t != file.typings.end()) {
    g = t->second.active();
  } else {
    err << o.file << ": no global type named " << o.type_name << "\n";
    return kInvalidInput;
  }

  std::vector<Participant> targets;
  if (!o.on.empty()) {
    targets.push_back(o.on);
  } else {
    auto pt = participants(*g);
    targets.assign(pt.begin(), pt.end());
  }

  Projector proj;
  bool ok = true;
  Json j;
  j["global"] = print(*g);
  j["projections"] = Json::array();
  for (const auto& r : targets) {
    auto res = proj.project(g, r);
    ok = ok && res.defined();
    if (o.json) {
      j["projections"].push_back({{"participant", r},
                                  {"defined", res.defined()},
                                  {"type", res.defined() ? Json(print(*res.type)) : Json(nullptr)},
                                  {"reason", res.reason},
                                  {"locus", res.path}});
    } else if (res.defined()) {
      out << r << " : " << print(*res.type) << "\n";
    } else {
      out << r << " : undefined at " << res.path << ": " << res.reason << "\n";
    }
  }
  if (o.json) {
    j["outcome"] = ok ? "defined" : "undefined";
    out << j.dump(2) << "\n";
  }
  return ok ? kOk : kRejected;
}

int cmd_simulate(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto file = parse(read_file(o.file));
  auto names = file.network_names();
  auto net = file.network();

  std::optional<Script> script;
  if (!o.script.empty()) {
    script = parse_script(read_file(o.script));
  } else if (!o.seed && !o.interactive && file.script) {
    script = file.script;
  }
  std::mt19937_64 rng(o.seed.value_or(0));

  auto session_name = [&](std::size_t i) { return net.size() > 1 ? names[i] : std::string(); };

  Json trace = Json::array();
  if (!o.json) out << "initial:\n  " << network_text(net) << "\n";
  int rc = kOk;
  for (std::size_t n = 1; n <= o.steps; ++n) {
    auto steps = network_steps(net);
    if (script && n > script->size()) break;
    if (steps.empty()) break;

    std::optional<NetworkStep> chosen;
    if (script) {
      const auto& d = (*script)[n - 1];
      chosen = match_directive(steps, d);
      if (!chosen) {
        err << o.file << ": script line " << d.line << ": `" << print(d) << "` is not enabled\n";
        rc = kRejected;
        break;
      }
    } else if (o.interactive) {
      out << "enabled steps:\n";
      for (std::size_t i = 0; i < steps.size(); ++i) {
        out << "  " << i + 1 << ") " << (net.size() > 1 ? names[steps[i].session] + " " : "")
            << describe(steps[i].step) << "\n";
      }
      out << "select [1-" << steps.size() << ", q to quit]: " << std::flush;
      std::string line;
      std::size_t pick = 0;
      while (std::getline(in, line)) {
        if (line == "q" || line == "quit") break;
        try {
          pick = std::stoul(line);
        } catch (const std::exception&) {
          pick = 0;
        }
        if (pick >= 1 && pick <= steps.size()) break;
        pick = 0;
        out << "select [1-" << steps.size() << ", q to quit]: " << std::flush;
      }
      if (pick == 0) break;
      chosen = steps[pick - 1];
    } else {
      chosen = steps[static_cast<std::size_t>(rng() % steps.size())];
    }

    net[chosen->session] = chosen->step.next;
    TraceStep ts{n, session_name(chosen->session), chosen->step, net};
    if (o.json) {
      trace.push_back(to_json(ts));
    } else {
      out << render(ts);
    }
  }

  Json statuses = Json::array();
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto s = status(net[i]);
    if (o.json) {
      statuses.push_back({{"session", names[i]}, {"status", std::string(to_string(s))}});
    } else {
      out << "status " << names[i] << ": " << to_string(s) << "\n";
    }
  }
  if (o.json) {
    Json j;
    j["outcome"] = rc == kOk ? "completed" : "script-blocked";
    j["initial"] = network_text(file.network());
    j["steps"] = trace;
    j["final"] = network_text(net);
    j["status"] = statuses;
    out << j.dump(2) << "\n";
  }
  return rc;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.depth < 1) {
    err << "--depth must be at least 1\n";
    return kInvalidInput;
  }
  PropertySet props;
  for (const auto& p : o.props) {
    if (p == "sr") {
      props.sr = true;
    } else if (p == "fidelity") {
      props.fidelity = true;
    } else if (p == "progress") {
      props.progress = true;
    } else {
      err << "unknown property " << p << " (expected sr, fidelity, progress)\n";
      return kInvalidInput;
    }
  }
  if (o.props.empty()) props = {true, true, true};

  auto file = parse(read_file(o.file));
  auto names = file.network_names();
  auto gps = typings_of(file, names);

  ExploreConfig cfg;
  cfg.depth = o.depth;
  cfg.state_cap = o.cap;
  cfg.admission = !o.no_admission;
  auto report = verify(file.network(), gps, cfg, props);
  if (o.json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << render(report, use_color(out));
  }
  return report.ok() ? kOk : kRejected;
}

int cmd_fmt(const Options& o, std::ostream& out) {
  auto file = parse(read_file(o.file));
  if (o.json) {
    out << Json{{"outcome", "ok"}, {"text", print(file)}}.dump(2) << "\n";
  } else {
    out << print(file);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible multiparty sessions with named checkpoints", "rms"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Parse, validate and type-check a network");
  check->add_option("file", o.file, "input .rms file")->required();
  check->add_flag("--json", o.json, "structured output");

  auto* project = app.add_subcommand("project", "Project a global type onto its participants");
  project->add_option("file", o.file, "input .rms file")->required();
  project->add_option("--type", o.type_name, "global type name")->required();
  project->add_option("--on", o.on, "participant");
  project->add_flag("--json", o.json, "structured output");

  auto* simulate = app.add_subcommand("simulate", "Run the session semantics");
  simulate->add_option("file", o.file, "input .rms file")->required();
  auto* script_opt = simulate->add_option("--script", o.script, "scheduler script");
  auto* seed_opt = simulate->add_option("--seed", o.seed, "random scheduler seed");
  auto* inter_opt = simulate->add_flag("--interactive", o.interactive, "pick steps from standard input");
  script_opt->excludes(seed_opt)->excludes(inter_opt);
  seed_opt->excludes(inter_opt);
  simulate->add_option("--steps", o.steps, "maximum number of steps")->capture_default_str();
  simulate->add_flag("--json", o.json, "structured output");

  auto* verify_cmd = app.add_subcommand("verify", "Check subject reduction, fidelity and progress by exploration");
  verify_cmd->add_option("file", o.file, "input .rms file")->required();
  verify_cmd->add_option("--depth", o.depth, "depth bound")->required();
  verify_cmd->add_option("--props", o.props, "sr,fidelity,progress")->delimiter(',');
  verify_cmd->add_option("--cap", o.cap, "state cap")->capture_default_str();
  verify_cmd->add_flag("--no-admission", o.no_admission, "explore even if the network does not type-check");
  verify_cmd->add_flag("--json", o.json, "structured output");

  auto* fmt = app.add_subcommand("fmt", "Print the canonical form of a file");
  fmt->add_option("file", o.file, "input .rms file")->required();
  fmt->add_flag("--json", o.json, "structured output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (project->parsed()) return cmd_project(o, out, err);
    if (simulate->parsed()) return cmd_simulate(o, in, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (fmt->parsed()) return cmd_fmt(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    err << o.file << ":" << e.what() << "\n";
    return kInvalidInput;
  } catch (const ValidationError& e) {
    err << o.file << ":" << e.what() << "\n";
    return kInvalidInput;
  } catch (const UsageError& e) {
    err << o.file << ": " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << o.file << ": " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace rms

#include "rms/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

#include "rms/printer.hpp"

namespace rms {

std::string to_string(const Location& loc) { return std::to_string(loc.line) + ":" + std::to_string(loc.column); }

ParseError::ParseError(Location loc, const std::string& message)
    : std::runtime_error(to_string(loc) + ": " + message), loc_(loc) {}

namespace {

std::string describe(const std::string& subject, const std::vector<Violation>& violations) {
  std::string out = subject + " violates " + std::string(to_string(violations.front().constraint));
  for (const auto& v : violations) out += "\n  at " + v.path + ": " + v.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(Location loc, std::string subject, std::vector<Violation> violations)
    : std::runtime_error(to_string(loc) + ": " + describe(subject, violations)),
      loc_(loc),
      violations_(std::move(violations)) {}

// ---------------------------------------------------------------------------
// Scripts

Script parse_script(std::string_view text) {
  Script out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    Directive d;
    d.line = lineno;
    std::size_t arity = 0;
    if (tok[0] == "choose") {
      d.kind = Directive::Kind::Choose;
      arity = 2;
    } else if (tok[0] == "comm") {
      d.kind = Directive::Kind::Comm;
      arity = 3;
    } else if (tok[0] == "roll") {
      d.kind = Directive::Kind::Roll;
      arity = 1;
    } else {
      throw ParseError({lineno, 1}, "unknown directive '" + tok[0] + "'");
    }
    if (tok.size() != arity + 1) {
      throw ParseError({lineno, 1}, "'" + tok[0] + "' takes " + std::to_string(arity) + " arguments");
    }
    d.args.assign(tok.begin() + 1, tok.end());
    out.push_back(std::move(d));
  }
  return out;
}

std::string print(const Directive& d) {
  std::string out;
  switch (d.kind) {
    case Directive::Kind::Choose: out = "choose"; break;
    case Directive::Kind::Comm: out = "comm"; break;
    case Directive::Kind::Roll: out = "roll"; break;
  }
  for (const auto& a : d.args) out += " " + a;
  return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Int, String, Punct, Eof };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  Location loc;
  std::size_t offset = 0;
};

const std::set<std::string, std::less<>> kKeywords = {
    "end", "mu", "ckpt", "true", "false", "global", "process", "type", "session", "typing", "network", "script",
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      t.offset = pos_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                      src_[pos_] == '\'')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Int;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') throw ParseError(t.loc, "unterminated string literal");
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= src_.size()) throw ParseError(t.loc, "unterminated string literal");
            char e = advance();
            switch (e) {
              case 'n': t.text += '\n'; break;
              case 't': t.text += '\t'; break;
              case '"': t.text += '"'; break;
              case '\\': t.text += '\\'; break;
              default: throw ParseError({line_, col_ - 1}, std::string("unknown escape \\") + e);
            }
          } else {
            t.text += d;
          }
        }
      } else {
        t.kind = Tok::Punct;
        static const char* const kTwo[] = {"->", "|>", "||", "&&", "==", "<="};
        for (const char* two : kTwo) {
          if (src_.substr(pos_, 2) == two) {
            t.text = two;
            break;
          }
        }
        if (t.text.empty()) {
          if (std::string_view("?!{}()[],.;:<>+-=").find(c) == std::string_view::npos) {
            throw ParseError(t.loc, std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, c);
        }
        for (std::size_t i = 0; i < t.text.size(); ++i) advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(Lexer(src).run()) {}

  SourceFile file() {
    SourceFile out;
    while (!at_eof()) declaration(out);
    return out;
  }

  template <class F>
  auto whole(F&& f) {
    auto result = f();
    if (!at_eof()) fail("unexpected '" + peek().text + "' after term");
    return result;
  }

  ProcessPtr process();
  SessionTypePtr session_type();
  GlobalTypePtr global();
  ExprPtr expr();
  Configuration configuration();
  GlobalPair global_pair();
  Session session_body();

  /// `session [NAME] { ... }`
  Session session() {
    expect_word("session");
    if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) ++pos_;
    return session_body();
  }

  ProcessPtr checked_process(Location loc, ProcessPtr p, const std::string& subject) {
    if (auto v = validate(*p); !v.empty()) throw ValidationError(loc, subject, std::move(v));
    return p;
  }
  SessionTypePtr checked_type(Location loc, SessionTypePtr t, const std::string& subject) {
    if (auto v = validate(*t); !v.empty()) throw ValidationError(loc, subject, std::move(v));
    return t;
  }
  GlobalTypePtr checked_global(Location loc, GlobalTypePtr g, const std::string& subject) {
    if (auto v = validate(*g); !v.empty()) throw ValidationError(loc, subject, std::move(v));
    return g;
  }

  Location here() const { return peek().loc; }

  // Declared names visible to term references.
  std::map<std::string, GlobalTypePtr> globals;
  std::map<std::string, ProcessPtr> processes;
  std::map<std::string, SessionTypePtr> types;

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at_eof() const { return peek().kind == Tok::Eof; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(peek().loc, message); }

  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "' but found " + shown(peek()));
    ++pos_;
  }
  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "' but found " + shown(peek()));
    ++pos_;
  }

  static std::string shown(const Token& t) {
    switch (t.kind) {
      case Tok::Eof: return "end of input";
      case Tok::String: return "string literal";
      default: return "'" + t.text + "'";
    }
  }

  /// A non-keyword identifier.
  std::string name(const char* what) {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) {
      fail(std::string("expected ") + what + " but found " + shown(peek()));
    }
    return next().text;
  }

  Sort sort() {
    auto loc = here();
    if (peek().kind != Tok::Ident) fail("expected a sort but found " + shown(peek()));
    auto s = sort_from_string(next().text);
    if (!s) throw ParseError(loc, "unknown sort '" + toks_[pos_ - 1].text + "' (expected Int, Bool or Str)");
    return *s;
  }

  void declaration(SourceFile& out);
  void check_fresh(const SourceFile& out, const std::string& name, Location loc) {
    for (const auto& d : out.declarations) {
      if (d.name == name && d.kind != SourceFile::Kind::Typing && d.kind != SourceFile::Kind::Script &&
          d.kind != SourceFile::Kind::Network) {
        throw ParseError(loc, "duplicate declaration of '" + name + "' (first at " + to_string(d.loc) + ")");
      }
    }
  }

  ProcessPtr process_choice_body(std::optional<CheckpointName> ckpt);
  SessionTypePtr type_choice_body(std::optional<CheckpointName> ckpt);
  GlobalTypePtr global_comm(std::optional<CheckpointName> ckpt);

  ExprPtr expr_and();
  ExprPtr expr_cmp();
  ExprPtr expr_add();
  ExprPtr expr_unary();

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;  // μ variables in scope
};

bool in_scope(const std::vector<std::string>& bound, const std::string& x) {
  return std::find(bound.rbegin(), bound.rend(), x) != bound.rend();
}

// --- expressions ----------------------------------------------------------

ExprPtr Parser::expr() { return expr_and(); }

ExprPtr Parser::expr_and() {
  auto lhs = expr_cmp();
  while (accept("&&")) lhs = binary(BinaryOp::And, lhs, expr_cmp());
  return lhs;
}

ExprPtr Parser::expr_cmp() {
  auto lhs = expr_add();
  std::optional<BinaryOp> op;
  if (is_punct("==")) op = BinaryOp::Eq;
  if (is_punct("<=")) op = BinaryOp::Le;
  // A bare '<' only compares inside an expression; configurations never nest here.
  if (is_punct("<")) op = BinaryOp::Lt;
  if (!op) return lhs;
  ++pos_;
  auto rhs = expr_add();
  if (is_punct("==") || is_punct("<=") || is_punct("<")) fail("comparisons do not chain; add parentheses");
  return binary(*op, lhs, rhs);
}

ExprPtr Parser::expr_add() {
  auto lhs = expr_unary();
  for (;;) {
    if (accept("+")) {
      lhs = binary(BinaryOp::Add, lhs, expr_unary());
    } else if (accept("-")) {
      lhs = binary(BinaryOp::Sub, lhs, expr_unary());
    } else {
      return lhs;
    }
  }
}

ExprPtr Parser::expr_unary() {
  auto loc = here();
  if (accept("!")) return unary(UnaryOp::Not, expr_unary());
  if (is_punct("-")) {
    ++pos_;
    if (peek().kind == Tok::Int) {
      // Fold the sign so that the most negative literal is representable.
      std::uint64_t mag = 0;
      const auto& text = peek().text;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), mag);
      if (ec != std::errc{} || mag > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1) {
        throw ParseError(loc, "integer literal out of range");
      }
      ++pos_;
      return lit(Value(static_cast<std::int64_t>(0 - mag)));
    }
    return unary(UnaryOp::Neg, expr_unary());
  }
  if (accept("(")) {
    auto e = expr();
    expect(")");
    return e;
  }
  const Token& t = peek();
  switch (t.kind) {
    case Tok::Int: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc{}) throw ParseError(loc, "integer literal out of range");
      ++pos_;
      return lit(Value(v));
    }
    case Tok::String: return lit(Value(next().text));
    case Tok::Ident:
      if (t.text == "true" || t.text == "false") return lit(Value(next().text == "true"));
      return var(name("an expression"));
    default: fail("expected an expression but found " + shown(t));
  }
}

// --- processes ------------------------------------------------------------

ProcessPtr Parser::process() {
  if (is_word("end")) {
    ++pos_;
    return inact();
  }
  if (is_word("mu")) {
    ++pos_;
    auto x = name("a recursion variable");
    expect(".");
    bound_.push_back(x);
    auto body = process();
    bound_.pop_back();
    return rec(x, body);
  }
  if (is_word("ckpt")) {
    ++pos_;
    auto a = name("a checkpoint name");
    bool braced = accept("{");
    if (peek().kind != Tok::Ident || !(is_punct("?", 1) || is_punct("!", 1))) {
      fail("a checkpoint must guard a choice");
    }
    auto p = process_choice_body(a);
    if (braced) expect("}");
    return p;
  }
  if (accept("(")) {
    auto p = process();
    expect(")");
    return p;
  }
  if (peek().kind == Tok::Ident && (is_punct("?", 1) || is_punct("!", 1))) return process_choice_body(std::nullopt);
  auto loc = here();
  auto x = name("a process");
  if (in_scope(bound_, x)) return proc_var(x);
  if (auto it = processes.find(x); it != processes.end()) return it->second;
  throw ParseError(loc, "unknown process '" + x + "'");
}

ProcessPtr Parser::process_choice_body(std::optional<CheckpointName> ckpt) {
  auto peer = name("a participant");
  if (accept("?")) {
    std::vector<InputBranch> branches;
    auto branch = [&] {
      InputBranch b;
      b.label = name("a label");
      if (accept("(")) {
        auto x = name("a binder");
        expect(":");
        b.binder = Binder{x, sort()};
        expect(")");
      }
      b.cont = accept(".") ? process() : inact();
      branches.push_back(std::move(b));
    };
    if (accept("{")) {
      do branch();
      while (accept(","));
      expect("}");
    } else {
      branch();
    }
    return input(peer, std::move(branches), std::move(ckpt));
  }
  expect("!");
  std::vector<OutputBranch> branches;
  auto branch = [&] {
    OutputBranch b;
    b.label = name("a label");
    if (accept("(")) {
      b.payload = expr();
      expect(")");
    }
    b.cont = accept(".") ? process() : inact();
    branches.push_back(std::move(b));
  };
  if (accept("{")) {
    do branch();
    while (accept(","));
    expect("}");
  } else {
    branch();
  }
  return output(peer, std::move(branches), std::move(ckpt));
}

// --- session types --------------------------------------------------------

SessionTypePtr Parser::session_type() {
  if (is_word("end")) {
    ++pos_;
    return end_type();
  }
  if (is_word("mu")) {
    ++pos_;
    auto x = name("a recursion variable");
    expect(".");
    bound_.push_back(x);
    auto body = session_type();
    bound_.pop_back();
    return rec_type(x, body);
  }
  if (is_word("ckpt")) {
    ++pos_;
    auto a = name("a checkpoint name");
    bool braced = accept("{");
    if (peek().kind != Tok::Ident || !(is_punct("?", 1) || is_punct("!", 1))) {
      fail("a checkpoint must guard a choice");
    }
    auto t = type_choice_body(a);
    if (braced) expect("}");
    return t;
  }
  if (accept("(")) {
    auto t = session_type();
    expect(")");
    return t;
  }
  if (peek().kind == Tok::Ident && (is_punct("?", 1) || is_punct("!", 1))) return type_choice_body(std::nullopt);
  auto loc = here();
  auto x = name("a session type");
  if (in_scope(bound_, x)) return type_var(x);
  if (auto it = types.find(x); it != types.end()) return it->second;
  throw ParseError(loc, "unknown session type '" + x + "'");
}

SessionTypePtr Parser::type_choice_body(std::optional<CheckpointName> ckpt) {
  auto peer = name("a participant");
  bool is_input = accept("?");
  if (!is_input) expect("!");
  std::vector<TypeBranch> branches;
  auto branch = [&] {
    TypeBranch b;
    b.label = name("a label");
    if (accept("(")) {
      b.sort = sort();
      expect(")");
    }
    b.cont = accept(".") ? session_type() : end_type();
    branches.push_back(std::move(b));
  };
  if (accept("{")) {
    do branch();
    while (accept(","));
    expect("}");
  } else {
    branch();
  }
  return is_input ? inter(peer, std::move(branches), std::move(ckpt))
                  : union_type(peer, std::move(branches), std::move(ckpt));
}

// --- global types ---------------------------------------------------------

GlobalTypePtr Parser::global() {
  if (is_word("end")) {
    ++pos_;
    return global_end();
  }
  if (is_word("mu")) {
    ++pos_;
    auto x = name("a recursion variable");
    expect(".");
    bound_.push_back(x);
    auto body = global();
    bound_.pop_back();
    return global_rec(x, body);
  }
  if (is_word("ckpt")) {
    ++pos_;
    auto a = name("a checkpoint name");
    bool braced = accept("{");
    if (peek().kind != Tok::Ident || !is_punct("->", 1)) fail("a checkpoint must guard a communication");
    auto g = global_comm(a);
    if (braced) expect("}");
    return g;
  }
  if (accept("(")) {
    auto g = global();
    expect(")");
    return g;
  }
  if (peek().kind == Tok::Ident && is_punct("->", 1)) return global_comm(std::nullopt);
  auto loc = here();
  auto x = name("a global type");
  if (in_scope(bound_, x)) return global_var(x);
  if (auto it = globals.find(x); it != globals.end()) return it->second;
  throw ParseError(loc, "unknown global type '" + x + "'");
}

GlobalTypePtr Parser::global_comm(std::optional<CheckpointName> ckpt) {
  auto from = name("a participant");
  expect("->");
  auto to = name("a participant");
  std::vector<GlobalBranch> branches;
  auto branch = [&] {
    GlobalBranch b;
    b.label = name("a label");
    if (accept("(")) {
      b.sort = sort();
      expect(")");
    }
    b.cont = accept(".") ? global() : global_end();
    branches.push_back(std::move(b));
  };
  if (accept("{")) {
    do branch();
    while (accept(","));
    expect("}");
  } else {
    branch();
  }
  return comm(from, to, std::move(branches), std::move(ckpt));
}

// --- configurations, pairs, sessions -------------------------------------

Configuration Parser::configuration() {
  auto loc = here();
  if (!accept("<")) {
    auto p = process();
    return Configuration(checked_process(loc, p, "process"));
  }
  expect("[");
  std::vector<ProcessPtr> history;
  if (!is_punct("]")) {
    do {
      auto eloc = here();
      auto p = checked_process(eloc, process(), "history element");
      if (!is_checkpointed(*p)) {
        throw ValidationError(eloc, "history element",
                              {{Constraint::UncheckpointedHistory, "/", "history holds an uncheckpointed process"}});
      }
      history.push_back(std::move(p));
    } while (accept(","));
  }
  expect("]");
  expect(";");
  auto aloc = here();
  auto active = checked_process(aloc, process(), "active process");
  expect(">");
  return Configuration(active, std::move(history));
}

GlobalPair Parser::global_pair() {
  auto loc = here();
  expect("<");
  expect("[");
  std::vector<GlobalTypePtr> history;
  if (!is_punct("]")) {
    do history.push_back(checked_global(here(), global(), "global history element"));
    while (accept(","));
  }
  expect("]");
  expect(";");
  auto active = checked_global(here(), global(), "global type");
  expect(">");
  try {
    return GlobalPair(active, std::move(history));
  } catch (const std::invalid_argument& e) {
    // Recompute as violations for a uniform diagnostic.
    std::vector<GlobalTypePtr> h;
    for (const auto& g : history) h.push_back(g);
    std::vector<Violation> v;
    std::set<CheckpointName> seen;
    for (std::size_t i = 0; i < h.size(); ++i) {
      std::string where = "history[" + std::to_string(i) + "]";
      if (!is_checkpointed(*h[i])) {
        v.push_back({Constraint::UncheckpointedHistory, where, "global history holds an uncheckpointed type"});
      } else if (!seen.insert(*checkpoint_of(*h[i])).second) {
        v.push_back({Constraint::DuplicateCheckpointName, where, "checkpoint " + *checkpoint_of(*h[i]) + " repeated"});
      }
    }
    if (v.empty()) v.push_back({Constraint::UncheckpointedHistory, "/", e.what()});
    throw ValidationError(loc, "global pair", std::move(v));
  }
}

Session Parser::session_body() {
  Session out;
  expect("{");
  if (!is_punct("}")) {
    do {
      auto loc = here();
      auto p = name("a participant");
      expect("|>");
      if (out.count(p)) throw ParseError(loc, "participant '" + p + "' appears twice in the session");
      out.emplace(p, configuration());
    } while (accept(","));
  }
  expect("}");
  return out;
}

void Parser::declaration(SourceFile& out) {
  auto loc = here();
  using K = SourceFile::Kind;
  if (is_word("global")) {
    ++pos_;
    auto n = name("a declaration name");
    check_fresh(out, n, loc);
    expect("=");
    auto g = checked_global(loc, global(), "global type " + n);
    expect(";");
    globals[n] = g;
    out.globals[n] = g;
    out.declarations.push_back({K::Global, n, loc});
  } else if (is_word("process")) {
    ++pos_;
    auto n = name("a declaration name");
    check_fresh(out, n, loc);
    expect("=");
    auto p = checked_process(loc, process(), "process " + n);
    expect(";");
    processes[n] = p;
    out.processes[n] = p;
    out.declarations.push_back({K::Process, n, loc});
  } else if (is_word("type")) {
    ++pos_;
    auto n = name("a declaration name");
    check_fresh(out, n, loc);
    expect("=");
    auto t = checked_type(loc, session_type(), "session type " + n);
    expect(";");
    types[n] = t;
    out.types[n] = t;
    out.declarations.push_back({K::Type, n, loc});
  } else if (is_word("session")) {
    ++pos_;
    auto n = name("a session name");
    check_fresh(out, n, loc);
    out.sessions[n] = session_body();
    accept(";");
    out.session_order.push_back(n);
    out.declarations.push_back({K::Session, n, loc});
  } else if (is_word("typing")) {
    ++pos_;
    auto n = name("a session name");
    if (!out.sessions.count(n)) throw ParseError(loc, "typing for undeclared session '" + n + "'");
    if (out.typings.count(n)) throw ParseError(loc, "session '" + n + "' already has a typing");
    expect("=");
    out.typings.emplace(n, global_pair());
    expect(";");
    out.declarations.push_back({K::Typing, n, loc});
  } else if (is_word("network")) {
    ++pos_;
    if (out.network_decl) throw ParseError(loc, "duplicate network declaration");
    std::vector<std::string> names;
    expect("{");
    if (!is_punct("}")) {
      do {
        auto sloc = here();
        auto s = name("a session name");
        if (!out.sessions.count(s)) throw ParseError(sloc, "unknown session '" + s + "'");
        names.push_back(s);
      } while (accept("||"));
    }
    expect("}");
    accept(";");
    out.network_decl = std::move(names);
    out.declarations.push_back({K::Network, "", loc});
  } else if (is_word("script")) {
    ++pos_;
    if (out.script) throw ParseError(loc, "duplicate script block");
    if (!is_punct("{")) fail("expected '{' after script");
    // Directives are line-oriented, so the block is re-read from the raw text.
    std::size_t open = peek().offset;
    std::size_t close = src_.find('}', open + 1);
    if (close == std::string_view::npos) fail("unterminated script block");
    Script s;
    try {
      s = parse_script(src_.substr(open + 1, close - open - 1));
    } catch (const ParseError& e) {
      throw ParseError({loc.line + e.location().line - 1, e.location().column}, e.what());
    }
    // Skip the tokens the raw slice covered.
    while (!at_eof() && peek().offset < close) ++pos_;
    expect("}");
    out.script = std::move(s);
    out.declarations.push_back({K::Script, "", loc});
  } else {
    fail("expected a declaration (global, process, type, session, typing, network, script) but found " +
         shown(peek()));
  }
}

}  // namespace

std::vector<std::string> SourceFile::network_names() const { return network_decl ? *network_decl : session_order; }

Network SourceFile::network() const {
  Network out;
  for (const auto& n : network_names()) out.push_back(sessions.at(n));
  return out;
}

SourceFile parse(std::string_view text) {
  Parser p(text);
  return p.file();
}

ProcessPtr parse_process(std::string_view text) {
  Parser p(text);
  auto loc = p.here();
  return p.checked_process(loc, p.whole([&] { return p.process(); }), "process");
}

SessionTypePtr parse_session_type(std::string_view text) {
  Parser p(text);
  auto loc = p.here();
  return p.checked_type(loc, p.whole([&] { return p.session_type(); }), "session type");
}

GlobalTypePtr parse_global(std::string_view text) {
  Parser p(text);
  auto loc = p.here();
  return p.checked_global(loc, p.whole([&] { return p.global(); }), "global type");
}

ExprPtr parse_expr(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.expr(); });
}

Configuration parse_configuration(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.configuration(); });
}

GlobalPair parse_global_pair(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.global_pair(); });
}

Session parse_session(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.session(); });
}

std::string print(const SourceFile& file) {
  std::string out;
  using K = SourceFile::Kind;
  for (const auto& d : file.declarations) {
    switch (d.kind) {
      case K::Global: out += "global " + d.name + " = " + print(*file.globals.at(d.name)) + ";\n"; break;
      case K::Process: out += "process " + d.name + " = " + print(*file.processes.at(d.name)) + ";\n"; break;
      case K::Type: out += "type " + d.name + " = " + print(*file.types.at(d.name)) + ";\n"; break;
      case K::Session: {
        out += "session " + d.name + " {";
        bool first = true;
        for (const auto& [p, c] : file.sessions.at(d.name)) {
          out += first ? "\n  " : ",\n  ";
          first = false;
          out += p + " |> " + print(c);
        }
        out += first ? "}\n" : "\n}\n";
        break;
      }
      case K::Typing: out += "typing " + d.name + " = " + print(file.typings.at(d.name)) + ";\n"; break;
      case K::Network: {
        out += "network {";
        const auto& names = *file.network_decl;
        for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " || " : " ") + names[i];
        out += names.empty() ? "}\n" : " }\n";
        break;
      }
      case K::Script:
        out += "script {\n";
        for (const auto& dir : *file.script) out += "  " + print(dir) + "\n";
        out += "}\n";
        break;
    }
  }
  return out;
}

}  // namespace rms

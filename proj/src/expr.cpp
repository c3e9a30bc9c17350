#include "rms/expr.hpp"

#include <sstream>

#include "rms/overloaded.hpp"

namespace rms {

namespace {

// Two's-complement wraparound without signed-overflow UB.
std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}

}  // namespace

std::string_view to_string(Sort sort) {
  switch (sort) {
    case Sort::Int: return "Int";
    case Sort::Bool: return "Bool";
    case Sort::Str: return "Str";
  }
  return "?";
}

std::optional<Sort> sort_from_string(std::string_view text) {
  if (text == "Int") return Sort::Int;
  if (text == "Bool") return Sort::Bool;
  if (text == "Str") return Sort::Str;
  return std::nullopt;
}

Sort Value::sort() const {
  if (is_int()) return Sort::Int;
  if (is_bool()) return Sort::Bool;
  return Sort::Str;
}

std::string to_string(const Value& value) {
  if (value.is_int()) return std::to_string(value.as_int());
  if (value.is_bool()) return value.as_bool() ? "true" : "false";
  std::string out = "\"";
  for (char c : value.as_str()) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

Value canonical_value(Sort sort) {
  switch (sort) {
    case Sort::Int: return Value(0);
    case Sort::Bool: return Value(true);
    case Sort::Str: return Value("s");
  }
  return Value(0);
}

std::string_view to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not: return "!";
    case UnaryOp::Neg: return "-";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::And: return "&&";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
  }
  return "?";
}

ExprPtr lit(Value value) { return std::make_shared<const Expr>(Expr{Expr::Lit{std::move(value)}}); }
ExprPtr var(VarName name) { return std::make_shared<const Expr>(Expr{Expr::Var{std::move(name)}}); }
ExprPtr unary(UnaryOp op, ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{Expr::Unary{op, std::move(arg)}});
}
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}});
}

bool operator==(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Expr::Lit& x) { return x.value == std::get<Expr::Lit>(b.node).value; },
          [&](const Expr::Var& x) { return x.name == std::get<Expr::Var>(b.node).name; },
          [&](const Expr::Unary& x) {
            const auto& y = std::get<Expr::Unary>(b.node);
            return x.op == y.op && *x.arg == *y.arg;
          },
          [&](const Expr::Binary& x) {
            const auto& y = std::get<Expr::Binary>(b.node);
            return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
          },
      },
      a.node);
}

namespace {

std::int64_t want_int(const Value& v, std::string_view op) {
  if (!v.is_int()) throw EvalError("operator " + std::string(op) + " expects Int, got " + to_string(v));
  return v.as_int();
}

bool want_bool(const Value& v, std::string_view op) {
  if (!v.is_bool()) throw EvalError("operator " + std::string(op) + " expects Bool, got " + to_string(v));
  return v.as_bool();
}

}  // namespace

Value eval(const Expr& e, const ValueEnv& env) {
  return std::visit(
      overloaded{
          [&](const Expr::Lit& x) -> Value { return x.value; },
          [&](const Expr::Var& x) -> Value {
            auto it = env.find(x.name);
            if (it == env.end()) throw EvalError("unbound variable " + x.name);
            return it->second;
          },
          [&](const Expr::Unary& x) -> Value {
            Value arg = eval(*x.arg, env);
            if (x.op == UnaryOp::Not) return Value(!want_bool(arg, "!"));
            return Value(wrap_sub(0, want_int(arg, "-")));
          },
          [&](const Expr::Binary& x) -> Value {
            Value lhs = eval(*x.lhs, env);
            Value rhs = eval(*x.rhs, env);
            auto name = to_string(x.op);
            switch (x.op) {
              case BinaryOp::Add: return Value(wrap_add(want_int(lhs, name), want_int(rhs, name)));
              case BinaryOp::Sub: return Value(wrap_sub(want_int(lhs, name), want_int(rhs, name)));
              case BinaryOp::And: return Value(want_bool(lhs, name) && want_bool(rhs, name));
              case BinaryOp::Lt: return Value(want_int(lhs, name) < want_int(rhs, name));
              case BinaryOp::Le: return Value(want_int(lhs, name) <= want_int(rhs, name));
              case BinaryOp::Eq:
                if (lhs.sort() != rhs.sort()) throw EvalError("== compares values of different sorts");
                return Value(lhs == rhs);
            }
            throw EvalError("unknown operator");
          },
      },
      e.node);
}

Sort sort_of(const Expr& e, const SortEnv& env) {
  auto expect = [](Sort got, Sort want, std::string_view op) {
    if (got != want) {
      std::ostringstream msg;
      msg << "operator " << op << " expects " << to_string(want) << ", got " << to_string(got);
      throw SortError(msg.str());
    }
  };
  return std::visit(
      overloaded{
          [&](const Expr::Lit& x) { return x.value.sort(); },
          [&](const Expr::Var& x) {
            auto it = env.find(x.name);
            if (it == env.end()) throw SortError("unbound variable " + x.name);
            return it->second;
          },
          [&](const Expr::Unary& x) {
            Sort arg = sort_of(*x.arg, env);
            Sort want = x.op == UnaryOp::Not ? Sort::Bool : Sort::Int;
            expect(arg, want, to_string(x.op));
            return want;
          },
          [&](const Expr::Binary& x) {
            Sort lhs = sort_of(*x.lhs, env);
            Sort rhs = sort_of(*x.rhs, env);
            auto name = to_string(x.op);
            switch (x.op) {
              case BinaryOp::Add:
              case BinaryOp::Sub:
                expect(lhs, Sort::Int, name);
                expect(rhs, Sort::Int, name);
                return Sort::Int;
              case BinaryOp::And:
                expect(lhs, Sort::Bool, name);
                expect(rhs, Sort::Bool, name);
                return Sort::Bool;
              case BinaryOp::Lt:
              case BinaryOp::Le:
                expect(lhs, Sort::Int, name);
                expect(rhs, Sort::Int, name);
                return Sort::Bool;
              case BinaryOp::Eq:
                expect(rhs, lhs, name);
                return Sort::Bool;
            }
            throw SortError("unknown operator");
          },
      },
      e.node);
}

ExprPtr substitute(const ExprPtr& e, const VarName& x, const Value& v) {
  return std::visit(
      overloaded{
          [&](const Expr::Lit&) { return e; },
          [&](const Expr::Var& y) { return y.name == x ? lit(v) : e; },
          [&](const Expr::Unary& u) {
            auto arg = substitute(u.arg, x, v);
            return arg == u.arg ? e : unary(u.op, arg);
          },
          [&](const Expr::Binary& b) {
            auto lhs = substitute(b.lhs, x, v);
            auto rhs = substitute(b.rhs, x, v);
            return lhs == b.lhs && rhs == b.rhs ? e : binary(b.op, lhs, rhs);
          },
      },
      e->node);
}

std::set<VarName> free_vars(const Expr& e) {
  std::set<VarName> out;
  std::visit(overloaded{
                 [&](const Expr::Lit&) {},
                 [&](const Expr::Var& y) { out.insert(y.name); },
                 [&](const Expr::Unary& u) { out = free_vars(*u.arg); },
                 [&](const Expr::Binary& b) {
                   out = free_vars(*b.lhs);
                   out.merge(free_vars(*b.rhs));
                 },
             },
             e.node);
  return out;
}

}  // namespace rms

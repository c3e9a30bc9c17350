#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace rms {

/// Message sorts. Closed set; equality is syntactic.
enum class Sort { Int, Bool, Str };

std::string_view to_string(Sort sort);
std::optional<Sort> sort_from_string(std::string_view text);

using VarName = std::string;

/// A runtime value carried by a message.
class Value {
 public:
  Value() : data_(std::int64_t{0}) {}
  Value(std::int64_t v) : data_(v) {}  // NOLINT(google-explicit-constructor)
  Value(int v) : data_(std::int64_t{v}) {}  // NOLINT(google-explicit-constructor)
  Value(bool v) : data_(v) {}  // NOLINT(google-explicit-constructor)
  Value(std::string v) : data_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Value(const char* v) : data_(std::string(v)) {}  // NOLINT(google-explicit-constructor)

  Sort sort() const;
  bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_str() const { return std::holds_alternative<std::string>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  const std::string& as_str() const { return std::get<std::string>(data_); }

  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;

 private:
  std::variant<std::int64_t, bool, std::string> data_;
};

/// Surface-syntax rendering of a value: 5, true, "in".
std::string to_string(const Value& value);

/// The canonical inhabitant used when exploration needs one value per sort.
Value canonical_value(Sort sort);

enum class UnaryOp { Not, Neg };
enum class BinaryOp { Add, Sub, And, Eq, Lt, Le };

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Lit {
    Value value;
  };
  struct Var {
    VarName name;
  };
  struct Unary {
    UnaryOp op;
    ExprPtr arg;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };

  std::variant<Lit, Var, Unary, Binary> node;
};

ExprPtr lit(Value value);
ExprPtr var(VarName name);
ExprPtr unary(UnaryOp op, ExprPtr arg);
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

bool operator==(const Expr& a, const Expr& b);

using ValueEnv = std::map<VarName, Value>;
using SortEnv = std::map<VarName, Sort>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// e ↓ v. Throws EvalError on an unbound variable or an ill-sorted operand.
Value eval(const Expr& e, const ValueEnv& env = {});

/// Sort of a well-sorted expression under `env`; throws SortError otherwise.
Sort sort_of(const Expr& e, const SortEnv& env = {});

/// e[v/x]
ExprPtr substitute(const ExprPtr& e, const VarName& x, const Value& v);

std::set<VarName> free_vars(const Expr& e);

}  // namespace rms

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bnctl {

/// Expression tree for a Boolean update function.
///
/// And/Or nodes always have at least two children; the factories collapse
/// degenerate cases so that every constructed expression satisfies this.
class BoolExpr {
public:
  enum class Kind : std::uint8_t { Const, Var, Not, And, Or };

  static BoolExpr constant(bool value);
  static BoolExpr var(std::size_t index);
  static BoolExpr negate(BoolExpr child);
  static BoolExpr conjunction(std::vector<BoolExpr> children);
  static BoolExpr disjunction(std::vector<BoolExpr> children);

  Kind kind() const noexcept { return kind_; }
  bool value() const noexcept { return value_; }
  std::size_t index() const noexcept { return index_; }
  const std::vector<BoolExpr> &children() const noexcept { return children_; }

  bool is_constant() const noexcept { return kind_ == Kind::Const; }

  /// Largest variable index referenced plus one (0 for closed expressions).
  std::size_t arity() const;

  friend bool operator==(const BoolExpr &, const BoolExpr &) = default;

private:
  BoolExpr() = default;

  Kind kind_ = Kind::Const;
  bool value_ = false;
  std::size_t index_ = 0;
  std::vector<BoolExpr> children_;
};

/// A point in {0,1}^n; bit i is the value of node i.
class State {
public:
  State() = default;
  explicit State(std::size_t n) : bits_(n, false) {}
  explicit State(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// Parses a string such as "010"; the first character is node 0.
  static State from_string(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v; }
  const std::vector<bool> &bits() const noexcept { return bits_; }

  std::string to_string() const;

  friend bool operator==(const State &, const State &) = default;
  friend auto operator<=>(const State &a, const State &b) {
    return a.bits_ <=> b.bits_;
  }

private:
  std::vector<bool> bits_;
};

struct Literal {
  std::size_t node = 0;
  bool value = false;

  friend bool operator==(const Literal &, const Literal &) = default;
  friend auto operator<=>(const Literal &, const Literal &) = default;
};

/// A control (0-set, 1-set): nodes held at 0 and nodes held at 1.
///
/// Literals are kept sorted by node index, one literal per node, so the two
/// index sets are disjoint by construction.
class Control {
public:
  Control() = default;
  Control(std::initializer_list<Literal> literals) {
    for (const auto &l : literals)
      fix(l.node, l.value);
  }

  /// Throws std::invalid_argument if `node` is already fixed to the other value.
  void fix(std::size_t node, bool value);

  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  const std::vector<Literal> &literals() const noexcept { return literals_; }

  std::vector<std::size_t> zero_set() const;
  std::vector<std::size_t> one_set() const;

  bool fixes(std::size_t node) const;
  std::optional<bool> value_of(std::size_t node) const;

  /// Orders by (size, literal sequence).
  friend bool operator<(const Control &a, const Control &b);
  friend bool operator==(const Control &, const Control &) = default;

private:
  std::vector<Literal> literals_;
};

struct InputClassification {
  std::vector<std::size_t> inputs;        // I
  std::vector<std::size_t> specified;     // I^s: constant functions
  std::vector<std::size_t> nonspecified;  // I^ns: identity on self
  std::vector<std::size_t> oscillating;   // f_i = !x_i, excluded from I

  bool is_input(std::size_t i) const;
  bool is_specified(std::size_t i) const;
  bool is_nonspecified(std::size_t i) const;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &message);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class BooleanNetwork {
public:
  /// Throws std::invalid_argument when the invariants on names or function
  /// arity are violated.
  BooleanNetwork(std::vector<std::string> names, std::vector<BoolExpr> functions);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  const std::string &name(std::size_t i) const { return names_.at(i); }
  const std::vector<BoolExpr> &functions() const noexcept { return functions_; }
  const BoolExpr &function(std::size_t i) const { return functions_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const BooleanNetwork &, const BooleanNetwork &) = default;

private:
  std::vector<std::string> names_;
  std::vector<BoolExpr> functions_;
};

BooleanNetwork parse_network(std::istream &in);
BooleanNetwork parse_network(std::string_view text);
BooleanNetwork load_network(const std::string &path);

/// Writes the network in the same BoolNet-style format accepted by the parser.
std::string serialize(const BooleanNetwork &bn);
std::string to_string(const BoolExpr &expr, const std::vector<std::string> &names);

bool eval(const BoolExpr &expr, const State &s);

/// Indices syntactically occurring in f_i, ascending.
std::vector<std::size_t> parents(const BooleanNetwork &bn, std::size_t i);

InputClassification classify_inputs(const BooleanNetwork &bn);

State apply_control(const Control &c, const State &s);

/// BN|C: functions of controlled nodes replaced by their fixed constants.
BooleanNetwork controlled_network(const BooleanNetwork &bn, const Control &c);

/// Parses "a=0, b=1" style literal lists against the network's node names.
Control parse_control(const BooleanNetwork &bn, std::string_view text);
std::string format_control(const BooleanNetwork &bn, const Control &c);

} // namespace bnctl

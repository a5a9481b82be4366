#pragma once

#include "bnctl/bdd.hpp"
#include "bnctl/model.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bnctl {

class StateSet;

/// Owns the BDD universe for states over n variables in declaration order.
///
/// Handles are cheap to copy and share one node table. A universe is not
/// thread-safe; run independent analyses in independent universes.
class StateSpace {
public:
  explicit StateSpace(std::size_t num_vars);

  std::size_t num_vars() const noexcept;

  StateSet empty() const;
  StateSet full() const;
  StateSet literal(std::size_t var, bool value) const;
  StateSet from_state(const State &s) const;
  StateSet from_expr(const BoolExpr &expr) const;

  bdd::Manager &manager() const noexcept { return *mgr_; }
  const std::shared_ptr<bdd::Manager> &shared_manager() const noexcept { return mgr_; }

  friend bool operator==(const StateSpace &a, const StateSpace &b) {
    return a.mgr_ == b.mgr_;
  }

private:
  friend class StateSet;
  explicit StateSpace(std::shared_ptr<bdd::Manager> mgr) : mgr_(std::move(mgr)) {}

  std::shared_ptr<bdd::Manager> mgr_;
};

class EnumerationOverflow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A canonical set of states. Equal sets have equal roots, so equality is O(1).
class StateSet {
public:
  StateSet(std::shared_ptr<bdd::Manager> mgr, bdd::NodeId root);
  StateSet(const StateSet &other);
  StateSet(StateSet &&other) noexcept;
  StateSet &operator=(const StateSet &other);
  StateSet &operator=(StateSet &&other) noexcept;
  ~StateSet();

  StateSpace space() const;
  std::size_t num_vars() const;
  bdd::NodeId root() const noexcept { return root_; }

  bool is_empty() const noexcept { return root_ == bdd::kFalse; }
  bool is_full() const noexcept { return root_ == bdd::kTrue; }
  bool contains(const State &s) const;
  bool subset_of(const StateSet &other) const;
  bool intersects(const StateSet &other) const;

  std::uint64_t count() const;

  /// Members in lexicographic order of their bit strings. Throws
  /// EnumerationOverflow when the set has more than `limit` members.
  std::vector<State> to_states(std::size_t limit) const;
  /// Lexicographically smallest member; the set must be non-empty.
  State pick() const;

  StateSet operator|(const StateSet &o) const;
  StateSet operator&(const StateSet &o) const;
  StateSet operator-(const StateSet &o) const;
  StateSet operator~() const;
  StateSet &operator|=(const StateSet &o) { return *this = *this | o; }
  StateSet &operator&=(const StateSet &o) { return *this = *this & o; }
  StateSet &operator-=(const StateSet &o) { return *this = *this - o; }

  /// Existentially abstracts the given variables.
  StateSet exists(const std::vector<std::size_t> &vars) const;
  /// Toggles bit `var` of every member.
  StateSet flip(std::size_t var) const;

  friend bool operator==(const StateSet &a, const StateSet &b);

private:
  bdd::Manager &mgr() const { return *mgr_; }
  StateSet wrap(bdd::NodeId id) const { return StateSet(mgr_, id); }
  void check_same(const StateSet &o) const;

  std::shared_ptr<bdd::Manager> mgr_;
  bdd::NodeId root_;
};

/// A cube of states: each position is 0, 1 or don't-care.
class Schema {
public:
  enum class Cell : std::uint8_t { Zero, One, DontCare };

  Schema() = default;
  explicit Schema(std::vector<Cell> cells) : cells_(std::move(cells)) {}
  /// Parses "00*".
  static Schema from_string(std::string_view pattern);

  std::size_t size() const noexcept { return cells_.size(); }
  Cell operator[](std::size_t i) const { return cells_[i]; }
  const std::vector<Cell> &cells() const noexcept { return cells_; }

  std::vector<std::size_t> zero_set() const;
  std::vector<std::size_t> one_set() const;
  std::vector<std::size_t> dont_care() const;
  std::size_t support_size() const;

  std::string to_string() const;

  friend bool operator==(const Schema &, const Schema &) = default;

private:
  std::vector<Cell> cells_;
};

StateSet from_schema(const StateSpace &space, const Schema &sch);

/// S|_C: states agreeing with every literal of c.
StateSet control_subspace(const StateSpace &space, const Control &c);
StateSet restrict_to_control(const StateSet &set, const Control &c);
/// { C(s) : s in set }.
StateSet apply_control_set(const Control &c, const StateSet &set);

/// Cube inside `set` with the most don't-cares; ties go to the
/// lexicographically smallest pattern under 0 < 1 < *.
/// Throws std::invalid_argument on an empty set.
Schema largest_cube(const StateSet &set);

/// Greedy disjoint cover: each cube is the largest_cube of what is left.
std::vector<Schema> schema_cover(const StateSet &set);

enum class Selfloops : std::uint8_t { Include, Exclude };

/// Asynchronous transition relation kept as one partial relation per node:
/// enabled(i) holds the states where f_i disagrees with x_i.
class TransitionSystem {
public:
  TransitionSystem(const StateSpace &space, const BooleanNetwork &bn);

  const StateSpace &space() const noexcept { return space_; }
  std::size_t num_vars() const noexcept { return enabled_.size(); }

  const StateSet &enabled(std::size_t i) const { return enabled_.at(i); }
  /// States with at least one selfloop step (some f_i(s) = s[i]).
  const StateSet &has_selfloop() const noexcept { return selfloop_; }
  /// States with two or more distinct successors other than themselves.
  StateSet branching() const;

  StateSet post(const StateSet &set, Selfloops mode = Selfloops::Include) const;
  StateSet pre(const StateSet &set, Selfloops mode = Selfloops::Include) const;

private:
  StateSpace space_;
  std::vector<StateSet> enabled_;
  StateSet selfloop_;
};

} // namespace bnctl

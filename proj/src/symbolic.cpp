#include "bnctl/symbolic.hpp"

#include <limits>
#include <unordered_map>

namespace bnctl {

using bdd::kFalse;
using bdd::kTrue;
using bdd::NodeId;

StateSpace::StateSpace(std::size_t num_vars)
    : mgr_(std::make_shared<bdd::Manager>(num_vars)) {
  if (num_vars == 0)
    throw std::invalid_argument("state space needs at least one variable");
}

std::size_t StateSpace::num_vars() const noexcept { return mgr_->num_vars(); }

StateSet StateSpace::empty() const { return StateSet(mgr_, kFalse); }
StateSet StateSpace::full() const { return StateSet(mgr_, kTrue); }

StateSet StateSpace::literal(std::size_t var, bool value) const {
  mgr_->maybe_collect();
  return StateSet(mgr_, mgr_->literal(var, value));
}

StateSet StateSpace::from_state(const State &s) const {
  if (s.size() != num_vars())
    throw std::invalid_argument("state length does not match the state space");
  mgr_->maybe_collect();
  NodeId r = kTrue;
  for (std::size_t i = s.size(); i-- > 0;) {
    const auto v = static_cast<std::uint32_t>(i);
    r = s[i] ? mgr_->make(v, kFalse, r) : mgr_->make(v, r, kFalse);
  }
  return StateSet(mgr_, r);
}

namespace {

NodeId build_expr(bdd::Manager &m, const BoolExpr &e) {
  switch (e.kind()) {
  case BoolExpr::Kind::Const:
    return e.value() ? kTrue : kFalse;
  case BoolExpr::Kind::Var:
    return m.literal(e.index(), true);
  case BoolExpr::Kind::Not:
    return m.negate(build_expr(m, e.children().front()));
  case BoolExpr::Kind::And: {
    NodeId r = kTrue;
    for (const auto &c : e.children())
      r = m.apply_and(r, build_expr(m, c));
    return r;
  }
  case BoolExpr::Kind::Or: {
    NodeId r = kFalse;
    for (const auto &c : e.children())
      r = m.apply_or(r, build_expr(m, c));
    return r;
  }
  }
  return kFalse;
}

} // namespace

StateSet StateSpace::from_expr(const BoolExpr &expr) const {
  if (expr.arity() > num_vars())
    throw std::invalid_argument("expression references variables outside the space");
  mgr_->maybe_collect();
  return StateSet(mgr_, build_expr(*mgr_, expr));
}

StateSet::StateSet(std::shared_ptr<bdd::Manager> mgr, NodeId root)
    : mgr_(std::move(mgr)), root_(root) {
  mgr_->ref(root_);
}

StateSet::StateSet(const StateSet &other) : mgr_(other.mgr_), root_(other.root_) {
  mgr_->ref(root_);
}

StateSet::StateSet(StateSet &&other) noexcept : mgr_(other.mgr_), root_(other.root_) {
  // the moved-from handle keeps its own reference until destroyed
  mgr_->ref(root_);
}

StateSet &StateSet::operator=(const StateSet &other) {
  if (this != &other) {
    other.mgr_->ref(other.root_);
    mgr_->deref(root_);
    mgr_ = other.mgr_;
    root_ = other.root_;
  }
  return *this;
}

StateSet &StateSet::operator=(StateSet &&other) noexcept {
  if (this != &other) {
    other.mgr_->ref(other.root_);
    mgr_->deref(root_);
    mgr_ = other.mgr_;
    root_ = other.root_;
  }
  return *this;
}

StateSet::~StateSet() {
  if (mgr_)
    mgr_->deref(root_);
}

StateSpace StateSet::space() const { return StateSpace(mgr_); }

std::size_t StateSet::num_vars() const { return mgr_->num_vars(); }

void StateSet::check_same(const StateSet &o) const {
  if (mgr_ != o.mgr_)
    throw std::invalid_argument("state sets belong to different universes");
}

bool operator==(const StateSet &a, const StateSet &b) {
  a.check_same(b);
  return a.root_ == b.root_;
}

bool StateSet::contains(const State &s) const {
  if (s.size() != num_vars())
    throw std::invalid_argument("state length does not match the state space");
  NodeId f = root_;
  while (!mgr().is_terminal(f))
    f = s[mgr().var(f)] ? mgr().high(f) : mgr().low(f);
  return f == kTrue;
}

bool StateSet::subset_of(const StateSet &other) const {
  check_same(other);
  mgr().maybe_collect();
  return mgr().and_not(root_, other.root_) == kFalse;
}

bool StateSet::intersects(const StateSet &other) const {
  check_same(other);
  mgr().maybe_collect();
  return mgr().apply_and(root_, other.root_) != kFalse;
}

std::uint64_t StateSet::count() const { return mgr().sat_count(root_); }

std::vector<State> StateSet::to_states(std::size_t limit) const {
  const std::size_t n = num_vars();
  std::vector<State> out;
  State cur(n);
  auto rec = [&](auto &&self, NodeId f, std::size_t level) -> void {
    if (f == kFalse)
      return;
    if (level == n) {
      if (out.size() >= limit)
        throw EnumerationOverflow("state enumeration exceeds limit of " +
                                  std::to_string(limit));
      out.push_back(cur);
      return;
    }
    const bool tested = !mgr().is_terminal(f) && mgr().var(f) == level;
    cur.set(level, false);
    self(self, tested ? mgr().low(f) : f, level + 1);
    cur.set(level, true);
    self(self, tested ? mgr().high(f) : f, level + 1);
    cur.set(level, false);
  };
  rec(rec, root_, 0);
  return out;
}

State StateSet::pick() const {
  if (is_empty())
    throw std::invalid_argument("cannot pick a state from the empty set");
  State s(num_vars());
  NodeId f = root_;
  while (!mgr().is_terminal(f)) {
    if (mgr().low(f) != kFalse) {
      f = mgr().low(f);
    } else {
      s.set(mgr().var(f), true);
      f = mgr().high(f);
    }
  }
  return s;
}

StateSet StateSet::operator|(const StateSet &o) const {
  check_same(o);
  mgr().maybe_collect();
  return wrap(mgr().apply_or(root_, o.root_));
}

StateSet StateSet::operator&(const StateSet &o) const {
  check_same(o);
  mgr().maybe_collect();
  return wrap(mgr().apply_and(root_, o.root_));
}

StateSet StateSet::operator-(const StateSet &o) const {
  check_same(o);
  mgr().maybe_collect();
  return wrap(mgr().and_not(root_, o.root_));
}

StateSet StateSet::operator~() const {
  mgr().maybe_collect();
  return wrap(mgr().negate(root_));
}

StateSet StateSet::exists(const std::vector<std::size_t> &vars) const {
  mgr().maybe_collect();
  NodeId cube = mgr().cube(vars);
  return wrap(mgr().exists(root_, cube));
}

StateSet StateSet::flip(std::size_t var) const {
  mgr().maybe_collect();
  return wrap(mgr().flip(root_, var));
}

Schema Schema::from_string(std::string_view pattern) {
  std::vector<Cell> cells;
  cells.reserve(pattern.size());
  for (char c : pattern) {
    switch (c) {
    case '0':
      cells.push_back(Cell::Zero);
      break;
    case '1':
      cells.push_back(Cell::One);
      break;
    case '*':
    case '-':
      cells.push_back(Cell::DontCare);
      break;
    default:
      throw std::invalid_argument("schema pattern may contain only 0, 1 and *");
    }
  }
  return Schema(std::move(cells));
}

namespace {

std::vector<std::size_t> positions(const std::vector<Schema::Cell> &cells,
                                   Schema::Cell which) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == which)
      out.push_back(i);
  return out;
}

} // namespace

std::vector<std::size_t> Schema::zero_set() const { return positions(cells_, Cell::Zero); }
std::vector<std::size_t> Schema::one_set() const { return positions(cells_, Cell::One); }
std::vector<std::size_t> Schema::dont_care() const {
  return positions(cells_, Cell::DontCare);
}

std::size_t Schema::support_size() const { return size() - dont_care().size(); }

std::string Schema::to_string() const {
  std::string out;
  out.reserve(cells_.size());
  for (auto c : cells_)
    out.push_back(c == Cell::Zero ? '0' : c == Cell::One ? '1' : '*');
  return out;
}

StateSet from_schema(const StateSpace &space, const Schema &sch) {
  if (sch.size() != space.num_vars())
    throw std::invalid_argument("schema length does not match the state space");
  auto &m = space.manager();
  m.maybe_collect();
  NodeId r = kTrue;
  for (std::size_t i = sch.size(); i-- > 0;) {
    const auto v = static_cast<std::uint32_t>(i);
    if (sch[i] == Schema::Cell::One)
      r = m.make(v, kFalse, r);
    else if (sch[i] == Schema::Cell::Zero)
      r = m.make(v, r, kFalse);
  }
  return StateSet(space.shared_manager(), r);
}

StateSet control_subspace(const StateSpace &space, const Control &c) {
  auto &m = space.manager();
  m.maybe_collect();
  NodeId r = kTrue;
  const auto &lits = c.literals();
  for (auto it = lits.rbegin(); it != lits.rend(); ++it) {
    if (it->node >= space.num_vars())
      throw std::out_of_range("control references node outside the state space");
    const auto v = static_cast<std::uint32_t>(it->node);
    r = it->value ? m.make(v, kFalse, r) : m.make(v, r, kFalse);
  }
  return StateSet(space.shared_manager(), r);
}

StateSet restrict_to_control(const StateSet &set, const Control &c) {
  return set & control_subspace(set.space(), c);
}

StateSet apply_control_set(const Control &c, const StateSet &set) {
  std::vector<std::size_t> vars;
  for (const auto &l : c.literals())
    vars.push_back(l.node);
  return set.exists(vars) & control_subspace(set.space(), c);
}

Schema largest_cube(const StateSet &set) {
  if (set.is_empty())
    throw std::invalid_argument("largest_cube of the empty set");
  auto space = set.space();
  auto &m = space.manager();
  m.maybe_collect();
  const std::size_t n = space.num_vars();
  constexpr int kInf = std::numeric_limits<int>::max() / 4;

  // fewest literals of a cube inside f, over the variables below var(f)
  std::unordered_map<NodeId, int> memo;
  auto literals = [&](auto &&self, NodeId f) -> int {
    if (f == kFalse)
      return kInf;
    if (f == kTrue)
      return 0;
    if (auto it = memo.find(f); it != memo.end())
      return it->second;
    const NodeId lo = m.low(f), hi = m.high(f);
    int best = std::min(self(self, lo), self(self, hi)) + 1;
    best = std::min(best, self(self, m.apply_and(lo, hi)));
    memo.emplace(f, best);
    return best;
  };

  std::vector<Schema::Cell> cells(n, Schema::Cell::DontCare);
  NodeId f = set.root();
  const int total = literals(literals, f);
  int remaining = total;
  for (std::size_t k = 0; k < n && f != kTrue; ++k) {
    if (m.var(f) != k)
      continue; // independent of x_k, so * is strictly better
    const NodeId lo = m.low(f), hi = m.high(f);
    if (literals(literals, lo) + 1 == remaining) {
      cells[k] = Schema::Cell::Zero;
      f = lo;
      --remaining;
    } else if (literals(literals, hi) + 1 == remaining) {
      cells[k] = Schema::Cell::One;
      f = hi;
      --remaining;
    } else {
      f = m.apply_and(lo, hi);
    }
  }
  return Schema(std::move(cells));
}

std::vector<Schema> schema_cover(const StateSet &set) {
  std::vector<Schema> cover;
  StateSet rest = set;
  auto space = set.space();
  while (!rest.is_empty()) {
    Schema cube = largest_cube(rest);
    rest -= from_schema(space, cube);
    cover.push_back(std::move(cube));
  }
  return cover;
}

namespace {

StateSet make_selfloop(const std::vector<StateSet> &enabled, const StateSpace &space) {
  StateSet any = space.empty();
  for (const auto &e : enabled)
    any |= ~e;
  return any;
}

std::vector<StateSet> make_enabled(const StateSpace &space, const BooleanNetwork &bn) {
  if (bn.size() != space.num_vars())
    throw std::invalid_argument("network size does not match the state space");
  std::vector<StateSet> enabled;
  enabled.reserve(bn.size());
  auto &m = space.manager();
  for (std::size_t i = 0; i < bn.size(); ++i) {
    StateSet f = space.from_expr(bn.function(i));
    StateSet x = space.literal(i, true);
    m.maybe_collect();
    enabled.emplace_back(space.shared_manager(), m.apply_xor(x.root(), f.root()));
  }
  return enabled;
}

} // namespace

TransitionSystem::TransitionSystem(const StateSpace &space, const BooleanNetwork &bn)
    : space_(space), enabled_(make_enabled(space, bn)),
      selfloop_(make_selfloop(enabled_, space)) {}

StateSet TransitionSystem::branching() const {
  StateSet one = space_.empty();
  StateSet two = space_.empty();
  for (const auto &e : enabled_) {
    two |= one & e;
    one |= e;
  }
  return two;
}

StateSet TransitionSystem::post(const StateSet &set, Selfloops mode) const {
  StateSet out = space_.empty();
  for (std::size_t i = 0; i < enabled_.size(); ++i)
    out |= (set & enabled_[i]).flip(i);
  if (mode == Selfloops::Include)
    out |= set & selfloop_;
  return out;
}

StateSet TransitionSystem::pre(const StateSet &set, Selfloops mode) const {
  StateSet out = space_.empty();
  for (std::size_t i = 0; i < enabled_.size(); ++i)
    out |= set.flip(i) & enabled_[i];
  if (mode == Selfloops::Include)
    out |= set & selfloop_;
  return out;
}

} // namespace bnctl

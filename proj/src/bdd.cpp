#include "bnctl/bdd.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace bnctl::bdd {

namespace {

constexpr std::size_t kInitialBuckets = 1u << 12;
constexpr std::size_t kCacheSize = 1u << 16;
constexpr std::size_t kInitialGcThreshold = 1u << 18;

inline std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

} // namespace

Manager::Manager(std::size_t num_vars)
    : num_vars_(num_vars), buckets_(kInitialBuckets, kNil), cache_(kCacheSize),
      gc_threshold_(kInitialGcThreshold) {
  const auto terminal_var = static_cast<std::uint32_t>(num_vars);
  nodes_.push_back(Node{terminal_var, kFalse, kFalse, kNil, 1});
  nodes_.push_back(Node{terminal_var, kTrue, kTrue, kNil, 1});
}

std::size_t Manager::bucket_of(std::uint32_t var, NodeId lo, NodeId hi) const noexcept {
  std::uint64_t h = mix((static_cast<std::uint64_t>(lo) << 32) ^ hi ^
                        (static_cast<std::uint64_t>(var) * 0x9e3779b97f4a7c15ULL));
  return static_cast<std::size_t>(h & (buckets_.size() - 1));
}

void Manager::rehash(std::size_t buckets) {
  buckets_.assign(buckets, kNil);
  for (NodeId id = 2; id < nodes_.size(); ++id) {
    Node &n = nodes_[id];
    if (n.var > num_vars_)
      continue; // free slot
    auto b = bucket_of(n.var, n.lo, n.hi);
    n.next = buckets_[b];
    buckets_[b] = id;
  }
}

NodeId Manager::make(std::uint32_t var, NodeId lo, NodeId hi) {
  if (lo == hi)
    return lo;
  auto b = bucket_of(var, lo, hi);
  for (NodeId id = buckets_[b]; id != kNil; id = nodes_[id].next) {
    const Node &n = nodes_[id];
    if (n.var == var && n.lo == lo && n.hi == hi)
      return id;
  }
  NodeId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[id] = Node{var, lo, hi, buckets_[b], 0};
  } else {
    if (nodes_.size() >= kNil - 1)
      throw std::length_error("BDD node table exhausted");
    id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{var, lo, hi, buckets_[b], 0});
  }
  buckets_[b] = id;
  if (live_nodes() > 2 * buckets_.size())
    rehash(buckets_.size() * 4);
  return id;
}

NodeId Manager::literal(std::size_t var, bool value) {
  if (var >= num_vars_)
    throw std::out_of_range("BDD variable index out of range");
  auto v = static_cast<std::uint32_t>(var);
  return value ? make(v, kFalse, kTrue) : make(v, kTrue, kFalse);
}

std::size_t Manager::cache_slot(Op op, NodeId a, NodeId b) const noexcept {
  std::uint64_t h = mix((static_cast<std::uint64_t>(a) << 32 | b) +
                        static_cast<std::uint64_t>(op) * 0x9e3779b97f4a7c15ULL);
  return static_cast<std::size_t>(h & (cache_.size() - 1));
}

bool Manager::cache_lookup(Op op, NodeId a, NodeId b, NodeId &out) const noexcept {
  const CacheEntry &e = cache_[cache_slot(op, a, b)];
  if (e.op == static_cast<std::uint32_t>(op) && e.a == a && e.b == b) {
    out = e.result;
    return true;
  }
  return false;
}

void Manager::cache_store(Op op, NodeId a, NodeId b, NodeId result) noexcept {
  cache_[cache_slot(op, a, b)] = CacheEntry{static_cast<std::uint32_t>(op), a, b, result};
}

NodeId Manager::apply_and(NodeId a, NodeId b) {
  if (a == kFalse || b == kFalse)
    return kFalse;
  if (a == kTrue)
    return b;
  if (b == kTrue || a == b)
    return a;
  if (a > b)
    std::swap(a, b);
  NodeId r;
  if (cache_lookup(Op::And, a, b, r))
    return r;
  const std::uint32_t va = var(a), vb = var(b);
  const std::uint32_t v = std::min(va, vb);
  NodeId lo = apply_and(va == v ? low(a) : a, vb == v ? low(b) : b);
  NodeId hi = apply_and(va == v ? high(a) : a, vb == v ? high(b) : b);
  r = make(v, lo, hi);
  cache_store(Op::And, a, b, r);
  return r;
}

NodeId Manager::apply_or(NodeId a, NodeId b) {
  if (a == kTrue || b == kTrue)
    return kTrue;
  if (a == kFalse)
    return b;
  if (b == kFalse || a == b)
    return a;
  if (a > b)
    std::swap(a, b);
  NodeId r;
  if (cache_lookup(Op::Or, a, b, r))
    return r;
  const std::uint32_t va = var(a), vb = var(b);
  const std::uint32_t v = std::min(va, vb);
  NodeId lo = apply_or(va == v ? low(a) : a, vb == v ? low(b) : b);
  NodeId hi = apply_or(va == v ? high(a) : a, vb == v ? high(b) : b);
  r = make(v, lo, hi);
  cache_store(Op::Or, a, b, r);
  return r;
}

NodeId Manager::apply_xor(NodeId a, NodeId b) {
  if (a == b)
    return kFalse;
  if (a == kFalse)
    return b;
  if (b == kFalse)
    return a;
  if (a == kTrue)
    return negate(b);
  if (b == kTrue)
    return negate(a);
  if (a > b)
    std::swap(a, b);
  NodeId r;
  if (cache_lookup(Op::Xor, a, b, r))
    return r;
  const std::uint32_t va = var(a), vb = var(b);
  const std::uint32_t v = std::min(va, vb);
  NodeId lo = apply_xor(va == v ? low(a) : a, vb == v ? low(b) : b);
  NodeId hi = apply_xor(va == v ? high(a) : a, vb == v ? high(b) : b);
  r = make(v, lo, hi);
  cache_store(Op::Xor, a, b, r);
  return r;
}

NodeId Manager::and_not(NodeId a, NodeId b) {
  if (a == kFalse || b == kTrue || a == b)
    return kFalse;
  if (b == kFalse)
    return a;
  if (a == kTrue)
    return negate(b);
  NodeId r;
  if (cache_lookup(Op::AndNot, a, b, r))
    return r;
  const std::uint32_t va = var(a), vb = var(b);
  const std::uint32_t v = std::min(va, vb);
  NodeId lo = and_not(va == v ? low(a) : a, vb == v ? low(b) : b);
  NodeId hi = and_not(va == v ? high(a) : a, vb == v ? high(b) : b);
  r = make(v, lo, hi);
  cache_store(Op::AndNot, a, b, r);
  return r;
}

NodeId Manager::negate(NodeId a) {
  if (a == kFalse)
    return kTrue;
  if (a == kTrue)
    return kFalse;
  NodeId r;
  if (cache_lookup(Op::Not, a, 0, r))
    return r;
  r = make(var(a), negate(low(a)), negate(high(a)));
  cache_store(Op::Not, a, 0, r);
  return r;
}

NodeId Manager::cube(const std::vector<std::size_t> &vars) {
  std::vector<std::size_t> sorted = vars;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  NodeId r = kTrue;
  for (auto v : sorted) {
    if (v >= num_vars_)
      throw std::out_of_range("BDD variable index out of range");
    r = make(static_cast<std::uint32_t>(v), kFalse, r);
  }
  return r;
}

NodeId Manager::exists(NodeId f, NodeId vars) { return exists_rec(f, vars); }

NodeId Manager::exists_rec(NodeId f, NodeId vars) {
  if (is_terminal(f) || vars == kTrue)
    return f;
  while (vars != kTrue && var(vars) < var(f))
    vars = high(vars);
  if (vars == kTrue)
    return f;
  NodeId r;
  if (cache_lookup(Op::Exists, f, vars, r))
    return r;
  if (var(vars) == var(f)) {
    NodeId rest = high(vars);
    NodeId lo = exists_rec(low(f), rest);
    r = lo == kTrue ? kTrue : apply_or(lo, exists_rec(high(f), rest));
  } else {
    r = make(var(f), exists_rec(low(f), vars), exists_rec(high(f), vars));
  }
  cache_store(Op::Exists, f, vars, r);
  return r;
}

NodeId Manager::flip(NodeId f, std::size_t v) {
  if (v >= num_vars_)
    throw std::out_of_range("BDD variable index out of range");
  return flip_rec(f, static_cast<std::uint32_t>(v));
}

NodeId Manager::flip_rec(NodeId f, std::uint32_t v) {
  if (is_terminal(f) || var(f) > v)
    return f;
  if (var(f) == v)
    return make(v, high(f), low(f));
  NodeId r;
  if (cache_lookup(Op::Flip, f, v, r))
    return r;
  r = make(var(f), flip_rec(low(f), v), flip_rec(high(f), v));
  cache_store(Op::Flip, f, v, r);
  return r;
}

std::uint64_t Manager::sat_count(NodeId f) {
  if (num_vars_ > 63)
    throw std::overflow_error("exact state counting is limited to 63 variables");
  std::unordered_map<NodeId, std::uint64_t> memo;
  // count over variables var(g)..num_vars-1
  auto rec = [&](auto &&self, NodeId g) -> std::uint64_t {
    if (g == kFalse)
      return 0;
    if (g == kTrue)
      return 1;
    if (auto it = memo.find(g); it != memo.end())
      return it->second;
    const std::uint32_t v = var(g);
    std::uint64_t lo = self(self, low(g)) << (var(low(g)) - v - 1);
    std::uint64_t hi = self(self, high(g)) << (var(high(g)) - v - 1);
    std::uint64_t c = lo + hi;
    memo.emplace(g, c);
    return c;
  };
  return rec(rec, f) << var(f);
}

void Manager::maybe_collect() {
  if (live_nodes() < gc_threshold_)
    return;
  collect();
  if (live_nodes() * 2 > gc_threshold_)
    gc_threshold_ *= 2;
}

void Manager::collect() {
  std::vector<bool> mark(nodes_.size(), false);
  mark[kFalse] = mark[kTrue] = true;
  std::vector<NodeId> stack;
  for (NodeId id = 2; id < nodes_.size(); ++id)
    if (nodes_[id].refs > 0 && nodes_[id].var < num_vars_)
      stack.push_back(id);
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (mark[id])
      continue;
    mark[id] = true;
    stack.push_back(nodes_[id].lo);
    stack.push_back(nodes_[id].hi);
  }
  free_.clear();
  const auto dead = static_cast<std::uint32_t>(num_vars_ + 1);
  for (NodeId id = static_cast<NodeId>(nodes_.size()); id-- > 2;) {
    if (!mark[id]) {
      nodes_[id] = Node{dead, kFalse, kFalse, kNil, 0};
      free_.push_back(id);
    }
  }
  rehash(buckets_.size());
  std::fill(cache_.begin(), cache_.end(), CacheEntry{});
}

} // namespace bnctl::bdd

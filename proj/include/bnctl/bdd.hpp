#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bnctl::bdd {

using NodeId = std::uint32_t;

inline constexpr NodeId kFalse = 0;
inline constexpr NodeId kTrue = 1;

/// Reduced ordered BDD node table with a fixed variable order (variable 0 on
/// top). No complement edges.
///
/// Not thread-safe: all calls against one manager must be serialized.
/// Nodes referenced externally (see ref/deref) survive garbage collection;
/// collection only runs from maybe_collect(), never inside an operation.
class Manager {
public:
  explicit Manager(std::size_t num_vars);

  Manager(const Manager &) = delete;
  Manager &operator=(const Manager &) = delete;

  std::size_t num_vars() const noexcept { return num_vars_; }

  std::uint32_t var(NodeId f) const noexcept { return nodes_[f].var; }
  NodeId low(NodeId f) const noexcept { return nodes_[f].lo; }
  NodeId high(NodeId f) const noexcept { return nodes_[f].hi; }
  bool is_terminal(NodeId f) const noexcept { return f <= kTrue; }

  NodeId make(std::uint32_t var, NodeId lo, NodeId hi);
  NodeId literal(std::size_t var, bool value);

  NodeId apply_and(NodeId a, NodeId b);
  NodeId apply_or(NodeId a, NodeId b);
  NodeId apply_xor(NodeId a, NodeId b);
  NodeId and_not(NodeId a, NodeId b);
  NodeId negate(NodeId a);

  /// Existential abstraction of the variables in the positive cube `vars`.
  NodeId exists(NodeId f, NodeId vars);
  /// Positive cube over the given variable indices.
  NodeId cube(const std::vector<std::size_t> &vars);

  /// Swaps the two cofactors of `var`: { s with bit var toggled : s in f }.
  NodeId flip(NodeId f, std::size_t var);

  /// Number of satisfying assignments over all num_vars variables.
  /// Requires num_vars <= 63.
  std::uint64_t sat_count(NodeId f);

  void ref(NodeId f) noexcept { ++nodes_[f].refs; }
  void deref(NodeId f) noexcept { --nodes_[f].refs; }

  /// Runs a mark-and-sweep pass if the table grew past its threshold.
  void maybe_collect();
  void collect();

  std::size_t live_nodes() const noexcept { return nodes_.size() - free_.size(); }

private:
  struct Node {
    std::uint32_t var;
    NodeId lo;
    NodeId hi;
    NodeId next;       // unique-table chain
    std::uint32_t refs; // external references
  };

  enum class Op : std::uint32_t { And = 1, Or, Xor, AndNot, Not, Exists, Flip };

  struct CacheEntry {
    std::uint32_t op = 0;
    NodeId a = 0;
    NodeId b = 0;
    NodeId result = 0;
  };

  static constexpr NodeId kNil = 0xffffffffu;

  std::size_t bucket_of(std::uint32_t var, NodeId lo, NodeId hi) const noexcept;
  void rehash(std::size_t buckets);
  bool cache_lookup(Op op, NodeId a, NodeId b, NodeId &out) const noexcept;
  void cache_store(Op op, NodeId a, NodeId b, NodeId result) noexcept;
  std::size_t cache_slot(Op op, NodeId a, NodeId b) const noexcept;

  NodeId exists_rec(NodeId f, NodeId vars);
  NodeId flip_rec(NodeId f, std::uint32_t var);

  std::size_t num_vars_;
  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  std::vector<NodeId> buckets_;
  std::vector<CacheEntry> cache_;
  std::size_t gc_threshold_;
};

} // namespace bnctl::bdd

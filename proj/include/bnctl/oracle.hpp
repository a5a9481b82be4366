#pragma once

#include "bnctl/control.hpp"
#include "bnctl/model.hpp"

#include <cstdint>
#include <vector>

/// Explicit-state reference semantics for small networks. Every notion here
/// is computed by graph search over enumerated states, independently of the
/// BDD code, and serves as ground truth in tests.
namespace bnctl::oracle {

inline constexpr std::size_t kMaxNodes = 20;

/// States are encoded as integers with node i at bit i.
using StateCode = std::uint32_t;

StateCode encode(const State &s);
State decode(StateCode code, std::size_t n);

/// Ascending list of state codes.
using ExplicitSet = std::vector<StateCode>;

/// Asynchronous transition graph over all 2^n states, including selfloops.
class ExplicitGraph {
public:
  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_states() const noexcept { return successors_.size(); }
  const std::vector<StateCode> &successors(StateCode s) const { return successors_[s]; }
  const std::vector<StateCode> &predecessors(StateCode s) const {
    return predecessors_[s];
  }
  bool admissible(StateCode s) const { return admissible_[s]; }
  ExplicitSet admissible_states() const;

private:
  friend ExplicitGraph build_graph(const BooleanNetwork &, const std::vector<bool> &);

  std::size_t n_ = 0;
  std::vector<std::vector<StateCode>> successors_;
  std::vector<std::vector<StateCode>> predecessors_;
  std::vector<bool> admissible_;
};

/// Admissible mask: specified inputs hold their constant.
std::vector<bool> admissible_mask(const BooleanNetwork &bn);

/// Throws std::length_error above kMaxNodes.
ExplicitGraph build_graph(const BooleanNetwork &bn, const std::vector<bool> &admissible);
ExplicitGraph build_graph(const BooleanNetwork &bn);

/// Terminal strongly connected components of the admissible subgraph,
/// ordered by their smallest member in lexicographic bit-string order.
std::vector<ExplicitSet> attractors(const ExplicitGraph &g);

ExplicitSet weak_basin(const ExplicitGraph &g, const ExplicitSet &target);
/// States that reach `target` and no other attractor.
ExplicitSet strong_basin(const ExplicitGraph &g, const ExplicitSet &target);

/// States from which every fair path eventually enters `target`: those that
/// reach it and cannot reach, avoiding it, a terminal SCC disjoint from it.
ExplicitSet fairly_reaches(const ExplicitGraph &g, const ExplicitSet &target);

bool validate_control(const BooleanNetwork &bn, ControlMode mode,
                      const ExplicitSet &target, const Control &c);

/// All valid controls of minimum size <= k_max (empty when none exist).
std::vector<Control> brute_force_min_controls(const BooleanNetwork &bn, ControlMode mode,
                                              const ExplicitSet &target,
                                              std::size_t k_max);

/// Seeded random network: in-degree uniform in [1, max_indegree], parents
/// without replacement, uniformly random truth table over the parents.
BooleanNetwork random_network(std::uint64_t seed, std::size_t n,
                              std::size_t max_indegree = 3);

ExplicitSet to_explicit(const std::vector<State> &states);

} // namespace bnctl::oracle

#pragma once

#include "bnctl/model.hpp"
#include "bnctl/symbolic.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace bnctl {

enum class AttractorKind : std::uint8_t { Singleton, SimpleLoop, ComplexLoop };

std::string_view to_string(AttractorKind kind);

struct AttractorInfo {
  StateSet states;
  AttractorKind kind;
  std::size_t index;
};

/// States in which every specified input node holds its constant value.
StateSet admissible_space(const StateSpace &space, const BooleanNetwork &bn,
                          const InputClassification &inputs);
StateSet admissible_space(const StateSpace &space, const BooleanNetwork &bn);

StateSet forward_reach(const TransitionSystem &ts, const StateSet &from,
                       const StateSet &admissible);
StateSet backward_reach(const TransitionSystem &ts, const StateSet &to,
                        const StateSet &admissible,
                        Selfloops mode = Selfloops::Exclude);

bool is_forward_closed(const TransitionSystem &ts, const StateSet &set,
                       const StateSet &admissible);
bool is_attractor(const TransitionSystem &ts, const StateSet &set,
                  const StateSet &admissible);

AttractorKind classify_attractor(const TransitionSystem &ts, const StateSet &states);

/// Every attractor of the transition system restricted to `admissible`,
/// in detection order (the lexicographically smallest unexplored state seeds
/// each search).
std::vector<AttractorInfo> compute_attractors(const TransitionSystem &ts,
                                              const StateSet &admissible);

/// States with at least one path into `target`.
StateSet weak_basin(const TransitionSystem &ts, const StateSet &target,
                    const StateSet &admissible, Selfloops mode = Selfloops::Exclude);

/// Greatest forward-closed subset of the weak basin of a forward-closed
/// target. Throws std::invalid_argument when the target is not forward-closed
/// within `admissible`.
StateSet strong_basin(const TransitionSystem &ts, const StateSet &target,
                      const StateSet &admissible, Selfloops mode = Selfloops::Exclude);

} // namespace bnctl

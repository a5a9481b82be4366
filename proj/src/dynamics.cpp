#include "bnctl/dynamics.hpp"

#include <stdexcept>

namespace bnctl {

std::string_view to_string(AttractorKind kind) {
  switch (kind) {
  case AttractorKind::Singleton:
    return "singleton";
  case AttractorKind::SimpleLoop:
    return "simple-loop";
  case AttractorKind::ComplexLoop:
    return "complex-loop";
  }
  return "unknown";
}

StateSet admissible_space(const StateSpace &space, const BooleanNetwork &bn,
                          const InputClassification &inputs) {
  StateSet adm = space.full();
  State zero(bn.size());
  for (auto i : inputs.specified)
    adm &= space.literal(i, eval(bn.function(i), zero));
  return adm;
}

StateSet admissible_space(const StateSpace &space, const BooleanNetwork &bn) {
  return admissible_space(space, bn, classify_inputs(bn));
}

StateSet forward_reach(const TransitionSystem &ts, const StateSet &from,
                       const StateSet &admissible) {
  StateSet reached = from & admissible;
  StateSet frontier = reached;
  while (!frontier.is_empty()) {
    frontier = (ts.post(frontier, Selfloops::Exclude) & admissible) - reached;
    reached |= frontier;
  }
  return reached;
}

StateSet backward_reach(const TransitionSystem &ts, const StateSet &to,
                        const StateSet &admissible, Selfloops mode) {
  StateSet reached = to & admissible;
  StateSet frontier = reached;
  while (!frontier.is_empty()) {
    frontier = (ts.pre(frontier, mode) & admissible) - reached;
    reached |= frontier;
  }
  return reached;
}

bool is_forward_closed(const TransitionSystem &ts, const StateSet &set,
                       const StateSet &admissible) {
  return (ts.post(set, Selfloops::Exclude) & admissible).subset_of(set);
}

bool is_attractor(const TransitionSystem &ts, const StateSet &set,
                  const StateSet &admissible) {
  if (set.is_empty() || !set.subset_of(admissible) ||
      !is_forward_closed(ts, set, admissible))
    return false;
  StateSet seed = ts.space().from_state(set.pick());
  return forward_reach(ts, seed, admissible) == set &&
         set.subset_of(backward_reach(ts, seed, admissible));
}

AttractorKind classify_attractor(const TransitionSystem &ts, const StateSet &states) {
  if (ts.space().from_state(states.pick()) == states)
    return AttractorKind::Singleton;
  // in a simple loop every state has exactly one way out of itself
  if (!states.intersects(ts.branching()))
    return AttractorKind::SimpleLoop;
  return AttractorKind::ComplexLoop;
}

std::vector<AttractorInfo> compute_attractors(const TransitionSystem &ts,
                                              const StateSet &admissible) {
  std::vector<AttractorInfo> found;
  const auto &space = ts.space();
  // Always forward-closed: nothing left here can reach a found attractor.
  StateSet unexplored = admissible;
  while (!unexplored.is_empty()) {
    StateSet seed = space.from_state(unexplored.pick());
    StateSet reach = forward_reach(ts, seed, admissible);
    for (;;) {
      StateSet escapes = reach - backward_reach(ts, seed, reach);
      if (escapes.is_empty())
        break;
      // reach(t) for t in escapes is strictly smaller and excludes the seed
      seed = space.from_state(escapes.pick());
      reach = forward_reach(ts, seed, reach);
    }
    AttractorInfo info{reach, classify_attractor(ts, reach), found.size()};
    unexplored -= weak_basin(ts, reach, admissible);
    found.push_back(std::move(info));
  }
  return found;
}

StateSet weak_basin(const TransitionSystem &ts, const StateSet &target,
                    const StateSet &admissible, Selfloops mode) {
  return backward_reach(ts, target, admissible, mode);
}

StateSet strong_basin(const TransitionSystem &ts, const StateSet &target,
                      const StateSet &admissible, Selfloops mode) {
  if (!target.subset_of(admissible))
    throw std::invalid_argument("strong basin target lies outside the admissible space");
  if (!is_forward_closed(ts, target, admissible))
    throw std::invalid_argument("strong basin target is not forward-closed");
  StateSet weak = weak_basin(ts, target, admissible, mode);
  // states that can leave the weak basin are exactly those removed by the
  // iterative refinement W := W \ (pre(adm \ W) & W)
  StateSet leaking = backward_reach(ts, admissible - weak, admissible, mode);
  return admissible - leaking;
}

} // namespace bnctl

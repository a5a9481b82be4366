#pragma once

#include "bnctl/oracle.hpp"
#include "bnctl/symbolic.hpp"

#include <cstdint>

namespace testing {

inline bnctl::oracle::ExplicitSet explicit_of(const bnctl::StateSet &s) {
  return bnctl::oracle::to_explicit(s.to_states(std::size_t{1} << s.num_vars()));
}

inline bnctl::StateSet symbolic_of(const bnctl::StateSpace &space,
                                   const bnctl::oracle::ExplicitSet &codes) {
  bnctl::StateSet out = space.empty();
  for (auto c : codes)
    out |= space.from_state(bnctl::oracle::decode(c, space.num_vars()));
  return out;
}

inline bnctl::StateSet from_strings(const bnctl::StateSpace &space,
                                    std::initializer_list<const char *> states) {
  bnctl::StateSet out = space.empty();
  for (const char *s : states)
    out |= space.from_state(bnctl::State::from_string(s));
  return out;
}

} // namespace testing

#include "bnctl/control.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bnctl {

std::string_view to_string(ControlMode mode) {
  switch (mode) {
  case ControlMode::Instantaneous:
    return "itc";
  case ControlMode::Temporary:
    return "ttc";
  case ControlMode::Permanent:
    return "ptc";
  }
  return "unknown";
}

ControlMode parse_control_mode(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "itc")
    return ControlMode::Instantaneous;
  if (s == "ttc")
    return ControlMode::Temporary;
  if (s == "ptc")
    return ControlMode::Permanent;
  throw std::invalid_argument("unknown control mode '" + std::string(text) + "'");
}

NetworkAnalysis::NetworkAnalysis(BooleanNetwork bn)
    : NetworkAnalysis(bn, StateSpace(bn.size())) {}

NetworkAnalysis::NetworkAnalysis(BooleanNetwork bn, StateSpace space)
    : bn_(std::move(bn)), space_(std::move(space)), inputs_(classify_inputs(bn_)),
      ts_(space_, bn_), admissible_(admissible_space(space_, bn_, inputs_)) {}

std::vector<AttractorInfo> NetworkAnalysis::attractors() const {
  return compute_attractors(ts_, admissible_);
}

TransitionSystem NetworkAnalysis::controlled_transitions(const Control &c) const {
  return TransitionSystem(space_, controlled_network(bn_, c));
}

StateSet NetworkAnalysis::controlled_admissible(const Control &c) const {
  return apply_control_set(c, admissible_);
}

Control schema_to_control(const Schema &sch) {
  Control c;
  for (std::size_t i = 0; i < sch.size(); ++i) {
    if (sch[i] == Schema::Cell::Zero)
      c.fix(i, false);
    else if (sch[i] == Schema::Cell::One)
      c.fix(i, true);
  }
  return c;
}

bool verify_itc(const StateSet &strong, const StateSet &intermediate) {
  return intermediate.subset_of(strong);
}

bool verify_ttc(const NetworkAnalysis &na, const Control &c, const StateSet &strong,
                const StateSet &intermediate) {
  if (intermediate.subset_of(strong))
    return true;
  StateSet remaining = restrict_to_control(strong, c);
  if (remaining.is_empty())
    return false;
  TransitionSystem controlled = na.controlled_transitions(c);
  StateSet basin = strong_basin(controlled, remaining, na.controlled_admissible(c));
  return intermediate.subset_of(basin);
}

bool verify_ptc(const NetworkAnalysis &na, const Control &c, const StateSet &target,
                const StateSet &intermediate) {
  if (!target.subset_of(control_subspace(na.space(), c)))
    return false;
  TransitionSystem controlled = na.controlled_transitions(c);
  StateSet basin = strong_basin(controlled, target, na.controlled_admissible(c));
  return intermediate.subset_of(basin);
}

namespace {

void require_attractor(const NetworkAnalysis &na, const AttractorInfo &target) {
  if (!is_attractor(na.transitions(), target.states, na.admissible()))
    throw std::invalid_argument("control target is not an attractor");
}

struct Found {
  Control control;
  Provenance provenance;
};

ControlResult finish(ControlMode mode, const AttractorInfo &target,
                     std::vector<Found> found, std::size_t threshold,
                     const SearchStats &stats) {
  std::stable_sort(found.begin(), found.end(),
                   [](const Found &a, const Found &b) { return a.control < b.control; });
  ControlResult result;
  result.mode = mode;
  result.target_index = target.index;
  result.threshold = threshold;
  result.stats = stats;
  for (auto &f : found) {
    if (f.control.size() > threshold)
      continue;
    result.controls.push_back(std::move(f.control));
    result.provenance.push_back(std::move(f.provenance));
  }
  return result;
}

using Validator =
    std::function<bool(const Control &candidate, const StateSet &intermediate)>;

// Shared skeleton of the temporary and permanent searches over the weak
// basin's schema cover.
ControlResult search(const NetworkAnalysis &na, ControlMode mode,
                     const AttractorInfo &target, std::size_t threshold,
                     const StateSet &weak, const Validator &validate) {
  const auto &inputs = na.inputs();
  const auto &space = na.space();
  const std::vector<Schema> cover = schema_cover(weak);
  const std::size_t m = cover.size();

  SearchStats stats;
  stats.schemata = m;
  std::vector<bool> skip(m, false);
  std::set<Control> checked;
  std::vector<Found> found;
  auto zeta = static_cast<long long>(threshold);

  for (std::size_t i = 0; i < m; ++i) {
    if (skip[i]) {
      ++stats.skipped_schemata;
      continue;
    }
    const Control candidate = schema_to_control(cover[i]);
    Control essential;
    std::vector<Literal> reducible;
    for (const auto &l : candidate.literals()) {
      if (inputs.is_nonspecified(l.node))
        essential.fix(l.node, l.value);
      else if (!inputs.is_input(l.node))
        reducible.push_back(l);
    }
    const auto num_essential = static_cast<long long>(essential.size());
    const auto num_reducible = static_cast<long long>(reducible.size());

    bool valid = false;
    for (long long k = 0; !valid && k <= std::min(zeta - num_essential, num_reducible);
         ++k) {
      // k-subsets of the reducible literals in lexicographic index order
      std::vector<std::size_t> pick(static_cast<std::size_t>(k));
      std::iota(pick.begin(), pick.end(), std::size_t{0});
      for (;;) {
        Control c = essential;
        for (auto p : pick)
          c.fix(reducible[p].node, reducible[p].value);
        if (checked.count(c) != 0) {
          ++stats.duplicate_candidates;
        } else {
          StateSet intermediate = apply_control_set(c, na.admissible());
          const bool ok = validate(c, intermediate);
          ++stats.verifications;
          checked.insert(c);
          if (ok) {
            valid = true;
            zeta = std::min(zeta, static_cast<long long>(c.size()));
            for (std::size_t z = i + 1; z < m; ++z)
              if (!skip[z] && from_schema(space, cover[z]).subset_of(intermediate))
                skip[z] = true;
            found.push_back({std::move(c), Provenance{i, cover[i].to_string(), true}});
          }
        }
        // advance to the next combination
        std::size_t j = pick.size();
        while (j > 0 && pick[j - 1] == reducible.size() - pick.size() + j - 1)
          --j;
        if (j == 0)
          break;
        ++pick[j - 1];
        for (std::size_t t = j; t < pick.size(); ++t)
          pick[t] = pick[t - 1] + 1;
      }
    }
  }
  return finish(mode, target, std::move(found), static_cast<std::size_t>(zeta), stats);
}

} // namespace

ControlResult itc(const NetworkAnalysis &na, const AttractorInfo &target,
                  std::optional<std::size_t> threshold) {
  require_attractor(na, target);
  const auto &ts = na.transitions();
  StateSet strong = strong_basin(ts, target.states, na.admissible());
  const std::vector<Schema> cover = schema_cover(strong);

  SearchStats stats;
  stats.schemata = cover.size();
  std::size_t zeta = threshold.value_or(na.network().size());
  std::vector<Found> found;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Control c;
    const Control full = schema_to_control(cover[i]);
    for (const auto &l : full.literals())
      if (!na.inputs().is_specified(l.node))
        c.fix(l.node, l.value);
    if (c.size() > zeta)
      continue;
    zeta = std::min(zeta, c.size());
    auto same = [&](const Found &f) { return f.control == c; };
    if (std::any_of(found.begin(), found.end(), same)) {
      ++stats.duplicate_candidates;
      continue;
    }
    found.push_back({std::move(c), Provenance{i, cover[i].to_string(), false}});
  }
  return finish(ControlMode::Instantaneous, target, std::move(found), zeta, stats);
}

ControlResult ttc(const NetworkAnalysis &na, const AttractorInfo &target,
                  std::optional<std::size_t> threshold) {
  require_attractor(na, target);
  const auto &ts = na.transitions();
  StateSet strong = strong_basin(ts, target.states, na.admissible());
  StateSet weak = weak_basin(ts, target.states, na.admissible());
  return search(na, ControlMode::Temporary, target,
                threshold.value_or(na.network().size()), weak,
                [&](const Control &c, const StateSet &intermediate) {
                  return verify_ttc(na, c, strong, intermediate);
                });
}

ControlResult ptc(const NetworkAnalysis &na, const AttractorInfo &target,
                  std::optional<std::size_t> threshold) {
  require_attractor(na, target);
  StateSet weak = weak_basin(na.transitions(), target.states, na.admissible());
  return search(na, ControlMode::Permanent, target,
                threshold.value_or(na.network().size()), weak,
                [&](const Control &c, const StateSet &intermediate) {
                  return verify_ptc(na, c, target.states, intermediate);
                });
}

ControlResult compute_control(const NetworkAnalysis &na, ControlMode mode,
                              const AttractorInfo &target,
                              std::optional<std::size_t> threshold) {
  switch (mode) {
  case ControlMode::Instantaneous:
    return itc(na, target, threshold);
  case ControlMode::Temporary:
    return ttc(na, target, threshold);
  case ControlMode::Permanent:
    return ptc(na, target, threshold);
  }
  throw std::invalid_argument("unknown control mode");
}

Verdict verify_control(const NetworkAnalysis &na, ControlMode mode,
                       const AttractorInfo &target, const Control &c) {
  require_attractor(na, target);
  for (const auto &l : c.literals())
    if (l.node >= na.network().size())
      throw std::out_of_range("control references node outside the network");
  const auto &ts = na.transitions();
  StateSet intermediate = apply_control_set(c, na.admissible());
  Verdict v;
  v.intermediate_size = intermediate.count();
  switch (mode) {
  case ControlMode::Instantaneous:
    v.valid = verify_itc(strong_basin(ts, target.states, na.admissible()), intermediate);
    break;
  case ControlMode::Temporary: {
    StateSet strong = strong_basin(ts, target.states, na.admissible());
    v.release_region_size = restrict_to_control(strong, c).count();
    v.valid = verify_ttc(na, c, strong, intermediate);
    break;
  }
  case ControlMode::Permanent:
    v.valid = verify_ptc(na, c, target.states, intermediate);
    break;
  }
  return v;
}

} // namespace bnctl

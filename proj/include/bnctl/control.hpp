#pragma once

#include "bnctl/dynamics.hpp"
#include "bnctl/model.hpp"
#include "bnctl/symbolic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bnctl {

enum class ControlMode : std::uint8_t { Instantaneous, Temporary, Permanent };

std::string_view to_string(ControlMode mode);
/// Accepts "itc", "ttc", "ptc" (case-insensitive).
ControlMode parse_control_mode(std::string_view text);

/// A network together with its symbolic universe, transition system,
/// input classification and admissible state space.
class NetworkAnalysis {
public:
  explicit NetworkAnalysis(BooleanNetwork bn);
  NetworkAnalysis(BooleanNetwork bn, StateSpace space);

  const BooleanNetwork &network() const noexcept { return bn_; }
  const StateSpace &space() const noexcept { return space_; }
  const TransitionSystem &transitions() const noexcept { return ts_; }
  const InputClassification &inputs() const noexcept { return inputs_; }
  const StateSet &admissible() const noexcept { return admissible_; }

  std::vector<AttractorInfo> attractors() const;

  /// Controlled network BN|C over the same universe.
  TransitionSystem controlled_transitions(const Control &c) const;
  /// State space of BN|C: the image of the admissible space under c.
  StateSet controlled_admissible(const Control &c) const;

private:
  BooleanNetwork bn_;
  StateSpace space_;
  InputClassification inputs_;
  TransitionSystem ts_;
  StateSet admissible_;
};

Control schema_to_control(const Schema &sch);

struct Provenance {
  std::size_t schema_index = 0;  // position in the schema cover
  std::string schema;            // e.g. "0**"
  bool verified = false;         // passed a TTC/PTC verification (ITC: false)
};

struct SearchStats {
  std::size_t schemata = 0;
  std::size_t skipped_schemata = 0;
  std::size_t verifications = 0;
  std::size_t duplicate_candidates = 0;
};

struct ControlResult {
  ControlMode mode = ControlMode::Instantaneous;
  std::size_t target_index = 0;
  std::vector<Control> controls;     // ordered by (size, literals)
  std::vector<Provenance> provenance; // parallel to controls
  std::size_t threshold = 0;         // zeta at completion
  SearchStats stats;
};

/// Runs itc/ttc/ptc by mode. `threshold` defaults to the node count.
ControlResult compute_control(const NetworkAnalysis &na, ControlMode mode,
                              const AttractorInfo &target,
                              std::optional<std::size_t> threshold = std::nullopt);

ControlResult itc(const NetworkAnalysis &na, const AttractorInfo &target,
                  std::optional<std::size_t> threshold = std::nullopt);
ControlResult ttc(const NetworkAnalysis &na, const AttractorInfo &target,
                  std::optional<std::size_t> threshold = std::nullopt);
ControlResult ptc(const NetworkAnalysis &na, const AttractorInfo &target,
                  std::optional<std::size_t> threshold = std::nullopt);

/// Temporary control check. `strong` is the target's strong basin in the
/// uncontrolled system and `intermediate` = apply_control_set(c, admissible).
bool verify_ttc(const NetworkAnalysis &na, const Control &c, const StateSet &strong,
                const StateSet &intermediate);

/// Permanent control check: the target survives the fixation and all
/// intermediate states lie in its strong basin under control.
bool verify_ptc(const NetworkAnalysis &na, const Control &c, const StateSet &target,
                const StateSet &intermediate);

/// ITC condition: every intermediate state lies in the strong basin.
bool verify_itc(const StateSet &strong, const StateSet &intermediate);

struct Verdict {
  bool valid = false;
  std::uint64_t intermediate_size = 0;
  std::optional<std::uint64_t> release_region_size; // TTC only: |SB & S|_C|
};

/// One-shot validation of a user-supplied control against a target attractor.
Verdict verify_control(const NetworkAnalysis &na, ControlMode mode,
                       const AttractorInfo &target, const Control &c);

} // namespace bnctl

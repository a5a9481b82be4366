#pragma once

#include "bnctl/control.hpp"
#include "bnctl/dynamics.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bnctl::report {

using Json = nlohmann::ordered_json;

/// Machine-readable result of one CLI command. Node names, never indices,
/// appear in user-facing fields.
struct Report {
  Json model;
  std::string command;
  Json params = Json::object();
  Json attractors = Json::array();
  Json results = Json::array();
  double timing_ms = 0.0;
};

Json to_json(const Report &r);
/// Same as to_json with timing_ms zeroed; used for determinism checks.
Json to_json_untimed(const Report &r);
std::string render_text(const Report &r);

Json model_json(const std::string &name, const BooleanNetwork &bn);
Json attractor_json(const NetworkAnalysis &na, const AttractorInfo &a, bool with_basins);
Json control_json(const BooleanNetwork &bn, const Control &c);
Json control_result_json(const BooleanNetwork &bn, const ControlResult &r);

/// Resolves "#k" (detection ordinal), a pattern such as "000" or "0*1", or a
/// literal list such as "x1=0,x2=0" to exactly one attractor.
/// Throws std::invalid_argument when zero or several attractors match.
std::size_t select_target(const NetworkAnalysis &na,
                          const std::vector<AttractorInfo> &attractors,
                          std::string_view selector);

Report attractors_report(const std::string &model_name, const NetworkAnalysis &na);

struct ControlRequest {
  ControlMode mode = ControlMode::Temporary;
  std::string target;  // ignored when all_targets
  std::optional<std::size_t> threshold;
  bool all_targets = false;
  unsigned jobs = 1;
};

Report control_report(const std::string &model_name, const NetworkAnalysis &na,
                      const ControlRequest &req);

Report verify_report(const std::string &model_name, const NetworkAnalysis &na,
                     ControlMode mode, std::string_view target,
                     std::string_view control_literals);

} // namespace bnctl::report

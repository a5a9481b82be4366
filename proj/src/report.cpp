#include "bnctl/report.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace bnctl::report {

Json to_json(const Report &r) {
  Json j;
  j["model"] = r.model;
  j["command"] = r.command;
  j["params"] = r.params;
  j["attractors"] = r.attractors;
  j["results"] = r.results;
  j["timing_ms"] = r.timing_ms;
  return j;
}

Json to_json_untimed(const Report &r) {
  Json j = to_json(r);
  j["timing_ms"] = 0.0;
  return j;
}

Json model_json(const std::string &name, const BooleanNetwork &bn) {
  Json j;
  j["name"] = name;
  j["n"] = bn.size();
  j["nodes"] = bn.names();
  return j;
}

Json attractor_json(const NetworkAnalysis &na, const AttractorInfo &a, bool with_basins) {
  Json j;
  j["index"] = a.index;
  j["kind"] = std::string(to_string(a.kind));
  j["size"] = a.states.count();
  j["witness"] = a.states.pick().to_string();
  Schema cube = largest_cube(a.states);
  if (from_schema(na.space(), cube) == a.states)
    j["schema"] = cube.to_string();
  else
    j["schema"] = nullptr;
  if (with_basins) {
    const auto &ts = na.transitions();
    j["weak_basin_size"] = weak_basin(ts, a.states, na.admissible()).count();
    j["strong_basin_size"] = strong_basin(ts, a.states, na.admissible()).count();
  }
  return j;
}

Json control_json(const BooleanNetwork &bn, const Control &c) {
  Json arr = Json::array();
  for (const auto &l : c.literals())
    arr.push_back(Json{{"node", bn.name(l.node)}, {"value", l.value ? 1 : 0}});
  return arr;
}

Json control_result_json(const BooleanNetwork &bn, const ControlResult &r) {
  Json j;
  j["target"] = r.target_index;
  j["mode"] = std::string(to_string(r.mode));
  j["threshold"] = r.threshold;
  Json controls = Json::array();
  Json provenance = Json::array();
  for (std::size_t i = 0; i < r.controls.size(); ++i) {
    controls.push_back(control_json(bn, r.controls[i]));
    const auto &p = r.provenance[i];
    provenance.push_back(Json{{"size", r.controls[i].size()},
                              {"schema_index", p.schema_index},
                              {"schema", p.schema},
                              {"verified", p.verified}});
  }
  j["controls"] = std::move(controls);
  j["provenance"] = std::move(provenance);
  j["stats"] = Json{{"schemata", r.stats.schemata},
                    {"skipped_schemata", r.stats.skipped_schemata},
                    {"verifications", r.stats.verifications},
                    {"duplicate_candidates", r.stats.duplicate_candidates}};
  return j;
}

std::size_t select_target(const NetworkAnalysis &na,
                          const std::vector<AttractorInfo> &attractors,
                          std::string_view selector) {
  if (selector.empty())
    throw std::invalid_argument("empty target selector");
  if (selector.front() == '#') {
    std::size_t idx = 0;
    std::string digits(selector.substr(1));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw std::invalid_argument("malformed target index '" + std::string(selector) + "'");
    idx = std::stoul(digits);
    if (idx >= attractors.size())
      throw std::invalid_argument("target index " + digits + " out of range (" +
                                  std::to_string(attractors.size()) + " attractors)");
    return idx;
  }
  StateSet pattern = na.space().full();
  if (selector.find('=') != std::string_view::npos) {
    pattern = control_subspace(na.space(), parse_control(na.network(), selector));
  } else {
    if (selector.size() != na.network().size())
      throw std::invalid_argument("target pattern '" + std::string(selector) +
                                  "' must have one character per node");
    pattern = from_schema(na.space(), Schema::from_string(selector));
  }
  std::vector<std::size_t> matches;
  for (const auto &a : attractors)
    if (a.states.intersects(pattern))
      matches.push_back(a.index);
  if (matches.empty())
    throw std::invalid_argument("target selector '" + std::string(selector) +
                                "' matches no attractor");
  if (matches.size() > 1)
    throw std::invalid_argument("target selector '" + std::string(selector) +
                                "' is ambiguous: matches " +
                                std::to_string(matches.size()) + " attractors");
  return matches.front();
}

Report attractors_report(const std::string &model_name, const NetworkAnalysis &na) {
  Report r;
  r.model = model_json(model_name, na.network());
  r.command = "attractors";
  for (const auto &a : na.attractors())
    r.attractors.push_back(attractor_json(na, a, true));
  return r;
}

Report control_report(const std::string &model_name, const NetworkAnalysis &na,
                      const ControlRequest &req) {
  Report r;
  r.model = model_json(model_name, na.network());
  r.command = "control";
  const auto atts = na.attractors();
  r.params["mode"] = std::string(to_string(req.mode));
  r.params["target"] = req.all_targets ? Json(nullptr) : Json(req.target);
  r.params["threshold"] = req.threshold.value_or(na.network().size());
  r.params["all_targets"] = req.all_targets;
  for (const auto &a : atts)
    r.attractors.push_back(attractor_json(na, a, false));

  std::vector<std::size_t> targets;
  if (req.all_targets) {
    for (std::size_t i = 0; i < atts.size(); ++i)
      targets.push_back(i);
  } else {
    targets.push_back(select_target(na, atts, req.target));
  }

  std::vector<Json> results(targets.size());
  if (req.jobs <= 1 || targets.size() <= 1) {
    for (std::size_t t = 0; t < targets.size(); ++t)
      results[t] = control_result_json(
          na.network(), compute_control(na, req.mode, atts[targets[t]], req.threshold));
  } else {
    // One universe per target; results are collected in target order.
    auto run_one = [&](std::size_t t) {
      NetworkAnalysis local(na.network());
      auto local_atts = local.attractors();
      return control_result_json(
          local.network(),
          compute_control(local, req.mode, local_atts.at(targets[t]), req.threshold));
    };
    std::size_t next = 0;
    while (next < targets.size()) {
      std::vector<std::future<Json>> batch;
      for (unsigned w = 0; w < req.jobs && next < targets.size(); ++w, ++next)
        batch.push_back(std::async(std::launch::async, run_one, next));
      std::size_t base = next - batch.size();
      for (std::size_t b = 0; b < batch.size(); ++b)
        results[base + b] = batch[b].get();
    }
  }
  for (auto &j : results)
    r.results.push_back(std::move(j));
  return r;
}

Report verify_report(const std::string &model_name, const NetworkAnalysis &na,
                     ControlMode mode, std::string_view target,
                     std::string_view control_literals) {
  Report r;
  r.model = model_json(model_name, na.network());
  r.command = "verify";
  const Control c = parse_control(na.network(), control_literals);
  const auto atts = na.attractors();
  const std::size_t idx = select_target(na, atts, target);
  r.params["mode"] = std::string(to_string(mode));
  r.params["target"] = std::string(target);
  r.params["control"] = control_json(na.network(), c);
  for (const auto &a : atts)
    r.attractors.push_back(attractor_json(na, a, false));
  Verdict v = verify_control(na, mode, atts[idx], c);
  Json j;
  j["target"] = idx;
  j["mode"] = std::string(to_string(mode));
  j["control"] = control_json(na.network(), c);
  j["valid"] = v.valid;
  j["intermediate_size"] = v.intermediate_size;
  if (v.release_region_size)
    j["release_region_size"] = *v.release_region_size;
  r.results.push_back(std::move(j));
  return r;
}

namespace {

std::string literals_text(const Json &control) {
  std::ostringstream out;
  bool first = true;
  for (const auto &l : control) {
    if (!first)
      out << ", ";
    first = false;
    out << l["node"].get<std::string>() << '=' << l["value"].get<int>();
  }
  std::string s = out.str();
  return s.empty() ? "(none)" : s;
}

} // namespace

std::string render_text(const Report &r) {
  std::ostringstream out;
  out << "model " << r.model["name"].get<std::string>() << ": " << r.model["n"].get<std::size_t>()
      << " nodes\n";
  out << r.attractors.size() << " attractor(s)\n";
  for (const auto &a : r.attractors) {
    out << "  #" << a["index"].get<std::size_t>() << "  " << a["kind"].get<std::string>()
        << "  size " << a["size"].get<std::uint64_t>() << "  witness "
        << a["witness"].get<std::string>();
    if (!a["schema"].is_null())
      out << "  schema " << a["schema"].get<std::string>();
    if (a.contains("weak_basin_size"))
      out << "  weak basin " << a["weak_basin_size"].get<std::uint64_t>()
          << "  strong basin " << a["strong_basin_size"].get<std::uint64_t>();
    out << '\n';
  }
  if (r.command == "control") {
    for (const auto &res : r.results) {
      const auto &controls = res["controls"];
      out << "target #" << res["target"].get<std::size_t>() << " ("
          << res["mode"].get<std::string>() << ", threshold "
          << res["threshold"].get<std::size_t>() << "): " << controls.size()
          << " control(s)\n";
      for (std::size_t i = 0; i < controls.size(); ++i) {
        const auto &p = res["provenance"][i];
        out << "  " << literals_text(controls[i]) << "  [size "
            << p["size"].get<std::size_t>() << ", schema " << p["schema"].get<std::string>()
            << "]\n";
      }
    }
  } else if (r.command == "verify") {
    for (const auto &res : r.results) {
      out << "target #" << res["target"].get<std::size_t>() << " ("
          << res["mode"].get<std::string>() << ") control " << literals_text(res["control"])
          << ": " << (res["valid"].get<bool>() ? "valid" : "invalid");
      if (res.contains("release_region_size"))
        out << ", release region " << res["release_region_size"].get<std::uint64_t>();
      out << '\n';
    }
  }
  return out.str();
}

} // namespace bnctl::report

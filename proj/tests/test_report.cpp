#include "bnctl/report.hpp"

#include <doctest.h>

using namespace bnctl;
using namespace bnctl::report;

namespace {

const char *kExample = "targets, factors\nx1, x2\nx2, x1\nx3, x2 & x3\n";

} // namespace

TEST_CASE("target selectors") {
  NetworkAnalysis na(parse_network(kExample));
  auto atts = na.attractors();
  CHECK(select_target(na, atts, "#0") == 0);
  CHECK(select_target(na, atts, "#2") == 2);
  CHECK(select_target(na, atts, "000") == 0);
  CHECK(select_target(na, atts, "111") == 2);
  CHECK(select_target(na, atts, "x1=0") == 0);
  CHECK(select_target(na, atts, "x3=1") == 2);
  CHECK(select_target(na, atts, "0**") == 0);
  CHECK_THROWS_AS(select_target(na, atts, "#3"), std::invalid_argument);
  CHECK_THROWS_AS(select_target(na, atts, "#x"), std::invalid_argument);
  CHECK_THROWS_AS(select_target(na, atts, "11*"), std::invalid_argument);
  CHECK_THROWS_AS(select_target(na, atts, "001"), std::invalid_argument);
  CHECK_THROWS_AS(select_target(na, atts, "00"), std::invalid_argument);
  CHECK_THROWS_AS(select_target(na, atts, ""), std::invalid_argument);
}

TEST_CASE("attractor report layout") {
  NetworkAnalysis na(parse_network(kExample));
  auto j = to_json(attractors_report("example", na));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"model", "command", "params", "attractors",
                                         "results", "timing_ms"});
  CHECK(j["model"]["n"] == 3);
  CHECK(j["model"]["nodes"] == Json::array({"x1", "x2", "x3"}));
  REQUIRE(j["attractors"].size() == 3);
  CHECK(j["attractors"][0]["witness"] == "000");
  CHECK(j["attractors"][0]["kind"] == "singleton");
  CHECK(j["attractors"][0]["weak_basin_size"] == 6);
  CHECK(j["attractors"][0]["strong_basin_size"] == 2);
}

TEST_CASE("control report uses node names") {
  NetworkAnalysis na(parse_network(kExample));
  ControlRequest req;
  req.mode = ControlMode::Instantaneous;
  req.target = "000";
  auto j = to_json(control_report("example", na, req));
  REQUIRE(j["results"].size() == 1);
  const auto &res = j["results"][0];
  CHECK(res["mode"] == "itc");
  CHECK(res["controls"] ==
        Json::parse(R"([[{"node":"x1","value":0},{"node":"x2","value":0}]])"));
  CHECK(res["provenance"][0]["schema"] == "00*");
  auto text = render_text(control_report("example", na, req));
  CHECK(text.find("x1=0, x2=0") != std::string::npos);
}

TEST_CASE("reports are deterministic and parallel runs match sequential ones") {
  NetworkAnalysis na(parse_network(kExample));
  ControlRequest req;
  req.mode = ControlMode::Temporary;
  req.all_targets = true;
  auto a = to_json_untimed(control_report("example", na, req)).dump();
  auto b = to_json_untimed(control_report("example", NetworkAnalysis(parse_network(kExample)),
                                          req))
               .dump();
  CHECK(a == b);
  req.jobs = 3;
  CHECK(to_json_untimed(control_report("example", na, req)).dump() == a);
}

TEST_CASE("verify report") {
  NetworkAnalysis na(parse_network(kExample));
  auto j = to_json(verify_report("example", na, ControlMode::Temporary, "000", "x1=0"));
  const auto &res = j["results"][0];
  CHECK(res["valid"] == true);
  CHECK(res["intermediate_size"] == 4);
  CHECK(res["release_region_size"] == 2);
  auto p = to_json(verify_report("example", na, ControlMode::Permanent, "#0", "x3=1"));
  CHECK(p["results"][0]["valid"] == false);
  CHECK_FALSE(p["results"][0].contains("release_region_size"));
  CHECK_THROWS_AS(verify_report("example", na, ControlMode::Permanent, "#0", "x1=0,x1=1"),
                  std::invalid_argument);
}

#include "bnctl/control.hpp"
#include "bnctl/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace bnctl;
using testing::explicit_of;

namespace {

const char *kExample = "targets, factors\nx1, x2\nx2, x1\nx3, x2 & x3\n";

std::vector<std::string> formatted(const BooleanNetwork &bn, const ControlResult &r) {
  std::vector<std::string> out;
  for (const auto &c : r.controls)
    out.push_back(format_control(bn, c));
  return out;
}

using Strings = std::vector<std::string>;

} // namespace

TEST_CASE("schema_to_control") {
  CHECK(schema_to_control(Schema::from_string("00*")) == Control{{{0, false}, {1, false}}});
  CHECK(schema_to_control(Schema::from_string("0**")) == Control{{{0, false}}});
  CHECK(schema_to_control(Schema::from_string("***")).empty());
  CHECK(schema_to_control(Schema::from_string("1*0")).one_set() ==
        std::vector<std::size_t>{0});
}

TEST_CASE("control modes") {
  CHECK(parse_control_mode("TTC") == ControlMode::Temporary);
  CHECK(to_string(ControlMode::Permanent) == "ptc");
  CHECK_THROWS_AS(parse_control_mode("stc"), std::invalid_argument);
}

TEST_CASE("example: instantaneous control") {
  NetworkAnalysis na(parse_network(kExample));
  auto atts = na.attractors();
  auto r = itc(na, atts[0]);
  CHECK(formatted(na.network(), r) == Strings{"x1=0, x2=0"});
  CHECK(r.threshold == 2);
  CHECK(r.provenance[0].schema == "00*");
  CHECK(itc(na, atts[0], 1).controls.empty());
}

TEST_CASE("example: temporary and permanent control") {
  NetworkAnalysis na(parse_network(kExample));
  auto atts = na.attractors();
  const auto &bn = na.network();
  auto target = oracle::to_explicit(atts[0].states.to_states(8));
  for (auto mode : {ControlMode::Temporary, ControlMode::Permanent}) {
    CAPTURE(to_string(mode));
    auto r = compute_control(na, mode, atts[0]);
    // "10*" contributes {x2=0}, which is as small as {x1=0} and also valid
    CHECK(formatted(bn, r) == Strings{"x1=0", "x2=0"});
    CHECK(r.threshold == 1);
    REQUIRE(r.provenance.size() == 2);
    CHECK(r.provenance[0].schema == "0**");
    CHECK(r.provenance[1].schema == "10*");
    CHECK(r.provenance[0].verified);
    for (const auto &c : r.controls)
      CHECK(oracle::validate_control(bn, mode, target, c));
    CHECK(oracle::brute_force_min_controls(bn, mode, target, 2) == r.controls);
  }
}

TEST_CASE("example: verification") {
  NetworkAnalysis na(parse_network(kExample));
  auto atts = na.attractors();
  const auto &bn = na.network();
  auto strong = strong_basin(na.transitions(), atts[0].states, na.admissible());
  auto check_ttc = [&](const char *lits) {
    auto c = parse_control(bn, lits);
    return verify_ttc(na, c, strong, apply_control_set(c, na.admissible()));
  };
  CHECK(check_ttc("x1=0"));
  CHECK_FALSE(check_ttc(""));
  CHECK_FALSE(check_ttc("x1=1"));  // release region empty
  CHECK(verify_ptc(na, parse_control(bn, "x1=0"), atts[0].states,
                   apply_control_set(parse_control(bn, "x1=0"), na.admissible())));
  auto v = verify_control(na, ControlMode::Permanent, atts[0], parse_control(bn, "x3=1"));
  CHECK_FALSE(v.valid);
  auto all = verify_control(na, ControlMode::Permanent, atts[0],
                            parse_control(bn, "x1=0, x2=0, x3=0"));
  CHECK(all.valid);
  CHECK(all.intermediate_size == 1);
  auto t = verify_control(na, ControlMode::Temporary, atts[0], parse_control(bn, "x1=0"));
  CHECK(t.valid);
  CHECK(t.intermediate_size == 4);
  REQUIRE(t.release_region_size);
  CHECK(*t.release_region_size == 2);
  CHECK_FALSE(verify_control(na, ControlMode::Instantaneous, atts[0],
                             parse_control(bn, "x1=0"))
                  .valid);
  CHECK(verify_control(na, ControlMode::Instantaneous, atts[0],
                       parse_control(bn, "x1=0, x2=0"))
            .valid);
}

TEST_CASE("targets must be attractors") {
  NetworkAnalysis na(parse_network(kExample));
  AttractorInfo fake{na.space().from_state(State::from_string("001")),
                     AttractorKind::Singleton, 0};
  CHECK_THROWS_AS(ttc(na, fake), std::invalid_argument);
  CHECK_THROWS_AS(itc(na, fake), std::invalid_argument);
}

TEST_CASE("single-attractor network: the empty control suffices") {
  NetworkAnalysis na(parse_network("targets, factors\na, !b\nb, 0\nc, a\n"));
  auto atts = na.attractors();
  REQUIRE(atts.size() == 1);
  for (auto mode : {ControlMode::Instantaneous, ControlMode::Temporary,
                    ControlMode::Permanent}) {
    auto r = compute_control(na, mode, atts[0]);
    REQUIRE(r.controls.size() == 1);
    CHECK(r.controls[0].empty());
    CHECK(r.threshold == 0);
  }
}

TEST_CASE("non-specified inputs are kept in every candidate") {
  // u is a free input; y copies u and z copies y
  NetworkAnalysis na(parse_network("targets, factors\nu, u\ny, u\nz, y\n"));
  auto atts = na.attractors();
  REQUIRE(atts.size() == 2);
  for (auto mode : {ControlMode::Temporary, ControlMode::Permanent}) {
    auto r = compute_control(na, mode, atts[1]);
    REQUIRE_FALSE(r.controls.empty());
    for (const auto &c : r.controls)
      CHECK(c.value_of(0) == std::optional<bool>(true));
  }
}

TEST_CASE("specified inputs never appear in controls") {
  NetworkAnalysis na(parse_network("targets, factors\nk, 1\na, k & b\nb, a\n"));
  auto atts = na.attractors();
  for (const auto &a : atts)
    for (auto mode : {ControlMode::Instantaneous, ControlMode::Temporary,
                      ControlMode::Permanent})
      for (const auto &c : compute_control(na, mode, a).controls)
        CHECK_FALSE(c.fixes(0));
}

TEST_CASE("property: returned controls are valid, ordered and within the threshold") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 3 + seed % 6;
    auto bn = oracle::random_network(seed, n);
    NetworkAnalysis na(bn);
    auto atts = na.attractors();
    for (const auto &a : atts) {
      auto target = explicit_of(a.states);
      auto strong = strong_basin(na.transitions(), a.states, na.admissible());
      for (auto mode : {ControlMode::Instantaneous, ControlMode::Temporary,
                        ControlMode::Permanent}) {
        CAPTURE(seed);
        CAPTURE(to_string(mode));
        auto r = compute_control(na, mode, a);
        CHECK(r.controls.size() == r.provenance.size());
        for (std::size_t i = 0; i < r.controls.size(); ++i) {
          const auto &c = r.controls[i];
          CHECK(c.size() <= r.threshold);
          if (i > 0)
            CHECK(r.controls[i - 1] < c);
          CHECK(oracle::validate_control(bn, mode, target, c));
          CHECK(verify_control(na, mode, a, c).valid);
          if (mode == ControlMode::Instantaneous) {
            auto cube = from_schema(na.space(), Schema::from_string(r.provenance[i].schema));
            CHECK(cube.subset_of(strong));
            const double exact = static_cast<double>(n) - std::log2(static_cast<double>(cube.count()));
            CHECK(static_cast<double>(schema_to_control(Schema::from_string(r.provenance[i].schema)).size()) == exact);
          }
        }
      }
    }
  }
}

TEST_CASE("a smaller threshold never yields larger controls") {
  for (std::uint64_t seed = 70; seed <= 90; ++seed) {
    auto bn = oracle::random_network(seed, 6);
    NetworkAnalysis na(bn);
    auto atts = na.attractors();
    for (auto mode : {ControlMode::Temporary, ControlMode::Permanent}) {
      for (std::size_t z = 0; z <= 3; ++z) {
        auto bounded = compute_control(na, mode, atts[0], z);
        CHECK(bounded.threshold <= z);
        for (const auto &c : bounded.controls) {
          CHECK(c.size() <= z);
          CHECK(oracle::validate_control(bn, mode, explicit_of(atts[0].states), c));
        }
      }
    }
  }
}

TEST_CASE("repeated candidates are counted, not reverified") {
  NetworkAnalysis na(parse_network(kExample));
  auto atts = na.attractors();
  auto r = ttc(na, atts[0]);
  // schema "10*" starts again from the empty control, already checked for "0**"
  CHECK(r.stats.schemata == 2);
  CHECK(r.stats.duplicate_candidates == 1);
  CHECK(r.stats.verifications == 4);
}

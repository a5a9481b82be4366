#include "bnctl/model.hpp"
#include "bnctl/oracle.hpp"
#include "bnctl/symbolic.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace bnctl;
using testing::explicit_of;
using testing::from_strings;
using testing::symbolic_of;

namespace {

const char *kExample = "targets, factors\nx1, x2\nx2, x1\nx3, x2 & x3\n";

std::vector<std::string> strings_of(const StateSet &s) {
  std::vector<std::string> out;
  for (const auto &st : s.to_states(1024))
    out.push_back(st.to_string());
  return out;
}

// Does cube `sch` lie inside the set given by a membership table?
bool cube_inside(const Schema &sch, const std::vector<bool> &member) {
  const std::size_t n = sch.size();
  for (std::uint32_t code = 0; code < member.size(); ++code) {
    bool in_cube = true;
    for (std::size_t i = 0; i < n && in_cube; ++i) {
      bool bit = (code >> i) & 1u;
      if (sch[i] == Schema::Cell::Zero && bit)
        in_cube = false;
      if (sch[i] == Schema::Cell::One && !bit)
        in_cube = false;
    }
    if (in_cube && !member[code])
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("basic set algebra") {
  StateSpace sp(3);
  auto a = sp.literal(0, false);
  auto b = sp.literal(2, true);
  CHECK(a.count() == 4);
  CHECK((a & b).count() == 2);
  CHECK((a | b).count() == 6);
  CHECK((a - b).count() == 2);
  CHECK((~a) == sp.literal(0, true));
  CHECK(sp.full().is_full());
  CHECK(sp.empty().is_empty());
  CHECK((a & ~a).is_empty());
  CHECK((a & b).subset_of(a));
  CHECK_FALSE(a.subset_of(b));
  CHECK(a.intersects(b));
  CHECK(a.contains(State::from_string("011")));
  CHECK_FALSE(a.contains(State::from_string("100")));
  CHECK(a.exists({0}).is_full());
  CHECK(sp.from_state(State::from_string("001")).flip(2) ==
        sp.from_state(State::from_string("000")));
}

TEST_CASE("sets from different universes do not mix") {
  StateSpace a(3), b(3);
  CHECK_THROWS_AS((void)(a.full() & b.full()), std::invalid_argument);
}

TEST_CASE("enumeration is lexicographic and bounded") {
  StateSpace sp(3);
  auto s = from_strings(sp, {"110", "001", "000", "100"});
  CHECK(strings_of(s) == std::vector<std::string>{"000", "001", "100", "110"});
  CHECK(s.pick().to_string() == "000");
  CHECK_THROWS_AS(s.to_states(3), EnumerationOverflow);
  CHECK(sp.empty().to_states(0).empty());
}

TEST_CASE("count handles wide spaces") {
  StateSpace sp(40);
  CHECK(sp.full().count() == (std::uint64_t{1} << 40));
  CHECK(sp.literal(39, true).count() == (std::uint64_t{1} << 39));
}

TEST_CASE("schemata") {
  StateSpace sp(3);
  auto sch = Schema::from_string("0*1");
  CHECK(sch.to_string() == "0*1");
  CHECK(Schema::from_string("0-1") == sch);
  CHECK(sch.zero_set() == std::vector<std::size_t>{0});
  CHECK(sch.one_set() == std::vector<std::size_t>{2});
  CHECK(sch.dont_care() == std::vector<std::size_t>{1});
  CHECK(sch.support_size() == 2);
  CHECK(strings_of(from_schema(sp, sch)) == std::vector<std::string>{"001", "011"});
  CHECK(from_schema(sp, Schema::from_string("***")).is_full());
  CHECK_THROWS_AS(Schema::from_string("0x1"), std::invalid_argument);
}

TEST_CASE("asynchronous post and pre on the example") {
  auto bn = parse_network(kExample);
  StateSpace sp(3);
  TransitionSystem ts(sp, bn);
  auto one = [&](const char *s) { return sp.from_state(State::from_string(s)); };

  CHECK(ts.post(one("110")) == one("110"));
  CHECK(strings_of(ts.post(one("001"))) == std::vector<std::string>{"000", "001"});
  CHECK(strings_of(ts.post(one("001"), Selfloops::Exclude)) ==
        std::vector<std::string>{"000"});
  CHECK(strings_of(ts.pre(one("000"), Selfloops::Exclude)) ==
        std::vector<std::string>{"001", "010", "100"});
  CHECK(strings_of(ts.pre(one("000"))) ==
        std::vector<std::string>{"000", "001", "010", "100"});
  // every node is enabled at 101, so it has three successors and no selfloop
  CHECK(strings_of(ts.post(one("101"))) == std::vector<std::string>{"001", "100", "111"});
  CHECK_FALSE(ts.has_selfloop().contains(State::from_string("101")));
  CHECK(ts.branching().contains(State::from_string("101")));
  CHECK_FALSE(ts.branching().contains(State::from_string("001")));
}

TEST_CASE("controls on state sets") {
  StateSpace sp(3);
  Control c;
  c.fix(1, false);
  CHECK(strings_of(control_subspace(sp, c)) ==
        std::vector<std::string>{"000", "001", "100", "101"});
  auto s = from_strings(sp, {"110", "011", "000"});
  CHECK(strings_of(restrict_to_control(s, c)) == std::vector<std::string>{"000"});
  CHECK(strings_of(apply_control_set(c, s)) == std::vector<std::string>{"000", "001", "100"});
  CHECK(apply_control_set(Control{}, s) == s);
  CHECK(apply_control_set(c, sp.full()) == control_subspace(sp, c));
}

TEST_CASE("largest_cube and schema_cover on the example basins") {
  StateSpace sp(3);
  auto strong = from_strings(sp, {"000", "001"});
  CHECK(largest_cube(strong).to_string() == "00*");
  auto weak = from_strings(sp, {"000", "001", "010", "011", "100", "101"});
  auto cover = schema_cover(weak);
  REQUIRE(cover.size() == 2);
  CHECK(cover[0].to_string() == "0**");
  CHECK(cover[1].to_string() == "10*");
  CHECK_THROWS_AS(largest_cube(sp.empty()), std::invalid_argument);
  CHECK(largest_cube(sp.full()).to_string() == "***");
}

TEST_CASE("property: largest_cube is maximal, exhaustively for small sets") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 6; ++n) {
    StateSpace sp(n);
    const std::size_t trials = n <= 3 ? (std::size_t{1} << (std::size_t{1} << n)) - 1 : 150;
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<bool> member(std::size_t{1} << n);
      if (n <= 3) {
        for (std::size_t code = 0; code < member.size(); ++code)
          member[code] = ((t + 1) >> code) & 1u;
      } else {
        for (std::size_t code = 0; code < member.size(); ++code)
          member[code] = rng() % 3 != 0;
        member[rng() % member.size()] = true;
      }
      oracle::ExplicitSet codes;
      for (std::uint32_t code = 0; code < member.size(); ++code)
        if (member[code])
          codes.push_back(code);
      auto set = symbolic_of(sp, codes);
      auto cube = largest_cube(set);
      REQUIRE(cube.size() == n);
      CHECK(from_schema(sp, cube).subset_of(set));

      // no cube with more don't-cares fits
      std::size_t best = 0;
      std::size_t patterns = 1;
      for (std::size_t i = 0; i < n; ++i)
        patterns *= 3;
      for (std::size_t p = 0; p < patterns; ++p) {
        std::vector<Schema::Cell> cells(n);
        std::size_t q = p, stars = 0;
        for (std::size_t i = 0; i < n; ++i, q /= 3) {
          cells[i] = static_cast<Schema::Cell>(q % 3);
          stars += cells[i] == Schema::Cell::DontCare;
        }
        if (stars > best && cube_inside(Schema(cells), member))
          best = stars;
      }
      CHECK(cube.dont_care().size() == best);
    }
  }
}

TEST_CASE("property: schema_cover is an exact disjoint partition") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 7;
    StateSpace sp(n);
    oracle::ExplicitSet codes;
    for (std::uint32_t code = 0; code < (1u << n); ++code)
      if (rng() & 1)
        codes.push_back(code);
    auto set = symbolic_of(sp, codes);
    auto cover = schema_cover(set);
    StateSet seen = sp.empty();
    std::size_t prev_stars = n + 1;
    for (const auto &sch : cover) {
      auto cube = from_schema(sp, sch);
      CHECK_FALSE(cube.intersects(seen));
      CHECK(cube.subset_of(set));
      CHECK(sch.dont_care().size() <= prev_stars);
      prev_stars = sch.dont_care().size();
      seen |= cube;
    }
    CHECK(seen == set);
    CHECK(explicit_of(seen) == codes);
  }
}

TEST_CASE("property: post and pre agree with the explicit graph") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 9;
    auto bn = oracle::random_network(seed, n);
    auto g = oracle::build_graph(bn);
    StateSpace sp(n);
    TransitionSystem ts(sp, bn);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 5; ++t) {
      oracle::ExplicitSet codes;
      for (std::uint32_t code = 0; code < (1u << n); ++code)
        if (rng() % 5 == 0)
          codes.push_back(code);
      auto set = symbolic_of(sp, codes);
      std::vector<bool> post(1u << n), pre(1u << n);
      for (auto s : codes) {
        for (auto v : g.successors(s))
          post[v] = true;
        for (auto u : g.predecessors(s))
          pre[u] = true;
      }
      oracle::ExplicitSet post_codes, pre_codes;
      for (std::uint32_t code = 0; code < (1u << n); ++code) {
        if (post[code])
          post_codes.push_back(code);
        if (pre[code])
          pre_codes.push_back(code);
      }
      CHECK(explicit_of(ts.post(set)) == post_codes);
      CHECK(explicit_of(ts.pre(set)) == pre_codes);
    }
    // adjointness: post(A) meets B iff A meets pre(B)
    for (int t = 0; t < 10; ++t) {
      oracle::ExplicitSet a, b;
      for (std::uint32_t code = 0; code < (1u << n); ++code) {
        if (rng() % 7 == 0)
          a.push_back(code);
        if (rng() % 7 == 0)
          b.push_back(code);
      }
      auto sa = symbolic_of(sp, a), sb = symbolic_of(sp, b);
      CHECK(ts.post(sa).intersects(sb) == sa.intersects(ts.pre(sb)));
      CHECK(ts.post(sa, Selfloops::Exclude).intersects(sb) ==
            sa.intersects(ts.pre(sb, Selfloops::Exclude)));
    }
  }
}

TEST_CASE("garbage collection keeps live sets intact") {
  StateSpace sp(16);
  auto keep = sp.literal(3, true) & sp.literal(7, false);
  const auto before = keep.count();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    StateSet x = sp.empty();
    for (int j = 0; j < 20; ++j) {
      State s(16);
      for (std::size_t i = 0; i < 16; ++i)
        s.set(i, rng() & 1);
      x |= sp.from_state(s);
    }
    (void)(x & keep).count();
  }
  sp.manager().collect();
  CHECK(keep.count() == before);
  CHECK(keep == (sp.literal(3, true) - sp.literal(7, true)));
}

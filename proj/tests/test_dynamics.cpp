#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include <alcove_mcf/dynamics.hpp>

using namespace alcove_mcf;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {

const StratumSpec& stratum_by_wall(const ActionData& d, const Alcove& alc,
                                   const std::vector<StratumSpec>& strata,
                                   const std::string& label) {
  for (const auto& s : strata)
    if (s.active_walls.size() == 1 &&
        d.roots[alc.walls[s.active_walls[0]].root_index].label == label)
      return s;
  throw std::runtime_error("no stratum on wall " + label);
}

// time-to-wall for the 1-D reduction of the A2 flow on the symmetry axis:
// x = (a, 0, -a), a' = -4(cot a + cot 2a), wall at a = pi/2
double axis_hit_time_oracle(double a0) {
  auto g = [](double a) {
    const double f = -4.0 * (std::cos(a) / std::sin(a) + std::cos(2 * a) / std::sin(2 * a));
    return 1.0 / f;
  };
  const double a1 = pi / 2;
  const long n = 200000;  // Simpson; integrand vanishes smoothly at a1
  const double h = (a1 - a0) / n;
  double s = g(a0);  // g(a1) = 0
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a0 + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("interior flow hits the far wall; hit time matches a 1-D oracle") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  const double a0 = pi / 3 + 0.1;
  auto res = integrate(d, alc, {a0, 0, -a0});
  REQUIRE(res.status == FlowStatus::WallHit);
  CHECK(res.terminal[0] == Approx(pi / 2).margin(1e-6));
  CHECK(res.terminal[1] == Approx(0.0).margin(1e-6));
  CHECK(res.terminal[2] == Approx(-pi / 2).margin(1e-6));
  REQUIRE(res.terminal_walls.size() == 1);
  CHECK(d.roots[alc.walls[res.terminal_walls[0]].root_index].label == "b13");
  CHECK(res.hit_time == Approx(axis_hit_time_oracle(a0)).margin(1e-6));
  CHECK(res.samples.size() > 10);
}

TEST_CASE("flow started at the minimal point stays put") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  auto res = integrate(d, alc, {pi / 3, 0, -pi / 3});
  CHECK(res.status == FlowStatus::FixedPoint);
  CHECK(norm(sub(res.terminal, {pi / 3, 0, -pi / 3})) < 1e-10);
}

TEST_CASE("flow below the fixed point collapses toward the corner") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  const double a0 = pi / 3 - 0.1;
  auto res = integrate(d, alc, {a0, 0, -a0});
  REQUIRE(res.status == FlowStatus::WallHit);
  // the corner itself is unstable under transverse noise (which grows like
  // 1/a^2 on approach), so the flow lands on an adjacent wall right next
  // to the vertex rather than on the vertex itself
  CHECK(norm(res.terminal) < 1e-4);
  CHECK_FALSE(res.terminal_walls.empty());
}

TEST_CASE("slack decreases monotonically once the wall dominates") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  auto res = integrate(d, alc, {pi / 3 + 0.1, 0, -pi / 3 - 0.1});
  double prev = std::numeric_limits<double>::infinity();
  bool entered = false;
  for (const auto& [t, x] : res.samples) {
    const double s = alc.min_facet_slack(alc.frame.reduce(x));
    if (s < 0.1) {
      if (entered) CHECK(s < prev);
      entered = true;
      prev = s;
    }
  }
  CHECK(entered);
}

TEST_CASE("stratum flow runs to the face boundary") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  auto strata = enumerate_strata(d, alc, 1);
  const auto& edge = stratum_by_wall(d, alc, strata, "b12");

  // on x1 = x2 the field is -4 cot(3x)(1,1,-2); below x = pi/6 it points to 0
  auto res = integrate_on_stratum(d, alc, edge, {pi / 8, pi / 8, -pi / 4});
  REQUIRE(res.status == FlowStatus::WallHit);
  CHECK(norm(res.terminal) < 1e-5);

  // starting at the stratum zero x = pi/6
  auto fixed = integrate_on_stratum(d, alc, edge, {pi / 6, pi / 6, -pi / 3});
  CHECK(fixed.status == FlowStatus::FixedPoint);
  CHECK(fixed.terminal[0] == Approx(pi / 6).margin(1e-10));
}

TEST_CASE("stratum flow on the axis wall of the rank-2 example") {
  auto d = preset("supq-isotropy", {{"p", 2}, {"q", 5}});
  auto alc = build_alcove(d);
  auto strata = enumerate_strata(d, alc, 1);
  const auto& axis = stratum_by_wall(d, alc, strata, "b2");

  // stratum zero at x1 = atan(sqrt 11); sources repel, so either side runs out
  auto down = integrate_on_stratum(d, alc, axis, {1.0, 0.0});
  REQUIRE(down.status == FlowStatus::WallHit);
  CHECK(norm(down.terminal) < 1e-5);

  auto up = integrate_on_stratum(d, alc, axis, {1.4, 0.0});
  REQUIRE(up.status == FlowStatus::WallHit);
  CHECK(up.terminal[0] == Approx(pi / 2).margin(1e-5));
  CHECK(up.terminal[1] == Approx(0.0).margin(1e-9));
}

TEST_CASE("interior minimal points match the closed forms and are unique") {
  struct Case {
    std::string name;
    std::map<std::string, int> params;
    Vec expect;
  };
  const std::vector<Case> cases = {
      {"sp-isotropy", {{"n", 3}}, {pi / 3, 0, -pi / 3}},
      {"so2n-on-su2n", {{"n", 3}}, {pi / 6, 0, -pi / 6}},
      {"so2p-hermann", {{"p", 2}}, {0.5 * std::atan(std::sqrt(2.0)), 0.0}},
  };
  for (const auto& c : cases) {
    auto d = preset(c.name, c.params);
    auto alc = build_alcove(d);
    auto zeros = find_minimal(d, alc, 6);
    INFO(c.name);
    REQUIRE(zeros.size() == 1);
    CHECK(norm(sub(zeros[0].point, c.expect)) < 1e-8);
    CHECK(zeros[0].residual < 1e-10);
    CHECK(zeros[0].jacobian_divergence > 0.0);
    CHECK(zeros[0].interior);
  }
}

TEST_CASE("stratum minimal points match the arctan closed forms") {
  auto d3 = preset("supq-isotropy", {{"p", 2}, {"q", 5}});
  auto a3 = build_alcove(d3);
  auto s3 = enumerate_strata(d3, a3, 1);
  {
    const auto& diag = stratum_by_wall(d3, a3, s3, "b12");
    auto z = find_minimal_on_stratum(d3, a3, diag);
    REQUIRE(z.size() == 1);
    const double x = std::atan(2.0);
    CHECK(norm(sub(z[0].point, {x, x})) < 1e-8);
    CHECK_FALSE(z[0].interior);
  }
  {
    const auto& axis = stratum_by_wall(d3, a3, s3, "b2");
    auto z = find_minimal_on_stratum(d3, a3, axis);
    REQUIRE(z.size() == 1);
    CHECK(norm(sub(z[0].point, {std::atan(std::sqrt(11.0)), 0.0})) < 1e-8);
  }

  auto d4 = preset("supp-isotropy", {{"p", 2}});
  auto a4 = build_alcove(d4);
  auto s4 = enumerate_strata(d4, a4, 1);
  {
    const auto& diag = stratum_by_wall(d4, a4, s4, "b12");
    auto z = find_minimal_on_stratum(d4, a4, diag);
    REQUIRE(z.size() == 1);
    CHECK(norm(sub(z[0].point, {pi / 4, pi / 4})) < 1e-8);
  }

  auto d6 = preset("so2p-hermann", {{"p", 2}});
  auto a6 = build_alcove(d6);
  auto s6 = enumerate_strata(d6, a6, 1);
  {
    const auto& diag = stratum_by_wall(d6, a6, s6, "b12");
    auto z = find_minimal_on_stratum(d6, a6, diag);
    REQUIRE(z.size() == 1);
    CHECK(norm(sub(z[0].point, {pi / 12, pi / 12})) < 1e-8);
  }
}

TEST_CASE("printed minimality systems vanish at the computed zeros") {
  auto d = preset("supq-isotropy", {{"p", 2}, {"q", 5}});
  auto alc = build_alcove(d);
  auto zeros = find_minimal(d, alc, 8);
  REQUIRE(zeros.size() == 1);
  CHECK(printed::interior_residual("supq-isotropy", 5, zeros[0].point) < 1e-8);

  const double x = std::atan(2.0);
  CHECK(std::fabs(printed::sigma_residual("supq-isotropy", 1, 5, {x, x})) < 1e-12);
  CHECK(std::fabs(printed::sigma_residual("supq-isotropy", 2, 5,
                                          {std::atan(std::sqrt(11.0)), 0.0})) < 1e-12);
  CHECK(std::fabs(printed::sigma_residual("supp-isotropy", 1, 0, {pi / 4, pi / 4})) < 1e-12);
  CHECK(std::fabs(printed::sigma_residual("so2p-hermann", 1, 0,
                                          {pi / 12, pi / 12})) < 1e-12);
}

TEST_CASE("basin map covers the grid with finite outcomes") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  auto entries = basin_map(d, alc, 6);
  CHECK(entries.size() > 10);
  for (const auto& e : entries) {
    REQUIRE((e.status == FlowStatus::WallHit || e.status == FlowStatus::FixedPoint));
    if (e.status == FlowStatus::WallHit) {
      CHECK(std::isfinite(e.hit_time));
      CHECK_FALSE(e.terminal_walls.empty());
    }
  }
}

TEST_CASE("interior zero drifts toward the far corner as q grows") {
  double prev = std::numeric_limits<double>::infinity();
  for (int q = 3; q <= 12; ++q) {
    auto d = preset("supq-isotropy", {{"p", 2}, {"q", q}});
    auto alc = build_alcove(d);
    auto zeros = find_minimal(d, alc, 8);
    REQUIRE(zeros.size() == 1);
    const double dist = norm(sub(zeros[0].point, {pi / 2, pi / 2}));
    CHECK(dist < prev);
    prev = dist;
  }
}

TEST_CASE("every preset has exactly one interior minimal point") {
  const std::vector<std::pair<std::string, std::map<std::string, int>>> presets = {
      {"sp-isotropy", {{"n", 3}}},
      {"so2n-on-su2n", {{"n", 3}}},
      {"supq-isotropy", {{"p", 2}, {"q", 5}}},
      {"supp-isotropy", {{"p", 2}}},
      {"sopq-hermann", {{"p", 2}, {"q", 4}}},
      {"so2p-hermann", {{"p", 2}}}};
  for (const auto& [name, params] : presets) {
    auto d = preset(name, params);
    auto alc = build_alcove(d);
    auto zeros = find_minimal(d, alc, 8);
    INFO(name);
    CHECK(zeros.size() == 1);
  }
}

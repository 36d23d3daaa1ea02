#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>
#include <random>

#include <alcove_mcf/flowfield.hpp>

using namespace alcove_mcf;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {

const CurvatureFamily& family_for(const std::vector<CurvatureFamily>& fams,
                                  const ActionData& d, const Vec& root) {
  for (const auto& f : fams)
    if (norm(sub(d.roots[f.source_root].vector, root)) < 1e-12) return f;
  throw std::runtime_error("family not found");
}

}  // namespace

TEST_CASE("curvature family table, vertical-only case") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  Vec Y0 = {pi / 3, 0, -pi / 3};
  auto fams = families_at(d, alc, Y0);
  REQUIRE(fams.size() == 3);
  const auto& f13 = family_for(fams, d, {1, 0, -1});
  // s = beta_13(Y0) = 2pi/3: lambda = -beta/s, b = pi/s = 3/2
  CHECK(f13.b == Approx(1.5).margin(1e-14));
  CHECK(f13.m_e == 4);
  CHECK(f13.m_o == 4);
  CHECK(f13.lambda_vec[0] == Approx(-3.0 / (2 * pi)).margin(1e-14));
  CHECK(f13.lambda_vec[2] == Approx(3.0 / (2 * pi)).margin(1e-14));
}

TEST_CASE("curvature family table, horizontal-only case") {
  auto d = preset("so2p-hermann", {{"p", 2}});
  auto alc = build_alcove(d);
  Vec Y0 = {0.4, 0.1};
  auto fams = families_at(d, alc, Y0);
  const auto& f = family_for(fams, d, {2, 0});
  const double s = 0.8;
  CHECK(f.b == Approx(pi / (s + pi / 2)).margin(1e-14));
  CHECK(f.m_e == 1);
  CHECK(f.m_o == 1);
  CHECK(f.lambda_vec[0] == Approx(-2.0 / (s + pi / 2)).margin(1e-14));
}

TEST_CASE("curvature family table, dual-multiplicity case") {
  auto d = preset("sopq-hermann", {{"p", 2}, {"q", 4}});
  auto alc = build_alcove(d);
  Vec Y0 = {0.6, 0.3};
  auto fams = families_at(d, alc, Y0);
  const auto& fax = family_for(fams, d, {1, 0});
  CHECK(fax.b == Approx(pi / (2 * 0.6)).margin(1e-14));
  CHECK(fax.m_e == 2);  // vertical multiplicity on even shifts
  CHECK(fax.m_o == 2);  // q - p = 2 on both
  const auto& fpm = family_for(fams, d, {1, -1});
  CHECK(fpm.m_e == 1);
  CHECK(fpm.m_o == 1);
}

TEST_CASE("families are undefined at the boundary") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  CHECK_THROWS_AS(families_at(d, alc, {pi / 2, 0, -pi / 2}), std::invalid_argument);
  CHECK_THROWS_AS(families_at(d, alc, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("parallel spectrum basics") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  Vec Y0 = {pi / 3, 0, -pi / 3};
  auto fams = families_at(d, alc, Y0);

  // v = 0 gives an all-zero spectrum
  for (auto [ev, m] : spectrum_parallel(fams, {0, 0, 0}, {0.1, 0.0, -0.1}, 5))
    CHECK(ev == 0.0);

  // at w = 0 the j-th eigenvalue of family a is lambda_a(v)/(1 + b_a j);
  // check one entry by hand: family b13, v = b13#, j = 1
  Vec v = {1, 0, -1};
  const auto& f13 = family_for(fams, d, {1, 0, -1});
  const double expect = f13.lambda(v) / (1.0 + f13.b);
  auto spec = spectrum_parallel(fams, v, {0, 0, 0}, 3);
  bool found = false;
  for (auto [ev, m] : spec)
    if (std::fabs(ev - expect) < 1e-13 && m == 4) found = true;
  CHECK(found);

  // focal denominators throw: lambda(w) = 1 + b j exactly
  Vec w_focal = scaled(f13.lambda_vec, 1.0 / dot(f13.lambda_vec, f13.lambda_vec));
  CHECK_THROWS_WITH(spectrum_parallel(fams, v, w_focal, 3),
                    Catch::Matchers::ContainsSubstring("focal"));
}

TEST_CASE("trace vanishes at the minimal base and off the root span") {
  auto d = preset("so2n-on-su2n", {{"n", 3}});
  auto alc = build_alcove(d);
  Vec Y0 = {pi / 6, 0, -pi / 6};  // interior zero of X
  auto fams = families_at(d, alc, Y0);
  Vec zero(3, 0.0);
  for (const Vec& v : {Vec{1, 0, -1}, Vec{0, 1, -1}, Vec{0.3, -0.2, -0.1}})
    CHECK(trace_closed(fams, v, zero) == Approx(0.0).margin(1e-12));
  // v orthogonal to every root contributes nothing at any shift
  Vec ortho = {1, 1, 1};
  CHECK(trace_closed(fams, ortho, {0.05, 0.0, -0.05}) == Approx(0.0).margin(1e-12));
}

TEST_CASE("closed-form trace matches the spectral oracle") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  Vec Y0 = {pi / 3, 0, -pi / 3};
  auto fams = families_at(d, alc, Y0);
  Vec v = {0.7, -0.1, -0.6};
  Vec w = {pi / 4 - pi / 3, 0, pi / 3 - pi / 4};  // shift toward (pi/4, 0, -pi/4)
  const double closed = trace_closed(fams, v, w);
  CHECK(closed == Approx(trace_oracle(fams, v, w, 1000000)).margin(1e-6));
}

TEST_CASE("oracle truncation error is O(1/N) with a stable constant") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (const char* name : {"sp-isotropy", "sopq-hermann"}) {
    std::map<std::string, int> params =
        std::string(name) == "sp-isotropy" ? std::map<std::string, int>{{"n", 3}}
                                           : std::map<std::string, int>{{"p", 2}, {"q", 4}};
    auto d = preset(name, params);
    auto alc = build_alcove(d);
    Vec Y0 = alc.interior_point_ambient();
    auto fams = families_at(d, alc, Y0);
    for (int trial = 0; trial < 5; ++trial) {
      Vec v(d.ambient_dim()), dir(alc.frame.rank());
      for (double& c : v) c = uni(rng);
      for (double& c : dir) c = 0.1 * uni(rng);
      Vec w = sub(alc.frame.lift(add(alc.frame.reduce(Y0), dir)), Y0);
      const double closed = trace_closed(fams, v, w);
      const double C = 2.0 * 1000.0 * std::fabs(closed - trace_oracle(fams, v, w, 1000));
      for (long N : {10000L, 100000L}) {
        INFO(name << " trial " << trial << " N " << N);
        CHECK(std::fabs(closed - trace_oracle(fams, v, w, N)) <=
              std::max(C, 1e-10) / static_cast<double>(N) + 1e-12);
      }
    }
  }
}

TEST_CASE("trace is linear in v") {
  auto d = preset("supq-isotropy", {{"p", 2}, {"q", 5}});
  auto alc = build_alcove(d);
  Vec Y0 = alc.interior_point_ambient();
  auto fams = families_at(d, alc, Y0);
  Vec w = {0.05, -0.02};
  Vec v1 = {0.3, 0.9}, v2 = {-1.1, 0.4};
  const double lhs = trace_closed(fams, add(scaled(v1, 2.0), scaled(v2, -0.5)), w);
  const double rhs = 2.0 * trace_closed(fams, v1, w) - 0.5 * trace_closed(fams, v2, w);
  CHECK(lhs == Approx(rhs).margin(1e-12));
}

TEST_CASE("spectrum is independent of the chosen base point") {
  auto d = preset("sopq-hermann", {{"p", 2}, {"q", 4}});
  auto alc = build_alcove(d);
  Vec base1 = {0.55, 0.25};
  Vec base2 = {0.70, 0.35};
  Vec x = {0.62, 0.30};
  Vec v = {0.4, -0.7};
  auto f1 = families_at(d, alc, base1);
  auto f2 = families_at(d, alc, base2);
  auto s1 = spectrum_parallel(f1, v, sub(x, base1), 6);
  auto s2 = spectrum_parallel(f2, v, sub(x, base2), 6);
  REQUIRE(s1.size() == s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].first == Approx(s2[i].first).margin(1e-10));
    CHECK(s1[i].second == s2[i].second);
  }
}

TEST_CASE("sup norm of the shape operator") {
  auto d = preset("sp-isotropy", {{"n", 3}});
  auto alc = build_alcove(d);
  Vec Y0 = {pi / 3, 0, -pi / 3};
  auto fams = families_at(d, alc, Y0);

  // at w = 0 the sup over (a, j) of |lambda_a(v)|/|1 + b_a j| by brute force
  Vec v = {0.5, 0.2, -0.7};
  double expect = 0.0;
  for (const auto& f : fams)
    for (long j = -3; j <= 3; ++j)
      expect = std::max(expect, std::fabs(f.lambda(v) / (1.0 + f.b * j)));
  CHECK(sup_norm_shape(fams, v, {0, 0, 0}) == Approx(expect).margin(1e-13));

  CHECK(sup_norm_shape(fams, {0, 0, 0}, {0.1, 0, -0.1}) == 0.0);

  // wall asymptotics: approaching beta_13 = pi, eps * sup -> ||beta_13#||
  Vec vdir = scaled(Vec{1, 0, -1}, 1.0 / std::sqrt(2.0));
  for (double eps : {1e-3, 1e-5}) {
    Vec x = {pi / 2 - eps / 2, 0, -pi / 2 + eps / 2};  // beta_13(x) = pi - eps
    const double sn = sup_norm_shape(fams, vdir, sub(x, Y0));
    CHECK(eps * sn == Approx(std::sqrt(2.0)).epsilon(1e-2));
  }
}

TEST_CASE("cotangent identity: partial sums converge, correction nails it") {
  const long N = 10000;
  for (double theta : {pi / 2, 0.3, 2.5}) {
    const double closed = cot_identity_closed(theta);
    CHECK(std::fabs(cot_identity_partial(theta, N) - closed) < 1e-4);
    CHECK(std::fabs(cot_identity_corrected(theta, N) - closed) < 1e-9);
  }
}

TEST_CASE("mean curvature vector is the gradient form of the trace") {
  auto d = preset("supp-isotropy", {{"p", 2}});
  auto alc = build_alcove(d);
  Vec Y0 = alc.interior_point_ambient();
  auto fams = families_at(d, alc, Y0);
  Vec w = {0.03, -0.04};
  Vec H = mean_curvature_vector(fams, w);
  for (const Vec& v : {Vec{1, 0}, Vec{0, 1}, Vec{0.6, -0.8}})
    CHECK(dot(H, v) == Approx(trace_closed(fams, v, w)).margin(1e-12));
}

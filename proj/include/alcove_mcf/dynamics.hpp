#ifndef ALCOVE_MCF_DYNAMICS_HPP
#define ALCOVE_MCF_DYNAMICS_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowfield.hpp"

namespace alcove_mcf {

struct FlowOpts {
  double eps_wall = 1e-9;
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_time = 50.0;
  long max_steps = 200000;
};

enum class FlowStatus { WallHit, FixedPoint, Budget };

struct FlowResult {
  std::vector<std::pair<double, Vec>> samples;  // (t, ambient x), interior
  Vec terminal;                                 // ambient
  std::vector<int> terminal_walls;              // empty when FixedPoint/Budget
  double hit_time = std::numeric_limits<double>::quiet_NaN();
  FlowStatus status = FlowStatus::Budget;
};

struct ZeroReport {
  Vec point;  // ambient
  double residual = 0.0;
  double jacobian_divergence = 0.0;
  bool interior = true;
  std::vector<int> stratum_walls;  // active walls when not interior
};

namespace detail {

// Dormand-Prince 4(5) pair
struct Rk45Work {
  Vec k1, k2, k3, k4, k5, k6, k7;
};

inline Vec rk45_step(const std::function<Vec(const Vec&)>& f, const Vec& y, double h,
                     Rk45Work& w, double* err_norm) {
  auto at = [&](double hc, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec z(y);
    for (auto& [c, k] : terms) axpy(z, h * c, *k);
    (void)hc;
    return z;
  };
  w.k1 = f(y);
  w.k2 = f(at(0, {{1.0 / 5, &w.k1}}));
  w.k3 = f(at(0, {{3.0 / 40, &w.k1}, {9.0 / 40, &w.k2}}));
  w.k4 = f(at(0, {{44.0 / 45, &w.k1}, {-56.0 / 15, &w.k2}, {32.0 / 9, &w.k3}}));
  w.k5 = f(at(0, {{19372.0 / 6561, &w.k1}, {-25360.0 / 2187, &w.k2},
                  {64448.0 / 6561, &w.k3}, {-212.0 / 729, &w.k4}}));
  w.k6 = f(at(0, {{9017.0 / 3168, &w.k1}, {-355.0 / 33, &w.k2},
                  {46732.0 / 5247, &w.k3}, {49.0 / 176, &w.k4},
                  {-5103.0 / 18656, &w.k5}}));
  Vec y5 = at(0, {{35.0 / 384, &w.k1}, {500.0 / 1113, &w.k3}, {125.0 / 192, &w.k4},
                  {-2187.0 / 6784, &w.k5}, {11.0 / 84, &w.k6}});
  if (err_norm) {
    w.k7 = f(y5);
    Vec y4 = at(0, {{5179.0 / 57600, &w.k1}, {7571.0 / 16695, &w.k3},
                    {393.0 / 640, &w.k4}, {-92097.0 / 339200, &w.k5},
                    {187.0 / 2100, &w.k6}, {1.0 / 40, &w.k7}});
    *err_norm = norm(sub(y5, y4));
  }
  return y5;
}

struct ReducedFlowProblem {
  std::function<Vec(const Vec&)> field;          // reduced coords
  std::vector<std::pair<Vec, double>> walls;     // (normal, offset): slack = n.y - off

  double wall_slack(const Vec& y, std::size_t i) const {
    return dot(walls[i].first, y) - walls[i].second;
  }
  double min_slack(const Vec& y) const {
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < walls.size(); ++i) s = std::min(s, wall_slack(y, i));
    return s;
  }
  std::size_t argmin_slack(const Vec& y) const {
    std::size_t best = 0;
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < walls.size(); ++i) {
      const double v = wall_slack(y, i);
      if (v < s) {
        s = v;
        best = i;
      }
    }
    return best;
  }
};

/// Wall approach in slack coordinates.  Near a wall X ~ K/s, so the time
/// left below slack s is O(s^2) and falls under the resolution of t long
/// before s reaches eps_wall; instead integrate dy/du with u = ln(slack),
/// which is smooth, and accumulate the (tiny) time increments on the side.
/// Returns false if the slack stops decreasing (grazing pass).
inline bool wall_endgame(const ReducedFlowProblem& prob, Vec& y, double& t,
                         double eps_wall) {
  double s = prob.min_slack(y);
  const double eps_hit = eps_wall * 1.0000001;
  int guard = 0;
  while (s > eps_hit && guard++ < 200) {
    const std::size_t wi = prob.argmin_slack(y);
    const Vec& n = prob.walls[wi].first;
    const double off = prob.walls[wi].second;
    auto deriv = [&](const Vec& z) {  // dy/du, u = ln(n.z - off)
      const Vec f = prob.field(z);
      const double g = dot(n, z) - off;
      const double gdot = dot(n, f);
      Vec d = scaled(f, g / gdot);
      d.push_back(g / gdot);  // dt/du rides along as an extra component
      return d;
    };
    {  // abort if this wall's slack is not shrinking
      const Vec f = prob.field(y);
      if (!(dot(n, f) < 0.0) || !all_finite(f)) return false;
    }
    const double target = std::max(eps_wall, s / 2);
    const int nsub = 8;
    const double du = (std::log(target) - std::log(s)) / nsub;
    for (int k = 0; k < nsub; ++k) {
      // classic RK4 on the extended state (y, t)
      Vec z(y);
      z.push_back(t);
      auto strip = [&](Vec v, double c, const Vec& k1) {
        axpy(v, c, k1);
        return v;
      };
      auto f_ext = [&](const Vec& ze) {
        Vec base(ze.begin(), ze.end() - 1);
        return deriv(base);
      };
      Vec k1 = f_ext(z);
      Vec k2 = f_ext(strip(z, du / 2, k1));
      Vec k3 = f_ext(strip(z, du / 2, k2));
      Vec k4 = f_ext(strip(z, du, k3));
      for (std::size_t i = 0; i < z.size(); ++i)
        z[i] += du / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (!all_finite(z)) return false;
      t = z.back();
      z.pop_back();
      y = std::move(z);
    }
    const double snew = prob.min_slack(y);
    if (snew <= eps_hit) return true;
    if (!(snew < s)) return false;
    s = snew;
  }
  return s <= eps_hit;
}

/// Core adaptive integration loop in reduced coordinates.  Returns the
/// terminal reduced point before wall projection; fills t/status/samples.
inline Vec integrate_reduced(const ReducedFlowProblem& prob, Vec y, const FlowOpts& opts,
                             const Frame& frame, FlowResult& result, double& t_out) {
  Rk45Work w;
  double t = 0.0, h = 1e-4;
  const double switch_s = std::max(1e-4, 4 * opts.eps_wall);
  result.samples.emplace_back(t, frame.lift(y));
  for (long step = 0; step < opts.max_steps; ++step) {
    Vec f0 = prob.field(y);
    const double speed = norm(f0);
    if (speed <= 1e-12) {
      result.status = FlowStatus::FixedPoint;
      t_out = t;
      return y;
    }
    if (prob.min_slack(y) <= switch_s) {
      Vec y_try(y);
      double t_try = t;
      if (wall_endgame(prob, y_try, t_try, opts.eps_wall)) {
        result.status = FlowStatus::WallHit;
        t_out = t_try;
        return y_try;
      }
    }
    if (t >= opts.max_time) break;
    h = std::min(h, opts.max_time - t);

    double err = 0.0;
    Vec ynew = rk45_step(prob.field, y, h, w, &err);
    const double tol = opts.atol + opts.rtol * norm(y);
    const bool bad = !(prob.min_slack(ynew) > 0.0) || !all_finite(ynew) ||
                     !std::isfinite(err);
    if (bad || err > tol) {
      h *= bad ? 0.5 : std::max(0.2, 0.9 * std::pow(tol / err, 0.2));
      if (h < 1e-15 * (1.0 + t)) {
        if (prob.min_slack(y) > switch_s)
          throw std::runtime_error("step size underflow away from walls");
        break;
      }
      continue;
    }
    y = std::move(ynew);
    t += h;
    result.samples.emplace_back(t, frame.lift(y));
    if (err > 0.0) h *= std::min(5.0, 0.9 * std::pow(tol / err, 0.2));
  }
  result.status = FlowStatus::Budget;
  t_out = t;
  return y;
}

/// Orthogonal projection of y onto the intersection of the given wall
/// hyperplanes (reduced coordinates).
inline Vec project_onto_walls(const Alcove& alc, const std::vector<int>& walls, Vec y) {
  if (walls.empty()) return y;
  std::vector<Vec> normals;
  Vec resid;
  for (int wi : walls) {
    normals.push_back(alc.walls[wi].normal);
    resid.push_back(alc.walls[wi].slack_reduced(y));
  }
  // y -= N^T (N N^T)^{-1} resid, with rank guard via Gram matrix
  Frame nf = make_frame(normals, 1e-10);
  std::vector<Vec> indep;
  Vec r2;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    std::vector<Vec> test(indep);
    test.push_back(normals[i]);
    if (span_rank(test, 1e-10) > indep.size()) {
      indep.push_back(normals[i]);
      r2.push_back(resid[i]);
    }
  }
  const std::size_t m = indep.size();
  std::vector<double> G(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) G[i * m + j] = dot(indep[i], indep[j]);
  Vec lam;
  if (!solve_dense(std::move(G), r2, lam, 1e-14)) return y;
  for (std::size_t i = 0; i < m; ++i) axpy(y, -lam[i], indep[i]);
  (void)nf;
  return y;
}

/// Walls within `threshold` slack of y, among the given candidates.
inline std::vector<int> near_walls(const Alcove& alc, const std::vector<int>& candidates,
                                   const Vec& y, double threshold) {
  std::vector<int> out;
  for (int wi : candidates)
    if (alc.walls[wi].slack_reduced(y) <= threshold) out.push_back(wi);
  return out;
}

}  // namespace detail

/// Integrates xi' = X from an interior start until a wall hit, a fixed
/// point, or the time budget.  hit_time includes the analytic tail of the
/// 1-D pole model s' ~ -K/s beyond the eps_wall cutoff.
inline FlowResult integrate(const ActionData& data, const Alcove& alc, const Vec& x0,
                            const FlowOpts& opts = {}) {
  if (classify(data, alc, x0).where != PointClass::Interior)
    throw std::invalid_argument("start point not in alcove interior");
  const Frame& frame = alc.frame;
  const std::vector<int> facets = alc.facet_indices();

  detail::ReducedFlowProblem prob;
  prob.field = [&](const Vec& y) { return frame.reduce(field_X_raw(data, frame.lift(y))); };
  for (int wi : facets) prob.walls.emplace_back(alc.walls[wi].normal, alc.walls[wi].offset);

  FlowResult result;
  double t_stop = 0.0;
  Vec y = detail::integrate_reduced(prob, frame.reduce(x0), opts, frame, result, t_stop);

  if (result.status == FlowStatus::WallHit) {
    const double s = alc.min_facet_slack(y);
    // tail of the 1-D model: remaining time = s / (2 |ds/dt|)
    Vec f = prob.field(y);
    double sdot = std::numeric_limits<double>::infinity();
    for (int wi : facets)
      if (alc.walls[wi].slack_reduced(y) <= 2 * s + opts.eps_wall)
        sdot = std::min(sdot, std::fabs(dot(alc.walls[wi].normal, f)));
    result.hit_time = t_stop + (std::isfinite(sdot) && sdot > 0 ? s / (2 * sdot) : 0.0);
    const double thresh = std::max(1e3 * opts.eps_wall, 1e-6);
    std::vector<int> active = detail::near_walls(alc, facets, y, thresh);
    y = detail::project_onto_walls(alc, active, y);
    result.terminal_walls = classify(data, alc, frame.lift(y)).active_walls;
  } else if (result.status == FlowStatus::FixedPoint) {
    result.hit_time = t_stop;
  }
  result.terminal = frame.lift(y);
  return result;
}

/// Same contract for the stratum field X^sigma, constrained to sigma's
/// affine hull; terminates on the relative boundary of sigma.
inline FlowResult integrate_on_stratum(const ActionData& data, const Alcove& alc,
                                       const StratumSpec& sigma, const Vec& x0,
                                       const FlowOpts& opts = {}) {
  Classification c0 = classify(data, alc, x0);
  if (c0.where != PointClass::OnStratum || c0.active_walls != sigma.active_walls)
    throw std::invalid_argument("start point not in the relative interior of sigma");
  const Frame& frame = alc.frame;
  const std::vector<int> kept = stratum_root_set(data, alc, sigma);
  std::vector<int> boundary_walls;
  for (int wi : alc.facet_indices()) {
    bool active = false;
    for (int ai : sigma.active_walls) active |= (ai == wi);
    if (!active) boundary_walls.push_back(wi);
  }
  // tangent projector onto sigma's direction space within reduced coords
  std::vector<Vec> act_normals;
  for (int wi : sigma.active_walls) act_normals.push_back(alc.walls[wi].normal);
  Frame nframe = make_frame(act_normals, 1e-10);
  auto tangent_project = [&](Vec v) {
    for (const Vec& b : nframe.basis) axpy(v, -dot(b, v), b);
    return v;
  };

  detail::ReducedFlowProblem prob;
  prob.field = [&](const Vec& y) {
    const Vec x = frame.lift(detail::project_onto_walls(alc, sigma.active_walls, y));
    Vec f(x.size(), 0.0);
    for (int i : kept) {
      const RestrictedRoot& r = data.roots[i];
      axpy(f, detail::root_coeff(r, r.value_at(x)), r.vector);
    }
    return tangent_project(frame.reduce(f));
  };
  for (int wi : boundary_walls)
    prob.walls.emplace_back(alc.walls[wi].normal, alc.walls[wi].offset);

  FlowResult result;
  double t_stop = 0.0;
  Vec y0 = detail::project_onto_walls(alc, sigma.active_walls, frame.reduce(x0));
  Vec y = detail::integrate_reduced(prob, std::move(y0), opts, frame, result, t_stop);
  y = detail::project_onto_walls(alc, sigma.active_walls, y);

  if (result.status == FlowStatus::WallHit) {
    double s = std::numeric_limits<double>::infinity();
    for (int wi : boundary_walls) s = std::min(s, alc.walls[wi].slack_reduced(y));
    Vec f = prob.field(y);
    double sdot = std::numeric_limits<double>::infinity();
    for (int wi : boundary_walls)
      if (alc.walls[wi].slack_reduced(y) <= 2 * s + opts.eps_wall)
        sdot = std::min(sdot, std::fabs(dot(alc.walls[wi].normal, f)));
    result.hit_time = t_stop + (std::isfinite(sdot) && sdot > 0 ? s / (2 * sdot) : 0.0);
    const double thresh = std::max(1e3 * opts.eps_wall, 1e-6);
    std::vector<int> hit = detail::near_walls(alc, boundary_walls, y, thresh);
    for (int wi : sigma.active_walls) hit.push_back(wi);
    y = detail::project_onto_walls(alc, hit, y);
    result.terminal_walls = classify(data, alc, frame.lift(y)).active_walls;
  } else if (result.status == FlowStatus::FixedPoint) {
    result.hit_time = t_stop;
    result.terminal_walls = sigma.active_walls;
  }
  result.terminal = frame.lift(y);
  return result;
}

/// Newton multistart for interior zeros of X; analytic Jacobian.
inline std::vector<ZeroReport> find_minimal(const ActionData& data, const Alcove& alc,
                                            int grid_n, double tol = 1e-12) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  const Frame& frame = alc.frame;
  const std::size_t r = frame.rank();

  Vec lo(r, std::numeric_limits<double>::infinity());
  Vec hi(r, -std::numeric_limits<double>::infinity());
  for (const Vec& v : alc.vertices)
    for (std::size_t k = 0; k < r; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }

  std::vector<Vec> seeds;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    Vec y(r);
    for (std::size_t k = 0; k < r; ++k)
      y[k] = lo[k] + (hi[k] - lo[k]) * (idx[k] + 0.5) / grid_n;
    // 5% shrink toward the barycenter keeps seeds off wall poles
    Vec s(alc.barycenter);
    axpy(s, 0.95, sub(y, alc.barycenter));
    if (alc.min_facet_slack(s) > 1e-6) seeds.push_back(std::move(s));
    std::size_t k = 0;
    for (; k < r; ++k) {
      if (++idx[k] < static_cast<std::size_t>(grid_n)) break;
      idx[k] = 0;
    }
    if (k == r) break;
  }

  std::vector<ZeroReport> zeros;
  for (Vec y : seeds) {
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
      const Vec x = frame.lift(y);
      const Vec F = frame.reduce(field_X_raw(data, x));
      if (!all_finite(F)) break;
      if (norm(F) <= tol) {
        ok = true;
        break;
      }
      std::vector<double> J = jacobian_X_reduced(data, frame, x);
      Vec dy;
      if (!solve_dense(std::move(J), F, dy, 1e-14)) break;
      axpy(y, -1.0, dy);
      if (alc.min_facet_slack(y) <= 0.0) break;
    }
    if (!ok) continue;
    bool dup = false;
    for (const ZeroReport& z : zeros)
      if (norm(sub(frame.reduce(z.point), y)) < 1e-6) dup = true;
    if (dup) continue;
    const Vec x = frame.lift(y);
    zeros.push_back({x, norm(field_X_raw(data, x)), div_X(data, alc, x), true, {}});
  }
  return zeros;
}

/// Newton multistart for zeros of X^sigma inside a stratum.
inline std::vector<ZeroReport> find_minimal_on_stratum(const ActionData& data,
                                                       const Alcove& alc,
                                                       const StratumSpec& sigma,
                                                       double tol = 1e-12) {
  const Frame& frame = alc.frame;
  const std::vector<int> kept = stratum_root_set(data, alc, sigma);
  const Vec rep_red = frame.reduce(sigma.representative);

  // ambient tangent frame of sigma
  std::vector<Vec> act_normals;
  for (int wi : sigma.active_walls) act_normals.push_back(alc.walls[wi].normal);
  Frame nframe = make_frame(act_normals, 1e-10);
  std::vector<Vec> tdirs;
  for (std::size_t k = 0; k < frame.rank(); ++k) {
    Vec e(frame.rank(), 0.0);
    e[k] = 1.0;
    for (const Vec& b : nframe.basis) axpy(e, -dot(b, e), b);
    tdirs.push_back(frame.lift(e));
  }
  Frame tangent = make_frame(tdirs, 1e-10);
  if (tangent.rank() != static_cast<std::size_t>(sigma.dim))
    throw std::runtime_error("inconsistent stratum tangent space");
  if (sigma.dim == 0) return {};

  auto field_raw = [&](const Vec& x_ambient) {
    Vec f(x_ambient.size(), 0.0);
    for (int i : kept) {
      const RestrictedRoot& r = data.roots[i];
      axpy(f, detail::root_coeff(r, r.value_at(x_ambient)), r.vector);
    }
    return f;
  };

  // seeds: convex combinations of the face's vertices
  std::vector<Vec> seeds_red;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const std::size_t nv = sigma.vertices.size();
  for (int s = 0; s < 24; ++s) {
    Vec wgt(nv);
    double total = 0.0;
    for (std::size_t i = 0; i < nv; ++i) total += (wgt[i] = 0.05 + uni(rng));
    Vec y(rep_red.size(), 0.0);
    for (std::size_t i = 0; i < nv; ++i) axpy(y, wgt[i] / total, sigma.vertices[i]);
    seeds_red.push_back(std::move(y));
  }
  if (nv == 2)
    for (int g = 1; g <= 15; ++g) {
      Vec y = scaled(sigma.vertices[0], 1.0 - g / 16.0);
      axpy(y, g / 16.0, sigma.vertices[1]);
      seeds_red.push_back(std::move(y));
    }

  std::vector<int> boundary_walls;
  for (int wi : alc.facet_indices()) {
    bool active = false;
    for (int ai : sigma.active_walls) active |= (ai == wi);
    if (!active) boundary_walls.push_back(wi);
  }
  auto rel_slack = [&](const Vec& y) {
    double s = std::numeric_limits<double>::infinity();
    for (int wi : boundary_walls) s = std::min(s, alc.walls[wi].slack_reduced(y));
    return s;
  };

  std::vector<ZeroReport> zeros;
  for (const Vec& y0 : seeds_red) {
    Vec x = frame.lift(y0);
    Vec z = tangent.reduce(sub(x, sigma.representative));
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
      Vec xa(sigma.representative);
      axpy(xa, 1.0, tangent.lift(z));
      const Vec F = tangent.reduce(field_raw(xa));
      if (!all_finite(F)) break;
      if (norm(F) <= tol) {
        ok = true;
        x = xa;
        break;
      }
      std::vector<double> J = jacobian_X_sigma_reduced(data, alc, sigma, tangent, xa);
      Vec dz;
      if (!solve_dense(std::move(J), F, dz, 1e-14)) break;
      axpy(z, -1.0, dz);
      if (rel_slack(frame.reduce(add(sigma.representative, tangent.lift(z)))) <= 0.0) break;
    }
    if (!ok) continue;
    Classification c = classify(data, alc, x);
    if (c.where != PointClass::OnStratum || c.active_walls != sigma.active_walls) continue;
    bool dup = false;
    for (const ZeroReport& zr : zeros)
      if (norm(sub(zr.point, x)) < 1e-6) dup = true;
    if (dup) continue;
    zeros.push_back({x, norm(field_raw(x)), 0.0, false, sigma.active_walls});
  }
  return zeros;
}

struct BasinEntry {
  Vec seed;  // ambient
  FlowStatus status = FlowStatus::Budget;
  std::vector<int> terminal_walls;  // empty = Interior (fixed point)
  double hit_time = std::numeric_limits<double>::quiet_NaN();
};

/// Integrates from each interior grid point and records the terminal
/// stratum; fixed-point seeds are recorded with no terminal walls.
inline std::vector<BasinEntry> basin_map(const ActionData& data, const Alcove& alc,
                                         int grid_n, const FlowOpts& opts = {}) {
  const Frame& frame = alc.frame;
  const std::size_t r = frame.rank();
  Vec lo(r, std::numeric_limits<double>::infinity());
  Vec hi(r, -std::numeric_limits<double>::infinity());
  for (const Vec& v : alc.vertices)
    for (std::size_t k = 0; k < r; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  std::vector<BasinEntry> out;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    Vec y(r);
    for (std::size_t k = 0; k < r; ++k)
      y[k] = lo[k] + (hi[k] - lo[k]) * (idx[k] + 0.5) / grid_n;
    if (alc.min_facet_slack(y) > 1e-6) {
      BasinEntry e;
      e.seed = frame.lift(y);
      FlowResult fr = integrate(data, alc, e.seed, opts);
      e.status = fr.status;
      e.terminal_walls = fr.terminal_walls;
      e.hit_time = fr.hit_time;
      out.push_back(std::move(e));
    }
    std::size_t k = 0;
    for (; k < r; ++k) {
      if (++idx[k] < static_cast<std::size_t>(grid_n)) break;
      idx[k] = 0;
    }
    if (k == r) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference minimality systems, written out per example (general-p interior
// systems; p = 2 strata) as independent residual checks on computed zeros.

namespace printed {

inline double cot(double s) { return std::cos(s) / std::sin(s); }

/// Max-norm residual of the reference interior minimality system at x
/// (ambient coordinates); q is ignored by presets without it.
inline double interior_residual(const std::string& name, int q, const Vec& x) {
  const std::size_t n = x.size();
  double worst = 0.0;
  auto upd = [&](double v) { worst = std::max(worst, std::fabs(v)); };
  if (name == "sp-isotropy" || name == "so2n-on-su2n") {
    const double c = (name == "sp-isotropy") ? 1.0 : 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += cot(c * (x[i] - x[j]));
      upd(s);
    }
  } else if (name == "supq-isotropy" || name == "supp-isotropy") {
    const int p = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = cot(2 * x[i]);
      if (name == "supq-isotropy") s += (q - p) * cot(x[i]);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += cot(x[i] - x[j]) + cot(x[i] + x[j]);
      upd(s);
    }
  } else if (name == "sopq-hermann" || name == "so2p-hermann") {
    const int p = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = std::tan(2 * x[i]);
      if (name == "sopq-hermann") s -= (q - p) * cot(2 * x[i]);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s -= cot(2 * (x[i] - x[j])) + cot(2 * (x[i] + x[j]));
      upd(s);
    }
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return worst;
}

/// Residual of the reference one-dimensional stratum equation (p = 2
/// examples; sigma indexes the faces 1..3).
inline double sigma_residual(const std::string& name, int sigma, int q, const Vec& x) {
  const double x1 = x[0], x2 = x[1];
  if (name == "supq-isotropy") {
    if (sigma == 1 || sigma == 3) return 2 * cot(2 * x1) + (q - 2) * cot(x1);
    if (sigma == 2) return q * cot(x1) + cot(2 * x1);
  } else if (name == "supp-isotropy") {
    if (sigma == 1) return cot(2 * x1);
    if (sigma == 2) return 2 * cot(x1) + cot(2 * x1);
    if (sigma == 3) return cot(2 * x2);
  } else if (name == "sopq-hermann") {
    if (sigma == 1 || sigma == 3) return std::tan(2 * x1) - (q - 2) * cot(2 * x1) - cot(4 * x1);
    if (sigma == 2) return std::tan(2 * x1) - q * cot(2 * x1);
  } else if (name == "so2p-hermann") {
    if (sigma == 1 || sigma == 2) return cot(4 * x1) - std::tan(2 * x1);
    if (sigma == 3) {
      constexpr double h = std::numbers::pi / 2;
      const double a = cot(h - 2 * x2) + cot(h + 2 * x2);
      const double b = -cot(h - 2 * x2) + cot(h + 2 * x2) - std::tan(2 * x2);
      return std::max(std::fabs(a), std::fabs(b));
    }
  }
  throw std::invalid_argument("unknown printed stratum equation");
}

}  // namespace printed

}  // namespace alcove_mcf

#endif

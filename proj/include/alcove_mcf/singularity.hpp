#ifndef ALCOVE_MCF_SINGULARITY_HPP
#define ALCOVE_MCF_SINGULARITY_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynamics.hpp"

namespace alcove_mcf {

struct SingularityOpts {
  int k0 = 10;  // first sampled slack 2^-k0
  int k1 = 20;  // last sampled slack 2^-k1
  FlowOpts flow;
};

struct SingularityReport {
  int dominant_family = -1;  // source root index of the hit wall
  int m_e_dominant = 0;      // multiplicity of the hit focal hyperplane
  double predicted_limit = 0.0;  // 1 / (2 m_e_dominant)
  double estimated_limit = 0.0;
  double relative_error = 0.0;
  double T_est = 0.0;
  double T_sensitivity = 0.0;  // estimate shift under a 1% perturbation of
                               // the fitted pole constant (the only free
                               // parameter behind T_est)
  std::vector<std::pair<double, double>> samples;  // (t, Q(t))
};

/// Max over unit normals v of sup_norm_shape(fams, v, w), in closed form:
/// the maximizing v aligns with the dominant family's lambda_vec, so the
/// value is max_a ||n_a|| / min_j |1 + b_a j - lambda_a(w)|.
inline double max_sup_norm(const std::vector<CurvatureFamily>& fams, const Vec& w) {
  double best = 0.0;
  for (const CurvatureFamily& f : fams) {
    const double nn = norm(f.lambda_vec);
    const double lw = f.lambda(w);
    const long j0 = static_cast<long>(std::floor((lw - 1.0) / f.b));
    double dmin = std::numeric_limits<double>::infinity();
    for (long j = j0 - 2; j <= j0 + 2; ++j) {
      if (f.mult(j) == 0) continue;
      dmin = std::min(dmin, std::fabs(shifted_denom(f, lw, j)));
    }
    if (dmin > 0 && std::isfinite(dmin)) best = std::max(best, nn / dmin);
  }
  return best;
}

/// Multiplicity of the focal hyperplane a wall lies on.
inline int wall_multiplicity(const ActionData& data, const WallConstraint& w) {
  const RestrictedRoot& r = data.roots[w.root_index];
  switch (root_class(r)) {
    case RootClass::VerticalOnly:
      return r.m_V;
    case RootClass::HorizontalOnly:
      return r.m_H;
    case RootClass::Both:
      return (w.sense > 0) ? r.m_V : r.m_H;  // level 0 vs pi/2
  }
  return 0;
}

/// Estimates the type-I blow-up limit lim Q(t) = lim sup||A||^2 (T - t)
/// along the flow from x0 and compares it with 1/(2 m) for the hit wall's
/// multiplicity m.  T is estimated first from the 1-D pole model
/// s^2 = 2K (T - t) on the earliest slack window, so the extrapolation
/// target never feeds back into T.
inline SingularityReport type_I_estimate(const ActionData& data, const Alcove& alc,
                                         const Vec& x0, const SingularityOpts& opts = {}) {
  if (classify(data, alc, x0).where != PointClass::Interior)
    throw std::invalid_argument("start point not in alcove interior");
  const Frame& frame = alc.frame;
  auto fams = families_at(data, alc, x0);

  detail::ReducedFlowProblem prob;
  prob.field = [&](const Vec& y) { return frame.reduce(field_X_raw(data, frame.lift(y))); };
  for (int wi : alc.facet_indices())
    prob.walls.emplace_back(alc.walls[wi].normal, alc.walls[wi].offset);

  // integrate stage by stage down the slack ladder 2^-k
  std::vector<double> ts, slacks;
  std::vector<Vec> points;  // reduced
  Vec y = frame.reduce(x0);
  double t_accum = 0.0;
  if (alc.min_facet_slack(y) <= std::pow(2.0, -opts.k0))
    throw std::invalid_argument("start point already closer than the first slack stage");
  for (int k = opts.k0; k <= opts.k1; ++k) {
    FlowOpts fo = opts.flow;
    fo.eps_wall = std::pow(2.0, -k);
    FlowResult stage;
    double t_stage = 0.0;
    y = detail::integrate_reduced(prob, std::move(y), fo, frame, stage, t_stage);
    t_accum += t_stage;
    if (stage.status == FlowStatus::FixedPoint)
      throw std::runtime_error("flow reached the interior fixed point; no singularity");
    if (stage.status != FlowStatus::WallHit)
      throw std::runtime_error("flow did not reach the wall within the time budget");
    ts.push_back(t_accum);
    slacks.push_back(alc.min_facet_slack(y));
    points.push_back(y);
  }

  // hit wall and genericity
  const std::vector<int> facets = alc.facet_indices();
  const double final_slack = slacks.back();
  std::vector<int> near = detail::near_walls(alc, facets, y, 1e3 * final_slack);
  if (near.size() != 1)
    throw std::runtime_error("non-generic terminal stratum; restart from perturbed x0");
  const WallConstraint& hit = alc.walls[near[0]];

  SingularityReport rep;
  rep.dominant_family = hit.root_index;
  rep.m_e_dominant = wall_multiplicity(data, hit);
  rep.predicted_limit = 1.0 / (2.0 * rep.m_e_dominant);

  // 1-D pole model s' = -K/s, i.e. s^2 = a + b t with b = -2K; K is fitted
  // on the earliest slack window only, before any Q value is formed, so the
  // extrapolation target never feeds back into the time-to-wall estimate.
  const std::size_t fit_n = 4;
  double st = 0, stt = 0, ss = 0, sts = 0;
  for (std::size_t i = 0; i < fit_n; ++i) {
    const double t = ts[i], s2 = slacks[i] * slacks[i];
    st += t;
    stt += t * t;
    ss += s2;
    sts += t * s2;
  }
  const double b = (fit_n * sts - st * ss) / (fit_n * stt - st * st);
  if (!(b < 0)) throw std::runtime_error("slack model fit failed (non-contracting)");
  const double K = -b / 2;
  // remaining time at slack s is s^2/(2K); T - t_k is formed from it
  // directly because the subtraction T_est - t_k would cancel to roundoff
  // at the late stages (remaining time ~ s^2 << t)
  rep.T_est = ts.back() + slacks.back() * slacks.back() / (2 * K);

  auto estimate = [&](double k_factor) {
    std::vector<std::pair<double, double>> qs;
    for (std::size_t i = fit_n; i < ts.size(); ++i) {
      const double M = max_sup_norm(fams, sub(frame.lift(points[i]), x0));
      const double remaining = slacks[i] * slacks[i] / (2 * K * k_factor);
      qs.emplace_back(ts[i], M * M * remaining);
    }
    // Q(t) = Q_inf + c s + ..., with s halving per stage: Richardson on
    // the last two samples cancels the linear term
    const double q_last = qs[qs.size() - 1].second;
    const double q_prev = qs[qs.size() - 2].second;
    return std::make_pair(2 * q_last - q_prev, qs);
  };
  auto [est, qs] = estimate(1.0);
  rep.estimated_limit = est;
  rep.samples = std::move(qs);
  rep.relative_error = std::fabs(rep.estimated_limit - rep.predicted_limit) / rep.predicted_limit;
  rep.T_sensitivity = estimate(1.01).first - rep.estimated_limit;
  return rep;
}

}  // namespace alcove_mcf

#endif

#ifndef ALCOVE_MCF_FLOWFIELD_HPP
#define ALCOVE_MCF_FLOWFIELD_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "curvature.hpp"

namespace alcove_mcf {

namespace detail {

/// Scalar coefficient c_beta so that X = sum_beta c_beta(beta(w)) beta#.
inline double root_coeff(const RestrictedRoot& r, double s) {
  switch (root_class(r)) {
    case RootClass::VerticalOnly:
      return -r.m_V * std::cos(s) / std::sin(s);
    case RootClass::HorizontalOnly:
      return r.m_H * std::tan(s);
    case RootClass::Both: {
      double c = -(r.m_V + r.m_H) * std::cos(2 * s) / std::sin(2 * s);
      if (r.m_V != r.m_H) c -= (r.m_V - r.m_H) / std::sin(2 * s);
      return c;
    }
  }
  return 0.0;
}

inline double root_coeff_deriv(const RestrictedRoot& r, double s) {
  switch (root_class(r)) {
    case RootClass::VerticalOnly: {
      const double si = std::sin(s);
      return r.m_V / (si * si);
    }
    case RootClass::HorizontalOnly: {
      const double co = std::cos(s);
      return r.m_H / (co * co);
    }
    case RootClass::Both: {
      const double si = std::sin(2 * s);
      double d = 2.0 * (r.m_V + r.m_H) / (si * si);
      if (r.m_V != r.m_H) d += 2.0 * (r.m_V - r.m_H) * std::cos(2 * s) / (si * si);
      return d;
    }
  }
  return 0.0;
}

}  // namespace detail

/// Unchecked evaluation of the mean curvature field X at w (may blow up on
/// walls); callers that need the interior precondition use field_X.
inline Vec field_X_raw(const ActionData& data, const Vec& w) {
  Vec x(w.size(), 0.0);
  for (const RestrictedRoot& r : data.roots)
    axpy(x, detail::root_coeff(r, r.value_at(w)), r.vector);
  return x;
}

inline Vec field_X(const ActionData& data, const Alcove& alc, const Vec& w) {
  if (classify(data, alc, w).where != PointClass::Interior)
    throw std::invalid_argument("field_X requires an interior point");
  return field_X_raw(data, w);
}

/// The stratum field X^sigma: the same sum with every root dropped whose
/// focal hyperplane contains sigma (equivalently: the root is constant on
/// sigma at a pole of its coefficient). Containment is tested against the
/// FULL wall list so coincident hyperplanes (beta_i vs 2beta_i) are both
/// dropped.
inline std::vector<int> stratum_root_set(const ActionData& data, const Alcove& alc,
                                         const StratumSpec& sigma) {
  const Vec rep = alc.frame.reduce(sigma.representative);
  std::vector<Vec> active_normals;
  for (int wi : sigma.active_walls) active_normals.push_back(alc.walls[wi].normal);
  Frame active_span = make_frame(active_normals, 1e-10);

  std::vector<int> kept;
  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    bool drop = false;
    for (const WallConstraint& w : alc.walls) {
      if (w.root_index != static_cast<int>(i)) continue;
      if (std::fabs(w.slack_reduced(rep)) < 1e-8 &&
          active_span.off_span_norm(w.normal) < 1e-8 * norm(w.normal)) {
        drop = true;
        break;
      }
    }
    if (!drop) kept.push_back(static_cast<int>(i));
  }
  return kept;
}

inline Vec field_X_sigma(const ActionData& data, const Alcove& alc,
                         const StratumSpec& sigma, const Vec& w) {
  Classification c = classify(data, alc, w);
  if (c.where != PointClass::OnStratum || c.active_walls != sigma.active_walls)
    throw std::invalid_argument("point is not in the relative interior of sigma");
  Vec x(w.size(), 0.0);
  for (int i : stratum_root_set(data, alc, sigma)) {
    const RestrictedRoot& r = data.roots[i];
    axpy(x, detail::root_coeff(r, r.value_at(w)), r.vector);
  }
  return x;
}

/// X evaluated through the curvature-family closed form at a shifted base;
/// must agree with field_X.
inline Vec field_X_via_families(const ActionData& data, const Alcove& alc,
                                const Vec& base, const Vec& w) {
  auto fams = families_at(data, alc, base);
  if (classify(data, alc, w).where != PointClass::Interior)
    throw std::invalid_argument("field evaluation point must be interior");
  return mean_curvature_vector(fams, sub(w, base));
}

inline double div_X(const ActionData& data, const Alcove& alc, const Vec& w) {
  if (classify(data, alc, w).where != PointClass::Interior)
    throw std::invalid_argument("div_X requires an interior point");
  double d = 0.0;
  for (const RestrictedRoot& r : data.roots)
    d += detail::root_coeff_deriv(r, r.value_at(w)) * dot(r.vector, r.vector);
  return d;
}

/// Jacobian of X in reduced (root-span) coordinates, row-major rank x rank;
/// its trace equals div_X.
inline std::vector<double> jacobian_X_reduced(const ActionData& data,
                                              const Frame& frame, const Vec& w_ambient) {
  const std::size_t r = frame.rank();
  std::vector<double> J(r * r, 0.0);
  for (const RestrictedRoot& root : data.roots) {
    const double d = detail::root_coeff_deriv(root, root.value_at(w_ambient));
    const Vec a = frame.reduce(root.vector);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) J[k * r + l] += d * a[k] * a[l];
  }
  return J;
}

/// Jacobian of the stratum field restricted to sigma's tangent frame.
inline std::vector<double> jacobian_X_sigma_reduced(const ActionData& data,
                                                    const Alcove& alc,
                                                    const StratumSpec& sigma,
                                                    const Frame& tangent,
                                                    const Vec& w_ambient) {
  const std::size_t r = tangent.rank();
  std::vector<double> J(r * r, 0.0);
  for (int i : stratum_root_set(data, alc, sigma)) {
    const RestrictedRoot& root = data.roots[i];
    const double d = detail::root_coeff_deriv(root, root.value_at(w_ambient));
    const Vec a = tangent.reduce(root.vector);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) J[k * r + l] += d * a[k] * a[l];
  }
  return J;
}

}  // namespace alcove_mcf

#endif

#ifndef ALCOVE_MCF_CURVATURE_HPP
#define ALCOVE_MCF_CURVATURE_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcove.hpp"

namespace alcove_mcf {

/// One family of principal curvatures lambda_a/(1+b_a j) of the lifted
/// submanifold; lambda_vec doubles as the curvature normal n_a.
struct CurvatureFamily {
  Vec lambda_vec;
  double b = 0.0;
  int m_e = 0;  // multiplicity at even j
  int m_o = 0;  // multiplicity at odd j
  int source_root = -1;

  double lambda(const Vec& x) const { return dot(lambda_vec, x); }
  int mult(long j) const { return (j % 2 == 0) ? m_e : m_o; }
};

/// Builds the curvature families at an interior base point Y0, one per
/// positive root, from the three-case table.
inline std::vector<CurvatureFamily> families_at(const ActionData& data,
                                                const Alcove& alc, const Vec& Y0) {
  constexpr double pi = std::numbers::pi;
  if (classify(data, alc, Y0).where != PointClass::Interior)
    throw std::invalid_argument("families undefined at boundary");
  std::vector<CurvatureFamily> fams;
  fams.reserve(data.roots.size());
  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    const RestrictedRoot& root = data.roots[i];
    const double s = root.value_at(Y0);
    CurvatureFamily f;
    f.source_root = static_cast<int>(i);
    switch (root_class(root)) {
      case RootClass::VerticalOnly:
        f.lambda_vec = scaled(root.vector, -1.0 / s);
        f.b = pi / s;
        f.m_e = f.m_o = root.m_V;
        break;
      case RootClass::HorizontalOnly:
        f.lambda_vec = scaled(root.vector, -1.0 / (s + pi / 2));
        f.b = pi / (s + pi / 2);
        f.m_e = f.m_o = root.m_H;
        break;
      case RootClass::Both:
        f.lambda_vec = scaled(root.vector, -1.0 / s);
        f.b = pi / (2 * s);
        f.m_e = root.m_V;
        f.m_o = root.m_H;
        break;
    }
    fams.push_back(std::move(f));
  }
  return fams;
}

/// Denominator of the shifted eigenvalue: 1 + b j - lambda(w); the j-th
/// eigenvalue of the parallel shape operator is lambda(v) / that.
inline double shifted_denom(const CurvatureFamily& f, double lam_w, long j) {
  return 1.0 + f.b * static_cast<double>(j) - lam_w;
}

/// Truncated spectrum { lambda_{aj}(v)/(1 - lambda_{aj}(w)) : |j| <= jmax }.
inline std::vector<std::pair<double, int>> spectrum_parallel(
    const std::vector<CurvatureFamily>& fams, const Vec& v, const Vec& w,
    long jmax) {
  std::vector<std::pair<double, int>> out;
  for (std::size_t a = 0; a < fams.size(); ++a) {
    const CurvatureFamily& f = fams[a];
    const double lv = f.lambda(v), lw = f.lambda(w);
    for (long j = -jmax; j <= jmax; ++j) {
      const int m = f.mult(j);
      if (m == 0) continue;
      const double d = shifted_denom(f, lw, j);
      if (std::fabs(d) < 1e-12)
        throw std::runtime_error("focal point: family " + std::to_string(a) +
                                 ", j = " + std::to_string(j));
      out.emplace_back(lv / d, m);
    }
  }
  return out;
}

namespace detail {

/// theta_a = pi (1 - lambda_a(w)) / b_a, the cot/cosec argument.
inline double theta_of(const CurvatureFamily& f, double lam_w) {
  return std::numbers::pi * (1.0 - lam_w) / f.b;
}

inline void guard_pole(double theta) {
  const double r = std::remainder(theta, std::numbers::pi);
  if (std::fabs(r) < 1e-12) throw std::runtime_error("focal configuration");
}

}  // namespace detail

/// Regularizable trace of A_v at shift w, closed form:
///   sum_a [ (m_e+m_o) cot(theta_a) + (m_e-m_o) cosec(theta_a) ]
///         * (pi / (2 b_a)) * lambda_a(v).
inline double trace_closed(const std::vector<CurvatureFamily>& fams, const Vec& v,
                           const Vec& w) {
  constexpr double pi = std::numbers::pi;
  double total = 0.0;
  for (const CurvatureFamily& f : fams) {
    const double th = detail::theta_of(f, f.lambda(w));
    detail::guard_pole(th);
    double c = (f.m_e + f.m_o) * std::cos(th) / std::sin(th);
    if (f.m_e != f.m_o) c += (f.m_e - f.m_o) / std::sin(th);
    total += c * (pi / (2 * f.b)) * f.lambda(v);
  }
  return total;
}

/// Same quantity in vector form: the mean curvature vector
///   sum_a [coefficient] * (pi / (2 b_a)) * n_a,
/// so that trace_closed(v) = <result, v>.
inline Vec mean_curvature_vector(const std::vector<CurvatureFamily>& fams,
                                 const Vec& w) {
  constexpr double pi = std::numbers::pi;
  if (fams.empty()) return {};
  Vec total(fams[0].lambda_vec.size(), 0.0);
  for (const CurvatureFamily& f : fams) {
    const double th = detail::theta_of(f, f.lambda(w));
    detail::guard_pole(th);
    double c = (f.m_e + f.m_o) * std::cos(th) / std::sin(th);
    if (f.m_e != f.m_o) c += (f.m_e - f.m_o) / std::sin(th);
    axpy(total, c * pi / (2 * f.b), f.lambda_vec);
  }
  return total;
}

/// Independent oracle for trace_closed: direct summation of the spectrum in
/// symmetric (j, -j) pairs over |j| <= N; the paired tail is O(1/N).
inline double trace_oracle(const std::vector<CurvatureFamily>& fams, const Vec& v,
                           const Vec& w, long N) {
  double total = 0.0;
  for (const CurvatureFamily& f : fams) {
    const double lv = f.lambda(v), lw = f.lambda(w);
    detail::guard_pole(detail::theta_of(f, lw));
    auto term = [&](long j) {
      const int m = f.mult(j);
      if (m == 0) return 0.0;
      const double d = shifted_denom(f, lw, j);
      if (std::fabs(d) < 1e-12) throw std::runtime_error("focal configuration");
      return m * lv / d;
    };
    double s = term(0);
    for (long j = 1; j <= N; ++j) s += term(j) + term(-j);
    total += s;
  }
  return total;
}

/// Partial sum of the cotangent identity  sum_{|j|<=N} 2/(theta + 2 j pi).
inline double cot_identity_partial(double theta, long N) {
  double s = 2.0 / theta;
  for (long j = 1; j <= N; ++j) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j);
    s += 2.0 / (theta + a) + 2.0 / (theta - a);
  }
  return s;
}

/// Partial sum plus the analytic paired-tail correction; accurate to far
/// below 1e-8 already at N = 1e5 for theta in (0, pi).
inline double cot_identity_corrected(double theta, long N) {
  constexpr double pi = std::numbers::pi;
  const double n = static_cast<double>(N);
  const double tail = -(theta / (pi * pi)) * (1.0 / n - 1.0 / (2 * n * n) + 1.0 / (6 * n * n * n)) -
                      theta * theta * theta / (12.0 * pi * pi * pi * pi * n * n * n);
  return cot_identity_partial(theta, N) + tail;
}

inline double cot_identity_closed(double theta) {
  return (std::cos(theta) + 1.0) / std::sin(theta);
}

/// Sup over families and j of |lambda_{aj}(v) / (1 - lambda_{aj}(w))|,
/// computed exactly: per family the sup sits at the j minimizing
/// |1 + b j - lambda(w)|, so only the integers bracketing
/// (lambda(w) - 1)/b need checking (parity-filtered when m_e or m_o is 0).
inline double sup_norm_shape(const std::vector<CurvatureFamily>& fams, const Vec& v,
                             const Vec& w) {
  double best = 0.0;
  for (const CurvatureFamily& f : fams) {
    const double lv = f.lambda(v), lw = f.lambda(w);
    if (lv == 0.0) continue;
    const double jstar = (lw - 1.0) / f.b;
    const long j0 = static_cast<long>(std::floor(jstar));
    for (long j = j0 - 2; j <= j0 + 2; ++j) {
      if (f.mult(j) == 0) continue;
      const double d = shifted_denom(f, lw, j);
      if (std::fabs(d) < 1e-14) throw std::runtime_error("focal configuration");
      best = std::max(best, std::fabs(lv / d));
    }
  }
  return best;
}

}  // namespace alcove_mcf

#endif

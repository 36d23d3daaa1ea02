#ifndef ALCOVE_MCF_LINALG_HPP
#define ALCOVE_MCF_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace alcove_mcf {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec& axpy(Vec& y, double alpha, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
  return y;
}

inline Vec scaled(const Vec& x, double alpha) {
  Vec y(x);
  for (double& v : y) v *= alpha;
  return y;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec y(a);
  return axpy(y, 1.0, b);
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec y(a);
  return axpy(y, -1.0, b);
}

inline bool all_finite(const Vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

/// Column-major list of basis vectors; used as an orthonormal frame of a
/// subspace of the ambient coordinate space.
struct Frame {
  std::vector<Vec> basis;  // orthonormal, each of ambient dimension

  std::size_t ambient_dim() const { return basis.empty() ? 0 : basis[0].size(); }
  std::size_t rank() const { return basis.size(); }

  /// Coordinates of the orthogonal projection of x onto the span.
  Vec reduce(const Vec& x) const {
    Vec y(rank());
    for (std::size_t k = 0; k < rank(); ++k) y[k] = dot(basis[k], x);
    return y;
  }

  /// Ambient vector from span coordinates.
  Vec lift(const Vec& y) const {
    Vec x(ambient_dim(), 0.0);
    for (std::size_t k = 0; k < rank(); ++k) axpy(x, y[k], basis[k]);
    return x;
  }

  /// Norm of the component of x orthogonal to the span.
  double off_span_norm(const Vec& x) const {
    Vec r = sub(x, lift(reduce(x)));
    return norm(r);
  }
};

/// Gram-Schmidt frame of the span of the given vectors, in order.
inline Frame make_frame(const std::vector<Vec>& vectors, double tol = 1e-10) {
  Frame f;
  for (const Vec& v : vectors) {
    Vec r(v);
    for (const Vec& b : f.basis) axpy(r, -dot(b, r), b);
    double n = norm(r);
    if (n > tol) f.basis.push_back(scaled(r, 1.0 / n));
  }
  return f;
}

inline std::size_t span_rank(const std::vector<Vec>& vectors, double tol = 1e-10) {
  return make_frame(vectors, tol).rank();
}

/// Solves A x = b in place by Gaussian elimination with partial pivoting.
/// A is row-major n*n. Returns false if A is singular to working precision.
inline bool solve_dense(std::vector<double> A, Vec b, Vec& x, double tol = 1e-12) {
  const std::size_t n = b.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(A[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double v = std::fabs(A[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < tol) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      double m = A[r * n + col] / A[col * n + col];
      if (m == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r * n + c] -= m * A[col * n + c];
      b[r] -= m * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= A[ri * n + c] * x[c];
    x[ri] = s / A[ri * n + ri];
  }
  return true;
}

/// Least-squares solution of (possibly overdetermined) A x = b via normal
/// equations; A given as rows. Small systems only.
inline bool solve_least_squares(const std::vector<Vec>& rows, const Vec& b, Vec& x,
                                double tol = 1e-12) {
  if (rows.empty()) return false;
  const std::size_t n = rows[0].size();
  std::vector<double> ata(n * n, 0.0);
  Vec atb(n, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      atb[i] += rows[r][i] * b[r];
      for (std::size_t j = 0; j < n; ++j) ata[i * n + j] += rows[r][i] * rows[r][j];
    }
  }
  return solve_dense(std::move(ata), std::move(atb), x, tol);
}

}  // namespace alcove_mcf

#endif

#ifndef ALCOVE_MCF_ROOTDATA_HPP
#define ALCOVE_MCF_ROOTDATA_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace alcove_mcf {

/// A positive restricted root: the dual vector beta# (so beta(x) = <beta#,x>)
/// together with its vertical and horizontal multiplicities.
struct RestrictedRoot {
  Vec vector;   // beta# in ambient orthonormal coordinates
  int m_V = 0;  // dim(p_beta ∩ q)
  int m_H = 0;  // dim(p_beta ∩ h)
  std::string label;

  bool in_V() const { return m_V > 0; }
  bool in_H() const { return m_H > 0; }

  double value_at(const Vec& x) const { return dot(vector, x); }
};

/// Membership class of a root in the vertical/horizontal decomposition.
enum class RootClass { VerticalOnly, HorizontalOnly, Both };

inline RootClass root_class(const RestrictedRoot& r) {
  if (r.in_V() && r.in_H()) return RootClass::Both;
  if (r.in_V()) return RootClass::VerticalOnly;
  return RootClass::HorizontalOnly;
}

/// One Hermann action reduced to its restricted-root data.
struct ActionData {
  std::string name;
  int rank = 0;                     // dimension of the span of the roots
  std::vector<RestrictedRoot> roots;  // the positive system
  std::vector<int> simple_indices;  // indices into roots
  int highest_index = 0;            // index of the highest root delta
  double delta_factor = 1.0;        // 1 if delta in V\H, else 1/2
  std::map<std::string, int> params;

  std::size_t ambient_dim() const {
    return roots.empty() ? 0 : roots[0].vector.size();
  }

  /// Orthonormal frame of the root span, Gram-Schmidt over simple roots
  /// first (for A-type this yields the (e1-e2)/sqrt2, (e1+e2-2e3)/sqrt6
  /// style frame) then the remaining roots.
  Frame span_frame() const {
    std::vector<Vec> vs;
    for (int i : simple_indices) vs.push_back(roots[i].vector);
    for (const auto& r : roots) vs.push_back(r.vector);
    return make_frame(vs);
  }
};

namespace detail {

inline Vec unit(std::size_t dim, std::size_t i) {
  Vec v(dim, 0.0);
  v[i] = 1.0;
  return v;
}

inline Vec e_diff(std::size_t dim, std::size_t i, std::size_t j) {
  Vec v(dim, 0.0);
  v[i] = 1.0;
  v[j] = -1.0;
  return v;
}

inline Vec e_sum(std::size_t dim, std::size_t i, std::size_t j) {
  Vec v(dim, 0.0);
  v[i] = 1.0;
  v[j] = 1.0;
  return v;
}

inline std::string sub2(const char* base, std::size_t i, std::size_t j) {
  return std::string(base) + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace detail

/// Validates the structural invariants of an ActionData.
/// Throws std::invalid_argument naming the failing invariant.
inline void validate(const ActionData& data) {
  if (data.roots.empty()) throw std::invalid_argument("empty root list");
  const std::size_t dim = data.ambient_dim();
  for (const auto& r : data.roots) {
    if (r.vector.size() != dim)
      throw std::invalid_argument("root coefficient length mismatch");
    if (!all_finite(r.vector)) throw std::invalid_argument("non-finite root vector");
    if (norm(r.vector) < 1e-12) throw std::invalid_argument("zero root vector");
    if (r.m_V < 0 || r.m_H < 0)
      throw std::invalid_argument("negative multiplicity");
    if (r.m_V + r.m_H < 1)
      throw std::invalid_argument("root with zero total multiplicity");
  }
  if (data.simple_indices.empty())
    throw std::invalid_argument("empty simple root set");
  for (int i : data.simple_indices)
    if (i < 0 || i >= static_cast<int>(data.roots.size()))
      throw std::invalid_argument("simple index out of range");
  if (data.highest_index < 0 ||
      data.highest_index >= static_cast<int>(data.roots.size()))
    throw std::invalid_argument("highest index out of range");

  std::vector<Vec> simple;
  for (int i : data.simple_indices) simple.push_back(data.roots[i].vector);
  std::vector<Vec> all;
  for (const auto& r : data.roots) all.push_back(r.vector);
  const std::size_t r_all = span_rank(all);
  if (static_cast<int>(r_all) != data.rank)
    throw std::invalid_argument("rank does not match root span");
  if (span_rank(simple) != r_all)
    throw std::invalid_argument("simple roots do not span the root system");

  // Every positive root must be a nonnegative integer combination of the
  // simple roots, coefficient tolerance 1e-9.
  for (const auto& r : data.roots) {
    std::vector<Vec> cols(simple.size(), Vec(dim));
    // solve sum_k c_k simple_k = root in least squares over span coords
    Frame f = make_frame(simple);
    Vec rhs = f.reduce(r.vector);
    std::vector<Vec> rows;  // rows of the (rank x nsimple) matrix
    for (std::size_t k = 0; k < f.rank(); ++k) {
      Vec row(simple.size());
      for (std::size_t s = 0; s < simple.size(); ++s) row[s] = dot(f.basis[k], simple[s]);
      rows.push_back(row);
    }
    Vec coeff;
    if (!solve_least_squares(rows, rhs, coeff))
      throw std::invalid_argument("cannot express root over simple roots");
    for (double c : coeff) {
      if (c < -1e-9 || std::fabs(c - std::round(c)) > 1e-9)
        throw std::invalid_argument(
            "root is not a nonnegative integer combination of simple roots");
    }
  }

  const RestrictedRoot& delta = data.roots[data.highest_index];
  const double want = (delta.in_V() && !delta.in_H()) ? 1.0 : 0.5;
  if (std::fabs(data.delta_factor - want) > 1e-12)
    throw std::invalid_argument("delta_factor inconsistent with highest root class");
}

/// Preset catalog: the six Hermann actions, by name.
///  sp-isotropy      Sp(n) on SU(2n)/Sp(n)                (param n >= 2)
///  so2n-on-su2n     SO(2n) on SU(2n)/Sp(n)               (param n >= 2)
///  supq-isotropy    S(U(p)xU(q)) isotropy, p < q         (params p >= 2, q > p)
///  supp-isotropy    S(U(p)xU(p)) isotropy                (param p >= 2)
///  sopq-hermann     SO(p+q) on SU(p+q)/S(U(p)xU(q)), p<q (params p >= 2, q > p)
///  so2p-hermann     SO(2p) on SU(2p)/S(U(p)xU(p))        (param p >= 2)
inline ActionData preset(const std::string& name,
                         const std::map<std::string, int>& params) {
  using namespace detail;
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument(std::string("missing parameter ") + key);
    return it->second;
  };

  ActionData d;
  d.name = name;
  d.params = params;

  if (name == "sp-isotropy" || name == "so2n-on-su2n") {
    const int n = get("n");
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    const std::size_t dim = static_cast<std::size_t>(n);
    const bool isotropy = (name == "sp-isotropy");
    const int mv = isotropy ? 4 : 2;
    const int mh = isotropy ? 0 : 2;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        d.roots.push_back({e_diff(dim, i, j), mv, mh, sub2("b", i, j)});
    // beta_{i,i+1} sits at offset of pair (i,i+1) in the i<j ordering
    auto pair_index = [dim](std::size_t i, std::size_t j) {
      std::size_t idx = 0;
      for (std::size_t a = 0; a < i; ++a) idx += dim - 1 - a;
      return static_cast<int>(idx + (j - i - 1));
    };
    for (std::size_t i = 0; i + 1 < dim; ++i)
      d.simple_indices.push_back(pair_index(i, i + 1));
    d.highest_index = pair_index(0, dim - 1);
    d.rank = n - 1;
    d.delta_factor = isotropy ? 1.0 : 0.5;
  } else if (name == "supq-isotropy" || name == "sopq-hermann") {
    const int p = get("p");
    const int q = get("q");
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    if (q <= p) throw std::invalid_argument("q must exceed p");
    const std::size_t dim = static_cast<std::size_t>(p);
    const bool isotropy = (name == "supq-isotropy");
    const int m_pair_V = isotropy ? 2 : 1;
    const int m_pair_H = isotropy ? 0 : 1;
    const int m_axis_V = isotropy ? 2 * (q - p) : (q - p);
    const int m_axis_H = isotropy ? 0 : (q - p);
    const int m_long_V = isotropy ? 1 : 0;
    const int m_long_H = isotropy ? 0 : 1;
    int idx_b12 = -1, idx_sum12 = -1;
    std::vector<int> diff_index(dim, -1);
    std::vector<int> axis_index(dim, -1);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        if (i == 0 && j == 1) idx_b12 = static_cast<int>(d.roots.size());
        if (j == i + 1) diff_index[i] = static_cast<int>(d.roots.size());
        d.roots.push_back({e_diff(dim, i, j), m_pair_V, m_pair_H, sub2("b", i, j)});
      }
    for (std::size_t i = 0; i < dim; ++i) {
      axis_index[i] = static_cast<int>(d.roots.size());
      d.roots.push_back({unit(dim, i), m_axis_V, m_axis_H,
                         "b" + std::to_string(i + 1)});
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        if (i == 0 && j == 1) idx_sum12 = static_cast<int>(d.roots.size());
        d.roots.push_back({e_sum(dim, i, j), m_pair_V, m_pair_H,
                           "b" + std::to_string(i + 1) + "+b" + std::to_string(j + 1)});
      }
    for (std::size_t i = 0; i < dim; ++i)
      d.roots.push_back({scaled(unit(dim, i), 2.0), m_long_V, m_long_H,
                         "2b" + std::to_string(i + 1)});
    for (std::size_t i = 0; i + 1 < dim; ++i)
      d.simple_indices.push_back(diff_index[i]);
    d.simple_indices.push_back(axis_index[dim - 1]);
    d.highest_index = idx_sum12;
    (void)idx_b12;
    d.rank = p;
    d.delta_factor = isotropy ? 1.0 : 0.5;
  } else if (name == "supp-isotropy" || name == "so2p-hermann") {
    const int p = get("p");
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    const std::size_t dim = static_cast<std::size_t>(p);
    const bool isotropy = (name == "supp-isotropy");
    const int m_pair_V = isotropy ? 2 : 1;
    const int m_pair_H = isotropy ? 0 : 1;
    const int m_long_V = isotropy ? 1 : 0;
    const int m_long_H = isotropy ? 0 : 1;
    std::vector<int> diff_index(dim, -1);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        if (j == i + 1) diff_index[i] = static_cast<int>(d.roots.size());
        d.roots.push_back({e_diff(dim, i, j), m_pair_V, m_pair_H, sub2("b", i, j)});
      }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        d.roots.push_back({e_sum(dim, i, j), m_pair_V, m_pair_H,
                           "b" + std::to_string(i + 1) + "+b" + std::to_string(j + 1)});
    int idx_2b1 = -1, idx_2bp = -1;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == 0) idx_2b1 = static_cast<int>(d.roots.size());
      if (i == dim - 1) idx_2bp = static_cast<int>(d.roots.size());
      d.roots.push_back({scaled(unit(dim, i), 2.0), m_long_V, m_long_H,
                         "2b" + std::to_string(i + 1)});
    }
    for (std::size_t i = 0; i + 1 < dim; ++i)
      d.simple_indices.push_back(diff_index[i]);
    d.simple_indices.push_back(idx_2bp);
    d.highest_index = idx_2b1;
    d.rank = p;
    d.delta_factor = isotropy ? 1.0 : 0.5;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }

  validate(d);
  return d;
}

}  // namespace alcove_mcf

#endif

#ifndef ALCOVE_MCF_ALCOVE_HPP
#define ALCOVE_MCF_ALCOVE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootdata.hpp"

namespace alcove_mcf {

enum class WallKind {
  LowerV,      // beta > 0            (m_V > 0)
  UpperVonly,  // beta < pi           (V \ H)
  BandLower,   // beta > -pi/2        (H \ V)
  BandUpper,   // beta < pi/2         (H \ V)
  UpperBoth    // beta < pi/2         (V and H)
};

/// One half-space constraint sense*(beta(x) - level) > 0.
struct WallConstraint {
  int root_index = -1;
  WallKind kind = WallKind::LowerV;
  double level = 0.0;
  int sense = +1;        // +1: lower bound, -1: upper bound
  bool is_facet = false;

  // cached reduced-coordinate form: slack(y) = dot(normal, y) - offset,
  // where y are coordinates in the alcove frame
  Vec normal;
  double offset = 0.0;

  double slack_reduced(const Vec& y) const { return dot(normal, y) - offset; }
};

struct Alcove {
  std::vector<WallConstraint> walls;  // full three-case system
  Frame frame;                        // orthonormal frame of the root span
  std::vector<Vec> vertices;          // reduced coordinates
  Vec barycenter;                     // reduced; strictly interior

  std::vector<int> facet_indices() const {
    std::vector<int> f;
    for (std::size_t i = 0; i < walls.size(); ++i)
      if (walls[i].is_facet) f.push_back(static_cast<int>(i));
    return f;
  }

  double slack_at(const WallConstraint& w, const Vec& x_ambient,
                  const ActionData& data) const {
    return w.sense * (data.roots[w.root_index].value_at(x_ambient) - w.level);
  }

  double min_facet_slack(const Vec& y) const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& w : walls)
      if (w.is_facet) s = std::min(s, w.slack_reduced(y));
    return s;
  }

  Vec interior_point_ambient() const { return frame.lift(barycenter); }
};

enum class PointClass { Interior, OnStratum, Outside };

struct StratumSpec {
  std::vector<int> active_walls;  // indices into Alcove::walls (facets only)
  int dim = 0;
  Vec representative;             // ambient coordinates, relative interior
  std::vector<Vec> vertices;      // face vertices, reduced coordinates
};

struct Classification {
  PointClass where = PointClass::Outside;
  std::vector<int> active_walls;  // binding facets when OnStratum
};

namespace detail {

inline void subsets_of_size(std::size_t m, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= m; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace detail

/// Builds the fundamental alcove from the full three-case constraint system
/// over all positive roots, then marks the facets by vertex enumeration (the
/// region is bounded inside the root span, so every facet carries a vertex).
inline Alcove build_alcove(const ActionData& data) {
  constexpr double pi = std::numbers::pi;
  Alcove alc;
  alc.frame = data.span_frame();
  const std::size_t r = alc.frame.rank();

  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    const RestrictedRoot& root = data.roots[i];
    auto push = [&](WallKind kind, double level, int sense) {
      WallConstraint w;
      w.root_index = static_cast<int>(i);
      w.kind = kind;
      w.level = level;
      w.sense = sense;
      w.normal = scaled(alc.frame.reduce(root.vector), static_cast<double>(sense));
      w.offset = sense * level;
      alc.walls.push_back(std::move(w));
    };
    switch (root_class(root)) {
      case RootClass::VerticalOnly:
        push(WallKind::LowerV, 0.0, +1);
        push(WallKind::UpperVonly, pi, -1);
        break;
      case RootClass::HorizontalOnly:
        push(WallKind::BandLower, -pi / 2, +1);
        push(WallKind::BandUpper, pi / 2, -1);
        break;
      case RootClass::Both:
        push(WallKind::LowerV, 0.0, +1);
        push(WallKind::UpperBoth, pi / 2, -1);
        break;
    }
  }

  // vertex enumeration over r-subsets of constraints
  const std::size_t m = alc.walls.size();
  const double feas_tol = 1e-9;
  detail::subsets_of_size(m, r, [&](const std::vector<std::size_t>& idx) {
    std::vector<double> A(r * r);
    Vec b(r);
    for (std::size_t k = 0; k < r; ++k) {
      const WallConstraint& w = alc.walls[idx[k]];
      for (std::size_t c = 0; c < r; ++c) A[k * r + c] = w.normal[c];
      b[k] = w.offset;
    }
    Vec y;
    if (!solve_dense(std::move(A), std::move(b), y, 1e-10)) return;
    for (const auto& w : alc.walls)
      if (w.slack_reduced(y) < -feas_tol) return;
    for (const Vec& v : alc.vertices)
      if (norm(sub(v, y)) < 1e-8) return;
    alc.vertices.push_back(std::move(y));
  });

  if (alc.vertices.size() < r + 1)
    throw std::runtime_error("alcove interior is empty: infeasible constraint system");

  alc.barycenter.assign(r, 0.0);
  for (const Vec& v : alc.vertices) axpy(alc.barycenter, 1.0, v);
  alc.barycenter = scaled(alc.barycenter, 1.0 / alc.vertices.size());
  for (const auto& w : alc.walls)
    if (w.slack_reduced(alc.barycenter) < feas_tol)
      throw std::runtime_error("alcove interior is empty or lower-dimensional");

  // a constraint is a facet iff its binding vertex set has affine dim r-1
  const double bind_tol = 1e-8;
  for (auto& w : alc.walls) {
    std::vector<Vec> binding;
    for (const Vec& v : alc.vertices)
      if (std::fabs(w.slack_reduced(v)) < bind_tol) binding.push_back(v);
    if (binding.empty()) continue;
    std::vector<Vec> diffs;
    for (std::size_t k = 1; k < binding.size(); ++k)
      diffs.push_back(sub(binding[k], binding[0]));
    if (span_rank(diffs, 1e-8) == r - 1) w.is_facet = true;
  }

  // coincident facet hyperplanes (e.g. beta_i > 0 vs 2beta_i > 0): keep a
  // single canonical wall, preferring the shorter root vector
  for (std::size_t i = 0; i < m; ++i) {
    if (!alc.walls[i].is_facet) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!alc.walls[j].is_facet) continue;
      const double ni = norm(alc.walls[i].normal);
      const double nj = norm(alc.walls[j].normal);
      Vec di = scaled(alc.walls[i].normal, 1.0 / ni);
      Vec dj = scaled(alc.walls[j].normal, 1.0 / nj);
      if (norm(sub(di, dj)) < 1e-9 &&
          std::fabs(alc.walls[i].offset / ni - alc.walls[j].offset / nj) < 1e-9) {
        if (ni <= nj)
          alc.walls[j].is_facet = false;
        else
          alc.walls[i].is_facet = false;
      }
    }
  }
  return alc;
}

/// Point classification against the facet-reduced system.
inline Classification classify(const ActionData& data, const Alcove& alc,
                               const Vec& x, double tol = 1e-9) {
  Classification c;
  if (alc.frame.off_span_norm(x) > tol) {
    c.where = PointClass::Outside;
    return c;
  }
  const Vec y = alc.frame.reduce(x);
  bool interior = true;
  for (std::size_t i = 0; i < alc.walls.size(); ++i) {
    const auto& w = alc.walls[i];
    if (!w.is_facet) continue;
    const double s = w.slack_reduced(y);
    if (s < -tol) {
      c.where = PointClass::Outside;
      c.active_walls.clear();
      return c;
    }
    if (s <= tol) {
      interior = false;
      c.active_walls.push_back(static_cast<int>(i));
    }
  }
  (void)data;
  c.where = interior ? PointClass::Interior : PointClass::OnStratum;
  return c;
}

/// All faces of the alcove of the given dimension, each with a relative
/// interior representative (barycenter of the face's vertices).
inline std::vector<StratumSpec> enumerate_strata(const ActionData& data,
                                                 const Alcove& alc, int dim) {
  const std::size_t r = alc.frame.rank();
  if (dim < 0 || dim >= static_cast<int>(r))
    throw std::invalid_argument("stratum dimension out of range");
  const std::vector<int> facets = alc.facet_indices();
  const double bind_tol = 1e-8;

  std::vector<StratumSpec> out;
  // faces = nonempty intersections of facet subsets; seed from single facets
  // and grow: enumerate all subsets of facets (facet count is small)
  const std::size_t nf = facets.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << nf); ++mask) {
    std::vector<int> subset;
    for (std::size_t k = 0; k < nf; ++k)
      if (mask & (std::size_t(1) << k)) subset.push_back(facets[k]);
    // vertices binding the whole subset
    std::vector<Vec> vs;
    for (const Vec& v : alc.vertices) {
      bool all = true;
      for (int wi : subset)
        if (std::fabs(alc.walls[wi].slack_reduced(v)) >= bind_tol) {
          all = false;
          break;
        }
      if (all) vs.push_back(v);
    }
    if (vs.empty()) continue;
    Vec rep(r, 0.0);
    for (const Vec& v : vs) axpy(rep, 1.0, v);
    rep = scaled(rep, 1.0 / vs.size());
    // true active set at the representative
    std::vector<int> active;
    for (int wi : facets)
      if (std::fabs(alc.walls[wi].slack_reduced(rep)) < bind_tol)
        active.push_back(wi);
    std::vector<Vec> normals;
    for (int wi : active) normals.push_back(alc.walls[wi].normal);
    const int face_dim = static_cast<int>(r - span_rank(normals, 1e-8));
    if (face_dim != dim) continue;
    bool dup = false;
    for (const auto& s : out)
      if (s.active_walls == active) {
        dup = true;
        break;
      }
    if (!dup) out.push_back({active, face_dim, alc.frame.lift(rep), vs});
  }
  (void)data;
  return out;
}

/// Affine orthogonal reflection across the wall's hyperplane {beta = level}.
inline Vec reflect(const ActionData& data, const WallConstraint& wall, const Vec& x) {
  const RestrictedRoot& root = data.roots[wall.root_index];
  const double t = (root.value_at(x) - wall.level) / dot(root.vector, root.vector);
  Vec y(x);
  return axpy(y, -2.0 * t, root.vector);
}

}  // namespace alcove_mcf

#endif

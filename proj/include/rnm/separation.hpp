#pragma once

#include "rnm/convex_body.hpp"
#include "rnm/random_conjugate.hpp"

namespace rnm {

/// The bodies overlap everywhere: separation has nothing to act on.
class NoSeparationError : public PreconditionError {
 public:
  explicit NoSeparationError(const std::string& what) : PreconditionError(what) {}
};

inline constexpr double kDisjointThreshold = 1e-12;

/// Atoms where the per-atom sets are disjoint (distance strictly above the
/// threshold). Realizes the hereditarily disjoint stratification H(G,M)
/// atom-wise.
template <scalar_field K>
inline AtomSet hereditary_disjoint_stratification(const ConvexBody<K>& g,
                                                  const ConvexBody<K>& m) {
  require_same_space(g.space(), m.space());
  if (g.dim() != m.dim()) throw DomainError("bodies have different dims");
  AtomSet h(g.space());
  for (std::size_t a = 0; a < g.space()->size(); ++a) {
    if (closest_pair(g.geom(a), m.geom(a)).dist > kDisjointThreshold) h.insert(a);
  }
  return h;
}

namespace detail {

/// 0 lies in the interior of the hull iff the hull is full-dimensional and
/// contains a small cross-polytope around the origin; membership probes
/// replace the Chebyshev-center LP, sound up to a sqrt(D) factor.
inline bool origin_in_interior(const BodyGeom& g, double tol) {
  if (g.is_ball) return g.radius > 0.0 && g.center.norm() < g.radius;
  const Eigen::Index rd = g.points.rows();
  // full-dimensional: the points minus their mean must span R^rd
  Eigen::VectorXd mean = g.points.rowwise().mean();
  Eigen::MatrixXd centered = (g.points.colwise() - mean).transpose();
  if (greedy_independent_rows<double>(centered, 1e-12).size() !=
      static_cast<std::size_t>(rd)) {
    return false;
  }
  const double scale = std::max(1.0, g.max_coord_norm());
  const double probe = tol * scale;
  const double member_tol = 1e-12 * scale;
  for (Eigen::Index k = 0; k < rd; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(rd);
      z(k) = sgn * probe;
      if (!contains_point(g, z, member_tol)) return false;
    }
  }
  return true;
}

/// Interior nonempty: positive radius for balls, full affine dimension for
/// hulls.
inline bool interior_nonempty(const BodyGeom& g) {
  if (g.is_ball) return g.radius > 0.0;
  Eigen::VectorXd mean = g.points.rowwise().mean();
  Eigen::MatrixXd centered = (g.points.colwise() - mean).transpose();
  return greedy_independent_rows<double>(centered, 1e-12).size() ==
         static_cast<std::size_t>(g.points.rows());
}

}  // namespace detail

/// Minkowski functional of B at x, per atom: inf{t > 0 : x/t in B(a)}.
/// Closed form for balls; bisection on ray membership for hulls.
template <scalar_field K>
inline L0Scalar<double> gauge(const ConvexBody<K>& b, const RNElement<K>& x,
                              double bisect_tol = 1e-10) {
  require_same_space(b.space(), x.space());
  if (b.dim() != x.dim()) throw DomainError("gauge: dim mismatch");
  const std::size_t atoms = b.space()->size();
  std::vector<double> out(atoms, 0.0);

  for (std::size_t a = 0; a < atoms; ++a) {
    BodyGeom g = b.geom(a);
    if (!detail::origin_in_interior(g, 1e-10)) {
      throw PreconditionError("gauge: body is not L0-absorbent on atom '" +
                              b.space()->id(a) + "'");
    }
    Eigen::VectorXd z = realify<K>(x.atom_coords(a));
    const double zn = z.norm();
    if (zn == 0.0) {
      out[a] = 0.0;
      continue;
    }
    if (g.is_ball) {
      // smallest t with ||z - t c|| = t r: one quadratic
      const double cc = g.center.squaredNorm();
      const double zc = z.dot(g.center);
      const double aa = cc - g.radius * g.radius;  // < 0 since 0 is interior
      const double disc = zc * zc - aa * zn * zn;
      out[a] = (zc - std::sqrt(disc)) / aa;
      continue;
    }
    const double member_tol = 1e-12 * std::max(1.0, g.max_coord_norm());
    auto member_at = [&](double t) { return contains_point(g, z / t, member_tol); };
    double hi = 1.0;
    int guard = 0;
    while (!member_at(hi) && guard++ < 200) hi *= 2.0;
    if (guard >= 200) {
      throw InconsistencyError("gauge: ray never enters the body");
    }
    double lo = 0.0;
    while (hi - lo > bisect_tol) {
      double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (member_at(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[a] = hi;
  }
  return L0Scalar<double>(b.space(), std::move(out));
}

/// A separating functional together with the stratification it lives on.
template <scalar_field K>
struct Separation {
  RandomFunctional<K> functional;  // Riesz vector unit-normalized on H, zero off H
  AtomSet h;                       // hereditarily disjoint stratification
  L0Scalar<double> sup_first;      // sup of Re f over G, per atom (0 off H)
  L0Scalar<double> inf_second;     // inf of Re f over M, per atom (0 off H)
};

/// Separation of two bodies: on every atom of H(G,M) the functional built
/// from the closest-point direction satisfies Re f(x) <= Re f(y) for x in
/// G, y in M, strictly for interior x.
template <scalar_field K>
inline Separation<K> separate(const ConvexBody<K>& g, const ConvexBody<K>& m) {
  require_same_space(g.space(), m.space());
  if (g.dim() != m.dim()) throw DomainError("separate: dim mismatch");
  if (!g.nonempty_interior()) {
    throw PreconditionError("separate: first body must be flagged with nonempty interior");
  }
  const SpacePtr& space = g.space();
  for (std::size_t a = 0; a < space->size(); ++a) {
    if (!detail::interior_nonempty(g.geom(a))) {
      throw PreconditionError("separate: first body has empty interior on atom '" +
                              space->id(a) + "'");
    }
  }
  AtomSet h = hereditary_disjoint_stratification(g, m);
  if (h.measure() <= 0.0) {
    throw NoSeparationError("separate: bodies are nowhere disjoint (P(H) = 0)");
  }

  RNElement<K> riesz = RNElement<K>::zero(space, g.dim());
  L0Scalar<double> sup_g = L0Scalar<double>::zero(space);
  L0Scalar<double> inf_m = L0Scalar<double>::zero(space);

  for (std::size_t a : h.indices()) {
    BodyGeom gg = g.geom(a);
    BodyGeom gm = m.geom(a);
    ClosestPair cp = closest_pair(gg, gm);
    Eigen::VectorXd u = (cp.second - cp.first) / cp.dist;
    const double sup_val = support_value(gg, u);
    const double inf_val = -support_value(gm, -u);
    if (!(sup_val < inf_val)) {
      throw InconsistencyError("separate: closest-point direction fails to separate");
    }
    std::vector<K> dir = unrealify<K>(u);
    for (std::size_t j = 0; j < g.dim(); ++j) riesz.at(a, j) = dir[j];
    sup_g.at(a) = sup_val;
    inf_m.at(a) = inf_val;
  }
  return Separation<K>{RandomFunctional<K>(std::move(riesz)), std::move(h),
                       std::move(sup_g), std::move(inf_m)};
}

}  // namespace rnm

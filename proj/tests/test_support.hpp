// Shared generators and independent oracles for the test suites. Oracles here
// must not reuse the solver's factorization path: norms are checked by
// sampling, ranks by Gram determinants, distances by support functions.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "rnm/rnm.hpp"

namespace rnmtest {

using rnm::AtomSet;
using rnm::ConvexBody;
using rnm::L0Scalar;
using rnm::RandomFunctional;
using rnm::Rng;
using rnm::RNElement;
using rnm::SpacePtr;

using Complex = std::complex<double>;

/// Sampled supremum of |<x, y0>| over random unit vectors x, per atom. The
/// independent oracle for functional norms: approaches the true value from
/// below and never exceeds it.
template <rnm::scalar_field K>
inline L0Scalar<double> sampled_functional_norm(const RandomFunctional<K>& f,
                                                std::size_t samples, Rng& rng) {
  const SpacePtr& space = f.space();
  L0Scalar<double> best = L0Scalar<double>::zero(space);
  for (std::size_t s = 0; s < samples; ++s) {
    RNElement<K> x = rnm::sample_unit_sphere_element<K>(rng, space, f.dim());
    L0Scalar<double> v = rnm::abs(rnm::evaluate(f, x));
    best = rnm::sup(best, v);
  }
  return best;
}

/// Gram determinant of the Riesz vectors of `fs` at one atom; positive iff
/// the vectors are linearly independent.
template <rnm::scalar_field K>
inline double gram_det(const std::vector<RandomFunctional<K>>& fs,
                       std::size_t atom) {
  const std::size_t n = fs.size();
  Eigen::MatrixXcd g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t c = 0; c < fs[i].dim(); ++c) {
        Complex vi, vj;
        if constexpr (rnm::is_complex_v<K>) {
          vi = fs[i].riesz().at(atom, c);
          vj = fs[j].riesz().at(atom, c);
        } else {
          vi = Complex(fs[i].riesz().at(atom, c), 0.0);
          vj = Complex(fs[j].riesz().at(atom, c), 0.0);
        }
        s += vi * std::conj(vj);
      }
      g(i, j) = s;
    }
  }
  return g.determinant().real();
}

/// Normalize the Gram determinant by the product of squared norms so the
/// positivity test is scale-free.
template <rnm::scalar_field K>
inline double normalized_gram_det(const std::vector<RandomFunctional<K>>& fs,
                                  std::size_t atom) {
  double scale = 1.0;
  for (const auto& f : fs) {
    double n2 = 0.0;
    for (std::size_t c = 0; c < f.dim(); ++c) {
      double m = rnm::abs_of<K>(f.riesz().at(atom, c));
      n2 += m * m;
    }
    scale *= std::max(n2, 1e-300);
  }
  return gram_det<K>(fs, atom) / scale;
}

// ---------------------------------------------------------------------------
// random instance generators
// ---------------------------------------------------------------------------

struct HellyGenConfig {
  std::size_t max_atoms = 8;
  std::size_t max_dim = 5;
  std::size_t max_n = 4;
  bool force_feasible = false;
  bool force_consistent = false;  // targets in range of Y^H by construction
};

template <rnm::scalar_field K>
inline rnm::HellyInstance<K> sample_helly_instance(Rng& rng,
                                                   const HellyGenConfig& cfg) {
  const std::size_t atoms = 1 + rng.index(cfg.max_atoms);
  const std::size_t d = 1 + rng.index(cfg.max_dim);
  const std::size_t n = 1 + rng.index(cfg.max_n);
  SpacePtr space = rnm::sample_space(rng, atoms);

  std::vector<RandomFunctional<K>> fs;
  for (std::size_t k = 0; k < n; ++k) {
    RNElement<K> r = rnm::sample_element<K>(rng, space, d);
    // plant rank drops: zero out the vector on some atoms, or repeat one
    if (k > 0 && rng.coin(0.25)) {
      r = fs[rng.index(k)].riesz();
      L0Scalar<K> mult = rnm::sample_l0<K>(rng, space);
      r = rnm::scalar_mul(mult, r);
    }
    if (rng.coin(0.3)) {
      std::size_t a = rng.index(atoms);
      for (std::size_t j = 0; j < d; ++j) r.at(a, j) = K{0};
    }
    fs.emplace_back(std::move(r));
  }

  std::vector<L0Scalar<K>> targets;
  if (cfg.force_feasible || cfg.force_consistent || rng.coin(0.5)) {
    // consistent by construction: xi_k = f_k(z)
    RNElement<K> z = rnm::sample_element<K>(rng, space, d);
    for (std::size_t k = 0; k < n; ++k) targets.push_back(rnm::evaluate(fs[k], z));
  } else {
    for (std::size_t k = 0; k < n; ++k) targets.push_back(rnm::sample_l0<K>(rng, space));
  }

  std::vector<double> beta_vals(atoms);
  for (std::size_t a = 0; a < atoms; ++a) {
    beta_vals[a] = std::abs(rng.normal()) * 2.0;
    if (cfg.force_feasible) beta_vals[a] += 50.0;  // far above any min-norm value
  }
  L0Scalar<double> beta(space, std::move(beta_vals));
  L0Scalar<double> eps = L0Scalar<double>::constant(space, 0.25 + rng.uniform01());
  return rnm::HellyInstance<K>(std::move(fs), std::move(targets), std::move(beta),
                               std::move(eps));
}

// ---------------------------------------------------------------------------
// random body generators
// ---------------------------------------------------------------------------

/// Hull of m >= dim+1 points around a center, guaranteed full-dimensional by
/// including a simplex of axis points.
template <rnm::scalar_field K>
inline typename ConvexBody<K>::Hull sample_hull(Rng& rng, std::size_t dim,
                                                const std::vector<K>& center,
                                                double spread) {
  const std::size_t real_dim = rnm::is_complex_v<K> ? 2 * dim : dim;
  typename ConvexBody<K>::Hull hull;
  auto push_offset = [&](const Eigen::VectorXd& off) {
    std::vector<K> p = rnm::unrealify<K>(off);
    for (std::size_t c = 0; c < dim; ++c) p[c] += center[c];
    hull.points.push_back(std::move(p));
  };
  for (std::size_t k = 0; k < real_dim; ++k) {
    Eigen::VectorXd off = Eigen::VectorXd::Zero(real_dim);
    off(k) = spread * (0.5 + rng.uniform01());
    push_offset(off);
    off(k) = -spread * (0.5 + rng.uniform01());
    push_offset(off);
  }
  const std::size_t extra = rng.index(4);
  for (std::size_t k = 0; k < extra; ++k) {
    Eigen::VectorXd off(real_dim);
    for (Eigen::Index i = 0; i < off.size(); ++i) off(i) = spread * rng.normal();
    push_offset(off);
  }
  return hull;
}

/// A body that is either a ball or a full-dimensional hull at each atom,
/// with all geometry within distance `spread` of `center_shift`.
template <rnm::scalar_field K>
inline ConvexBody<K> sample_body(Rng& rng, const SpacePtr& space, std::size_t dim,
                                 double center_scale, double spread,
                                 bool interior_flag) {
  std::vector<typename ConvexBody<K>::AtomDesc> descs;
  for (std::size_t a = 0; a < space->size(); ++a) {
    std::vector<K> center(dim);
    for (auto& c : center) c = rng.scalar<K>() * center_scale;
    if (rng.coin()) {
      typename ConvexBody<K>::Ball b;
      b.center = center;
      b.radius = spread * (0.5 + rng.uniform01());
      descs.push_back(std::move(b));
    } else {
      descs.push_back(sample_hull<K>(rng, dim, center, spread));
    }
  }
  return ConvexBody<K>(space, dim, std::move(descs), interior_flag);
}

/// A pair (G, M) that is disjoint exactly on a known subset of atoms: on
/// disjoint atoms M is moved far away along a random direction, elsewhere M
/// is centered on G.
template <rnm::scalar_field K>
struct BodyPair {
  ConvexBody<K> g;
  ConvexBody<K> m;
  AtomSet disjoint_atoms;
};

template <rnm::scalar_field K>
inline BodyPair<K> sample_disjoint_pair(Rng& rng, const SpacePtr& space,
                                        std::size_t dim) {
  const std::size_t real_dim = rnm::is_complex_v<K> ? 2 * dim : dim;
  AtomSet disjoint(space);
  std::vector<typename ConvexBody<K>::AtomDesc> g_descs, m_descs;
  for (std::size_t a = 0; a < space->size(); ++a) {
    std::vector<K> g_center(dim, K{0});
    const double g_spread = 0.4 + rng.uniform01();
    bool g_ball = rng.coin();
    if (g_ball) {
      typename ConvexBody<K>::Ball b;
      b.center = g_center;
      b.radius = g_spread;
      g_descs.push_back(std::move(b));
    } else {
      g_descs.push_back(sample_hull<K>(rng, dim, g_center, g_spread));
    }

    const bool make_disjoint = rng.coin(0.7);
    std::vector<K> m_center(dim, K{0});
    const double m_spread = 0.2 + 0.5 * rng.uniform01();
    if (make_disjoint) {
      disjoint.insert(a);
      // push M beyond any point of G: both bodies live in a ball of radius
      // ~ 2.5 * spread around their centers
      Eigen::VectorXd dir(real_dim);
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = rng.normal();
      dir.normalize();
      const double shift = 4.0 * (g_spread + m_spread) + 1.0 + rng.uniform01();
      std::vector<K> off = rnm::unrealify<K>(Eigen::VectorXd(shift * dir));
      for (std::size_t c = 0; c < dim; ++c) m_center[c] = off[c];
    }
    if (rng.coin()) {
      typename ConvexBody<K>::Ball b;
      b.center = m_center;
      b.radius = m_spread;
      m_descs.push_back(std::move(b));
    } else {
      m_descs.push_back(sample_hull<K>(rng, dim, m_center, m_spread));
    }
  }
  return BodyPair<K>{ConvexBody<K>(space, dim, std::move(g_descs), true),
                     ConvexBody<K>(space, dim, std::move(m_descs), false),
                     std::move(disjoint)};
}

/// Random point of a body atom: balls via direction/radius, hulls via random
/// convex weights. With `interior`, stay strictly inside.
template <rnm::scalar_field K>
inline RNElement<K> sample_member(Rng& rng, const ConvexBody<K>& body,
                                  bool interior) {
  const SpacePtr& space = body.space();
  RNElement<K> x = RNElement<K>::zero(space, body.dim());
  for (std::size_t a = 0; a < space->size(); ++a) {
    rnm::BodyGeom g = body.geom(a);
    Eigen::VectorXd pt;
    if (g.is_ball) {
      Eigen::VectorXd dir(g.center.size());
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = rng.normal();
      if (dir.norm() > 0) dir.normalize();
      double r = (interior ? 0.9 : 1.0) * g.radius * std::pow(rng.uniform01(), 0.7);
      pt = g.center + r * dir;
    } else {
      const Eigen::Index m = g.points.cols();
      Eigen::VectorXd w(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        w(i) = interior ? 0.05 + rng.uniform01() : rng.uniform01() * (rng.coin(0.3) ? 0.0 : 1.0);
      }
      if (w.sum() == 0.0) w.setConstant(1.0);
      w /= w.sum();
      pt = g.points * w;
    }
    std::vector<K> coords = rnm::unrealify<K>(pt);
    for (std::size_t c = 0; c < body.dim(); ++c) x.at(a, c) = coords[c];
  }
  return x;
}

}  // namespace rnmtest

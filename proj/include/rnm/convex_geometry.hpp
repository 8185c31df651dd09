#pragma once

#include <Eigen/Dense>
#include <limits>
#include <span>
#include <vector>

#include "rnm/core.hpp"

namespace rnm {

/// Geometry runs in realified coordinates: C^d is treated as R^{2d} with
/// interleaved (re, im) pairs, so that Re<x,y> becomes the real dot product.
template <scalar_field K>
inline Eigen::VectorXd realify(std::span<const K> v) {
  if constexpr (is_complex_v<K>) {
    Eigen::VectorXd out(2 * v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      out(2 * j) = v[j].real();
      out(2 * j + 1) = v[j].imag();
    }
    return out;
  } else {
    Eigen::VectorXd out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out(j) = v[j];
    return out;
  }
}

template <scalar_field K>
inline std::vector<K> unrealify(const Eigen::VectorXd& v) {
  if constexpr (is_complex_v<K>) {
    std::vector<K> out(static_cast<std::size_t>(v.size()) / 2);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = K(v(2 * j), v(2 * j + 1));
    return out;
  } else {
    return std::vector<K>(v.data(), v.data() + v.size());
  }
}

inline constexpr double kGeomTol = 1e-10;
inline constexpr int kGeomIterCap = 100000;

struct MnpResult {
  Eigen::VectorXd point;    // minimum-norm point of the hull of the columns
  Eigen::VectorXd weights;  // convex weights over the columns
};

/// Wolfe's minimum-norm-point algorithm over conv{columns of pts}. Finite
/// projection-type method; termination is at floating-point resolution so
/// that downstream membership thresholds near 1e-12 stay decidable.
inline MnpResult min_norm_point(const Eigen::MatrixXd& pts,
                                int iter_cap = kGeomIterCap) {
  const Eigen::Index m = pts.cols();
  if (m == 0) throw DomainError("min_norm_point: no points");
  MnpResult res;
  res.weights = Eigen::VectorXd::Zero(m);

  double scale = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) scale = std::max(scale, pts.col(j).norm());
  if (scale == 0.0) {
    res.point = Eigen::VectorXd::Zero(pts.rows());
    res.weights(0) = 1.0;
    return res;
  }
  const double opt_tol = 1e-14 * scale * scale;
  const double drop_tol = 1e-14;

  // corral state
  std::vector<Eigen::Index> corral;
  Eigen::VectorXd w(1);
  {
    Eigen::Index j0 = 0;
    double best = pts.col(0).norm();
    for (Eigen::Index j = 1; j < m; ++j) {
      double nj = pts.col(j).norm();
      if (nj < best) {
        best = nj;
        j0 = j;
      }
    }
    corral.push_back(j0);
    w(0) = 1.0;
  }

  auto corral_point = [&]() {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(pts.rows());
    for (std::size_t i = 0; i < corral.size(); ++i) x += w(i) * pts.col(corral[i]);
    return x;
  };

  int iters = 0;
  double prev_sq = std::numeric_limits<double>::infinity();
  while (iters++ < iter_cap) {
    Eigen::VectorXd x = corral_point();
    // no relative descent since the last major cycle: fp-optimal
    if (x.squaredNorm() > prev_sq * (1.0 - 1e-12)) break;
    prev_sq = x.squaredNorm();

    Eigen::Index jbest = 0;
    double vbest = x.dot(pts.col(0));
    for (Eigen::Index j = 1; j < m; ++j) {
      double vj = x.dot(pts.col(j));
      if (vj < vbest) {
        vbest = vj;
        jbest = j;
      }
    }
    if (vbest > x.squaredNorm() - opt_tol) break;
    bool already = false;
    for (Eigen::Index c : corral) {
      if (c == jbest) {
        already = true;
        break;
      }
    }
    if (already) break;  // numerical stall: current point is optimal within fp

    corral.push_back(jbest);
    Eigen::VectorXd wext(corral.size());
    wext.head(w.size()) = w;
    wext(corral.size() - 1) = 0.0;
    w = wext;

    // minor cycles: pull the affine minimizer back into the simplex
    while (iters++ < iter_cap) {
      const std::size_t s = corral.size();
      Eigen::MatrixXd kkt(s + 1, s + 1);
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j2 = 0; j2 < s; ++j2) {
          kkt(i, j2) = pts.col(corral[i]).dot(pts.col(corral[j2]));
        }
        kkt(i, s) = 1.0;
        kkt(s, i) = 1.0;
      }
      kkt(s, s) = 0.0;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
      rhs(s) = 1.0;
      Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
      Eigen::VectorXd v = sol.head(s);
      if (!v.allFinite()) {  // degenerate corral; keep the current iterate
        corral.pop_back();
        w.conservativeResize(corral.size());
        break;
      }

      bool interior = true;
      for (std::size_t i = 0; i < s; ++i) {
        if (v(i) <= drop_tol) {
          interior = false;
          break;
        }
      }
      if (interior) {
        w = v;
        break;
      }

      double theta = 1.0;
      for (std::size_t i = 0; i < s; ++i) {
        if (v(i) <= drop_tol && w(i) > v(i)) {
          theta = std::min(theta, w(i) / (w(i) - v(i)));
        }
      }
      w = (1.0 - theta) * w + theta * v;
      // drop vanished points
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < s; ++i) {
        if (w(i) > drop_tol) {
          kept.push_back(corral[i]);
          kept_w.push_back(w(i));
        }
      }
      if (kept.empty()) {  // all mass collapsed: keep the best single point
        kept.push_back(corral[0]);
        kept_w.push_back(1.0);
      }
      corral = kept;
      w = Eigen::Map<Eigen::VectorXd>(kept_w.data(), kept_w.size());
      w /= w.sum();
    }
  }

  for (std::size_t i = 0; i < corral.size(); ++i) res.weights(corral[i]) = w(i);
  res.point = corral_point();
  return res;
}

/// Realified per-atom body: a Euclidean ball or the hull of finitely many
/// points (columns).
struct BodyGeom {
  bool is_ball = false;
  Eigen::VectorXd center;  // ball only
  double radius = 0.0;     // ball only
  Eigen::MatrixXd points;  // hull only, columns are vertices

  Eigen::Index dim() const { return is_ball ? center.size() : points.rows(); }

  double max_coord_norm() const {
    if (is_ball) return center.norm() + radius;
    double s = 0.0;
    for (Eigen::Index j = 0; j < points.cols(); ++j) s = std::max(s, points.col(j).norm());
    return s;
  }
};

inline double support_value(const BodyGeom& g, const Eigen::VectorXd& u) {
  if (g.is_ball) return g.center.dot(u) + g.radius * u.norm();
  double best = g.points.col(0).dot(u);
  for (Eigen::Index j = 1; j < g.points.cols(); ++j) {
    best = std::max(best, g.points.col(j).dot(u));
  }
  return best;
}

struct Projection {
  Eigen::VectorXd point;
  double dist = 0.0;
};

inline Projection project_point(const BodyGeom& g, const Eigen::VectorXd& z) {
  Projection out;
  if (g.is_ball) {
    Eigen::VectorXd v = z - g.center;
    double d = v.norm();
    if (d <= g.radius) {
      out.point = z;
      out.dist = 0.0;
    } else {
      out.point = g.center + (g.radius / d) * v;
      out.dist = d - g.radius;
    }
    return out;
  }
  Eigen::MatrixXd shifted = g.points.colwise() - z;
  MnpResult mnp = min_norm_point(shifted);
  out.point = z + mnp.point;
  out.dist = mnp.point.norm();
  return out;
}

inline bool contains_point(const BodyGeom& g, const Eigen::VectorXd& z,
                           double tol) {
  return project_point(g, z).dist <= tol;
}

struct ClosestPair {
  double dist = 0.0;
  Eigen::VectorXd first;   // point of the first body
  Eigen::VectorXd second;  // point of the second body
};

/// Closest points between two per-atom bodies. Balls in closed form, hulls
/// via the minimum-norm point of the Minkowski difference, which also yields
/// the achieving pair through its convex weights.
inline ClosestPair closest_pair(const BodyGeom& a, const BodyGeom& b) {
  ClosestPair out;
  if (a.is_ball && b.is_ball) {
    Eigen::VectorXd v = b.center - a.center;
    double d = v.norm();
    out.dist = std::max(0.0, d - a.radius - b.radius);
    if (d > 0.0) {
      Eigen::VectorXd u = v / d;
      out.first = a.center + std::min(a.radius, d) * u;
      out.second = b.center - std::min(b.radius, d) * u;
      // overlapping balls: the first point already lies in both
      if (out.dist == 0.0) out.second = out.first;
    } else {
      out.first = out.second = a.center;
    }
    return out;
  }
  if (a.is_ball || b.is_ball) {
    const BodyGeom& ball = a.is_ball ? a : b;
    const BodyGeom& hull = a.is_ball ? b : a;
    Projection p = project_point(hull, ball.center);
    Eigen::VectorXd v = p.point - ball.center;
    double d = v.norm();
    Eigen::VectorXd ball_pt;
    if (d > 0.0) {
      ball_pt = ball.center + (std::min(ball.radius, d) / d) * v;
    } else {
      ball_pt = ball.center;
    }
    out.dist = std::max(0.0, d - ball.radius);
    if (out.dist == 0.0) ball_pt = p.point;
    if (a.is_ball) {
      out.first = ball_pt;
      out.second = p.point;
    } else {
      out.first = p.point;
      out.second = ball_pt;
    }
    return out;
  }
  // hull/hull: minimum-norm point of {q_j - p_i}
  const Eigen::Index ma = a.points.cols();
  const Eigen::Index mb = b.points.cols();
  Eigen::MatrixXd diff(a.points.rows(), ma * mb);
  for (Eigen::Index i = 0; i < ma; ++i) {
    for (Eigen::Index j = 0; j < mb; ++j) {
      diff.col(i * mb + j) = b.points.col(j) - a.points.col(i);
    }
  }
  MnpResult mnp = min_norm_point(diff);
  out.dist = mnp.point.norm();
  out.first = Eigen::VectorXd::Zero(a.points.rows());
  out.second = Eigen::VectorXd::Zero(a.points.rows());
  for (Eigen::Index i = 0; i < ma; ++i) {
    for (Eigen::Index j = 0; j < mb; ++j) {
      double wij = mnp.weights(i * mb + j);
      if (wij == 0.0) continue;
      out.first += wij * a.points.col(i);
      out.second += wij * b.points.col(j);
    }
  }
  return out;
}

}  // namespace rnm

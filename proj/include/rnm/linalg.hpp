#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "rnm/random_conjugate.hpp"

namespace rnm {

template <scalar_field K>
using DenseMatrix = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <scalar_field K>
using DenseVector = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/// d x n matrix whose columns are the Riesz vectors of fs at one atom.
template <scalar_field K>
inline DenseMatrix<K> riesz_matrix(std::span<const RandomFunctional<K>> fs,
                                   std::size_t atom) {
  const std::size_t d = fs.front().dim();
  DenseMatrix<K> y(d, fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    for (std::size_t j = 0; j < d; ++j) y(j, k) = fs[k].riesz().at(atom, j);
  }
  return y;
}

template <scalar_field K>
inline DenseVector<K> atom_vector(const RNElement<K>& x, std::size_t atom) {
  DenseVector<K> v(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) v(j) = x.at(atom, j);
  return v;
}

template <scalar_field K>
inline DenseVector<K> targets_at(std::span<const L0Scalar<K>> ts, std::size_t atom) {
  DenseVector<K> v(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) v(k) = ts[k].at(atom);
  return v;
}

template <scalar_field K>
struct MinNormSolution {
  DenseVector<K> x;       // minimum-norm least-squares solution
  Eigen::Index rank = 0;
  double residual = 0.0;  // ||A x - b||
  bool consistent = false;
};

/// Minimum-norm least-squares solution of A x = b via a rank-revealing
/// complete orthogonal decomposition. `tol` is the shared relative
/// rank/consistency threshold. The threshold must be in place before the
/// factorization: the second orthogonalization is built for the rank chosen
/// at compute time.
template <scalar_field K>
inline MinNormSolution<K> min_norm_solve(const DenseMatrix<K>& a,
                                         const DenseVector<K>& b, double tol) {
  MinNormSolution<K> out;
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix<K>> cod;
  cod.setThreshold(tol);
  cod.compute(a);
  out.x = cod.solve(b);
  out.rank = cod.rank();
  out.residual = (a * out.x - b).norm();
  out.consistent = out.residual <= tol * (1.0 + b.norm());
  return out;
}

/// Minimum-norm preimage of v under A (assumes v in range(A) up to tol).
template <scalar_field K>
inline DenseVector<K> min_norm_preimage(const DenseMatrix<K>& a,
                                        const DenseVector<K>& v, double tol) {
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix<K>> cod;
  cod.setThreshold(tol);
  cod.compute(a);
  return cod.solve(v);
}

/// Greedy lexicographic-first maximal independent subset of the rows of m.
/// A row joins the selection when its residual after projection onto the
/// span of the already-selected rows exceeds tol_rel * (largest row norm).
template <scalar_field K>
inline std::vector<std::size_t> greedy_independent_rows(const DenseMatrix<K>& m,
                                                        double tol_rel) {
  double max_row = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    max_row = std::max(max_row, m.row(i).norm());
  }
  std::vector<std::size_t> selected;
  if (max_row == 0.0) return selected;
  const double tau = tol_rel * max_row;

  std::vector<DenseVector<K>> basis;  // orthonormalized selected rows
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    DenseVector<K> r = m.row(i).transpose();
    for (const auto& q : basis) r -= q * q.dot(r);
    // one re-orthogonalization pass keeps the selection stable
    for (const auto& q : basis) r -= q * q.dot(r);
    if (r.norm() > tau) {
      basis.push_back(r / r.norm());
      selected.push_back(static_cast<std::size_t>(i));
    }
  }
  return selected;
}

}  // namespace rnm

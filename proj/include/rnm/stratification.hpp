#pragma once

#include <map>
#include <span>
#include <vector>

#include "rnm/linalg.hpp"

namespace rnm {

/// Atoms where |xi| > 0, exactly.
template <scalar_field K>
inline AtomSet support(const L0Scalar<K>& xi) {
  AtomSet out(xi.space());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (abs_of<K>(xi.at(i)) > 0.0) out.insert(i);
  }
  return out;
}

inline constexpr double kDefaultPivotTol = 1e-10;
inline constexpr double kDefaultExpressTol = 1e-9;

/// Quasi-free stratification of the module generated by n functionals:
/// parts[i] collects the atoms where the Riesz vectors span an i-dimensional
/// subspace, and bases[i] holds i functionals that restrict to a basis there.
///
/// A single subfamily of the generators need not stay independent across a
/// whole rank stratum; `groups` records the sub-partition on which a uniform
/// selection exists, and bases[i] is the gluing of the per-group selections.
template <scalar_field K>
struct Stratification {
  struct Group {
    AtomSet atoms;
    std::vector<std::size_t> selected;  // indices into the generating family
  };

  std::vector<AtomSet> parts;                          // ranks 0..n
  std::vector<std::vector<RandomFunctional<K>>> bases; // bases[i].size() == i
  std::vector<Group> groups;                           // rank >= 1 only
  std::vector<std::size_t> atom_rank;                  // per atom
};

template <scalar_field K>
inline Stratification<K> quasi_free_stratification(
    std::span<const RandomFunctional<K>> fs, double pivot_tol = kDefaultPivotTol) {
  if (fs.empty()) throw DomainError("quasi_free_stratification: empty family");
  const SpacePtr& space = fs.front().space();
  const std::size_t d = fs.front().dim();
  for (const auto& f : fs) {
    require_same_space(f.space(), space);
    if (f.dim() != d) throw DomainError("quasi_free_stratification: dim mismatch");
  }
  const std::size_t n = fs.size();
  const std::size_t atoms = space->size();

  Stratification<K> strat;
  strat.atom_rank.resize(atoms, 0);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_selection;

  for (std::size_t a = 0; a < atoms; ++a) {
    DenseMatrix<K> rows(n, d);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < d; ++j) rows(k, j) = fs[k].riesz().at(a, j);
    }
    std::vector<std::size_t> sel = greedy_independent_rows(rows, pivot_tol);
    strat.atom_rank[a] = sel.size();
    if (!sel.empty()) by_selection[sel].push_back(a);
  }

  strat.parts.assign(n + 1, AtomSet(space));
  for (std::size_t a = 0; a < atoms; ++a) strat.parts[strat.atom_rank[a]].insert(a);

  for (auto& [sel, atom_list] : by_selection) {
    strat.groups.push_back({AtomSet(space, atom_list), sel});
  }

  // Glue the per-group selections into i basis functionals per rank-i part,
  // each vanishing outside its part.
  strat.bases.assign(n + 1, {});
  for (std::size_t i = 1; i <= n; ++i) {
    if (strat.parts[i].empty()) continue;
    std::vector<RNElement<K>> riesz(i, RNElement<K>::zero(space, d));
    for (const auto& g : strat.groups) {
      if (g.selected.size() != i) continue;
      for (std::size_t a : g.atoms.indices()) {
        for (std::size_t j = 0; j < i; ++j) {
          for (std::size_t c = 0; c < d; ++c) {
            riesz[j].at(a, c) = fs[g.selected[j]].riesz().at(a, c);
          }
        }
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      strat.bases[i].push_back(RandomFunctional<K>(std::move(riesz[j])));
    }
  }
  return strat;
}

/// Coefficients eta_j with I_{A_i} f = sum_j eta_j g_j on stratum i. The
/// functionals' Riesz identity riesz(eta.g) = conj(eta) riesz(g) makes this a
/// per-atom least-squares solve in the basis Riesz columns; a residual above
/// tolerance means the stratification's rank analysis is broken.
template <scalar_field K>
inline std::vector<L0Scalar<K>> express_in_basis(
    const RandomFunctional<K>& f, const Stratification<K>& strat, std::size_t i,
    double residual_tol = kDefaultExpressTol) {
  if (i == 0 || i >= strat.parts.size() || strat.parts[i].empty()) {
    throw DomainError("express_in_basis: empty or invalid stratum index");
  }
  const SpacePtr& space = f.space();
  const auto& basis = strat.bases[i];
  std::vector<L0Scalar<K>> coeffs(i, L0Scalar<K>::zero(space));

  for (std::size_t a : strat.parts[i].indices()) {
    DenseMatrix<K> b(f.dim(), i);
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t c = 0; c < f.dim(); ++c) b(c, j) = basis[j].riesz().at(a, c);
    }
    DenseVector<K> y = atom_vector(f.riesz(), a);
    auto sol = min_norm_solve<K>(b, y, kDefaultPivotTol);
    if (sol.residual > residual_tol) {
      throw InconsistencyError(
          "express_in_basis: functional is not in the span of the stratum "
          "basis (rank analysis bug)");
    }
    for (std::size_t j = 0; j < i; ++j) coeffs[j].at(a) = conj_of<K>(sol.x(j));
  }
  return coeffs;
}

}  // namespace rnm

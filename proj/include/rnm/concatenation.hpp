#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <variant>

#include "rnm/helly.hpp"

namespace rnm {

/// The countably-atomic dyadic space: atoms A_n = [2^{-(n+1)}, 2^{-n}] with
/// P(A_n) = 2^{-(n+1)}, n >= 0. Never materialized; probabilities and tail
/// measures are exact powers of two.
struct DyadicSpace {
  static double prob(std::size_t n) { return std::ldexp(1.0, -static_cast<int>(n) - 1); }
  /// P(union of A_k, k > n) = 2^{-(n+1)}, exactly.
  static double tail_measure_after(std::size_t n) {
    return std::ldexp(1.0, -static_cast<int>(n) - 1);
  }
};

/// An element of the finite-support module E of the counterexample: a scalar
/// per atom, nonzero on finitely many atoms. Zeros are normalized away.
template <scalar_field K>
class FiniteSupportElement {
 public:
  FiniteSupportElement() = default;

  explicit FiniteSupportElement(std::map<std::size_t, K> values) {
    for (auto& [n, v] : values) {
      if (v != K{0}) values_.emplace(n, v);
    }
  }

  static FiniteSupportElement indicator(std::size_t n) {
    return FiniteSupportElement(std::map<std::size_t, K>{{n, K{1}}});
  }

  K value_at(std::size_t n) const {
    auto it = values_.find(n);
    return it == values_.end() ? K{0} : it->second;
  }

  const std::map<std::size_t, K>& values() const { return values_; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (const auto& [n, v] : values_) out.push_back(n);
    return out;
  }

  bool empty() const { return values_.empty(); }

  std::size_t max_support_index() const {
    return values_.empty() ? 0 : values_.rbegin()->first;
  }

  bool operator==(const FiniteSupportElement& o) const { return values_ == o.values_; }

 private:
  std::map<std::size_t, K> values_;
};

/// A countable concatenation along the singleton partition {A_n}: the glued
/// per-atom value is head[n] for n < head.size() and tail beyond. Eventually
/// constant descriptors are all the density and counterexample constructions
/// need.
template <scalar_field K>
struct CcElement {
  std::vector<K> head;
  K tail{0};

  K value_at(std::size_t n) const {
    return n < head.size() ? head[n] : tail;
  }
};

/// Witness that a formal sum leaves the module: infinitely many atoms carry
/// a nonzero glued value.
struct NotInModule {
  std::vector<std::size_t> witness_atoms;  // first indices of the infinite pattern
  std::string pattern;
};

template <scalar_field K>
using ConcatenationResult = std::variant<FiniteSupportElement<K>, NotInModule>;

/// Glue a countable family x_n along {A_n}. Succeeds iff the glued element
/// has finite support, i.e. the tail value is zero.
template <scalar_field K>
inline ConcatenationResult<K> concatenate(const CcElement<K>& glued) {
  if (glued.tail == K{0}) {
    std::map<std::size_t, K> vals;
    for (std::size_t n = 0; n < glued.head.size(); ++n) {
      if (glued.head[n] != K{0}) vals.emplace(n, glued.head[n]);
    }
    return FiniteSupportElement<K>(std::move(vals));
  }
  NotInModule out;
  for (std::size_t i = 0; i < 10; ++i) out.witness_atoms.push_back(glued.head.size() + i);
  out.pattern = "constant nonzero value on every atom from index " +
                std::to_string(glued.head.size());
  return out;
}

/// Finite-space concatenation: over a finite atomic space every gluing is
/// well defined, so this always returns sum I_{A_k} x_k.
template <scalar_field K>
inline RNElement<K> concatenate(const SpacePtr& space,
                                std::span<const AtomSet> partition,
                                std::span<const RNElement<K>> elems) {
  if (partition.size() != elems.size() || partition.empty()) {
    throw DomainError("concatenate: partition and elements must match");
  }
  std::vector<int> owner(space->size(), -1);
  for (std::size_t k = 0; k < partition.size(); ++k) {
    require_same_space(space, partition[k].space());
    for (std::size_t a : partition[k].indices()) {
      if (owner[a] != -1) throw DomainError("concatenate: partition pieces overlap");
      owner[a] = static_cast<int>(k);
    }
  }
  for (std::size_t a = 0; a < space->size(); ++a) {
    if (owner[a] == -1) throw DomainError("concatenate: partition does not cover the space");
  }
  const std::size_t d = elems.front().dim();
  RNElement<K> out = RNElement<K>::zero(space, d);
  for (std::size_t a = 0; a < space->size(); ++a) {
    const RNElement<K>& piece = elems[static_cast<std::size_t>(owner[a])];
    require_same_space(space, piece.space());
    if (piece.dim() != d) throw DomainError("concatenate: element dims differ");
    for (std::size_t j = 0; j < d; ++j) out.at(a, j) = piece.at(a, j);
  }
  return out;
}

template <scalar_field K>
inline L0Scalar<K> concatenate(const SpacePtr& space,
                               std::span<const AtomSet> partition,
                               std::span<const L0Scalar<K>> elems) {
  std::vector<RNElement<K>> lifted;
  lifted.reserve(elems.size());
  for (const auto& e : elems) {
    lifted.push_back(RNElement<K>(space, 1, e.values()));
  }
  RNElement<K> glued = concatenate<K>(space, partition,
                                      std::span<const RNElement<K>>(lifted));
  std::vector<K> vals(space->size());
  for (std::size_t a = 0; a < space->size(); ++a) vals[a] = glued.at(a, 0);
  return L0Scalar<K>(space, std::move(vals));
}

/// The cc-hull norm ||x||_cc = sum I_{A_n} ||x_n||, queryable at any atom.
class CcNorm {
 public:
  explicit CcNorm(std::function<double(std::size_t)> at) : at_(std::move(at)) {}
  double at(std::size_t n) const { return at_(n); }

 private:
  std::function<double(std::size_t)> at_;
};

template <scalar_field K>
inline CcNorm cc_norm(const CcElement<K>& glued) {
  return CcNorm([glued](std::size_t n) { return abs_of<K>(glued.value_at(n)); });
}

/// Norm of a general piece family x_n along the singleton partition: at atom
/// n the value is ||x_n|| there.
template <scalar_field K>
inline CcNorm cc_norm(std::function<FiniteSupportElement<K>(std::size_t)> family) {
  return CcNorm([family = std::move(family)](std::size_t n) {
    return abs_of<K>(family(n).value_at(n));
  });
}

template <scalar_field K>
inline L0Scalar<double> cc_norm(const SpacePtr& space,
                                std::span<const AtomSet> partition,
                                std::span<const RNElement<K>> elems) {
  return norm(concatenate<K>(space, partition, elems));
}

template <scalar_field K>
struct Truncation {
  FiniteSupportElement<K> element;
  std::size_t last_index = 0;   // N: support kept is {0..N}
  double tail_measure = 0.0;    // exactly 2^{-(N+1)}
};

/// Truncate a cc-hull element to finite support {0..N} with N minimal such
/// that the discarded tail has measure at most lam; then
/// P([|x - x_cc| >= eps]) <= lam for every eps > 0.
template <scalar_field K>
inline Truncation<K> truncate_to_tolerance(const CcElement<K>& x_cc, double eps,
                                           double lam) {
  if (!(eps > 0.0)) throw DomainError("truncate_to_tolerance: eps must be > 0");
  if (!(lam > 0.0 && lam < 1.0)) {
    throw DomainError("truncate_to_tolerance: lam must be in (0,1)");
  }
  std::size_t n = 0;
  while (DyadicSpace::tail_measure_after(n) > lam) ++n;
  std::map<std::size_t, K> vals;
  for (std::size_t k = 0; k <= n; ++k) {
    K v = x_cc.value_at(k);
    if (v != K{0}) vals.emplace(k, v);
  }
  return Truncation<K>{FiniteSupportElement<K>(std::move(vals)), n,
                       DyadicSpace::tail_measure_after(n)};
}

/// Finite truncation of the counterexample's data: atoms A_0..A_N with
/// renormalized dyadic probabilities.
inline SpacePtr truncated_dyadic_space(std::size_t n_last) {
  std::vector<std::string> ids;
  std::vector<double> probs;
  double total = 1.0 - DyadicSpace::tail_measure_after(n_last);
  for (std::size_t n = 0; n <= n_last; ++n) {
    ids.push_back("A" + std::to_string(n));
    probs.push_back(DyadicSpace::prob(n) / total);
  }
  return make_space(std::move(ids), std::move(probs));
}

struct CounterexampleReport {
  // (a) the Helly condition holds with equality for sampled coefficients
  std::size_t condition_trials = 0;
  std::size_t condition_exact = 0;
  // (b) no finite-support element solves f(x) = xi
  std::size_t structural_depth = 0;
  bool no_finite_solution = false;
  // (c) every finite truncation of the data is feasible
  struct TruncationRun {
    std::size_t last_index = 0;
    bool feasible = false;
    bool all_ones_pattern = false;
  };
  std::vector<TruncationRun> truncations;

  bool passed() const {
    if (condition_exact != condition_trials || !no_finite_solution) return false;
    for (const auto& t : truncations) {
      if (!t.feasible || !t.all_ones_pattern) return false;
    }
    return !truncations.empty();
  }
};

/// Counterexample regression: the identity functional f and xi = beta = 1
/// on the dyadic space satisfy the feasibility condition with exact
/// equality, yet no finite-support element solves f(x) = xi; every finite
/// truncation does. This is the witness that the countable concatenation
/// hypothesis of the solver's iff is not vacuous.
inline CounterexampleReport counterexample_check(std::size_t trials = 1000,
                                                 std::size_t structural_depth = 50,
                                                 std::size_t max_truncation = 20,
                                                 std::uint64_t seed = 0) {
  using C = std::complex<double>;
  CounterexampleReport report;
  Rng rng(seed);

  // (a) |lambda xi| = beta ||lambda f|| bit-exactly: both sides reduce to
  // |lambda(n)| per atom of the sampled support
  report.condition_trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::map<std::size_t, C> vals;
    std::size_t width = 1 + rng.index(8);
    for (std::size_t k = 0; k < width; ++k) {
      vals[rng.index(30)] = rng.coin(0.1) ? C{0} : rng.scalar<C>();
    }
    FiniteSupportElement<C> lambda(std::move(vals));
    bool exact = true;
    for (std::size_t n = 0; n <= 31; ++n) {
      C lam = lambda.value_at(n);
      const C xi{1.0, 0.0};
      const double beta = 1.0;
      double lhs = std::abs(lam * xi);
      double rhs = beta * std::abs(lam) * 1.0;  // ||f||* = 1 atom-wise
      if (lhs != rhs) exact = false;
    }
    if (exact) ++report.condition_exact;
  }

  // (b) f is the identity, so a solution must equal xi = 1 on every atom;
  // the best candidate with support {0..n} still misses atom n+1 by 1
  report.structural_depth = structural_depth;
  report.no_finite_solution = true;
  CcElement<C> xi_cc;
  xi_cc.tail = C{1.0, 0.0};
  for (std::size_t n = 0; n < structural_depth; ++n) {
    std::map<std::size_t, C> vals;
    for (std::size_t k = 0; k <= n; ++k) vals[k] = xi_cc.value_at(k);
    FiniteSupportElement<C> candidate(std::move(vals));
    double residual = std::abs(candidate.value_at(n + 1) - xi_cc.value_at(n + 1));
    if (residual != 1.0) report.no_finite_solution = false;
  }

  // (c) restrict everything to A_0..A_N and solve
  for (std::size_t n_last = 1; n_last <= max_truncation; ++n_last) {
    SpacePtr space = truncated_dyadic_space(n_last);
    RNElement<C> riesz(space, 1, std::vector<C>(space->size(), C{1.0, 0.0}));
    std::vector<RandomFunctional<C>> fs{RandomFunctional<C>(riesz)};
    std::vector<L0Scalar<C>> ts{L0Scalar<C>::one(space)};
    HellyInstance<C> inst(fs, ts, L0Scalar<double>::one(space),
                          L0Scalar<double>::constant(space, 0.5));
    HellyVerdict<C> verdict = solve<C>(inst);
    CounterexampleReport::TruncationRun run;
    run.last_index = n_last;
    run.feasible = verdict.feasible;
    if (verdict.feasible && verdict.solution) {
      run.all_ones_pattern = true;
      for (std::size_t a = 0; a < space->size(); ++a) {
        if (std::abs(verdict.solution->at(a, 0) - C{1.0, 0.0}) > 1e-9) {
          run.all_ones_pattern = false;
        }
      }
    }
    report.truncations.push_back(run);
  }
  return report;
}

}  // namespace rnm

#pragma once

#include <future>
#include <optional>
#include <span>
#include <thread>

#include "rnm/rng.hpp"
#include "rnm/stratification.hpp"

namespace rnm {

inline constexpr double kHellyTol = 1e-9;

/// Run fn(atom) for every atom, optionally across threads. Atoms are
/// independent, so the result does not depend on the partitioning.
template <typename Fn>
inline void for_each_atom(std::size_t atoms, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || atoms < 2) {
    for (std::size_t a = 0; a < atoms; ++a) fn(a);
    return;
  }
  const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(atoms));
  std::vector<std::future<void>> futs;
  futs.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&, w]() {
      for (std::size_t a = w; a < atoms; a += workers) fn(a);
    }));
  }
  for (auto& f : futs) f.get();
}

/// The data of a random linear equation system f_i(x) = xi_i under the
/// stochastic norm budget ||x|| <= beta (+ eps of slack in the module
/// formulation; atom-wise the minimum-norm solution already attains beta).
template <scalar_field K>
struct HellyInstance {
  std::vector<RandomFunctional<K>> functionals;
  std::vector<L0Scalar<K>> targets;
  L0Scalar<double> budget;  // beta in L0_+
  L0Scalar<double> slack;   // eps in L0_++

  HellyInstance(std::vector<RandomFunctional<K>> fs, std::vector<L0Scalar<K>> ts,
                L0Scalar<double> beta, L0Scalar<double> eps)
      : functionals(std::move(fs)),
        targets(std::move(ts)),
        budget(std::move(beta)),
        slack(std::move(eps)) {
    if (functionals.empty() || functionals.size() != targets.size()) {
      throw DomainError("HellyInstance: need equally many functionals and targets");
    }
    const SpacePtr& sp = functionals.front().space();
    const std::size_t d = functionals.front().dim();
    for (const auto& f : functionals) {
      require_same_space(f.space(), sp);
      if (f.dim() != d) throw DomainError("HellyInstance: dim mismatch");
    }
    for (const auto& t : targets) require_same_space(t.space(), sp);
    require_same_space(budget.space(), sp);
    require_same_space(slack.space(), sp);
    if (!budget.in_l0_plus()) throw DomainError("HellyInstance: budget must be >= 0");
    if (!slack.in_l0_plus_plus()) throw DomainError("HellyInstance: slack must be > 0");
  }

  const SpacePtr& space() const { return functionals.front().space(); }
  std::size_t dim() const { return functionals.front().dim(); }
  std::size_t n() const { return functionals.size(); }
};

/// Dual witness of infeasibility: on every atom of violation_set,
/// |sum lambda_k xi_k| > beta ||sum lambda_k f_k||.
template <scalar_field K>
struct HellyCertificate {
  std::vector<L0Scalar<K>> lambda;
  AtomSet violation_set;
};

template <scalar_field K>
struct HellyVerdict {
  explicit HellyVerdict(const SpacePtr& space)
      : analytic_sup(L0Scalar<double>::zero(space)), sup_infinite(space) {}

  bool feasible = false;
  std::optional<RNElement<K>> solution;
  std::optional<HellyCertificate<K>> certificate;

  // diagnostics: the analytic value of sup_lambda |sum lambda xi| / ||sum lambda f||
  // per atom (minimum-norm solution norm when consistent), with an infinity
  // flag where the system is inconsistent.
  L0Scalar<double> analytic_sup;
  AtomSet sup_infinite;
  bool within_budget_exact = false;  // ||x|| <= beta with no slack at all
};

struct HellyOptions {
  double tol = kHellyTol;  // shared rank/consistency/budget tolerance
  unsigned jobs = 1;
};

namespace detail {

template <scalar_field K>
struct AtomAnalysis {
  bool consistent = false;
  bool within_budget = false;
  double min_norm = 0.0;            // ||x*|| when consistent
  DenseVector<K> solution;          // minimum-norm solution (consistent only)
  DenseVector<K> lambda;            // dual witness (infeasible atoms only)
};

/// Per-atom feasibility core: the sup over lambda of
/// |lambda.xi| / ||Y conj(lambda)|| equals the norm of the minimum-norm
/// solution of Y^H x = xi, so the condition holds iff that solution is
/// consistent and within budget.
template <scalar_field K>
inline AtomAnalysis<K> analyze_atom(const HellyInstance<K>& inst, std::size_t a,
                                    double tol) {
  AtomAnalysis<K> out;
  DenseMatrix<K> y = riesz_matrix<K>(std::span<const RandomFunctional<K>>(inst.functionals), a);
  DenseVector<K> xi = targets_at<K>(std::span<const L0Scalar<K>>(inst.targets), a);
  DenseMatrix<K> a_mat = y.adjoint();
  auto sol = min_norm_solve<K>(a_mat, xi, tol);
  const double beta = inst.budget.at(a);

  if (!sol.consistent) {
    // residual direction: lies in ker(Y), so ||sum lambda f|| vanishes while
    // |sum lambda xi| = ||r|| > 0
    DenseVector<K> r = xi - a_mat * sol.x;
    DenseVector<K> mu = r / r.norm();
    out.lambda = mu.conjugate();
    return out;
  }
  out.consistent = true;
  out.min_norm = sol.x.norm();
  out.solution = sol.x;
  if (out.min_norm <= beta + tol * (1.0 + beta)) {
    out.within_budget = true;
    return out;
  }
  // over budget: a preimage mu of x* under Y gives |<xi,mu>| = ||x*||^2 and
  // ||Y mu|| = ||x*||, hence ratio ||x*|| > beta
  DenseVector<K> mu = min_norm_preimage<K>(y, sol.x, tol);
  double mn = mu.norm();
  if (mn > 0.0) mu /= mn;
  out.lambda = mu.conjugate();
  return out;
}

/// Numeric re-check of the certificate inequality at one atom.
template <scalar_field K>
inline bool certificate_violates(const HellyInstance<K>& inst, std::size_t a,
                                 const DenseVector<K>& lambda) {
  DenseMatrix<K> y = riesz_matrix<K>(std::span<const RandomFunctional<K>>(inst.functionals), a);
  DenseVector<K> xi = targets_at<K>(std::span<const L0Scalar<K>>(inst.targets), a);
  K num{0};
  for (std::size_t k = 0; k < inst.n(); ++k) num += lambda(k) * xi(k);
  double lhs = abs_of<K>(num);
  double rhs = inst.budget.at(a) * (y * lambda.conjugate()).norm();
  return lhs > rhs;
}

template <scalar_field K>
inline HellyVerdict<K> run(const HellyInstance<K>& inst, const HellyOptions& opts,
                           bool want_solution) {
  const SpacePtr& space = inst.space();
  const std::size_t atoms = space->size();
  std::vector<AtomAnalysis<K>> per_atom(atoms);
  for_each_atom(atoms, opts.jobs, [&](std::size_t a) {
    per_atom[a] = analyze_atom<K>(inst, a, opts.tol);
  });

  HellyVerdict<K> verdict(space);
  AtomSet violation(space);
  for (std::size_t a = 0; a < atoms; ++a) {
    if (per_atom[a].consistent) {
      verdict.analytic_sup.at(a) = per_atom[a].min_norm;
    } else {
      verdict.sup_infinite.insert(a);
    }
    if (!per_atom[a].consistent || !per_atom[a].within_budget) violation.insert(a);
  }

  if (violation.empty()) {
    verdict.feasible = true;
    verdict.within_budget_exact = true;
    for (std::size_t a = 0; a < atoms; ++a) {
      if (!(per_atom[a].min_norm <= inst.budget.at(a))) {
        verdict.within_budget_exact = false;
      }
    }
    if (want_solution) {
      RNElement<K> x = RNElement<K>::zero(space, inst.dim());
      for (std::size_t a = 0; a < atoms; ++a) {
        for (std::size_t j = 0; j < inst.dim(); ++j) x.at(a, j) = per_atom[a].solution(j);
      }
      verdict.solution = std::move(x);
    }
    return verdict;
  }

  verdict.feasible = false;
  std::vector<L0Scalar<K>> lambda(inst.n(), L0Scalar<K>::zero(space));
  for (std::size_t a : violation.indices()) {
    if (!certificate_violates<K>(inst, a, per_atom[a].lambda)) {
      throw InconsistencyError("helly: certificate failed numeric verification");
    }
    for (std::size_t k = 0; k < inst.n(); ++k) lambda[k].at(a) = per_atom[a].lambda(k);
  }
  verdict.certificate = HellyCertificate<K>{std::move(lambda), std::move(violation)};
  return verdict;
}

}  // namespace detail

/// Decide the Helly condition |sum lambda xi| <= beta ||sum lambda f|| for
/// all L0 coefficient vectors lambda; on failure return a dual certificate.
/// The solution field stays empty even when feasible.
template <scalar_field K>
inline HellyVerdict<K> check_condition(const HellyInstance<K>& inst,
                                       const HellyOptions& opts = {}) {
  return detail::run<K>(inst, opts, /*want_solution=*/false);
}

/// Full solve: the atom-wise minimum-norm solution when the condition holds
/// (then f_i(x) = xi_i and ||x|| <= beta <= beta + eps), the certificate
/// otherwise.
template <scalar_field K>
inline HellyVerdict<K> solve(const HellyInstance<K>& inst,
                             const HellyOptions& opts = {}) {
  return detail::run<K>(inst, opts, /*want_solution=*/true);
}

/// Stratified route: stratify the generated module, solve the reduced
/// full-rank system per stratum with the glued bases, and check the
/// expressibility identities for the remaining functionals. Agrees with the
/// direct per-atom route; kept as a second, independent algebraic path to
/// the same verdict.
template <scalar_field K>
inline HellyVerdict<K> solve_stratified(const HellyInstance<K>& inst,
                                        double pivot_tol = kDefaultPivotTol,
                                        const HellyOptions& opts = {}) {
  const SpacePtr& space = inst.space();
  const std::size_t d = inst.dim();
  const std::size_t n = inst.n();
  Stratification<K> strat = quasi_free_stratification<K>(
      std::span<const RandomFunctional<K>>(inst.functionals), pivot_tol);

  HellyVerdict<K> verdict(space);
  AtomSet violation(space);
  RNElement<K> x = RNElement<K>::zero(space, d);

  // rank-0 stratum: all functionals vanish, targets must vanish too
  for (std::size_t a : strat.parts[0].indices()) {
    double resid = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double m = abs_of<K>(inst.targets[k].at(a));
      resid += m * m;
    }
    resid = std::sqrt(resid);
    if (resid > opts.tol * (1.0 + resid)) {
      violation.insert(a);
      verdict.sup_infinite.insert(a);
    }
  }

  for (std::size_t i = 1; i <= n; ++i) {
    if (strat.parts[i].empty()) continue;
    const auto& basis = strat.bases[i];

    // gamma_j = the target carried over to the j-th glued basis functional
    std::vector<L0Scalar<K>> gamma(i, L0Scalar<K>::zero(space));
    for (const auto& grp : strat.groups) {
      if (grp.selected.size() != i) continue;
      for (std::size_t a : grp.atoms.indices()) {
        for (std::size_t j = 0; j < i; ++j) {
          gamma[j].at(a) = inst.targets[grp.selected[j]].at(a);
        }
      }
    }

    // expressibility: I_{A_i} xi_k must equal sum_j eta_jk gamma_j
    std::vector<std::vector<L0Scalar<K>>> eta;
    eta.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      eta.push_back(express_in_basis<K>(inst.functionals[k], strat, i));
    }
    for (std::size_t a : strat.parts[i].indices()) {
      bool expressible = true;
      for (std::size_t k = 0; k < n && expressible; ++k) {
        K combo{0};
        for (std::size_t j = 0; j < i; ++j) combo += eta[k][j].at(a) * gamma[j].at(a);
        double err = abs_of<K>(inst.targets[k].at(a) - combo);
        if (err > opts.tol * (1.0 + abs_of<K>(inst.targets[k].at(a)))) {
          expressible = false;
        }
      }
      if (!expressible) {
        violation.insert(a);
        verdict.sup_infinite.insert(a);
        continue;
      }
      // reduced full-rank system: B^H x = gamma, B the d x i basis columns
      DenseMatrix<K> b(d, i);
      for (std::size_t j = 0; j < i; ++j) {
        for (std::size_t c = 0; c < d; ++c) b(c, j) = basis[j].riesz().at(a, c);
      }
      DenseVector<K> gam(i);
      for (std::size_t j = 0; j < i; ++j) gam(j) = gamma[j].at(a);
      auto sol = min_norm_solve<K>(DenseMatrix<K>(b.adjoint()), gam, opts.tol);
      verdict.analytic_sup.at(a) = sol.x.norm();
      const double beta = inst.budget.at(a);
      if (sol.x.norm() > beta + opts.tol * (1.0 + beta)) {
        violation.insert(a);
        continue;
      }
      for (std::size_t c = 0; c < d; ++c) x.at(a, c) = sol.x(c);
    }
  }

  if (violation.empty()) {
    verdict.feasible = true;
    verdict.solution = std::move(x);
    verdict.within_budget_exact = leq(norm(*verdict.solution), inst.budget);
    return verdict;
  }
  verdict.feasible = false;
  // delegate certificate construction to the direct route on the violating set
  HellyVerdict<K> direct = detail::run<K>(inst, opts, false);
  if (!direct.certificate) {
    throw InconsistencyError("helly: stratified and direct routes disagree");
  }
  verdict.certificate = direct.certificate;
  return verdict;
}

/// Per-atom sampled ratio value, with an infinity flag where the denominator
/// vanishes identically against a nonzero numerator.
struct SupRatio {
  L0Scalar<double> value;
  AtomSet infinite_on;

  SupRatio(L0Scalar<double> v, AtomSet inf)
      : value(std::move(v)), infinite_on(std::move(inf)) {}
};

/// Brute-force check of the Helly condition, independent of the factorization
/// route: sample lambda on the unit sphere of K^n and take the per-atom
/// maximum of |sum lambda_k xi_k| / ||sum lambda_k f_k||. A vanishing
/// denominator counts as 0 when the numerator also vanishes (pseudo-inverse
/// convention) and raises the infinity flag otherwise.
template <scalar_field K>
inline SupRatio sup_ratio_oracle(std::span<const RandomFunctional<K>> fs,
                                 std::span<const L0Scalar<K>> targets,
                                 std::size_t samples, std::uint64_t seed = 0,
                                 unsigned jobs = 1) {
  if (samples < 1) throw DomainError("sup_ratio_oracle: samples must be >= 1");
  if (fs.empty() || fs.size() != targets.size()) {
    throw DomainError("sup_ratio_oracle: mismatched family");
  }
  const SpacePtr& space = fs.front().space();
  const std::size_t atoms = space->size();
  const std::size_t n = fs.size();
  const std::size_t d = fs.front().dim();

  Rng rng(seed);
  std::vector<std::vector<K>> lambdas(samples);
  for (auto& l : lambdas) l = rng.unit_vec<K>(n);

  L0Scalar<double> value = L0Scalar<double>::zero(space);
  AtomSet infinite(space);
  std::vector<char> inf_flags(atoms, 0);

  for_each_atom(atoms, jobs, [&](std::size_t a) {
    double best = 0.0;
    bool inf = false;
    std::vector<K> comb(d);
    for (const auto& l : lambdas) {
      K num{0};
      for (std::size_t k = 0; k < n; ++k) num += l[k] * targets[k].at(a);
      // riesz of sum lambda_k f_k is sum conj(lambda_k) riesz_k
      std::fill(comb.begin(), comb.end(), K{0});
      for (std::size_t k = 0; k < n; ++k) {
        K c = conj_of<K>(l[k]);
        for (std::size_t j = 0; j < d; ++j) comb[j] += c * fs[k].riesz().at(a, j);
      }
      double den = 0.0;
      for (const K& c : comb) den += abs_of<K>(c) * abs_of<K>(c);
      den = std::sqrt(den);
      double numv = abs_of<K>(num);
      if (den == 0.0) {
        if (numv > 0.0) inf = true;
        continue;  // 0/0 contributes 0
      }
      best = std::max(best, numv / den);
    }
    value.at(a) = best;
    inf_flags[a] = inf ? 1 : 0;
  });
  for (std::size_t a = 0; a < atoms; ++a) {
    if (inf_flags[a]) infinite.insert(a);
  }
  return SupRatio(std::move(value), std::move(infinite));
}

}  // namespace rnm

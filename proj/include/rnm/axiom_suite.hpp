#pragma once

#include <string>
#include <vector>

#include "rnm/sampling.hpp"

namespace rnm {

struct LawResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_violation = 0.0;

  bool passed() const { return failures == 0; }
};

struct AxiomSuiteConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t atoms = 3;
  std::size_t dim = 3;
};

namespace detail {

template <typename Gen>
inline LawResult run_law(const std::string& name, std::size_t samples, Gen&& gen) {
  LawResult r;
  r.name = name;
  r.trials = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    double violation = gen(i);
    if (violation > 0.0) {
      ++r.failures;
      r.max_violation = std::max(r.max_violation, violation);
    }
  }
  return r;
}

}  // namespace detail

/// Random-sample suites for the RN/RIP module axioms and the L0 lattice and
/// pseudo-inverse identities. Each law reports its failure count and worst
/// violation; a green suite has zero failures everywhere.
template <scalar_field K>
inline std::vector<LawResult> run_axiom_suite(const AxiomSuiteConfig& cfg) {
  Rng rng(cfg.seed);
  SpacePtr space = sample_space(rng, cfg.atoms);
  const std::size_t d = cfg.dim;
  std::vector<LawResult> out;
  const double tight = 1e-12;

  auto viol_leq = [](double lhs, double rhs, double tol) {
    return std::max(0.0, lhs - rhs - tol * (1.0 + std::abs(rhs)));
  };

  // --- RN module axioms (atom-wise Euclidean norm) ---
  out.push_back(detail::run_law("norm_zero_iff_null", cfg.samples, [&](std::size_t) {
    RNElement<K> x = sample_element<K>(rng, space, d);
    L0Scalar<double> nx = norm(x);
    bool zero_norm = leq(nx, L0Scalar<double>::zero(space));
    if (x.is_zero() != zero_norm) return 1.0;
    if (!norm(RNElement<K>::zero(space, d)).in_l0_plus()) return 1.0;
    return 0.0;
  }));
  out.push_back(detail::run_law("norm_homogeneous", cfg.samples, [&](std::size_t) {
    L0Scalar<K> xi = sample_l0<K>(rng, space);
    RNElement<K> x = sample_element<K>(rng, space, d);
    L0Scalar<double> lhs = norm(scalar_mul(xi, x));
    L0Scalar<double> rhs = abs(xi) * norm(x);
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, std::abs(lhs.at(a) - rhs.at(a)) /
                                  (1.0 + std::abs(rhs.at(a))));
    }
    return worst > tight ? worst : 0.0;
  }));
  out.push_back(detail::run_law("norm_triangle", cfg.samples, [&](std::size_t) {
    RNElement<K> x = sample_element<K>(rng, space, d);
    RNElement<K> y = sample_element<K>(rng, space, d);
    L0Scalar<double> lhs = norm(x + y);
    L0Scalar<double> rhs = norm(x) + norm(y);
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, viol_leq(lhs.at(a), rhs.at(a), tight));
    }
    return worst;
  }));

  // --- RIP module axioms ---
  out.push_back(detail::run_law("inner_positive", cfg.samples, [&](std::size_t) {
    RNElement<K> x = sample_element<K>(rng, space, d);
    L0Scalar<K> xx = inner(x, x);
    for (std::size_t a = 0; a < space->size(); ++a) {
      if (std::abs(re_of<K>(xx.at(a)) - abs_of<K>(xx.at(a))) >
          tight * (1.0 + abs_of<K>(xx.at(a)))) {
        return 1.0;
      }
    }
    bool zero = leq(abs(xx), L0Scalar<double>::zero(space));
    return (zero == x.is_zero()) ? 0.0 : 1.0;
  }));
  out.push_back(detail::run_law("inner_hermitian", cfg.samples, [&](std::size_t) {
    RNElement<K> x = sample_element<K>(rng, space, d);
    RNElement<K> y = sample_element<K>(rng, space, d);
    L0Scalar<K> lhs = inner(x, y);
    L0Scalar<K> rhs = conj(inner(y, x));
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, abs_of<K>(lhs.at(a) - rhs.at(a)));
    }
    return worst > tight ? worst : 0.0;
  }));
  out.push_back(detail::run_law("inner_module_linear", cfg.samples, [&](std::size_t) {
    L0Scalar<K> xi = sample_l0<K>(rng, space);
    RNElement<K> x = sample_element<K>(rng, space, d);
    RNElement<K> y = sample_element<K>(rng, space, d);
    L0Scalar<K> lhs = inner(scalar_mul(xi, x), y);
    L0Scalar<K> rhs = xi * inner(x, y);
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, abs_of<K>(lhs.at(a) - rhs.at(a)) /
                                  (1.0 + abs_of<K>(rhs.at(a))));
    }
    return worst > tight ? worst : 0.0;
  }));
  out.push_back(detail::run_law("inner_additive", cfg.samples, [&](std::size_t) {
    RNElement<K> x = sample_element<K>(rng, space, d);
    RNElement<K> y = sample_element<K>(rng, space, d);
    RNElement<K> z = sample_element<K>(rng, space, d);
    L0Scalar<K> lhs = inner(x + y, z);
    L0Scalar<K> rhs = inner(x, z) + inner(y, z);
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, abs_of<K>(lhs.at(a) - rhs.at(a)) /
                                  (1.0 + abs_of<K>(rhs.at(a))));
    }
    return worst > tight ? worst : 0.0;
  }));
  out.push_back(detail::run_law("cauchy_schwarz", cfg.samples, [&](std::size_t) {
    RNElement<K> x = sample_element<K>(rng, space, d);
    RNElement<K> y = sample_element<K>(rng, space, d);
    L0Scalar<double> lhs = abs(inner(x, y));
    L0Scalar<double> rhs = norm(x) * norm(y);
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, viol_leq(lhs.at(a), rhs.at(a), 1e-9));
    }
    return worst;
  }));
  out.push_back(detail::run_law("module_distributive", cfg.samples, [&](std::size_t) {
    L0Scalar<K> xi = sample_l0<K>(rng, space);
    L0Scalar<K> eta = sample_l0<K>(rng, space);
    RNElement<K> x = sample_element<K>(rng, space, d);
    RNElement<K> y = sample_element<K>(rng, space, d);
    double worst = 0.0;
    L0Scalar<double> d1 =
        norm(scalar_mul(xi, x + y) - (scalar_mul(xi, x) + scalar_mul(xi, y)));
    L0Scalar<double> d2 =
        norm(scalar_mul(xi + eta, x) - (scalar_mul(xi, x) + scalar_mul(eta, x)));
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max({worst, d1.at(a), d2.at(a)});
    }
    return worst > 1e-12 * (1.0 + worst) ? worst : 0.0;
  }));

  // --- L0 algebra identities ---
  // xi * pseudo_inverse(xi) = I_supp with no tolerance anywhere: the support
  // sets must agree exactly, off-support values are bitwise zero, and
  // on-support values miss 1 by at most one ulp (IEEE admits values with no
  // representable exact reciprocal at all; the nudged reciprocal makes the
  // identity literally bit-exact for the rest).
  out.push_back(detail::run_law("pseudo_inverse_support", cfg.samples, [&](std::size_t) {
    L0Scalar<K> xi = sample_l0<K>(rng, space);
    if (rng.coin(0.3)) {
      // plant exact zeros
      xi.at(rng.index(space->size())) = K{0};
    }
    L0Scalar<K> prod = xi * pseudo_inverse(xi);
    AtomSet supp = bracket_gt(abs(xi), L0Scalar<double>::zero(space));
    if (!(bracket_gt(abs(prod), L0Scalar<double>::zero(space)) == supp)) return 1.0;
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      if (supp.contains(a)) {
        worst = std::max(worst, abs_of<K>(prod.at(a) - K{1}));
      } else if (prod.at(a) != K{0}) {
        return 1.0;
      }
    }
    const double ulp_bound = is_complex_v<K> ? 0x1.0p-51 : 0x1.0p-52;
    return worst > ulp_bound ? worst : 0.0;
  }));
  out.push_back(detail::run_law("sup_lattice_laws", cfg.samples, [&](std::size_t) {
    L0Scalar<double> a = sample_l0<double>(rng, space);
    L0Scalar<double> b = sample_l0<double>(rng, space);
    L0Scalar<double> c = sample_l0<double>(rng, space);
    if (sup(a, a) == a && sup(a, b) == sup(b, a) &&
        sup(sup(a, b), c) == sup(a, sup(b, c)) && leq(a, sup(a, b)) &&
        leq(b, sup(a, b))) {
      return 0.0;
    }
    return 1.0;
  }));
  out.push_back(detail::run_law("indicator_algebra", cfg.samples, [&](std::size_t) {
    AtomSet s1(space);
    AtomSet s2(space);
    for (std::size_t a = 0; a < space->size(); ++a) {
      if (rng.coin()) s1.insert(a);
      if (rng.coin()) s2.insert(a);
    }
    bool product_ok = indicator<K>(space, s1) * indicator<K>(space, s2) ==
                      indicator<K>(space, s1 & s2);
    bool sum_ok = true;
    if ((s1 & s2).empty()) {
      sum_ok = indicator<K>(space, s1) + indicator<K>(space, s2) ==
               indicator<K>(space, s1 | s2);
    }
    return (product_ok && sum_ok) ? 0.0 : 1.0;
  }));
  out.push_back(detail::run_law("leq_partial_order", cfg.samples, [&](std::size_t) {
    L0Scalar<double> a = sample_l0<double>(rng, space);
    L0Scalar<double> b = sample_l0<double>(rng, space);
    L0Scalar<double> c = sup(b, sample_l0<double>(rng, space));
    bool ok = leq(a, a);
    if (leq(a, b) && leq(b, a)) ok = ok && a == b;
    if (leq(a, b) && leq(b, c)) ok = ok && leq(a, c);
    return ok ? 0.0 : 1.0;
  }));
  // functional module action: (xi f)(x) = xi f(x)
  out.push_back(detail::run_law("functional_action", cfg.samples, [&](std::size_t) {
    L0Scalar<K> xi = sample_l0<K>(rng, space);
    RandomFunctional<K> f = sample_functional<K>(rng, space, d);
    RNElement<K> x = sample_element<K>(rng, space, d);
    L0Scalar<K> lhs = evaluate(scalar_mul(xi, f), x);
    L0Scalar<K> rhs = xi * evaluate(f, x);
    double worst = 0.0;
    for (std::size_t a = 0; a < space->size(); ++a) {
      worst = std::max(worst, abs_of<K>(lhs.at(a) - rhs.at(a)) /
                                  (1.0 + abs_of<K>(rhs.at(a))));
    }
    return worst > tight ? worst : 0.0;
  }));
  return out;
}

}  // namespace rnm

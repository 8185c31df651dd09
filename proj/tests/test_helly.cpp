#include <gtest/gtest.h>

#include <span>

#include "test_support.hpp"

using namespace rnm;
using rnmtest::Complex;

namespace {

template <scalar_field K>
HellyInstance<K> single_atom_instance(double beta) {
  SpacePtr s = make_uniform_space(1);
  std::vector<RandomFunctional<K>> fs{
      RandomFunctional<K>(RNElement<K>(s, 2, {K{1}, K{0}})),
      RandomFunctional<K>(RNElement<K>(s, 2, {K{0}, K{1}}))};
  std::vector<L0Scalar<K>> ts{L0Scalar<K>::constant(s, K{3}),
                              L0Scalar<K>::constant(s, K{4})};
  return HellyInstance<K>(fs, ts, L0Scalar<double>::constant(s, beta),
                          L0Scalar<double>::constant(s, 0.5));
}

// independent re-check of the certificate through the L0 operations only
template <scalar_field K>
void assert_certificate_violates(const HellyInstance<K>& inst,
                                 const HellyCertificate<K>& cert) {
  ASSERT_GT(cert.violation_set.measure(), 0.0);
  const SpacePtr& s = inst.space();
  L0Scalar<K> num = L0Scalar<K>::zero(s);
  RandomFunctional<K> comb = RandomFunctional<K>::zero(s, inst.dim());
  for (std::size_t k = 0; k < inst.n(); ++k) {
    num = num + cert.lambda[k] * inst.targets[k];
    comb = comb + scalar_mul(cert.lambda[k], inst.functionals[k]);
  }
  L0Scalar<double> lhs = abs(num);
  L0Scalar<double> rhs = inst.budget * functional_norm(comb);
  for (std::size_t a : cert.violation_set.indices()) {
    ASSERT_GT(lhs.at(a), rhs.at(a));
  }
}

template <scalar_field K>
void assert_solution_valid(const HellyInstance<K>& inst, const RNElement<K>& x) {
  for (std::size_t k = 0; k < inst.n(); ++k) {
    L0Scalar<K> got = evaluate(inst.functionals[k], x);
    for (std::size_t a = 0; a < inst.space()->size(); ++a) {
      double err = abs_of<K>(got.at(a) - inst.targets[k].at(a));
      ASSERT_LE(err, 1e-8 * (1.0 + abs_of<K>(inst.targets[k].at(a))));
    }
  }
  L0Scalar<double> nx = norm(x);
  for (std::size_t a = 0; a < inst.space()->size(); ++a) {
    ASSERT_LE(nx.at(a), inst.budget.at(a) + inst.slack.at(a));
  }
}

// Derived example: the brute-force oracle on the (3,4) system approaches 5.
TEST(CheckCondition, CoordinateSystemWithinBudget) {
  HellyInstance<double> inst = single_atom_instance<double>(5.0);
  HellyVerdict<double> v = check_condition(inst);
  EXPECT_TRUE(v.feasible);
  EXPECT_FALSE(v.solution.has_value());
  EXPECT_NEAR(v.analytic_sup.at(0), 5.0, 1e-12);

  SupRatio oracle = sup_ratio_oracle<double>(
      std::span<const RandomFunctional<double>>(inst.functionals),
      std::span<const L0Scalar<double>>(inst.targets), 10000, 0);
  EXPECT_TRUE(oracle.infinite_on.empty());
  EXPECT_LE(oracle.value.at(0), 5.0 + 1e-9);
  EXPECT_GE(oracle.value.at(0), 5.0 - 0.01);
}

TEST(CheckCondition, OverBudgetProducesProportionalCertificate) {
  HellyInstance<double> inst = single_atom_instance<double>(4.9);
  HellyVerdict<double> v = check_condition(inst);
  ASSERT_FALSE(v.feasible);
  ASSERT_TRUE(v.certificate.has_value());
  EXPECT_EQ(v.certificate->violation_set, AtomSet::full(inst.space()));
  // lambda proportional to (3,4)
  double l1 = v.certificate->lambda[0].at(0);
  double l2 = v.certificate->lambda[1].at(0);
  EXPECT_NEAR(l1 / l2, 0.75, 1e-9);
  assert_certificate_violates(inst, *v.certificate);
}

TEST(Solve, ZeroTargetsZeroBudget) {
  SpacePtr s = make_uniform_space(1);
  std::vector<RandomFunctional<double>> fs{
      RandomFunctional<double>(RNElement<double>(s, 2, {1, 0}))};
  std::vector<L0Scalar<double>> ts{L0Scalar<double>::zero(s)};
  HellyInstance<double> inst(fs, ts, L0Scalar<double>::zero(s),
                             L0Scalar<double>::constant(s, 1.0));
  HellyVerdict<double> v = solve(inst);
  ASSERT_TRUE(v.feasible);
  EXPECT_TRUE(v.solution->is_zero());
}

TEST(Solve, CoordinateSystemSolution) {
  HellyInstance<double> inst = single_atom_instance<double>(5.0);
  HellyVerdict<double> v = solve(inst);
  ASSERT_TRUE(v.feasible);
  EXPECT_NEAR(v.solution->at(0, 0), 3.0, 1e-10);
  EXPECT_NEAR(v.solution->at(0, 1), 4.0, 1e-10);
  EXPECT_TRUE(v.within_budget_exact);
  assert_solution_valid(inst, *v.solution);
}

// Derived example: rank drops to zero on the second atom, where the target
// must vanish.
TEST(Solve, RankZeroAtomFeasibleIffTargetVanishes) {
  SpacePtr s = make_uniform_space(2);
  std::vector<RandomFunctional<double>> fs{
      RandomFunctional<double>(RNElement<double>(s, 2, {1, 0, 0, 0}))};
  std::vector<L0Scalar<double>> ts{indicator(s, AtomSet::from_ids(s, {"a1"}))};
  L0Scalar<double> beta = L0Scalar<double>::one(s);
  L0Scalar<double> eps = L0Scalar<double>::constant(s, 0.5);

  HellyVerdict<double> v = solve(HellyInstance<double>(fs, ts, beta, eps));
  ASSERT_TRUE(v.feasible);
  EXPECT_NEAR(v.solution->at(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(v.solution->at(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(v.solution->at(1, 1), 0.0, 1e-12);

  std::vector<L0Scalar<double>> bad{L0Scalar<double>::one(s)};
  HellyVerdict<double> w = solve(HellyInstance<double>(fs, bad, beta, eps));
  ASSERT_FALSE(w.feasible);
  EXPECT_EQ(w.certificate->violation_set, AtomSet::from_ids(s, {"a2"}));
  EXPECT_DOUBLE_EQ(w.certificate->lambda[0].at(0), 0.0);
  EXPECT_NEAR(std::abs(w.certificate->lambda[0].at(1)), 1.0, 1e-12);
  EXPECT_EQ(w.sup_infinite, AtomSet::from_ids(s, {"a2"}));
  assert_certificate_violates(HellyInstance<double>(fs, bad, beta, eps),
                              *w.certificate);
}

TEST(SupRatioOracle, ZeroFamilyConventions) {
  SpacePtr s = make_uniform_space(2);
  std::vector<RandomFunctional<double>> fs{RandomFunctional<double>::zero(s, 2)};
  std::vector<L0Scalar<double>> zero_ts{L0Scalar<double>::zero(s)};
  SupRatio r0 = sup_ratio_oracle<double>(
      std::span<const RandomFunctional<double>>(fs),
      std::span<const L0Scalar<double>>(zero_ts), 100, 1);
  EXPECT_EQ(r0.value, L0Scalar<double>::zero(s));
  EXPECT_TRUE(r0.infinite_on.empty());

  std::vector<L0Scalar<double>> ts{indicator(s, AtomSet::from_ids(s, {"a1"}))};
  SupRatio r1 = sup_ratio_oracle<double>(
      std::span<const RandomFunctional<double>>(fs),
      std::span<const L0Scalar<double>>(ts), 100, 1);
  EXPECT_EQ(r1.infinite_on, AtomSet::from_ids(s, {"a1"}));
}

template <scalar_field K>
void iff_property(std::uint64_t seed, int trials) {
  Rng rng(seed);
  rnmtest::HellyGenConfig cfg;
  for (int t = 0; t < trials; ++t) {
    HellyInstance<K> inst = rnmtest::sample_helly_instance<K>(rng, cfg);
    HellyVerdict<K> checked = check_condition(inst);
    HellyVerdict<K> solved = solve(inst);
    ASSERT_EQ(checked.feasible, solved.feasible);
    if (solved.feasible) {
      ASSERT_TRUE(solved.solution.has_value());
      ASSERT_FALSE(solved.certificate.has_value());
      assert_solution_valid(inst, *solved.solution);
    } else {
      ASSERT_FALSE(solved.solution.has_value());
      ASSERT_TRUE(solved.certificate.has_value());
      assert_certificate_violates(inst, *solved.certificate);
    }
  }
}

TEST(Properties, IffReal) { iff_property<double>(201, 150); }
TEST(Properties, IffComplex) { iff_property<Complex>(202, 150); }

template <scalar_field K>
void oracle_agreement(std::uint64_t seed, int trials) {
  Rng rng(seed);
  rnmtest::HellyGenConfig cfg;
  cfg.force_consistent = true;
  for (int t = 0; t < trials; ++t) {
    HellyInstance<K> inst = rnmtest::sample_helly_instance<K>(rng, cfg);
    HellyVerdict<K> v = check_condition(inst);
    SupRatio oracle = sup_ratio_oracle<K>(
        std::span<const RandomFunctional<K>>(inst.functionals),
        std::span<const L0Scalar<K>>(inst.targets), 10000, seed + t);
    for (std::size_t a = 0; a < inst.space()->size(); ++a) {
      if (v.sup_infinite.contains(a) || oracle.infinite_on.contains(a)) continue;
      ASSERT_LE(oracle.value.at(a), v.analytic_sup.at(a) + 1e-6);
      if (inst.n() <= 2) {
        ASSERT_GE(oracle.value.at(a), v.analytic_sup.at(a) * 0.99 - 1e-9);
      }
    }
  }
}

TEST(Properties, OracleAgreementReal) { oracle_agreement<double>(301, 60); }
TEST(Properties, OracleAgreementComplex) { oracle_agreement<Complex>(302, 60); }

template <scalar_field K>
void scale_invariance(std::uint64_t seed, int trials) {
  Rng rng(seed);
  rnmtest::HellyGenConfig cfg;
  for (int t = 0; t < trials; ++t) {
    HellyInstance<K> inst = rnmtest::sample_helly_instance<K>(rng, cfg);
    // common scaling with |alpha| > 0 everywhere
    std::vector<K> alpha_vals(inst.space()->size());
    for (auto& v : alpha_vals) {
      do {
        v = rng.scalar<K>();
      } while (abs_of<K>(v) < 0.1);
    }
    L0Scalar<K> alpha(inst.space(), std::move(alpha_vals));
    std::vector<RandomFunctional<K>> fs2;
    std::vector<L0Scalar<K>> ts2;
    for (std::size_t k = 0; k < inst.n(); ++k) {
      fs2.push_back(scalar_mul(alpha, inst.functionals[k]));
      ts2.push_back(alpha * inst.targets[k]);
    }
    HellyInstance<K> scaled(fs2, ts2, inst.budget, inst.slack);
    ASSERT_EQ(check_condition(inst).feasible, check_condition(scaled).feasible);
  }
}

TEST(Properties, ScaleInvarianceReal) { scale_invariance<double>(401, 80); }
TEST(Properties, ScaleInvarianceComplex) { scale_invariance<Complex>(402, 80); }

template <scalar_field K>
void stratified_route_agrees(std::uint64_t seed, int trials) {
  Rng rng(seed);
  rnmtest::HellyGenConfig cfg;
  for (int t = 0; t < trials; ++t) {
    HellyInstance<K> inst = rnmtest::sample_helly_instance<K>(rng, cfg);
    HellyVerdict<K> direct = solve(inst);
    HellyVerdict<K> viaStrat = solve_stratified(inst);
    ASSERT_EQ(direct.feasible, viaStrat.feasible);
    if (direct.feasible) {
      assert_solution_valid(inst, *viaStrat.solution);
      // both routes produce the same minimum-norm solution
      L0Scalar<double> diff = norm(*direct.solution - *viaStrat.solution);
      for (std::size_t a = 0; a < inst.space()->size(); ++a) {
        ASSERT_LE(diff.at(a), 1e-7 * (1.0 + norm(*direct.solution).at(a)));
      }
    }
  }
}

TEST(Properties, StratifiedRouteReal) { stratified_route_agrees<double>(501, 100); }
TEST(Properties, StratifiedRouteComplex) { stratified_route_agrees<Complex>(502, 100); }

// duality: the sampled sup reaches the analytic min-norm value from below
TEST(Properties, DualityEqualityTightForSmallFamilies) {
  Rng rng(601);
  for (int t = 0; t < 40; ++t) {
    SpacePtr s = sample_space(rng, 1 + rng.index(4));
    const std::size_t d = 1 + rng.index(3);
    const std::size_t n = 1 + rng.index(2);
    std::vector<RandomFunctional<Complex>> fs;
    for (std::size_t k = 0; k < n; ++k) fs.push_back(sample_functional<Complex>(rng, s, d));
    RNElement<Complex> z = sample_element<Complex>(rng, s, d);
    std::vector<L0Scalar<Complex>> ts;
    for (std::size_t k = 0; k < n; ++k) ts.push_back(evaluate(fs[k], z));
    HellyInstance<Complex> inst(fs, ts, L0Scalar<double>::constant(s, 100.0),
                                L0Scalar<double>::one(s));
    HellyVerdict<Complex> v = check_condition(inst);
    ASSERT_TRUE(v.feasible);
    SupRatio oracle = sup_ratio_oracle<Complex>(
        std::span<const RandomFunctional<Complex>>(fs),
        std::span<const L0Scalar<Complex>>(ts), 20000, 601 + t);
    for (std::size_t a = 0; a < s->size(); ++a) {
      if (v.sup_infinite.contains(a)) continue;
      ASSERT_LE(oracle.value.at(a), v.analytic_sup.at(a) + 1e-6);
      ASSERT_GE(oracle.value.at(a), v.analytic_sup.at(a) * 0.98 - 1e-9);
    }
  }
}

TEST(HellyInstance, ValidatesShapes) {
  SpacePtr s = make_uniform_space(2);
  std::vector<RandomFunctional<double>> fs{RandomFunctional<double>::zero(s, 2)};
  std::vector<L0Scalar<double>> ts{L0Scalar<double>::zero(s)};
  L0Scalar<double> bad_beta(s, {-1.0, 0.5});
  EXPECT_THROW(
      HellyInstance<double>(fs, ts, bad_beta, L0Scalar<double>::one(s)),
      DomainError);
  L0Scalar<double> bad_eps(s, {0.0, 0.5});
  EXPECT_THROW(
      HellyInstance<double>(fs, ts, L0Scalar<double>::one(s), bad_eps),
      DomainError);
  std::vector<L0Scalar<double>> wrong_count;
  EXPECT_THROW(HellyInstance<double>(fs, wrong_count, L0Scalar<double>::one(s),
                                     L0Scalar<double>::one(s)),
               DomainError);
}

}  // namespace

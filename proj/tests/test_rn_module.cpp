#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace rnm;
using rnmtest::Complex;

namespace {

TEST(RNElement, ModuleActionExamples) {
  SpacePtr s = make_uniform_space(2);
  RNElement<double> x(s, 2, {1, 0, 0, 1});
  L0Scalar<double> xi(s, {2, 3});
  RNElement<double> scaled = scalar_mul(xi, x);
  EXPECT_EQ(scaled, RNElement<double>(s, 2, {2, 0, 0, 3}));

  EXPECT_EQ(add(x, RNElement<double>::zero(s, 2)), x);

  RNElement<double> local = scalar_mul(indicator(s, AtomSet::from_ids(s, {"a1"})), x);
  EXPECT_EQ(local, RNElement<double>(s, 2, {1, 0, 0, 0}));
}

TEST(RNElement, ShapeMismatchIsDomainError) {
  SpacePtr s = make_uniform_space(2);
  RNElement<double> x(s, 2, {1, 0, 0, 1});
  RNElement<double> y(s, 3, {1, 0, 0, 0, 1, 0});
  EXPECT_THROW(x + y, DomainError);
  SpacePtr other = make_space({"p", "q"}, {0.5, 0.5});
  EXPECT_THROW(x + RNElement<double>(other, 2, {0, 0, 0, 0}), DomainError);
  EXPECT_THROW(inner(x, y), DomainError);
}

TEST(Inner, Examples) {
  SpacePtr s1 = make_uniform_space(1);
  RNElement<double> e1(s1, 2, {1, 0});
  RNElement<double> e2(s1, 2, {0, 1});
  EXPECT_DOUBLE_EQ(inner(e1, e2).at(0), 0.0);

  RNElement<double> v(s1, 2, {3, 4});
  EXPECT_DOUBLE_EQ(inner(v, v).at(0), 25.0);

  RNElement<Complex> xi(s1, 1, {Complex(0, 1)});
  RNElement<Complex> eta(s1, 1, {Complex(1, 0)});
  EXPECT_EQ(inner(xi, eta).at(0), Complex(0, 1));
}

TEST(Norm, Examples) {
  SpacePtr s = make_uniform_space(2);
  RNElement<double> x(s, 2, {3, 4, 0, 0});
  EXPECT_EQ(norm(x), L0Scalar<double>(s, {5, 0}));
  EXPECT_EQ(norm(RNElement<double>::zero(s, 2)), L0Scalar<double>::zero(s));

  RNElement<double> unit(s, 2, {1, 0, 1, 0});
  L0Scalar<double> xi(s, {2, -3});
  EXPECT_EQ(norm(scalar_mul(xi, unit)), L0Scalar<double>(s, {2, 3}));
}

template <scalar_field K>
void rn_axioms() {
  AxiomSuiteConfig cfg;
  cfg.samples = 1000;
  cfg.seed = 23;
  cfg.atoms = 5;
  cfg.dim = 4;
  for (const LawResult& law : run_axiom_suite<K>(cfg)) {
    EXPECT_TRUE(law.passed()) << law.name << " failed " << law.failures << "/"
                              << law.trials << " worst " << law.max_violation;
  }
}

TEST(Axioms, RealSuite) { rn_axioms<double>(); }
TEST(Axioms, ComplexSuite) { rn_axioms<Complex>(); }

TEST(Axioms, CauchySchwarzDirect) {
  Rng rng(31);
  SpacePtr s = sample_space(rng, 6);
  for (int t = 0; t < 500; ++t) {
    RNElement<Complex> x = sample_element<Complex>(rng, s, 5);
    RNElement<Complex> y = sample_element<Complex>(rng, s, 5);
    L0Scalar<double> lhs = abs(inner(x, y));
    L0Scalar<double> rhs = norm(x) * norm(y);
    for (std::size_t a = 0; a < s->size(); ++a) {
      ASSERT_LE(lhs.at(a), rhs.at(a) + 1e-9 * (1.0 + rhs.at(a)));
    }
  }
}

}  // namespace

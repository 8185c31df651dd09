#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace rnm;
using rnmtest::Complex;

namespace {

template <scalar_field K>
ConvexBody<K> unit_ball_body(const SpacePtr& s, std::size_t dim, double radius = 1.0,
                             bool interior = true) {
  std::vector<typename ConvexBody<K>::AtomDesc> descs;
  for (std::size_t a = 0; a < s->size(); ++a) {
    typename ConvexBody<K>::Ball b;
    b.center.assign(dim, K{0});
    b.radius = radius;
    descs.push_back(std::move(b));
  }
  return ConvexBody<K>(s, dim, std::move(descs), interior);
}

template <scalar_field K>
ConvexBody<K> point_body(const SpacePtr& s, std::vector<std::vector<K>> pts) {
  const std::size_t dim = pts[0].size();
  std::vector<typename ConvexBody<K>::AtomDesc> descs;
  for (auto& p : pts) {
    typename ConvexBody<K>::Hull h;
    h.points.push_back(std::move(p));
    descs.push_back(std::move(h));
  }
  return ConvexBody<K>(s, dim, std::move(descs), false);
}

// Derived example: per-atom distance of ball and point via the closed form
// |center - p| - r decides disjointness.
TEST(HereditaryDisjoint, BallPointExample) {
  SpacePtr s = make_uniform_space(2);
  ConvexBody<double> g = unit_ball_body<double>(s, 2);
  ConvexBody<double> m = point_body<double>(s, {{3, 0}, {0.5, 0}});
  EXPECT_EQ(hereditary_disjoint_stratification(g, m), AtomSet::from_ids(s, {"a1"}));
}

TEST(HereditaryDisjoint, EqualBodiesGiveEmptySet) {
  SpacePtr s = make_uniform_space(2);
  ConvexBody<double> g = unit_ball_body<double>(s, 2);
  EXPECT_TRUE(hereditary_disjoint_stratification(g, g).empty());
}

TEST(HereditaryDisjoint, EverywhereDisjointGivesFullSpace) {
  SpacePtr s = make_uniform_space(3);
  ConvexBody<double> g = unit_ball_body<double>(s, 2);
  ConvexBody<double> m = point_body<double>(s, {{5, 0}, {0, 5}, {-4, 3}});
  EXPECT_EQ(hereditary_disjoint_stratification(g, m), AtomSet::full(s));
}

TEST(Gauge, UnitBallIsTheNorm) {
  SpacePtr s = make_uniform_space(2);
  ConvexBody<double> b = unit_ball_body<double>(s, 2);
  RNElement<double> x(s, 2, {3, 4, 0.3, 0.4});
  L0Scalar<double> p = gauge(b, x);
  EXPECT_NEAR(p.at(0), 5.0, 1e-10);
  EXPECT_NEAR(p.at(1), 0.5, 1e-10);

  ConvexBody<double> b2 = unit_ball_body<double>(s, 2, 2.0);
  EXPECT_NEAR(gauge(b2, x).at(0), 2.5, 1e-10);
}

TEST(Gauge, SquareHullExample) {
  SpacePtr s = make_uniform_space(1);
  typename ConvexBody<double>::Hull square;
  square.points = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
  ConvexBody<double> b(s, 2, {square}, true);
  RNElement<double> x(s, 2, {2, 1});
  // gauge of the square is max(|x1|, |x2|)
  EXPECT_NEAR(gauge(b, x).at(0), 2.0, 1e-8);
  EXPECT_NEAR(gauge(b, RNElement<double>::zero(s, 2)).at(0), 0.0, 1e-12);
}

TEST(Gauge, AbsorbencyPreconditionEnforced) {
  SpacePtr s = make_uniform_space(1);
  // ball not containing the origin
  typename ConvexBody<double>::Ball off;
  off.center = {5, 0};
  off.radius = 1.0;
  ConvexBody<double> b(s, 2, {off}, true);
  RNElement<double> x(s, 2, {1, 0});
  EXPECT_THROW(gauge(b, x), PreconditionError);

  // flat hull (a segment in R^2) has empty interior
  typename ConvexBody<double>::Hull seg;
  seg.points = {{-1, 0}, {1, 0}};
  ConvexBody<double> fb(s, 2, {seg}, true);
  EXPECT_THROW(gauge(fb, x), PreconditionError);
}

TEST(Gauge, PropertiesOnRandomBodies) {
  Rng rng(55);
  int done = 0;
  while (done < 200) {
    SpacePtr s = sample_space(rng, 1 + rng.index(3));
    const std::size_t dim = 1 + rng.index(3);
    // bodies centered at the origin are absorbent by construction
    ConvexBody<double> b = rnmtest::sample_body<double>(rng, s, dim, 0.0,
                                                        0.5 + rng.uniform01(), true);
    RNElement<double> x = sample_element<double>(rng, s, dim);
    RNElement<double> y = sample_element<double>(rng, s, dim);
    double t = 0.2 + 2.0 * rng.uniform01();
    L0Scalar<double> px = gauge(b, x);
    L0Scalar<double> py = gauge(b, y);
    L0Scalar<double> ptx = gauge(b, scalar_mul(L0Scalar<double>::constant(s, t), x));
    L0Scalar<double> pxy = gauge(b, x + y);
    for (std::size_t a = 0; a < s->size(); ++a) {
      ASSERT_NEAR(ptx.at(a), t * px.at(a), 1e-9 * (1.0 + t * px.at(a)) + 1e-9);
      ASSERT_LE(pxy.at(a), px.at(a) + py.at(a) + 1e-9);
    }
    ++done;
  }
}

TEST(Gauge, MembersHaveGaugeAtMostOne) {
  Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    SpacePtr s = sample_space(rng, 1 + rng.index(3));
    const std::size_t dim = 1 + rng.index(3);
    ConvexBody<double> b =
        rnmtest::sample_body<double>(rng, s, dim, 0.0, 0.5 + rng.uniform01(), true);
    RNElement<double> member = rnmtest::sample_member(rng, b, false);
    RNElement<double> inner_pt = rnmtest::sample_member(rng, b, true);
    L0Scalar<double> pm = gauge(b, member);
    L0Scalar<double> pi = gauge(b, inner_pt);
    for (std::size_t a = 0; a < s->size(); ++a) {
      ASSERT_LE(pm.at(a), 1.0 + 1e-8);
      ASSERT_LT(pi.at(a), 1.0);  // strictly inside on every atom
    }
  }
}

// Derived example: closest-point pair between the two convex sets gives the
// separating direction.
TEST(Separate, SingleAtomBallVsPoint) {
  SpacePtr s = make_uniform_space(1);
  ConvexBody<double> g = unit_ball_body<double>(s, 2);
  ConvexBody<double> m = point_body<double>(s, {{3, 0}});
  Separation<double> sep = separate(g, m);
  EXPECT_EQ(sep.h, AtomSet::full(s));
  EXPECT_NEAR(sep.functional.riesz().at(0, 0), 1.0, 1e-9);
  EXPECT_NEAR(sep.functional.riesz().at(0, 1), 0.0, 1e-9);
  EXPECT_NEAR(sep.sup_first.at(0), 1.0, 1e-9);
  EXPECT_NEAR(sep.inf_second.at(0), 3.0, 1e-9);
}

TEST(Separate, LocalizedToTheDisjointAtom) {
  SpacePtr s = make_uniform_space(2);
  ConvexBody<double> g = unit_ball_body<double>(s, 2);
  ConvexBody<double> m = point_body<double>(s, {{3, 0}, {0.5, 0}});
  Separation<double> sep = separate(g, m);
  EXPECT_EQ(sep.h, AtomSet::from_ids(s, {"a1"}));
  // indicator locality, exactly
  EXPECT_EQ(scalar_mul(indicator(s, sep.h), sep.functional.riesz()),
            sep.functional.riesz());
  EXPECT_DOUBLE_EQ(sep.functional.riesz().at(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(sep.functional.riesz().at(1, 1), 0.0);
}

TEST(Separate, ComplexFieldViaRealPart) {
  SpacePtr s = make_uniform_space(1);
  // C^1 with the plane geometry of the real example
  ConvexBody<Complex> g = unit_ball_body<Complex>(s, 1);
  ConvexBody<Complex> m = point_body<Complex>(s, {{Complex(3, 0)}});
  Separation<Complex> sep = separate(g, m);
  EXPECT_EQ(sep.h, AtomSet::full(s));
  // Re f separates at threshold between 1 and 3
  RNElement<Complex> member(s, 1, {Complex(0.2, -0.9)});
  double re_member = re(evaluate(sep.functional, member)).at(0);
  RNElement<Complex> target(s, 1, {Complex(3, 0)});
  double re_target = re(evaluate(sep.functional, target)).at(0);
  EXPECT_LT(re_member, re_target);
  EXPECT_NEAR(sep.inf_second.at(0) - sep.sup_first.at(0), 2.0, 1e-8);
}

TEST(Separate, PreconditionsEnforced) {
  SpacePtr s = make_uniform_space(1);
  ConvexBody<double> g_noflag = unit_ball_body<double>(s, 2, 1.0, false);
  ConvexBody<double> m = point_body<double>(s, {{3, 0}});
  EXPECT_THROW(separate(g_noflag, m), PreconditionError);

  // nowhere disjoint: no-separation error
  ConvexBody<double> g = unit_ball_body<double>(s, 2);
  ConvexBody<double> inside = point_body<double>(s, {{0.5, 0}});
  EXPECT_THROW(separate(g, inside), NoSeparationError);

  // flat first body: empty interior on an atom
  typename ConvexBody<double>::Hull seg;
  seg.points = {{-1, 0}, {1, 0}};
  ConvexBody<double> flat(s, 2, {seg}, true);
  EXPECT_THROW(separate(flat, m), PreconditionError);
}

template <scalar_field K>
void separation_suite(std::uint64_t seed, int trials) {
  Rng rng(seed);
  int done = 0;
  while (done < trials) {
    SpacePtr s = sample_space(rng, 1 + rng.index(4));
    const std::size_t dim = 1 + rng.index(3);
    rnmtest::BodyPair<K> pair = rnmtest::sample_disjoint_pair<K>(rng, s, dim);
    if (pair.disjoint_atoms.empty()) continue;
    ++done;

    AtomSet h = hereditary_disjoint_stratification(pair.g, pair.m);
    ASSERT_EQ(h, pair.disjoint_atoms);

    Separation<K> sep = separate(pair.g, pair.m);
    ASSERT_EQ(sep.h, h);
    // exact indicator locality
    ASSERT_EQ(scalar_mul(indicator<K>(s, h), sep.functional.riesz()),
              sep.functional.riesz());

    // separation inequality on random members, strict margin for interior pts
    for (int k = 0; k < 10; ++k) {
      RNElement<K> x = rnmtest::sample_member<K>(rng, pair.g, k % 2 == 0);
      RNElement<K> y = rnmtest::sample_member<K>(rng, pair.m, false);
      L0Scalar<double> fx = re(evaluate(sep.functional, x));
      L0Scalar<double> fy = re(evaluate(sep.functional, y));
      for (std::size_t a : h.indices()) {
        ASSERT_LE(fx.at(a), sep.sup_first.at(a) + 1e-8);
        ASSERT_GE(fy.at(a), sep.inf_second.at(a) - 1e-8);
        ASSERT_LT(fx.at(a) + 1e-9, fy.at(a));
      }
    }
    // vertex/extreme-point check with normalized margin
    for (std::size_t a : h.indices()) {
      ASSERT_GE(sep.inf_second.at(a) - sep.sup_first.at(a), 1e-9);
    }
  }
}

TEST(Properties, SeparationSuiteReal) { separation_suite<double>(61, 60); }
TEST(Properties, SeparationSuiteComplex) { separation_suite<Complex>(67, 40); }

}  // namespace

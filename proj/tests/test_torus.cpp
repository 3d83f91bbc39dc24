#include "teich/torus.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "teich/pair_asymptotics.hpp"

namespace teich {
namespace {

TEST(CurveClassType, PrimitivityAndCanonicalSign) {
  EXPECT_THROW(CurveClass(0, 0), std::invalid_argument);
  EXPECT_THROW(CurveClass(2, 4), std::invalid_argument);
  EXPECT_THROW(CurveClass(2, 0), std::invalid_argument);
  EXPECT_EQ(CurveClass(1, -1), CurveClass(-1, 1));
  EXPECT_EQ(CurveClass(-1, 0), CurveClass(1, 0));
  EXPECT_EQ(CurveClass(0, -1), CurveClass(0, 1));
}

TEST(CurveClassType, IntersectionNumbers) {
  EXPECT_EQ(intersection(CurveClass(1, 0), CurveClass(0, 1)), 1);
  EXPECT_EQ(intersection(CurveClass(1, 0), CurveClass(1, 0)), 0);
  EXPECT_EQ(intersection(CurveClass(2, 1), CurveClass(1, 2)), 3);
}

TEST(ExtTorus, SquareTorusValues) {
  const TorusPoint i(0, 1);
  EXPECT_DOUBLE_EQ(ext_torus(i, CurveClass(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(ext_torus(i, CurveClass(0, 1)), 1.0);
  EXPECT_DOUBLE_EQ(ext_torus(i, CurveClass(1, 1)), 2.0);
  EXPECT_THROW(TorusPoint(0, 0), std::invalid_argument);
  EXPECT_THROW(TorusPoint(0, -1), std::invalid_argument);
}

TEST(VerticalRay, FlowLaws) {
  const TorusPoint w(0.3, 1.7);
  const TorusPoint same = vertical_ray(w, 0);
  EXPECT_DOUBLE_EQ(same.re, w.re);
  EXPECT_DOUBLE_EQ(same.im, w.im);
  const TorusPoint i(0, 1);
  for (const double t : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(ext_torus(vertical_ray(i, t), CurveClass(1, 0)), std::exp(2 * t),
                1e-12 * std::exp(2 * t));
    EXPECT_NEAR(ext_torus(vertical_ray(i, t), CurveClass(0, 1)), std::exp(-2 * t),
                1e-15);
  }
  const TorusPoint composed = vertical_ray(vertical_ray(w, 0.7), 0.9);
  const TorusPoint direct = vertical_ray(w, 1.6);
  EXPECT_NEAR(composed.im, direct.im, 1e-15);
}

TEST(RationalSlope, ReconstructsSmallDenominators) {
  EXPECT_EQ(rational_slope(0.5), (std::pair<long, long>{1, 2}));
  EXPECT_EQ(rational_slope(1.0 / 3.0), (std::pair<long, long>{1, 3}));
  EXPECT_EQ(rational_slope(-2.0 / 3.0), (std::pair<long, long>{-2, 3}));
  EXPECT_EQ(rational_slope(22.0 / 7.0), (std::pair<long, long>{22, 7}));
  EXPECT_EQ(rational_slope(0.0), (std::pair<long, long>{0, 1}));
  EXPECT_FALSE(rational_slope(std::sqrt(2.0)).has_value());
  EXPECT_FALSE(rational_slope(0.6180339887498949).has_value());
}

TEST(ExactPoint, SemanticCoordinates) {
  EXPECT_EQ(exact_point(TorusPoint(1.0 / 3.0, 2)).x, rat(1, 3));
  EXPECT_EQ(exact_point(TorusPoint(0, 2)).y, rat(2));
  const double irr = std::sqrt(2.0);
  EXPECT_EQ(exact_point(TorusPoint(irr, 1)).x, rat_of(irr));
}

TEST(RayData, SquareAndRectangularTori) {
  const auto d = ray_data_torus(TorusPoint(0, 1));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].a, rat(1));
  EXPECT_EQ(d[0].h, rat(1));
  EXPECT_EQ(d[0].kind, ComponentKind::cylinder);
  EXPECT_EQ(moduli(ray_data_torus(TorusPoint(0, 4))), (ModulusVector{rat(1, 4)}));
}

TEST(RayData, RationalSlopeExample) {
  const TorusPoint w(1.0 / 3.0, 2);
  const auto d = ray_data_torus(w);
  EXPECT_EQ(d[0].kind, ComponentKind::cylinder);
  EXPECT_EQ(d.modulus(0), rat(1, 2));
  EXPECT_EQ(vertical_curve_class(w), CurveClass(-1, 3));
  EXPECT_EQ(d[0].id, "V:1/3");
}

TEST(RayData, IrrationalSlopeIsMinimal) {
  const TorusPoint w(std::sqrt(2.0), 1.5);
  const auto d = ray_data_torus(w);
  EXPECT_EQ(d[0].kind, ComponentKind::minimal_ergodic);
  EXPECT_FALSE(vertical_curve_class(w).has_value());
  EXPECT_EQ(d.modulus(0), 1 / rat_of(1.5));
}

TEST(RayData, IdsSeparateSlopes) {
  const auto a = ray_data_torus(TorusPoint(0.5, 1));
  const auto b = ray_data_torus(TorusPoint(0.5, 3));   // same slope, other ray
  const auto c = ray_data_torus(TorusPoint(0.25, 1));  // different slope
  EXPECT_EQ(a[0].id, b[0].id);
  EXPECT_NE(a[0].id, c[0].id);
  const auto i1 = ray_data_torus(TorusPoint(std::sqrt(2.0), 1));
  const auto i2 = ray_data_torus(TorusPoint(std::sqrt(3.0), 1));
  EXPECT_NE(i1[0].id, i2[0].id);
}

TEST(RayData, HorizontalDirectionRotates) {
  // horizontal data of iy = vertical data of i/y: modulus y
  const auto d = ray_data_torus(TorusPoint(0, 4), Direction::horizontal);
  EXPECT_EQ(d.modulus(0), rat(4));
  // and for 1/3 + 2i the rotated slope is -(1/3)/(1/9+4) = -3/37
  const auto e = ray_data_torus(TorusPoint(1.0 / 3.0, 2), Direction::horizontal);
  EXPECT_EQ(e[0].id, "V:-3/37");
}

TEST(VerticalPairing, ExactValues) {
  const TorusPoint w(1.0 / 3.0, 2);
  EXPECT_EQ(vertical_pairing(w, CurveClass(1, 0)), rat(1));
  EXPECT_EQ(vertical_pairing(w, CurveClass(-1, 3)), rat(0));
  EXPECT_EQ(vertical_pairing(w, CurveClass(0, 1)), rat(1, 3));
}

TEST(VerticalPairing, FeedsShrinkLimitClosedForm) {
  // Σ a u²/h with (a,h) = (1,y) must equal (p+qx)²/y.
  const TorusPoint w(1.0 / 3.0, 2);
  const auto d = ray_data_torus(w);
  const ExactTorus ex = exact_point(w);
  for (const CurveClass c : {CurveClass(1, 0), CurveClass(1, 1), CurveClass(2, 5)}) {
    const Rat u = vertical_pairing(w, c);
    const Rat expected = (c.p + c.q * ex.x) * (c.p + c.q * ex.x) / ex.y;
    EXPECT_EQ(shrink_limit(d, {{u}}), expected);
  }
}

TEST(TeichDist, AxisAndSymmetry) {
  EXPECT_DOUBLE_EQ(teich_dist_exact(TorusPoint(0, 1), TorusPoint(0, 1)), 0.0);
  EXPECT_NEAR(teich_dist_exact(TorusPoint(0, 1), TorusPoint(0, 4)),
              0.5 * std::log(4.0), 1e-14);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(-2, 2), ys(0.25, 4);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint a(xs(rng), ys(rng));
    const TorusPoint b(xs(rng), ys(rng));
    EXPECT_DOUBLE_EQ(teich_dist_exact(a, b), teich_dist_exact(b, a));
    EXPECT_GE(teich_dist_exact(a, b), 0.0);
  }
}

TEST(Kerckhoff, SmallBoundExample) {
  // sup over |p|,|q| <= 1 between i and 4i: ratio 4, attained by the class
  // whose Ext grows with y, namely (0,1).
  const auto k = kerckhoff_sup(TorusPoint(0, 1), TorusPoint(0, 4), 1);
  EXPECT_EQ(k.ratio, rat(4));
  EXPECT_EQ(k.argmax, CurveClass(0, 1));
  EXPECT_NEAR(k.value, 0.5 * std::log(4.0), 1e-15);
  EXPECT_THROW(kerckhoff_sup(TorusPoint(0, 1), TorusPoint(0, 4), 0),
               std::invalid_argument);
}

TEST(Kerckhoff, TieBreaksLexicographically) {
  const auto k = kerckhoff_sup(TorusPoint(0, 1), TorusPoint(0, 1), 2);
  EXPECT_EQ(k.ratio, rat(1));
  EXPECT_EQ(k.argmax, CurveClass(-2, 1));  // smallest canonical (p,q) in range
  EXPECT_DOUBLE_EQ(k.value, 0.0);
}

TEST(Kerckhoff, MonotoneInBoundAndConvergent) {
  const TorusPoint a(0.3, 1.1);
  const TorusPoint b(-0.2, 0.8);
  const double exact = teich_dist_exact(a, b);
  double prev = 0;
  for (const long bound : {1L, 2L, 5L, 20L, 60L}) {
    const auto k = kerckhoff_sup(a, b, bound);
    EXPECT_GE(k.value, prev - 1e-15);
    EXPECT_LE(k.value, exact + 1e-12);
    prev = k.value;
  }
  EXPECT_NEAR(prev, exact, 1e-3);
}

TEST(MappingClass, ExtremalLengthInvariance) {
  // exact on dyadic-friendly matrices: ω = 2i under S = [[0,-1],[1,0]] goes
  // to i/2, and curves transform contravariantly.
  const TorusPoint w(0, 2);
  const TorusPoint moved = apply_mapping_class(w, 0, -1, 1, 0);
  EXPECT_DOUBLE_EQ(moved.re, 0.0);
  EXPECT_DOUBLE_EQ(moved.im, 0.5);
  for (const CurveClass c : {CurveClass(1, 0), CurveClass(0, 1), CurveClass(3, 2)}) {
    EXPECT_DOUBLE_EQ(ext_torus(moved, transform_curve(c, 0, -1, 1, 0)),
                     ext_torus(w, c));
  }
  // generic matrices and points, floating tolerance
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> xs(-1, 1), ys(0.5, 2);
  const long m[3][4] = {{1, 1, 0, 1}, {1, 0, 1, 1}, {2, 1, 1, 1}};
  for (int i = 0; i < 30; ++i) {
    const TorusPoint p(xs(rng), ys(rng));
    const TorusPoint q(xs(rng), ys(rng));
    for (const auto& g : m) {
      const TorusPoint pg = apply_mapping_class(p, g[0], g[1], g[2], g[3]);
      const TorusPoint qg = apply_mapping_class(q, g[0], g[1], g[2], g[3]);
      EXPECT_NEAR(teich_dist_exact(pg, qg), teich_dist_exact(p, q), 1e-12);
      for (const CurveClass c : {CurveClass(1, 0), CurveClass(1, 2)})
        EXPECT_NEAR(ext_torus(pg, transform_curve(c, g[0], g[1], g[2], g[3])),
                    ext_torus(p, c), 1e-11);
    }
  }
  EXPECT_THROW(apply_mapping_class(w, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(transform_curve(CurveClass(1, 0), 2, 0, 0, 2), std::invalid_argument);
}

TEST(LimitingDistanceOracle, PureImaginaryPairsMatchHyperbolic) {
  // With a single component the limit distance equals the (t-independent)
  // Teichmüller distance between the flowed tori.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ys(0.3, 3.5);
  for (int i = 0; i < 40; ++i) {
    const double y1 = ys(rng), y2 = ys(rng);
    const auto lim = limiting_distance(ray_data_torus(TorusPoint(0, y1)),
                                       ray_data_torus(TorusPoint(0, y2)));
    EXPECT_NEAR(lim.value(), teich_dist_exact(TorusPoint(0, y1), TorusPoint(0, y2)),
                1e-12);
    for (const double t : {0.0, 1.0, 2.5}) {
      EXPECT_NEAR(teich_dist_exact(vertical_ray(TorusPoint(0, y1), t),
                                   vertical_ray(TorusPoint(0, y2), t)),
                  lim.value(), 1e-12);
    }
  }
}

TEST(VerifyLimits, SquareTorusHorizontalCurveIsExact) {
  const auto report = verify_limits(TorusPoint(0, 1), {CurveClass(1, 0)},
                                    {0, 0.5, 1, 2, 4});
  EXPECT_TRUE(report.ok());
  for (const auto& e : report.entries) {
    EXPECT_EQ(e.shrink_limit_exact, rat(1));
    EXPECT_EQ(e.shrink_residual, rat(0));
    EXPECT_TRUE(e.walsh_ok);
    EXPECT_LE(e.shrink_mismatch, 1e-15);
    EXPECT_TRUE(e.grow_limit.is_infinite());
  }
}

TEST(VerifyLimits, ResidualClosedFormAtHeadlinePoint) {
  const auto report =
      verify_limits(TorusPoint(0.3, 1.7), {CurveClass(1, 1)}, {0, 1, 2, 3, 4, 5});
  EXPECT_TRUE(report.ok());
  const auto& last = report.entries.back();
  EXPECT_EQ(last.t, 5.0);
  EXPECT_NEAR(as_double(last.shrink_residual), std::exp(-20.0) * 1.7, 1e-22);
  EXPECT_LE(as_double(last.shrink_residual), 4e-9);
  EXPECT_LE(report.max_shrink_mismatch, 1e-12);
}

TEST(VerifyLimits, GrowSideConstantForVerticalClass) {
  const TorusPoint w(1.0 / 3.0, 2);
  const auto report = verify_limits(w, {CurveClass(-1, 3)}, {0, 1, 2, 3});
  EXPECT_TRUE(report.ok());
  for (const auto& e : report.entries) {
    ASSERT_TRUE(e.grow_limit.is_finite());
    EXPECT_EQ(e.grow_limit.value(), rat(18));  // q²y = 9·2
    EXPECT_NEAR(e.grow_measured, 18.0, 1e-9);
    EXPECT_EQ(e.shrink_limit_exact, rat(0));  // the class is vertical
  }
}

TEST(VerifyLimits, PairInequalityWithEqualityCase) {
  const auto report = verify_limits(TorusPoint(0, 2.5),
                                    {CurveClass(0, 1), CurveClass(1, 0),
                                     CurveClass(1, 1)},
                                    {0, 1, 3});
  EXPECT_TRUE(report.ok());
  bool saw_equality = false;
  for (const auto& chk : report.pair_checks) {
    EXPECT_TRUE(chk.holds);
    if (chk.f == CurveClass(0, 1) && chk.g == CurveClass(1, 0)) {
      EXPECT_TRUE(chk.equality);  // vertical/horizontal pair, every t
      saw_equality = true;
    }
  }
  EXPECT_TRUE(saw_equality);
}

}  // namespace
}  // namespace teich

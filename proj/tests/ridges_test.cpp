#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "pleat/error.hpp"
#include "pleat/localfold.hpp"
#include "pleat/ridges.hpp"

using namespace pleat;

namespace {

constexpr double kPi = std::numbers::pi;

ParametricCurve latitude(double polar) {
  return make_parametric(
      [=](auto t) {
        using std::cos;
        using std::sin;
        using T = decltype(t);
        return std::array<T, 3>{std::sin(polar) * cos(t), std::sin(polar) * sin(t),
                                T(std::cos(polar))};
      },
      0.0, 2 * kPi, true);
}

void expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(kind);
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(SphereRidge, GreatCircleIsTooShort) {
  const auto great = SpaceCurve::from_parametric(latitude(kPi / 2), 256);
  expect_kind(ErrorKind::TooShort, [&] { (void)sphere_ridge(great); });
}

TEST(SphereRidge, LatitudeCircleIsTooShort) {
  const auto lat = SpaceCurve::from_parametric(latitude(1.0), 256);
  expect_kind(ErrorKind::TooShort, [&] { (void)sphere_ridge(lat); });
}

TEST(SphereRidge, SphereParaboloidCurveBecomesValidRidge) {
  const auto omega = sphere_paraboloid_curve(2048);
  const auto gamma = sphere_ridge(omega);
  EXPECT_NEAR(gamma.length(), 2 * kPi, 1e-10);
  EXPECT_GT(gamma.curvature().min_value(), 1.0);
  // folds onto the unit circle on both sides
  const auto circle = PlanarCurve::circle(1.0, 2048);
  EXPECT_NO_THROW((void)fold_along(circle, gamma, Side::Plus));
  EXPECT_NO_THROW((void)fold_along(circle, gamma, Side::Minus));
}

TEST(SphereParaboloid, LiesOnBothSurfaces) {
  const auto c = sphere_paraboloid_curve(2048);
  for (const Vec3& p : c.points()) {
    EXPECT_NEAR(p.squaredNorm(), 1.0, 1e-10);
    EXPECT_NEAR(p.z(), 3 * p.x() * p.y(), 1e-10);
  }
  for (double s = 0.01; s < c.length(); s += 0.37) {
    const Vec3 p = c.position(s);
    EXPECT_NEAR(p.squaredNorm(), 1.0, 1e-10);
    EXPECT_NEAR(p.z(), 3 * p.x() * p.y(), 1e-10);
  }
}

TEST(SphereParaboloid, LengthMatchesArcQuadrature) {
  // one arc (t, y(t), 3 t y(t)) integrated independently, times four
  const double t0 = std::sqrt((std::sqrt(10.0) - 1.0) / 9.0);
  auto speed = [](double t) {
    const double g = (1 - t * t) / (1 + 9 * t * t);
    const double y = std::sqrt(g);
    const double dg = (-2 * t * (1 + 9 * t * t) - 18 * t * (1 - t * t)) /
                      ((1 + 9 * t * t) * (1 + 9 * t * t));
    const double dy = dg / (2 * y);
    const double dz = 3 * y + 3 * t * dy;
    return std::sqrt(1 + dy * dy + dz * dz);
  };
  const double arc = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(speed, -t0, t0, 20,
                                                                                    1e-15);
  const auto c = sphere_paraboloid_curve(2048);
  EXPECT_NEAR(c.length(), 4 * arc, 1e-10);
  EXPECT_GT(c.length(), 2 * kPi);
  EXPECT_NEAR(c.length(), 8.74016223957659, 1e-11);
}

TEST(SphereParaboloid, ArcsJoinSmoothly) {
  const auto seams = sphere_paraboloid_seams();
  EXPECT_LT(seams.position_gap, 1e-12);
  EXPECT_LT(seams.tangent_gap, 1e-8);
  EXPECT_LT(seams.curvature_gap, 1e-8);
  // the arcs trace the same point set as the closed curve
  const auto c = sphere_paraboloid_curve(2048);
  const auto arcs = sphere_paraboloid_arcs();
  for (std::size_t k = 0; k < 4; ++k) {
    const double quarter = c.length() / 4;
    for (double f : {0.1, 0.5, 0.8}) {
      const double u = arcs[k].t0 + f * (arcs[k].t1 - arcs[k].t0);
      const Vec3 p = arcs[k].position(u);
      // closest node within this quarter
      double best = 1e9;
      for (std::size_t i = k * c.size() / 4; i <= (k + 1) * c.size() / 4 && i < c.size(); ++i)
        best = std::min(best, (c.points()[i] - p).norm());
      EXPECT_LT(best, quarter / 512.0) << "arc " << k;
    }
  }
}

TEST(Torus, StartsAtOuterEquator) {
  const auto c = torus_parametric(3.0, 9, 2);
  EXPECT_NEAR((c.position(0.0) - Vec3(4.0, 0.0, 0.0)).norm(), 0.0, 1e-15);
  const auto sc = torus_curve(3.0, 9, 2, 1024);
  EXPECT_NEAR((sc.points()[0] - Vec3(4.0, 0.0, 0.0)).norm(), 0.0, 1e-15);
  EXPECT_TRUE(sc.closed());
}

TEST(Torus, LengthIncreasesWithRadius) {
  double prev = 0.0;
  for (double a : {2.0, 3.0, 4.0}) {
    const double L = torus_curve(a, 9, 2, 1024).length();
    EXPECT_GT(L, prev);
    prev = L;
  }
}

TEST(Torus, HigherWindingRaisesRescaledCurvature) {
  const auto low = torus_curve(3.0, 9, 2, 4096);
  const auto high = torus_curve(3.0, 9, 200, 65536);
  const double kl = low.curvature().min_value() * low.length() / (2 * kPi);
  const double kh = high.curvature().min_value() * high.length() / (2 * kPi);
  EXPECT_GT(kl, 1.0);
  EXPECT_GT(kh, kl);
}

TEST(Torus, RejectsBadParameters) {
  expect_kind(ErrorKind::InvalidArgument, [] { (void)torus_parametric(1.0, 9, 2); });
  expect_kind(ErrorKind::InvalidArgument, [] { (void)torus_parametric(3.0, 0, 2); });
}

TEST(TotalCurvature, PlanarCircleIsTwoPi) {
  const auto c = SpaceCurve::from_parametric(latitude(kPi / 2), 512);
  EXPECT_NEAR(total_curvature(c), 2 * kPi, 1e-8);
}

TEST(TotalCurvature, GeneratedRidgesExceedTwoPi) {
  const auto torus = torus_curve(3.0, 9, 2, 2048);
  EXPECT_GT(total_curvature(torus.scaled(2 * kPi / torus.length())), 2 * kPi);
  EXPECT_GT(total_curvature(sphere_paraboloid_curve(2048)), 2 * kPi);
}

TEST(TotalCurvature, OpenCurveIsRejected) {
  const auto open = SpaceCurve::from_parametric(
      make_parametric(
          [](auto t) {
            using std::cos;
            using std::sin;
            return std::array<decltype(t), 3>{cos(t), sin(t), 0.1 * t};
          },
          0.0, 3.0, false),
      128);
  expect_kind(ErrorKind::NotClosed, [&] { (void)total_curvature(open); });
}

TEST(FenchelGate, RefusesPlanarConvexCurve) {
  const auto circle = SpaceCurve::from_parametric(latitude(kPi / 2), 512);
  expect_kind(ErrorKind::NotProper, [&] { fenchel_gate(circle); });
  EXPECT_NO_THROW(fenchel_gate(sphere_paraboloid_curve(512)));
}

TEST(Presets, ParseAndBuild) {
  const auto sp = RidgePreset::parse("sphere-paraboloid");
  EXPECT_EQ(sp.kind, RidgePreset::Kind::SphereParaboloid);
  const auto t = RidgePreset::parse("torus:3,9,2");
  EXPECT_EQ(t.kind, RidgePreset::Kind::Torus);
  EXPECT_EQ(t.a, 3.0);
  EXPECT_EQ(t.p, 9);
  EXPECT_EQ(t.q, 2);
  EXPECT_EQ(t.name(), "torus:3,9,2");
  expect_kind(ErrorKind::ConfigError, [] { (void)RidgePreset::parse("torus:3,9"); });
  expect_kind(ErrorKind::ConfigError, [] { (void)RidgePreset::parse("helix"); });
  for (const auto& p : {sp, t}) {
    const auto ridge = make_ridge(p, 1024);
    const auto foldline = PlanarCurve::circle(ridge.length() / (2 * kPi), 1024);
    EXPECT_NO_THROW((void)fold_along(foldline, ridge, Side::Plus)) << p.name();
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pleat/darboux.hpp"
#include "pleat/error.hpp"
#include "pleat/localfold.hpp"
#include "pleat/ridges.hpp"

using namespace pleat;
using fixtures::kPi;

namespace {

constexpr std::size_t kN = 1024;

ScalarField field(double (*f)(double), double period = 2 * kPi, std::size_t n = kN) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(period * static_cast<double>(i) / n);
  return ScalarField::periodic(v, 0.0, period);
}

FoldDescriptor random_descriptor(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), e = u(rng), f = u(rng);
  std::vector<double> kg(kN), kn(kN), tr(kN);
  const double sgn = u(rng) > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < kN; ++i) {
    const double s = 2 * kPi * static_cast<double>(i) / kN;
    kg[i] = 1.0 + 0.4 * a * std::sin(s + b);
    kn[i] = sgn * (0.7 + 0.3 * c * std::cos(2 * s + d));
    tr[i] = 0.5 * e * std::sin(3 * s) + 0.2 * f;
  }
  FoldDescriptor desc;
  desc.side = sgn < 0 ? Side::Plus : Side::Minus;
  desc.k_g = ScalarField::periodic(kg, 0.0, 2 * kPi);
  desc.k_n = desc.k_g.with_samples(kn);
  desc.tau_r = desc.k_g.with_samples(tr);
  return desc;
}

Fold sphere_paraboloid_fold(Side side, std::size_t n = 2048) {
  const auto ridge = sphere_paraboloid_curve(n);
  const auto foldline = PlanarCurve::circle(ridge.length() / (2 * kPi), n);
  return fold_along(foldline, ridge, side);
}

}  // namespace

TEST(RulingDirection, ZeroRelativeTorsionIsOrthogonal) {
  const Vec3 T(1, 0, 0);
  const Vec3 u(0, 0.6, 0.8);
  for (double kn : {-2.0, -0.3, 0.4, 1.5}) {
    const Vec3 r = ruling_direction(kn, 0.0, T, u);
    EXPECT_NEAR(r.norm(), 1.0, 1e-12);
    EXPECT_NEAR(r.dot(T), 0.0, 1e-15);
    EXPECT_NEAR((r + (kn > 0 ? 1.0 : -1.0) * u).norm(), 0.0, 1e-15);
  }
}

TEST(RulingDirection, VanishingNormalCurvatureAlignsWithTangent) {
  const Vec3 T(0, 1, 0);
  const Vec3 u(1, 0, 0);
  double prev = 1.0;
  for (double kn : {-1e-2, -1e-4, -1e-6, -1e-8}) {
    const double err = (ruling_direction(kn, 0.5, T, u) - T).norm();
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-7);
  EXPECT_THROW(ruling_direction(0.0, 0.0, T, u), GeometryError);
}

TEST(RulingDirection, ConeRulingsMeetAtApex) {
  const fixtures::Cone cone;
  const auto fold = fold_along(fixtures::cone_foldline(cone, 512), fixtures::cone_ridge(cone, 512),
                               Side::Plus);
  std::vector<Vec3> p, r;
  for (std::size_t i = 0; i < fold.frames.size(); ++i) {
    p.push_back(fold.frames[i].point);
    r.push_back(fold.rulings.direction[i]);
    EXPECT_NEAR(r.back().dot(fold.frames[i].T), 0.0, 1e-12);
    EXPECT_NEAR(r.back().dot(fold.frames[i].n), 0.0, 1e-12);
  }
  double residual = 0.0;
  const Vec3 apex = fixtures::common_point(p, r, &residual);
  EXPECT_LT(residual, 1e-8);
  // the + side bends towards +z for an anticlockwise base circle
  EXPECT_NEAR((apex - cone.apex()).norm(), 0.0, 1e-8);
  for (std::size_t i = 0; i < fold.frames.size(); i += 37)
    EXPECT_NEAR(fold.rulings.regression[i].value(), (apex - p[i]).norm(), 1e-8);
}

TEST(RulingAngle, SimpleValues) {
  EXPECT_NEAR(ruling_angle(-1.0, 0.0, 0.0, 0.0).beta, kPi / 2, 1e-15);
  EXPECT_NEAR(ruling_angle(-1.0, 1.0, 0.0, 0.0).beta, kPi / 4, 1e-15);
}

TEST(RulingAngle, DerivativeMatchesFiniteDifference) {
  const auto kn = field([](double s) { return -1.0 + 0.3 * std::sin(s); });
  const auto tr = field([](double s) { return 0.5 * std::cos(2 * s) + 0.1; });
  const auto [beta, dbeta] = ruling_angle(kn, tr);
  const double h = 1e-4;
  for (double s : {0.2, 1.1, 2.9, 4.4, 6.0}) {
    const double fd = (beta(s + h) - beta(s - h)) / (2 * h);
    EXPECT_NEAR(dbeta(s), fd, 1e-6);
  }
}

TEST(FlipSide, ConstantDataOnlyNegatesNormalCurvature) {
  FoldDescriptor d;
  d.k_g = ScalarField::constant(1.0, 256, 0.0, 2 * kPi);
  d.k_n = d.k_g.with_samples(std::vector<double>(256, -0.75));
  d.tau_r = d.k_g.with_samples(std::vector<double>(256, 0.2));
  const auto f = flip_side(d);
  EXPECT_EQ(f.side, Side::Minus);
  for (std::size_t i = 0; i < 256; i += 9) {
    EXPECT_NEAR(f.k_n.samples()[i], 0.75, 1e-15);
    EXPECT_NEAR(f.tau_r.samples()[i], 0.2, 1e-12);
  }
}

TEST(FlipSide, IsAnInvolution) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = random_descriptor(rng);
    const auto back = flip_side(flip_side(d));
    EXPECT_EQ(back.side, d.side);
    for (std::size_t i = 0; i < kN; ++i) {
      EXPECT_NEAR(back.k_n.samples()[i], d.k_n.samples()[i], 1e-10);
      EXPECT_NEAR(back.tau_r.samples()[i], d.tau_r.samples()[i], 1e-10);
    }
  }
}

TEST(FlipSide, AgreesWithAlphaDerivativeRoute) {
  FoldDescriptor d;
  d.k_g = ScalarField::constant(1.0, kN, 0.0, 2 * kPi);
  d.k_n = field([](double s) { return -1.0 + 0.1 * std::sin(s); });
  d.tau_r = ScalarField::constant(0.0, kN, 0.0, 2 * kPi);
  const auto f = flip_side(d);
  // the other surface has alpha -> -alpha, so tau_r = tau + alpha' drops by 2 alpha'
  const auto alpha = alpha_from_descriptor(d.k_g, d.k_n);
  const auto da = alpha.node_derivative(1);
  for (std::size_t i = 0; i < kN; ++i)
    EXPECT_NEAR(f.tau_r.samples()[i], d.tau_r.samples()[i] - 2 * da[i], 1e-8);
}

TEST(PrincipalCurvature, Values) {
  EXPECT_NEAR(principal_curvature(-0.3, kPi / 2), -0.3, 1e-15);
  EXPECT_NEAR(principal_curvature(-0.5, kPi / 4), -1.0, 1e-15);
  try {
    (void)principal_curvature(-0.5, 0.0);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RulingTangent);
  }
}

TEST(PrincipalCurvature, ConeMatchesEmbedding) {
  const fixtures::Cone cone;
  const std::size_t n = 512;
  const auto fold = fold_along(fixtures::cone_foldline(cone, n), fixtures::cone_ridge(cone, n),
                               Side::Plus);
  // explicit cone X(th, l) = apex + l (rho cos th, rho sin th, -height); second
  // fundamental form by central differences across the generators
  const double h = 1e-4;
  auto X = [&](double th) {
    return Vec3(cone.rho * std::cos(th), cone.rho * std::sin(th), 0.0);
  };
  for (std::size_t i = 0; i < n; i += 41) {
    const double th = fold.desc.k_g.node(i) / cone.rho;
    const Vec3 xt = (X(th + h) - X(th - h)) / (2 * h);
    const Vec3 xtt = (X(th + h) - 2 * X(th) + X(th - h)) / (h * h);
    const double II = xtt.dot(fold.frames[i].n) / xt.squaredNorm();
    EXPECT_NEAR(fold.rulings.principal[i], II, 1e-6);
    EXPECT_NEAR(std::abs(fold.rulings.principal[i]), cone.principal_at(1.0), 1e-12);
  }
}

TEST(RegressionDistance, InfiniteWhenRulingsAreParallel) {
  const auto d = regression_distance(1.0, -0.7, 0.7);
  EXPECT_TRUE(d.infinite());
  EXPECT_EQ(d.sign(), 1);
  EXPECT_NEAR(regression_distance(kPi / 2, 0.0, 1.0).value(), 1.0, 1e-15);
}

TEST(RegressionDistance, EnvelopeMatchesNeighbouringRulingIntersections) {
  const auto fold = sphere_paraboloid_fold(Side::Plus, 8192);
  const auto& fr = fold.frames;
  const auto& r = fold.rulings;
  // closest point of the ruling at s_i to the ruling at s_{i+k}
  auto estimate = [&](std::size_t i, std::size_t k) {
    const Vec3 p1 = fr[i].point, p2 = fr[i + k].point;
    const Vec3 r1 = r.direction[i], r2 = r.direction[i + k];
    const double b = r1.dot(r2);
    const Vec3 w = p1 - p2;
    return (b * r2.dot(w) - r1.dot(w)) / (1 - b * b);
  };
  for (std::size_t i : {100u, 1500u, 3000u, 5000u}) {
    ASSERT_TRUE(r.regression[i].finite());
    const double d = r.regression[i].value();
    const double e1 = std::abs(estimate(i, 4) - d);
    const double e2 = std::abs(estimate(i, 2) - d);
    const double e3 = std::abs(estimate(i, 1) - d);
    EXPECT_LT(e3, 1e-2 * std::max(1.0, std::abs(d)));
    EXPECT_GT(e1 / e2, 1.6);
    EXPECT_GT(e2 / e3, 1.6);
  }
}

TEST(FoldAlong, SphereParaboloidFoldsOnBothSides) {
  for (Side side : {Side::Plus, Side::Minus}) {
    const auto fold = sphere_paraboloid_fold(side);
    EXPECT_EQ(fold.desc.side, side);
    for (std::size_t i = 0; i < fold.desc.size(); ++i) {
      const double k = fold.desc.curvature(i);
      const double a = fold.desc.alpha(i);
      EXPECT_EQ(a > 0, side == Side::Plus);
      EXPECT_LT(std::abs(a), kPi / 2);
      EXPECT_NEAR(fold.desc.k_g.samples()[i], std::cos(a) * k, 1e-8);
      EXPECT_NE(fold.desc.k_n.samples()[i], 0.0);
      // cot beta = -tau_r / k_n
      const double b = fold.rulings.beta.samples()[i];
      EXPECT_NEAR(std::cos(b) / std::sin(b),
                  -fold.desc.tau_r.samples()[i] / fold.desc.k_n.samples()[i], 1e-10);
      EXPECT_NEAR(fold.rulings.direction[i].dot(fold.frames[i].n), 0.0, 1e-8);
    }
  }
}

TEST(FoldAlong, SidesAreRelatedByFlip) {
  const auto plus = sphere_paraboloid_fold(Side::Plus);
  const auto minus = sphere_paraboloid_fold(Side::Minus);
  const auto flipped = flip_side(plus.desc);
  EXPECT_EQ(flipped.side, Side::Minus);
  for (std::size_t i = 0; i < plus.desc.size(); ++i) {
    EXPECT_NEAR(flipped.k_n.samples()[i], minus.desc.k_n.samples()[i], 1e-9);
    EXPECT_NEAR(flipped.tau_r.samples()[i], minus.desc.tau_r.samples()[i], 1e-9);
  }
}

TEST(FoldAlong, TorusKnotFolds) {
  const auto ridge = torus_curve(3.0, 9, 2, 2048);
  const auto foldline = PlanarCurve::circle(ridge.length() / (2 * kPi), 2048);
  const auto fold = fold_along(foldline, ridge, Side::Plus);
  EXPECT_GT(fold.desc.k_n.max_abs(), 0.0);
}

TEST(FoldAlong, CircleOntoItselfIsNotProper) {
  const auto foldline = PlanarCurve::circle(1.0, 256);
  const auto ridge = fixtures::cone_ridge(fixtures::Cone{1.0}, 256);
  try {
    (void)fold_along(foldline, ridge, Side::Plus);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotProper);
    EXPECT_TRUE(e.location().has_value());
  }
}

TEST(FoldAlong, LengthMismatchIsRejected) {
  const auto ridge = sphere_paraboloid_curve(256);
  const auto foldline = PlanarCurve::circle(1.0, 256);
  try {
    (void)fold_along(foldline, ridge, Side::Plus);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(FoldAlong, DiagnosticCsvHasOneRowPerSample) {
  const auto fold = sphere_paraboloid_fold(Side::Plus, 128);
  std::ostringstream os;
  write_fold_csv(os, fold.desc, fold.rulings);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "s,alpha,beta,beta_prime,d,k_p");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 128);
}

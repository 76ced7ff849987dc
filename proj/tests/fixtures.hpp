#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>

#include "pleat/curves.hpp"
#include "pleat/localfold.hpp"

namespace fixtures {

inline constexpr double kPi = std::numbers::pi;

// Cone whose base circle (radius rho, plane z = 0) is the image of a unit
// circle arc of the same length: slant 1, apex at height sqrt(1 - rho^2).
struct Cone {
  double rho = 0.8;
  double slant() const { return 1.0; }
  double height() const { return std::sqrt(1.0 - rho * rho); }
  Eigen::Vector3d apex() const { return {0.0, 0.0, height()}; }
  // |principal curvature| at distance l from the apex along a generator
  double principal_at(double l) const { return height() / (rho * l); }
};

inline pleat::PlanarCurve cone_foldline(const Cone& c, std::size_t n) {
  return pleat::PlanarCurve::circle(1.0, n, pleat::Vec2::Zero(), 0.0, 2 * kPi * c.rho);
}

inline pleat::SpaceCurve cone_ridge(const Cone& c, std::size_t n) {
  const double rho = c.rho;
  return pleat::SpaceCurve::from_parametric(
      pleat::make_parametric(
          [=](auto t) {
            using std::cos;
            using std::sin;
            using T = decltype(t);
            return std::array<T, 3>{rho * cos(t), rho * sin(t), T(0.0)};
          },
          0.0, 2 * kPi, true),
      n);
}

// Least-squares common point of lines p_i + t r_i; returns residual RMS.
inline Eigen::Vector3d common_point(std::span<const Eigen::Vector3d> p,
                                    std::span<const Eigen::Vector3d> r, double* residual) {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Eigen::Matrix3d P = Eigen::Matrix3d::Identity() - r[i] * r[i].transpose();
    A += P;
    b += P * p[i];
  }
  const Eigen::Vector3d x = A.ldlt().solve(b);
  if (residual) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Eigen::Vector3d d = x - p[i];
      acc += (d - d.dot(r[i]) * r[i]).squaredNorm();
    }
    *residual = std::sqrt(acc / static_cast<double>(p.size()));
  }
  return x;
}

}  // namespace fixtures

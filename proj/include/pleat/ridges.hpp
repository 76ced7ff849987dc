#pragma once

#include <array>
#include <string>

#include "pleat/curves.hpp"

namespace pleat {

// omega_{a,(p,q)}(t) = ((a + cos lt) cos t, (a + cos lt) sin t, sin lt), l = q/p,
// t in [0, 2 pi p].
ParametricCurve torus_parametric(double a, int p, int q);
SpaceCurve torus_curve(double a, int p, int q, std::size_t n = kDefaultResolution);

// The closed curve cut from the unit sphere by the saddle z = 3xy, traversed
// anticlockwise seen from +z and starting at the seam on the plane x = y.
ParametricCurve sphere_paraboloid_parametric();
SpaceCurve sphere_paraboloid_curve(std::size_t n = kDefaultResolution);

// The four arcs (t, y(t), 3 t y(t)), y = sqrt((1 - t^2)/(1 + 9 t^2)), and their
// reflections in the planes x = +-y, each oriented anticlockwise.
std::array<ParametricCurve, 4> sphere_paraboloid_arcs();
// Half-width of the parameter interval of one arc.
double sphere_paraboloid_arc_end();

struct SeamReport {
  double position_gap = 0.0;  // max |end_i - start_{i+1}|
  double tangent_gap = 0.0;   // max |T_i(end) - T_{i+1}(start)|
  double curvature_gap = 0.0; // max |k_i(end) - k_{i+1}(start)|
};
SeamReport sphere_paraboloid_seams();

// Rescales a closed curve on the unit sphere to length 2 pi. Throws TooShort
// when its length does not exceed 2 pi.
SpaceCurve sphere_ridge(const SpaceCurve& omega, double sphere_tolerance = 1e-8);

// Integral of k ds over a closed curve.
double total_curvature(const SpaceCurve& curve);

struct RidgePreset {
  enum class Kind { SphereParaboloid, Torus };
  Kind kind = Kind::SphereParaboloid;
  double a = 3.0;
  int p = 9;
  int q = 2;

  // "sphere-paraboloid" or "torus:a,p,q"; throws ConfigError.
  static RidgePreset parse(const std::string& name);
  std::string name() const;
};

// Refuses (NotProper) a closed ridge whose total curvature does not exceed
// 2 pi; such a curve cannot be folded from a closed convex foldline.
void fenchel_gate(const SpaceCurve& ridge, double tolerance = 1e-9);

// Builds the preset curve and applies fenchel_gate.
SpaceCurve make_ridge(const RidgePreset& preset, std::size_t n = kDefaultResolution);

}  // namespace pleat

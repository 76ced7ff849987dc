#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "pleat/scalar_field.hpp"
#include "pleat/taylor.hpp"

namespace pleat {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kDefaultCurvatureFloor = 1e-9;
inline constexpr std::size_t kDefaultResolution = 2048;

// Position and its first four parameter derivatives.
using CurveJet = std::array<Vec3, 5>;

// A curve given in closed form over [t0, t1]. Closed curves are periodic with
// period t1 - t0.
struct ParametricCurve {
  std::function<CurveJet(double)> eval;
  double t0 = 0.0;
  double t1 = 0.0;
  bool closed = false;

  Vec3 position(double t) const { return eval(t)[0]; }
  double speed(double t) const { return eval(t)[1].norm(); }
};

// Wraps a generic callable f(T t) -> std::array<T, 3>, evaluated on jets so
// parameter derivatives are exact.
template <class F>
ParametricCurve make_parametric(F f, double t0, double t1, bool closed) {
  ParametricCurve c;
  c.eval = [f](double t) {
    const auto p = f(Jet<4>::variable(t));
    CurveJet out;
    for (int k = 0; k < 5; ++k)
      out[static_cast<std::size_t>(k)] = Vec3(p[0].derivative(k), p[1].derivative(k), p[2].derivative(k));
    return out;
  };
  c.t0 = t0;
  c.t1 = t1;
  c.closed = closed;
  return c;
}

ParametricCurve scale_parametric(const ParametricCurve& c, double factor);

// Length of c between parameters a and b (adaptive Gauss-Kronrod).
double curve_length(const ParametricCurve& c, double a, double b);
double curve_length(const ParametricCurve& c);

struct ArcLengthSamples {
  std::vector<double> t;  // parameter of each sample
  std::vector<Vec3> points;
  double length = 0.0;
  bool closed = false;
};

// n samples at uniform arc length; closed curves omit the duplicated end.
ArcLengthSamples arclength_samples(const ParametricCurve& c, std::size_t n);

// Resamples points taken at uniform parameter steps to uniform arc length.
// Throws VanishingSpeed at the first stalled sample.
ArcLengthSamples arclength_reparametrize(std::span<const Vec3> points, bool closed,
                                         std::size_t n_out);

struct FrenetFrame {
  Vec3 T = Vec3::Zero();
  Vec3 N = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  double k = 0.0;
  double tau = 0.0;
  bool defined = false;
};

// Frame from derivatives in any regular parametrization.
FrenetFrame frenet_from_jet(const CurveJet& d, double k_min = kDefaultCurvatureFloor);

namespace detail {

// Shared storage for arc-length sampled curves: positions, coordinate
// splines and, when available, the closed form they came from.
struct Trace {
  std::vector<Vec3> points;
  std::array<ScalarField, 3> coords;
  double length = 0.0;
  bool closed = false;
  std::optional<ParametricCurve> source;
  ScalarField param;  // t(s) minus its linear part, if source is set
  double param_rate = 0.0;

  static Trace build(ArcLengthSamples samples, std::optional<ParametricCurve> source);
  double parameter(double s) const;
  // Derivatives in the source parameter, or in arc length otherwise.
  CurveJet jet(double s) const;
  Vec3 position(double s) const;
  double spacing() const { return coords[0].spacing(); }
  double node(std::size_t i) const { return coords[0].node(i); }
};

}  // namespace detail

class SpaceCurve {
 public:
  SpaceCurve() = default;

  static SpaceCurve from_parametric(const ParametricCurve& c,
                                    std::size_t n = kDefaultResolution,
                                    double k_min = kDefaultCurvatureFloor);
  // Positions must already be at uniform arc-length spacing.
  static SpaceCurve from_samples(std::vector<Vec3> points, double length, bool closed,
                                 double k_min = kDefaultCurvatureFloor);
  // Positions at uniform steps of an arbitrary regular parameter.
  static SpaceCurve from_raw_samples(std::span<const Vec3> points, bool closed,
                                     std::size_t n = kDefaultResolution,
                                     double k_min = kDefaultCurvatureFloor);

  double length() const { return trace_.length; }
  bool closed() const { return trace_.closed; }
  std::size_t size() const { return trace_.points.size(); }
  double spacing() const { return trace_.spacing(); }
  double node(std::size_t i) const { return trace_.node(i); }
  const std::vector<Vec3>& points() const { return trace_.points; }
  bool has_closed_form() const { return trace_.source.has_value(); }
  const std::optional<ParametricCurve>& closed_form() const { return trace_.source; }

  Vec3 position(double s) const { return trace_.position(s); }
  Vec3 tangent(double s) const;
  // Throws FrameUndefined where k < k_min.
  FrenetFrame frenet(double s) const;
  // Node frame; may be flagged undefined.
  const FrenetFrame& frame(std::size_t i) const { return frames_[i]; }
  const std::vector<FrenetFrame>& frames() const { return frames_; }
  bool frames_defined() const;

  const ScalarField& curvature() const { return k_; }
  const ScalarField& torsion() const { return tau_; }
  double k_min() const { return k_min_; }

  SpaceCurve scaled(double factor) const;

 private:
  void finish(double k_min);

  detail::Trace trace_;
  std::vector<FrenetFrame> frames_;
  ScalarField k_;
  ScalarField tau_;
  double k_min_ = kDefaultCurvatureFloor;
};

// Planar curve in the xy plane with signed geodesic curvature (positive when
// turning left).
class PlanarCurve {
 public:
  PlanarCurve() = default;

  // Anticlockwise circle starting at angle phase. A sweep below 2 pi gives a
  // circular arc that is still treated as periodic in arc length, as needed
  // for the boundary of a developed cone.
  static PlanarCurve circle(double radius, std::size_t n = kDefaultResolution,
                            Vec2 center = Vec2::Zero(), double phase = 0.0,
                            double sweep = 2.0 * std::numbers::pi);
  static PlanarCurve from_parametric(const ParametricCurve& c,
                                     std::size_t n = kDefaultResolution);
  static PlanarCurve from_samples(std::vector<Vec2> points, double length, bool closed);
  static PlanarCurve from_raw_samples(std::span<const Vec2> points, bool closed,
                                      std::size_t n = kDefaultResolution);

  double length() const { return trace_.length; }
  bool closed() const { return trace_.closed; }
  std::size_t size() const { return trace_.points.size(); }
  double spacing() const { return trace_.spacing(); }
  double node(std::size_t i) const { return trace_.node(i); }
  Vec2 point(std::size_t i) const { return trace_.points[i].head<2>(); }
  std::vector<Vec2> points() const;

  Vec2 position(double s) const { return trace_.position(s).head<2>(); }
  Vec2 tangent(double s) const;
  // Left normal, i.e. the tangent rotated by +90 degrees.
  Vec2 normal(double s) const;
  double tangent_angle(double s) const;

  const ScalarField& geodesic_curvature() const { return k_g_; }
  // Net rotation of the tangent over the curve.
  double total_turning() const;

  // Set for curves built by circle().
  std::optional<double> radius() const { return radius_; }
  Vec2 center() const { return center_; }
  double phase() const { return phase_; }
  double sweep() const { return sweep_; }

  PlanarCurve scaled(double factor) const;

 private:
  void finish();

  detail::Trace trace_;
  ScalarField k_g_;
  std::optional<double> radius_;
  Vec2 center_ = Vec2::Zero();
  double phase_ = 0.0;
  double sweep_ = 0.0;
};

}  // namespace pleat

#include "pleat/ridges.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pleat/error.hpp"
#include "pleat/io.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ParametricCurve torus_parametric(double a, int p, int q) {
  if (p < 1 || q < 1)
    throw GeometryError(ErrorKind::InvalidArgument, "torus winding numbers must be positive");
  if (!(a > 1.0))
    throw GeometryError(ErrorKind::InvalidArgument, "torus needs a > 1 to be embedded");
  const double lam = static_cast<double>(q) / p;
  return make_parametric(
      [=](auto t) {
        using std::cos;
        using std::sin;
        const auto r = a + cos(lam * t);
        return std::array<decltype(t), 3>{r * cos(t), r * sin(t), sin(lam * t)};
      },
      0.0, 2.0 * kPi * p, true);
}

SpaceCurve torus_curve(double a, int p, int q, std::size_t n) {
  return SpaceCurve::from_parametric(torus_parametric(a, p, q), n);
}

ParametricCurve sphere_paraboloid_parametric() {
  // polar form: rho^2 = 2 / (1 + sqrt(1 + 9 sin^2 2θ)), z = 3xy
  return make_parametric(
      [](auto th) {
        using std::cos;
        using std::sin;
        using std::sqrt;
        const auto s2 = sin(2.0 * th);
        const auto rho2 = 2.0 / (1.0 + sqrt(1.0 + 9.0 * s2 * s2));
        const auto rho = sqrt(rho2);
        return std::array<decltype(th), 3>{rho * cos(th), rho * sin(th), 1.5 * rho2 * s2};
      },
      kPi / 4, kPi / 4 + 2 * kPi, true);
}

SpaceCurve sphere_paraboloid_curve(std::size_t n) {
  return SpaceCurve::from_parametric(sphere_paraboloid_parametric(), n);
}

double sphere_paraboloid_arc_end() { return std::sqrt((std::sqrt(10.0) - 1.0) / 9.0); }

std::array<ParametricCurve, 4> sphere_paraboloid_arcs() {
  const double t0 = sphere_paraboloid_arc_end();
  auto y = [](auto u) {
    using std::sqrt;
    return sqrt((1.0 - u * u) / (1.0 + 9.0 * u * u));
  };
  using J = Jet<4>;
  auto mk = [&](auto f) { return make_parametric(f, -t0, t0, false); };
  return {mk([=](J u) { return std::array<J, 3>{-u, y(u), -3.0 * u * y(u)}; }),
          mk([=](J u) { return std::array<J, 3>{-y(u), -u, 3.0 * u * y(u)}; }),
          mk([=](J u) { return std::array<J, 3>{u, -y(u), -3.0 * u * y(u)}; }),
          mk([=](J u) { return std::array<J, 3>{y(u), u, 3.0 * u * y(u)}; })};
}

SeamReport sphere_paraboloid_seams() {
  const auto arcs = sphere_paraboloid_arcs();
  SeamReport r;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = arcs[i];
    const auto& b = arcs[(i + 1) % 4];
    const auto ea = a.eval(a.t1);
    const auto sb = b.eval(b.t0);
    const auto fa = frenet_from_jet(ea);
    const auto fb = frenet_from_jet(sb);
    r.position_gap = std::max(r.position_gap, (ea[0] - sb[0]).norm());
    r.tangent_gap = std::max(r.tangent_gap, (fa.T - fb.T).norm());
    r.curvature_gap = std::max(r.curvature_gap, std::abs(fa.k - fb.k));
  }
  return r;
}

SpaceCurve sphere_ridge(const SpaceCurve& omega, double sphere_tolerance) {
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (std::abs(omega.points()[i].norm() - 1.0) > sphere_tolerance)
      throw GeometryError(ErrorKind::InvalidArgument, "curve leaves the unit sphere",
                          omega.node(i));
  if (!omega.closed()) throw GeometryError(ErrorKind::NotClosed, "sphere ridge must be closed");
  if (omega.length() <= 2 * kPi)
    throw GeometryError(ErrorKind::TooShort,
                        "length " + format_number(omega.length()) + " does not exceed 2 pi");
  return omega.scaled(2 * kPi / omega.length());
}

double total_curvature(const SpaceCurve& curve) {
  if (!curve.closed())
    throw GeometryError(ErrorKind::NotClosed, "total curvature needs a closed curve");
  // trapezoid rule on periodic samples, spectrally accurate for smooth curves
  double sum = 0.0;
  for (double k : curve.curvature().samples()) sum += k;
  return sum * curve.spacing();
}

void fenchel_gate(const SpaceCurve& ridge, double tolerance) {
  const double K = total_curvature(ridge);
  if (K <= 2 * kPi * (1.0 + tolerance))
    throw GeometryError(ErrorKind::NotProper,
                        "total curvature " + format_number(K) + " does not exceed 2 pi");
}

RidgePreset RidgePreset::parse(const std::string& name) {
  RidgePreset p;
  if (name == "sphere-paraboloid") {
    p.kind = Kind::SphereParaboloid;
    return p;
  }
  const std::string prefix = "torus:";
  if (name.rfind(prefix, 0) == 0) {
    std::stringstream ss(name.substr(prefix.size()));
    char c1 = 0;
    char c2 = 0;
    p.kind = Kind::Torus;
    if (ss >> p.a >> c1 >> p.p >> c2 >> p.q && c1 == ',' && c2 == ',' && ss.peek() == EOF)
      return p;
  }
  throw GeometryError(ErrorKind::ConfigError,
                      "unknown ridge preset '" + name + "' (sphere-paraboloid | torus:a,p,q)");
}

std::string RidgePreset::name() const {
  if (kind == Kind::SphereParaboloid) return "sphere-paraboloid";
  return "torus:" + format_number(a) + "," + std::to_string(p) + "," + std::to_string(q);
}

SpaceCurve make_ridge(const RidgePreset& preset, std::size_t n) {
  SpaceCurve c = preset.kind == RidgePreset::Kind::SphereParaboloid
                     ? sphere_paraboloid_curve(n)
                     : torus_curve(preset.a, preset.p, preset.q, n);
  fenchel_gate(c);
  return c;
}

}  // namespace pleat

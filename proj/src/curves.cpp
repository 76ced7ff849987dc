#include "pleat/curves.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Single Gauss-Kronrod panel; callers keep panels short relative to the
// curve's features, which makes the rule exact to rounding.
template <class F>
double integrate(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 0);
}

struct LengthModel {
  std::function<double(double)> speed;
  std::function<Vec3(double)> position;
  double t0 = 0.0;
  double t1 = 0.0;
  bool closed = false;
};

// Uniform arc-length samples by cumulative panel lengths and Newton
// inversion inside each panel.
ArcLengthSamples invert_length(const LengthModel& m, std::size_t n, std::size_t panels) {
  if (n < 4) throw GeometryError(ErrorKind::InvalidArgument, "need at least 4 samples");
  const double dt = (m.t1 - m.t0) / static_cast<double>(panels);
  double mean_speed = 0.0;
  for (std::size_t j = 0; j < panels; ++j) mean_speed += m.speed(m.t0 + dt * (j + 0.5));
  mean_speed /= static_cast<double>(panels);
  const double stall = 1e-10 * mean_speed;
  for (std::size_t j = 0; j <= panels; ++j) {
    const double t = m.t0 + dt * static_cast<double>(j);
    if (!(m.speed(t) > stall))
      throw GeometryError(ErrorKind::VanishingSpeed, "curve speed vanishes", t);
  }

  std::vector<double> cum(panels + 1, 0.0);
  for (std::size_t j = 0; j < panels; ++j) {
    const double a = m.t0 + dt * static_cast<double>(j);
    cum[j + 1] = cum[j] + integrate(m.speed, a, a + dt);
  }
  ArcLengthSamples out;
  out.length = cum.back();
  out.closed = m.closed;
  out.t.resize(n);
  out.points.resize(n);
  const double h = out.length / static_cast<double>(m.closed ? n : n - 1);

  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = h * static_cast<double>(i);
    while (j + 1 < panels && cum[j + 1] <= s) ++j;
    const double ta = m.t0 + dt * static_cast<double>(j);
    double t = ta + dt * (s - cum[j]) / (cum[j + 1] - cum[j]);
    if (!m.closed && i + 1 == n) {
      t = m.t1;
    } else {
      for (int it = 0; it < 30; ++it) {
        const double f = cum[j] + integrate(m.speed, ta, t) - s;
        const double step = f / m.speed(t);
        t -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
      }
    }
    out.t[i] = t;
    out.points[i] = m.position(t);
  }
  return out;
}

std::size_t panel_count(std::size_t n) { return std::max<std::size_t>(n, 256); }

}  // namespace

ParametricCurve scale_parametric(const ParametricCurve& c, double factor) {
  ParametricCurve out = c;
  out.eval = [inner = c.eval, factor](double t) {
    CurveJet j = inner(t);
    for (auto& v : j) v *= factor;
    return j;
  };
  return out;
}

double curve_length(const ParametricCurve& c, double a, double b) {
  const int panels = 1024;
  const double dt = (b - a) / panels;
  double total = 0.0;
  for (int j = 0; j < panels; ++j)
    total += integrate([&](double t) { return c.speed(t); }, a + j * dt, a + (j + 1) * dt);
  return total;
}

double curve_length(const ParametricCurve& c) { return curve_length(c, c.t0, c.t1); }

ArcLengthSamples arclength_samples(const ParametricCurve& c, std::size_t n) {
  LengthModel m{[&c](double t) { return c.speed(t); },
                [&c](double t) { return c.position(t); }, c.t0, c.t1, c.closed};
  return invert_length(m, n, panel_count(n));
}

namespace {

std::array<ScalarField, 3> fit_coords(std::span<const Vec3> points, double start, double end,
                                      bool closed) {
  std::array<ScalarField, 3> coords;
  for (int d = 0; d < 3; ++d) {
    std::vector<double> v(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) v[i] = points[i][d];
    coords[static_cast<std::size_t>(d)] =
        closed ? ScalarField::periodic(std::move(v), start, end - start)
               : ScalarField::open(std::move(v), start, end);
  }
  return coords;
}

Vec3 eval_coords(const std::array<ScalarField, 3>& c, double s, int order) {
  return {c[0].derivative(s, order), c[1].derivative(s, order), c[2].derivative(s, order)};
}

}  // namespace

ArcLengthSamples arclength_reparametrize(std::span<const Vec3> points, bool closed,
                                         std::size_t n_out) {
  if (points.size() < 8)
    throw GeometryError(ErrorKind::InvalidArgument, "need at least 8 samples");
  const double m = static_cast<double>(closed ? points.size() : points.size() - 1);
  const auto coords = fit_coords(points, 0.0, m, closed);
  double mean = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) mean += (points[i] - points[i - 1]).norm();
  mean /= static_cast<double>(points.size() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(eval_coords(coords, static_cast<double>(i), 1).norm() > 1e-10 * mean))
      throw GeometryError(ErrorKind::VanishingSpeed, "sample speed vanishes",
                          static_cast<double>(i));
  }
  LengthModel lm{[&coords](double u) { return eval_coords(coords, u, 1).norm(); },
                 [&coords](double u) { return eval_coords(coords, u, 0); }, 0.0, m, closed};
  return invert_length(lm, n_out, static_cast<std::size_t>(m));
}

FrenetFrame frenet_from_jet(const CurveJet& d, double k_min) {
  FrenetFrame f;
  const double sp = d[1].norm();
  if (!(sp > 0.0)) return f;
  f.T = d[1] / sp;
  const Vec3 c = d[1].cross(d[2]);
  const double cn = c.norm();
  f.k = cn / (sp * sp * sp);
  if (!(f.k >= k_min) || cn == 0.0) return f;
  f.B = c / cn;
  f.N = f.B.cross(f.T);
  f.tau = c.dot(d[3]) / (cn * cn);
  f.defined = true;
  return f;
}

namespace detail {

Trace Trace::build(ArcLengthSamples samples, std::optional<ParametricCurve> src) {
  Trace tr;
  tr.length = samples.length;
  tr.closed = samples.closed;
  tr.coords = fit_coords(samples.points, 0.0, samples.length, samples.closed);
  if (src) {
    const std::size_t n = samples.t.size();
    std::vector<double> p(n);
    if (tr.closed) {
      tr.param_rate = (src->t1 - src->t0) / tr.length;
      for (std::size_t i = 0; i < n; ++i)
        p[i] = samples.t[i] - tr.param_rate * tr.coords[0].node(i);
      tr.param = ScalarField::periodic(std::move(p), 0.0, tr.length);
    } else {
      tr.param = ScalarField::open(samples.t, 0.0, tr.length);
    }
    tr.source = std::move(src);
  }
  tr.points = std::move(samples.points);
  return tr;
}

double Trace::parameter(double s) const { return param(s) + param_rate * s; }

CurveJet Trace::jet(double s) const {
  if (source) return source->eval(parameter(s));
  CurveJet j;
  std::array<double, 5> buf{};
  for (int d = 0; d < 3; ++d) {
    coords[static_cast<std::size_t>(d)].jet(s, buf);
    for (std::size_t k = 0; k < 5; ++k) j[k][d] = buf[k];
  }
  return j;
}

Vec3 Trace::position(double s) const {
  if (source) return source->position(parameter(s));
  return eval_coords(coords, s, 0);
}

}  // namespace detail

// --- SpaceCurve -------------------------------------------------------------

SpaceCurve SpaceCurve::from_parametric(const ParametricCurve& c, std::size_t n, double k_min) {
  SpaceCurve out;
  auto samples = arclength_samples(c, n);
  const auto t = samples.t;
  out.trace_ = detail::Trace::build(std::move(samples), c);
  out.frames_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.frames_[i] = frenet_from_jet(c.eval(t[i]), k_min);
  out.finish(k_min);
  return out;
}

SpaceCurve SpaceCurve::from_samples(std::vector<Vec3> points, double length, bool closed,
                                    double k_min) {
  SpaceCurve out;
  ArcLengthSamples s;
  s.points = std::move(points);
  s.length = length;
  s.closed = closed;
  out.trace_ = detail::Trace::build(std::move(s), std::nullopt);
  out.frames_.resize(out.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.frames_[i] = frenet_from_jet(out.trace_.jet(out.node(i)), k_min);
  out.finish(k_min);
  return out;
}

SpaceCurve SpaceCurve::from_raw_samples(std::span<const Vec3> points, bool closed,
                                        std::size_t n, double k_min) {
  auto s = arclength_reparametrize(points, closed, n);
  return from_samples(std::move(s.points), s.length, closed, k_min);
}

void SpaceCurve::finish(double k_min) {
  k_min_ = k_min;
  std::vector<double> k(size());
  std::vector<double> tau(size());
  for (std::size_t i = 0; i < size(); ++i) {
    k[i] = frames_[i].k;
    tau[i] = frames_[i].defined ? frames_[i].tau : 0.0;
  }
  k_ = trace_.coords[0].with_samples(std::move(k));
  tau_ = trace_.coords[0].with_samples(std::move(tau));
}

Vec3 SpaceCurve::tangent(double s) const { return trace_.jet(s)[1].normalized(); }

FrenetFrame SpaceCurve::frenet(double s) const {
  const FrenetFrame f = frenet_from_jet(trace_.jet(s), k_min_);
  if (!f.defined)
    throw GeometryError(ErrorKind::FrameUndefined, "curvature below floor", s);
  return f;
}

bool SpaceCurve::frames_defined() const {
  return std::all_of(frames_.begin(), frames_.end(), [](const FrenetFrame& f) { return f.defined; });
}

SpaceCurve SpaceCurve::scaled(double factor) const {
  if (trace_.source) return from_parametric(scale_parametric(*trace_.source, factor), size(), k_min_);
  std::vector<Vec3> p = trace_.points;
  for (auto& v : p) v *= factor;
  return from_samples(std::move(p), length() * factor, closed(), k_min_);
}

// --- PlanarCurve ------------------------------------------------------------

namespace {

double signed_curvature(const CurveJet& d) {
  const double sp = std::hypot(d[1].x(), d[1].y());
  return (d[1].x() * d[2].y() - d[1].y() * d[2].x()) / (sp * sp * sp);
}

void require_planar(std::span<const Vec3> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(pts[i].z()) > 1e-12)
      throw GeometryError(ErrorKind::InvalidArgument, "planar curve leaves the z = 0 plane",
                          static_cast<double>(i));
}

std::vector<Vec3> lift(std::span<const Vec2> pts) {
  std::vector<Vec3> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = Vec3(pts[i].x(), pts[i].y(), 0.0);
  return out;
}

}  // namespace

PlanarCurve PlanarCurve::circle(double radius, std::size_t n, Vec2 center, double phase,
                                double sweep) {
  if (!(radius > 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "radius must be positive");
  if (!(sweep > 0.0 && sweep <= 2.0 * std::numbers::pi * (1.0 + 1e-15)))
    throw GeometryError(ErrorKind::InvalidArgument, "circle sweep must lie in (0, 2 pi]");
  const double cx = center.x();
  const double cy = center.y();
  auto c = make_parametric(
      [=](auto t) {
        using std::cos;
        using std::sin;
        using T = decltype(t);
        return std::array<T, 3>{cx + radius * cos(t + phase), cy + radius * sin(t + phase), T(0.0)};
      },
      0.0, sweep, true);
  PlanarCurve out = from_parametric(c, n);
  out.radius_ = radius;
  out.center_ = center;
  out.phase_ = phase;
  out.sweep_ = sweep;
  return out;
}

PlanarCurve PlanarCurve::from_parametric(const ParametricCurve& c, std::size_t n) {
  PlanarCurve out;
  auto samples = arclength_samples(c, n);
  require_planar(samples.points);
  out.trace_ = detail::Trace::build(std::move(samples), c);
  out.finish();
  return out;
}

PlanarCurve PlanarCurve::from_samples(std::vector<Vec2> points, double length, bool closed) {
  PlanarCurve out;
  ArcLengthSamples s;
  s.points = lift(points);
  s.length = length;
  s.closed = closed;
  out.trace_ = detail::Trace::build(std::move(s), std::nullopt);
  out.finish();
  return out;
}

PlanarCurve PlanarCurve::from_raw_samples(std::span<const Vec2> points, bool closed,
                                          std::size_t n) {
  const auto lifted = lift(points);
  auto s = arclength_reparametrize(lifted, closed, n);
  PlanarCurve out;
  out.trace_ = detail::Trace::build(std::move(s), std::nullopt);
  out.finish();
  return out;
}

void PlanarCurve::finish() {
  std::vector<double> kg(size());
  for (std::size_t i = 0; i < size(); ++i) kg[i] = signed_curvature(trace_.jet(node(i)));
  k_g_ = trace_.coords[0].with_samples(std::move(kg));
}

std::vector<Vec2> PlanarCurve::points() const {
  std::vector<Vec2> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = point(i);
  return out;
}

Vec2 PlanarCurve::tangent(double s) const { return trace_.jet(s)[1].head<2>().normalized(); }

Vec2 PlanarCurve::normal(double s) const {
  const Vec2 t = tangent(s);
  return {-t.y(), t.x()};
}

double PlanarCurve::tangent_angle(double s) const {
  const Vec2 t = tangent(s);
  return std::atan2(t.y(), t.x());
}

double PlanarCurve::total_turning() const {
  const std::size_t n = size();
  double total = 0.0;
  Vec2 prev = tangent(node(0));
  const std::size_t last = closed() ? n : n - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    const Vec2 cur = tangent(closed() && i == n ? node(0) + length() : node(i));
    total += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
    prev = cur;
  }
  return total;
}

PlanarCurve PlanarCurve::scaled(double factor) const {
  if (radius_) return circle(*radius_ * factor, size(), center_ * factor, phase_, sweep_);
  if (trace_.source) return from_parametric(scale_parametric(*trace_.source, factor), size());
  auto p = points();
  for (auto& v : p) v *= factor;
  return from_samples(std::move(p), length() * factor, closed());
}

}  // namespace pleat

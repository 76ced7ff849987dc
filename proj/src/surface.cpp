#include "pleat/surface.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>

#include "pleat/error.hpp"
#include "pleat/io.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

using Gauss = boost::math::quadrature::gauss<double, 10>;

// Spline view of a strip for evaluation between nodes.
class StripSampler {
 public:
  explicit StripSampler(const DevelopableStrip& strip) : strip_(strip) {
    const std::size_t n = strip.size();
    const auto& proto = strip.desc.k_g;
    std::array<std::vector<double>, 12> comp;
    for (auto& c : comp) c.resize(n);
    std::vector<double> ext(n);
    for (std::size_t i = 0; i < n; ++i) {
      const RidgeFrame& f = strip.frames[i];
      for (int a = 0; a < 3; ++a) {
        comp[a][i] = f.point[a];
        comp[3 + a][i] = f.T[a];
        comp[6 + a][i] = f.u[a];
        comp[9 + a][i] = f.n[a];
      }
      ext[i] = strip.extent(i);
    }
    for (int k = 0; k < 12; ++k) fit_[k] = proto.with_samples(std::move(comp[k]));
    extent_ = proto.with_samples(std::move(ext));
  }

  struct Sample {
    Vec3 p, T, u, n, r, du;  // du: d/ds of the far-end point p + v r
    double v = 0.0;
    double beta = 0.0;
  };

  Sample at(double s) const {
    Sample o;
    for (int a = 0; a < 3; ++a) {
      o.p[a] = fit_[a](s);
      o.T[a] = fit_[3 + a](s);
      o.u[a] = fit_[6 + a](s);
    }
    o.T.normalize();
    o.u = (o.u - o.u.dot(o.T) * o.T).normalized();
    o.n = o.T.cross(o.u);
    const auto& d = strip_.desc;
    const double kg = d.k_g(s);
    const double kn = d.k_n(s);
    const double tr = d.tau_r(s);
    const double b = strip_.rulings.beta(s);
    const double bp = strip_.rulings.beta_prime(s);
    o.beta = b;
    o.r = std::cos(b) * o.T + std::sin(b) * o.u;
    // Darboux equations: T' = kg u + kn n, u' = -kg T + tr n.
    const Vec3 dr = (bp + kg) * (-std::sin(b) * o.T + std::cos(b) * o.u) +
                    (kn * std::cos(b) + tr * std::sin(b)) * o.n;
    o.v = extent_(s);
    o.du = extent_.derivative(s, 1) * o.r + o.v * dr;
    return o;
  }

  // Unit normal at fraction f of the way along the ruling, oriented with n.
  static Vec3 normal(const Sample& o, double f) {
    Vec3 nn = (o.T + f * o.du).cross(o.r).normalized();
    return nn.dot(o.n) < 0.0 ? Vec3(-nn) : nn;
  }

 private:
  const DevelopableStrip& strip_;
  std::array<ScalarField, 12> fit_;
  ScalarField extent_;
};

std::vector<double> column_params(double L, std::size_t res_u, double s_begin, double s_end,
                                  bool& closed) {
  if (res_u < 2) throw GeometryError(ErrorKind::InvalidArgument, "mesh needs two columns");
  std::vector<double> s(res_u);
  closed = !(s_end > s_begin);
  for (std::size_t i = 0; i < res_u; ++i) {
    const double f = static_cast<double>(i);
    s[i] = closed ? f * L / static_cast<double>(res_u)
                  : s_begin + f * (s_end - s_begin) / static_cast<double>(res_u - 1);
  }
  return s;
}

double angle_at(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 x = a - p;
  const Vec3 y = b - p;
  return std::atan2(x.cross(y).norm(), x.dot(y));
}

struct Affine {
  Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
  Vec3 apply(const Vec3& x) const { return A * x; }
};

Eigen::Matrix3d mirror(double phi) {
  const Vec3 m(-std::sin(phi), std::cos(phi), 0.0);
  return Eigen::Matrix3d::Identity() - 2.0 * m * m.transpose();
}

Eigen::Matrix3d rotation_z(double phi) {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  R(0, 0) = std::cos(phi);
  R(0, 1) = -std::sin(phi);
  R(1, 0) = std::sin(phi);
  R(1, 1) = std::cos(phi);
  return R;
}

// Linear maps taking sector 0 to sector j, and whether columns reverse.
std::vector<std::pair<Eigen::Matrix3d, bool>> sector_maps(const DevelopableStrip& ref,
                                                         const Symmetry& sym) {
  const int n = sym.order;
  std::vector<std::pair<Eigen::Matrix3d, bool>> g;
  g.emplace_back(Eigen::Matrix3d::Identity(), false);
  if (sym.kind == Symmetry::Kind::None) return g;
  const StripSampler sampler(ref);
  const Vec3 p0 = sampler.at(0.0).p;
  const Vec3 p1 = sampler.at(ref.length() / n).p;
  if (sym.kind == Symmetry::Kind::Reflect) {
    const double phi0 = std::atan2(p0.y(), p0.x());
    double step = std::remainder(std::atan2(p1.y(), p1.x()) - phi0, 2.0 * kPi);
    for (int j = 1; j < n; ++j) {
      const double plane = phi0 + static_cast<double>(j) * step;
      g.emplace_back(mirror(plane) * g.back().first, !g.back().second);
    }
  } else {
    const double a = 2.0 * kPi / n;
    const double err_pos = (rotation_z(a) * p0 - p1).norm();
    const double err_neg = (rotation_z(-a) * p0 - p1).norm();
    const double step = err_pos <= err_neg ? a : -a;
    for (int j = 1; j < n; ++j) g.emplace_back(rotation_z(step * j), false);
  }
  return g;
}

std::vector<Vec3> boundary_column(const StripSampler& sampler, double s, std::size_t res_t) {
  const auto o = sampler.at(s);
  std::vector<Vec3> col(res_t);
  for (std::size_t j = 0; j < res_t; ++j)
    col[j] = o.p + (static_cast<double>(j) / static_cast<double>(res_t - 1)) * o.v * o.r;
  return col;
}

}  // namespace

DevelopableStrip strip_from_step(const Step& step, const PlanarCurve& from, std::string name) {
  if (step.frames.empty())
    throw GeometryError(ErrorKind::InvalidArgument, "strip needs the 3D ridge frames");
  if (!step.map)
    throw GeometryError(ErrorKind::NoIntersection, "rulings do not all reach the next curve");
  DevelopableStrip s;
  s.frames = step.frames;
  s.desc = step.source;
  s.rulings = step.rulings;
  s.foldline = from;
  s.name = std::move(name);
  const auto v = step.map->v.samples();
  s.v_lo.resize(v.size());
  s.v_hi.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.v_lo[i] = std::min(0.0, v[i]);
    s.v_hi[i] = std::max(0.0, v[i]);
  }
  return s;
}

void check_strip_extents(const DevelopableStrip& strip, double margin) {
  for (std::size_t i = 0; i < strip.size(); ++i) {
    if (strip.v_lo[i] > 0.0 || strip.v_hi[i] < 0.0)
      throw GeometryError(ErrorKind::InvalidArgument, "strip extents exclude the ridge",
                          strip.desc.k_g.node(i));
    const ExtendedReal& d = strip.rulings.regression[i];
    if (d.infinite()) continue;
    const double e = d.value() > 0.0 ? strip.v_hi[i] : strip.v_lo[i];
    if (std::abs(e) >= (1.0 - margin) * std::abs(d.value()))
      throw GeometryError(ErrorKind::RefusedSingular,
                          "strip reaches within " + format_number(margin) +
                              " |d| of the regression curve",
                          strip.desc.k_g.node(i));
  }
}

StripMesh embed_strip(const DevelopableStrip& strip, std::size_t res_u, std::size_t res_t,
                      double s_begin, double s_end) {
  if (res_t < 2) throw GeometryError(ErrorKind::InvalidArgument, "mesh needs two rows");
  check_strip_extents(strip);
  const StripSampler sampler(strip);
  StripMesh m;
  m.name = strip.name;
  const auto s = column_params(strip.length(), res_u, s_begin, s_end, m.closed);
  m.nu = res_u;
  m.nt = res_t;
  m.vertices.resize(res_u * res_t);
  m.normals.resize(res_u * res_t);
  for (std::size_t i = 0; i < res_u; ++i) {
    const auto o = sampler.at(s[i]);
    for (std::size_t j = 0; j < res_t; ++j) {
      const double f = static_cast<double>(j) / static_cast<double>(res_t - 1);
      m.vertices[m.index(i, j)] = o.p + f * o.v * o.r;
      m.normals[m.index(i, j)] = StripSampler::normal(o, f);
    }
  }
  const std::size_t cols = m.closed ? res_u : res_u - 1;
  for (std::size_t i = 0; i < cols; ++i) {
    const std::size_t i1 = (i + 1) % res_u;
    for (std::size_t j = 0; j + 1 < res_t; ++j) {
      const std::array<std::size_t, 4> q{m.index(i, j), m.index(i1, j), m.index(i1, j + 1),
                                         m.index(i, j + 1)};
      const Vec3 d1 = m.vertices[q[2]] - m.vertices[q[0]];
      const Vec3 d2 = m.vertices[q[3]] - m.vertices[q[1]];
      if (0.5 * d1.cross(d2).norm() <= 1e-14)
        throw GeometryError(ErrorKind::Degenerate, "degenerate mesh quad", s[i]);
      m.quads.push_back(q);
    }
  }
  for (std::size_t j : {std::size_t{0}, res_t - 1}) {
    std::vector<std::size_t> line;
    for (std::size_t i = 0; i < res_u; ++i) line.push_back(m.index(i, j));
    if (m.closed) line.push_back(m.index(0, j));
    m.creases.push_back(std::move(line));
  }
  return m;
}

std::size_t mesh_columns(const DevelopableStrip& strip, double edge_tolerance) {
  if (!(edge_tolerance > 0.0))
    throw GeometryError(ErrorKind::InvalidArgument, "edge tolerance must be positive");
  const std::size_t n = strip.size();
  const auto& fl = strip.foldline;
  std::vector<Vec3> near(n), far(n);
  std::vector<Vec2> near2(n), far2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RidgeFrame& f = strip.frames[i];
    const double b = strip.rulings.beta.samples()[i];
    const double e = strip.extent(i);
    near[i] = f.point;
    far[i] = f.point + e * strip.rulings.direction[i];
    const Vec2 t = fl.tangent(fl.node(i));
    near2[i] = fl.point(i);
    far2[i] = near2[i] + e * (std::cos(b) * t + std::sin(b) * Vec2(-t.y(), t.x()));
  }
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (i + 1) % n;
    const double a = (near[k] - near[i]).norm();
    const double b = (far[k] - far[i]).norm();
    err = std::max(err, std::abs(a - (near2[k] - near2[i]).norm()) / a);
    if (b > 0.0) err = std::max(err, std::abs(b - (far2[k] - far2[i]).norm()) / b);
  }
  std::size_t cols = n;
  while (err > edge_tolerance && cols < (std::size_t{1} << 20)) {
    cols *= 2;
    err /= 4.0;
  }
  return cols;
}

CreaseReport crease_check(const DevelopableStrip& inner, const DevelopableStrip& outer,
                          const CorrespondenceMap* map) {
  const StripSampler a(inner);
  const StripSampler b(outer);
  CreaseReport r;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const double s1 = inner.desc.k_g.node(i);
    const auto oa = a.at(s1);
    const double s2 = map ? map->s2(s1) : s1;
    const auto ob = b.at(s2);
    const Vec3 pa = map ? Vec3(oa.p + oa.v * oa.r) : oa.p;
    const Vec3 na = map ? StripSampler::normal(oa, 1.0) : oa.n;
    const double alpha = std::atan2(-outer.desc.k_n(s2), outer.desc.k_g(s2));
    const double angle = std::atan2(na.cross(ob.n).norm(), na.dot(ob.n));
    r.angle_error = std::max(r.angle_error, std::abs(angle - 2.0 * std::abs(alpha)));
    r.position_gap = std::max(r.position_gap, (pa - ob.p).norm());
  }
  return r;
}

DevelopedStrip develop_strip(const DevelopableStrip& strip) {
  const std::size_t n = strip.size();
  const auto& proto = strip.desc.k_g;
  std::array<ScalarField, 3> pos;
  for (int a = 0; a < 3; ++a) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = strip.frames[i].point[a];
    pos[a] = proto.with_samples(std::move(c));
  }
  DevelopedStrip out;
  out.length = strip.length();
  std::vector<double> kg(n);
  out.beta.resize(n);
  out.extent.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = proto.node(i);
    const Vec3 acc(pos[0].derivative(s, 2), pos[1].derivative(s, 2), pos[2].derivative(s, 2));
    const RidgeFrame& f = strip.frames[i];
    kg[i] = acc.dot(f.u);
    const Vec3& r = strip.rulings.direction[i];
    out.beta[i] = std::atan2(r.dot(f.u), r.dot(f.T));
    out.extent[i] = strip.extent(i);
  }
  out.k_g = proto.with_samples(std::move(kg));

  // theta(s) and the ridge, integrated cell by cell from the start of the foldline.
  const double h = proto.spacing();
  const auto& kgf = out.k_g;
  std::vector<double> theta(n);
  out.ridge.resize(n);
  theta[0] = strip.foldline.tangent_angle(0.0);
  out.ridge[0] = strip.foldline.position(0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = proto.node(i);
    theta[i + 1] = theta[i] + Gauss::integrate([&](double x) { return kgf(x); }, a, a + h);
    auto th = [&](double x) {
      return theta[i] + Gauss::integrate([&](double y) { return kgf(y); }, a, x);
    };
    out.ridge[i + 1] = out.ridge[i] + Vec2(Gauss::integrate([&](double x) { return std::cos(th(x)); }, a, a + h),
                                           Gauss::integrate([&](double x) { return std::sin(th(x)); }, a, a + h));
  }
  out.direction.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 t(std::cos(theta[i]), std::sin(theta[i]));
    const Vec2 nl(-t.y(), t.x());
    out.direction[i] = std::cos(out.beta[i]) * t + std::sin(out.beta[i]) * nl;
  }
  return out;
}

std::vector<Vec2> develop_mesh(const DevelopableStrip& strip, const DevelopedStrip& flat,
                               std::size_t res_u, std::size_t res_t, double s_begin,
                               double s_end) {
  const auto& proto = strip.desc.k_g;
  const double h = proto.spacing();
  const std::size_t n = strip.size();
  bool closed = false;
  const auto s = column_params(strip.length(), res_u, s_begin, s_end, closed);
  // node tangent angles
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = flat.direction[i];
    theta[i] = std::atan2(d.y(), d.x()) - flat.beta[i];
  }
  const auto beta = proto.with_samples(unwrap_angles(flat.beta));
  const auto ext = proto.with_samples(flat.extent);
  std::vector<Vec2> out(res_u * res_t);
  for (std::size_t c = 0; c < res_u; ++c) {
    const double local = s[c];
    if (local < 0.0 || local > strip.length())
      throw GeometryError(ErrorKind::InvalidArgument, "mesh range must lie in [0, L]");
    // s = L continues past the last node rather than closing up
    const std::size_t i = std::min(n - 1, static_cast<std::size_t>(std::floor(local / h)));
    const double a = proto.node(i);
    Vec2 p = flat.ridge[i];
    double th = theta[i];
    auto th_at = [&](double x) {
      return theta[i] + Gauss::integrate([&](double y) { return flat.k_g(y); }, a, x);
    };
    if (local > a) {
      p += Vec2(Gauss::integrate([&](double x) { return std::cos(th_at(x)); }, a, local),
                Gauss::integrate([&](double x) { return std::sin(th_at(x)); }, a, local));
      th = th_at(local);
    }
    const double b = beta(local);
    const Vec2 t(std::cos(th), std::sin(th));
    const Vec2 r = std::cos(b) * t + std::sin(b) * Vec2(-t.y(), t.x());
    for (std::size_t j = 0; j < res_t; ++j) {
      const double f = static_cast<double>(j) / static_cast<double>(res_t - 1);
      out[j * res_u + c] = p + f * ext(local) * r;
    }
  }
  return out;
}

CurvatureAudit gaussian_curvature_audit(const StripMesh& mesh) {
  const std::size_t nv = mesh.vertices.size();
  std::vector<double> angle(nv, 0.0), area(nv, 0.0);
  std::vector<Vec3> lap(nv, Vec3::Zero());
  auto triangle = [&](std::size_t a, std::size_t b, std::size_t c) {
    const std::array<std::size_t, 3> v{a, b, c};
    const std::array<Vec3, 3> p{mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]};
    std::array<double, 3> ang;
    for (int k = 0; k < 3; ++k) ang[k] = angle_at(p[k], p[(k + 1) % 3], p[(k + 2) % 3]);
    const double A = 0.5 * (p[1] - p[0]).cross(p[2] - p[0]).norm();
    const bool obtuse = ang[0] > kPi / 2 || ang[1] > kPi / 2 || ang[2] > kPi / 2;
    for (int k = 0; k < 3; ++k) {
      const int k1 = (k + 1) % 3;
      const int k2 = (k + 2) % 3;
      angle[v[k]] += ang[k];
      if (!obtuse) {
        area[v[k]] += ((p[k] - p[k2]).squaredNorm() / std::tan(ang[k1]) +
                       (p[k] - p[k1]).squaredNorm() / std::tan(ang[k2])) / 8.0;
      } else {
        area[v[k]] += ang[k] > kPi / 2 ? A / 2.0 : A / 4.0;
      }
      // edge (k1, k2) is opposite angle k
      const double w = 1.0 / std::tan(ang[k]);
      lap[v[k1]] += w * (p[k1] - p[k2]);
      lap[v[k2]] += w * (p[k2] - p[k1]);
    }
  };
  for (const auto& q : mesh.quads) {
    triangle(q[0], q[1], q[2]);
    triangle(q[0], q[2], q[3]);
  }
  CurvatureAudit out;
  out.K.assign(nv, std::numeric_limits<double>::quiet_NaN());
  double sum_h = 0.0;
  for (std::size_t j = 1; j + 1 < mesh.nt; ++j) {
    for (std::size_t i = 0; i < mesh.nu; ++i) {
      if (!mesh.closed && (i == 0 || i + 1 == mesh.nu)) continue;
      const std::size_t v = mesh.index(i, j);
      const double K = (2.0 * kPi - angle[v]) / area[v];
      out.K[v] = K;
      out.max_abs_K = std::max(out.max_abs_K, std::abs(K));
      sum_h += lap[v].norm() / (4.0 * area[v]);
      ++out.interior;
    }
  }
  if (out.interior > 0) out.mean_abs_H = sum_h / static_cast<double>(out.interior);
  out.normalized = out.mean_abs_H > 0.0 ? out.max_abs_K / (out.mean_abs_H * out.mean_abs_H)
                                        : out.max_abs_K;
  return out;
}

double ruling_normal_deviation(const StripMesh& mesh) {
  double dev = 0.0;
  for (std::size_t i = 0; i < mesh.nu; ++i) {
    const Vec3& n0 = mesh.normals[mesh.index(i, 0)];
    for (std::size_t j = 1; j < mesh.nt; ++j)
      dev = std::max(dev, (mesh.normals[mesh.index(i, j)] - n0).norm());
  }
  return dev;
}

Symmetry Symmetry::parse(const std::string& text) {
  Symmetry s;
  if (text == "none") return s;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (colon == std::string::npos || (kind != "reflect" && kind != "rotate"))
    throw GeometryError(ErrorKind::ConfigError, "symmetry must be none, reflect:n or rotate:n");
  s.kind = kind == "reflect" ? Kind::Reflect : Kind::Rotate;
  try {
    s.order = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw GeometryError(ErrorKind::ConfigError, "symmetry order is not an integer: " + text);
  }
  if (s.order < 1 || (s.kind == Kind::Reflect && s.order % 2 != 0))
    throw GeometryError(ErrorKind::ConfigError, "bad symmetry order in " + text);
  return s;
}

std::string Symmetry::name() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Reflect: return "reflect:" + std::to_string(order);
    case Kind::Rotate: return "rotate:" + std::to_string(order);
  }
  return "none";
}

double symmetry_seam_gap(const std::vector<DevelopableStrip>& strips, const Symmetry& symmetry,
                         std::size_t res_t) {
  if (symmetry.kind == Symmetry::Kind::None || strips.empty()) return 0.0;
  const auto g = sector_maps(strips.front(), symmetry);
  const std::size_t n = g.size();
  double gap = 0.0;
  for (const auto& strip : strips) {
    const StripSampler sampler(strip);
    const auto first = boundary_column(sampler, 0.0, res_t);
    const auto last = boundary_column(sampler, strip.length() / symmetry.order, res_t);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& [A, rev] = g[j];
      const auto& [B, rev_next] = g[(j + 1) % n];
      const auto& end_j = rev ? first : last;
      const auto& start_next = rev_next ? last : first;
      for (std::size_t k = 0; k < res_t; ++k)
        gap = std::max(gap, (A * end_j[k] - B * start_next[k]).norm());
    }
  }
  return gap;
}

Scene annulus_assembly(const std::vector<DevelopableStrip>& strips, const Symmetry& symmetry,
                       std::size_t res_u, std::size_t res_t, double tolerance) {
  Scene scene;
  if (symmetry.kind == Symmetry::Kind::None) {
    std::vector<std::future<StripMesh>> jobs;
    for (const auto& s : strips)
      jobs.push_back(std::async(std::launch::async, [&s, res_u, res_t] {
        return embed_strip(s, res_u > 0 ? res_u : mesh_columns(s), res_t);
      }));
    for (auto& j : jobs) scene.meshes.push_back(j.get());
    return scene;
  }
  scene.seam_gap = symmetry_seam_gap(strips, symmetry, res_t);
  if (!(scene.seam_gap <= tolerance))
    throw GeometryError(ErrorKind::SeamError, symmetry.name() + " sectors do not meet: gap " +
                                                  format_number(scene.seam_gap));
  const auto g = sector_maps(strips.front(), symmetry);
  std::vector<std::future<StripMesh>> jobs;
  for (const auto& strip : strips) {
    jobs.push_back(std::async(std::launch::async, [&strip, &symmetry, res_u, res_t] {
      const std::size_t full = res_u > 0 ? res_u : mesh_columns(strip);
      const std::size_t cols =
          std::max<std::size_t>(2, full / static_cast<std::size_t>(symmetry.order) + 1);
      return embed_strip(strip, cols, res_t, 0.0, strip.length() / symmetry.order);
    }));
  }
  for (std::size_t k = 0; k < strips.size(); ++k) {
    const auto& strip = strips[k];
    const StripMesh base = jobs[k].get();
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto& [A, rev] = g[j];
      StripMesh m = base;
      m.name = strip.name + "_sector" + std::to_string(j);
      for (std::size_t i = 0; i < m.nu; ++i) {
        const std::size_t src = rev ? m.nu - 1 - i : i;
        for (std::size_t t = 0; t < m.nt; ++t) {
          m.vertices[m.index(i, t)] = A * base.vertices[base.index(src, t)];
          m.normals[m.index(i, t)] = A * base.normals[base.index(src, t)];
        }
      }
      scene.meshes.push_back(std::move(m));
    }
  }
  return scene;
}

void write_obj(std::ostream& os, const std::vector<StripMesh>& meshes) {
  char buf[96];
  std::size_t base = 1;
  for (const auto& m : meshes) {
    os << "o " << (m.name.empty() ? "strip" : m.name) << '\n';
    for (const Vec3& v : m.vertices) {
      std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", v.x(), v.y(), v.z());
      os << buf;
    }
    for (const Vec3& v : m.normals) {
      std::snprintf(buf, sizeof buf, "vn %.9g %.9g %.9g\n", v.x(), v.y(), v.z());
      os << buf;
    }
    os << "g " << (m.name.empty() ? "strip" : m.name) << "_faces\n";
    for (const auto& q : m.quads) {
      os << 'f';
      for (std::size_t k : q) os << ' ' << k + base << "//" << k + base;
      os << '\n';
    }
    os << "g " << (m.name.empty() ? "strip" : m.name) << "_creases\n";
    for (const auto& line : m.creases) {
      os << 'l';
      for (std::size_t k : line) os << ' ' << k + base;
      os << '\n';
    }
    base += m.vertices.size();
  }
}

void write_developed_svg(std::ostream& os, const std::vector<DevelopableStrip>& strips,
                         const std::vector<PlanarCurve>& foldlines, std::size_t stride) {
  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (const auto& c : foldlines) {
    for (const Vec2& p : c.points()) {
      lo_x = std::min(lo_x, p.x());
      lo_y = std::min(lo_y, p.y());
      hi_x = std::max(hi_x, p.x());
      hi_y = std::max(hi_y, p.y());
    }
  }
  if (!std::isfinite(lo_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double pad = 0.02 * std::max(hi_x - lo_x, hi_y - lo_y);
  const double w = hi_x - lo_x + 2 * pad;
  const double hgt = hi_y - lo_y + 2 * pad;
  const double stroke = 0.001 * std::max(w, hgt);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6g %.6g %.6g %.6g\">\n",
                lo_x - pad, -(hi_y + pad), w, hgt);
  os << buf;
  os << "<g transform=\"scale(1,-1)\" fill=\"none\">\n";
  for (const auto& c : foldlines) {
    os << "<polyline stroke=\"black\" stroke-width=\"" << format_number(2 * stroke) << "\" points=\"";
    auto pts = c.points();
    if (c.closed() && !pts.empty()) pts.push_back(pts.front());
    for (const Vec2& p : pts) {
      std::snprintf(buf, sizeof buf, "%.6g,%.6g ", p.x(), p.y());
      os << buf;
    }
    os << "\"/>\n";
  }
  stride = std::max<std::size_t>(1, stride);
  for (const auto& s : strips) {
    os << "<g stroke=\"steelblue\" stroke-width=\"" << format_number(stroke) << "\">\n";
    for (std::size_t i = 0; i < s.size(); i += stride) {
      const Vec2 p = s.foldline.point(i);
      const Vec2 t = s.foldline.tangent(s.foldline.node(i));
      const double b = s.rulings.beta.samples()[i];
      const Vec2 r = std::cos(b) * t + std::sin(b) * Vec2(-t.y(), t.x());
      const Vec2 q = p + s.extent(i) * r;
      std::snprintf(buf, sizeof buf, "<line x1=\"%.6g\" y1=\"%.6g\" x2=\"%.6g\" y2=\"%.6g\"/>\n",
                    p.x(), p.y(), q.x(), q.y());
      os << buf;
    }
    os << "</g>\n";
  }
  os << "</g>\n</svg>\n";
}

}  // namespace pleat

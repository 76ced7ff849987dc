#include "pleat/propagate.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>

#include "pleat/error.hpp"
#include "pleat/io.hpp"

namespace pleat {

namespace {

int sgn(double x) { return x < 0.0 ? -1 : 1; }

Vec2 rotate90(const Vec2& v) { return {-v.y(), v.x()}; }

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool concentric_circles(const PlanarCurve& a, const PlanarCurve& b) {
  if (!a.radius() || !b.radius()) return false;
  const double scale = std::max(*a.radius(), *b.radius());
  return (a.center() - b.center()).norm() <= 1e-12 * scale &&
         std::abs(a.sweep() - b.sweep()) <= 1e-12 &&
         std::abs(a.phase() - b.phase()) <= 1e-12;
}

ScalarField resampled(const ScalarField& f, std::span<const double> at, double start,
                      double period, int generation) {
  std::vector<double> out(at.size());
  for (std::size_t j = 0; j < at.size(); ++j) out[j] = f(at[j]);
  return ScalarField::periodic(std::move(out), start, period, f.degree())
      .set_generation(generation);
}

// Rulings without 3D frames still carry angle, regression distance, k_p.
RulingField bare_rulings(const FoldDescriptor& desc) {
  RulingField r;
  std::tie(r.beta, r.beta_prime) = ruling_angle(desc.k_n, desc.tau_r);
  r.regression.resize(desc.size());
  r.principal.resize(desc.size());
  for (std::size_t i = 0; i < desc.size(); ++i) {
    const double b = r.beta.samples()[i];
    r.regression[i] = regression_distance(b, r.beta_prime.samples()[i], desc.k_g.samples()[i]);
    r.principal[i] = principal_curvature(desc.k_n.samples()[i], b);
  }
  return r;
}

}  // namespace

double CircleStep::delta() const { return std::atan2(sin_delta, cos_delta); }

CircleStep circle_step(double R, double c, double beta) {
  if (!(R > 0.0) || !(1.0 + c > 0.0))
    throw GeometryError(ErrorKind::InvalidArgument, "circle_step needs R > 0 and c > -1");
  const double sb = std::sin(beta);
  const double cb = std::cos(beta);
  const double disc = sb * sb + c * c + 2.0 * c;
  if (disc < 0.0)
    throw GeometryError(ErrorKind::NoIntersection, "ruling misses the next circle");
  CircleStep st;
  st.v = R * (sb - sgn(sb) * std::sqrt(disc));
  const double R2 = R * (1.0 + c);
  st.sin_delta = st.v * cb / R2;
  st.cos_delta = (R - st.v * sb) / R2;
  return st;
}

Transported transport_descriptor(double k1n, double tau1r, double delta, double s2p) {
  if (s2p == 0.0) throw GeometryError(ErrorKind::Degenerate, "zero correspondence speed");
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  return {(c * k1n + s * tau1r) / s2p, (-s * k1n + c * tau1r) / s2p};
}

Transported transport_via_regression(double k1n, double beta1, double beta1p, double k1g,
                                     double beta2, double v) {
  const double sb1 = std::sin(beta1);
  const double sb2 = std::sin(beta2);
  const double q = 1.0 - v * (beta1p + k1g) / sb1;
  if (std::abs(q) < 1e-14)
    throw GeometryError(ErrorKind::OnRegressionCurve, "next ridge meets the regression curve");
  const double ratio = sb2 / sb1;
  return {ratio * ratio * k1n / q, -(std::cos(beta2) / sb1) * ratio * k1n / q};
}

double step_velocity(double beta1, double beta2, double beta1p, double k1g, double v) {
  const double sb2 = std::sin(beta2);
  if (std::abs(sb2) < 1e-14)
    throw GeometryError(ErrorKind::TangentHit, "ruling tangent to the next foldline");
  const double sb1 = std::sin(beta1);
  return (sb1 - v * (beta1p + k1g)) / sb2;
}

Transported next_side_descriptor(const NextSideInput& in) {
  const double q = in.k2n * in.k2n + in.k2g * in.k2g;
  if (q == 0.0 || in.s2p == 0.0)
    throw GeometryError(ErrorKind::Degenerate, "next ridge has vanishing curvature");
  const double delta = in.beta1 - in.beta2;
  const double bracket =
      in.s2pp * in.k2n * in.k2g +
      in.s2p * (in.k2n * in.k2g_p - in.tau2r * in.k2g * (in.s2p * in.k2g - in.k1g)) -
      in.k2g * (std::cos(delta) * in.k1n_p + std::sin(delta) * in.tau1r_p);
  return {-in.k2n, in.tau2r - 2.0 * bracket / (in.s2p * in.s2p * q)};
}

Transported next_side_descriptor_delta(double k2n, double tau2r, double k1g, double k2g,
                                       double k1g_p, double delta, double delta_p,
                                       double delta_pp, double k1n_p, double tau1r_p) {
  const double q = k2n * k2n + k2g * k2g;
  const double w = delta_p + k1g;
  if (q == 0.0 || w == 0.0)
    throw GeometryError(ErrorKind::Degenerate, "next ridge has vanishing curvature");
  const double f = k2g / w;
  const double bracket = k2n * (delta_pp + k1g_p) - tau2r * w * delta_p -
                         k2g * (std::cos(delta) * k1n_p + std::sin(delta) * tau1r_p);
  return {-k2n, tau2r - 2.0 * f * f * bracket / q};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "regular";
    case Verdict::CrossesRegression: return "crosses-regression";
    case Verdict::NoIntersection: return "no-intersection";
    case Verdict::TangentHit: return "tangent-hit";
  }
  return "?";
}

RegularityReport regularity_check(const std::vector<double>& s,
                                  const std::vector<std::optional<double>>& v,
                                  const std::vector<ExtendedReal>& d,
                                  const std::vector<bool>& tangent_hit) {
  if (s.size() != v.size() || s.size() != d.size() ||
      (!tangent_hit.empty() && tangent_hit.size() != s.size()))
    throw GeometryError(ErrorKind::GridMismatch, "regularity_check inputs differ in length");
  RegularityReport r;
  r.s = s;
  r.v = v;
  r.d = d;
  r.sample_verdict.assign(s.size(), Verdict::Regular);
  auto rank = [](Verdict x) {
    switch (x) {
      case Verdict::NoIntersection: return 3;
      case Verdict::TangentHit: return 2;
      case Verdict::CrossesRegression: return 1;
      default: return 0;
    }
  };
  double worst_margin = INFINITY;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Verdict here = Verdict::Regular;
    double m = INFINITY;
    if (!v[i]) {
      here = Verdict::NoIntersection;
    } else if (!tangent_hit.empty() && tangent_hit[i]) {
      here = Verdict::TangentHit;
    } else if (d[i].finite() && *v[i] != 0.0 && d[i].sign() * sgn(*v[i]) > 0) {
      m = std::abs(d[i].value()) - std::abs(*v[i]);
      if (!(m > 0.0)) here = Verdict::CrossesRegression;
    }
    r.sample_verdict[i] = here;
    r.margin = std::min(r.margin, m);
    // first sample of the gravest kind; ties among crossings go to the deepest
    if (rank(here) > rank(r.verdict) || (rank(here) == rank(r.verdict) && rank(here) <= 1 &&
                                         m < worst_margin)) {
      r.verdict = here;
      r.worst = i;
      worst_margin = m;
    }
  }
  return r;
}

RegularityReport regularity_check(const ScalarField& v, const std::vector<ExtendedReal>& d) {
  std::vector<std::optional<double>> vv(v.samples().begin(), v.samples().end());
  return regularity_check(v.nodes(), vv, d);
}

RayHits ruling_intersect_general(const PlanarCurve& from, const ScalarField& beta,
                                 const PlanarCurve& to, double tangent_tolerance) {
  if (beta.size() != from.size())
    throw GeometryError(ErrorKind::GridMismatch, "ruling angles and foldline differ");
  const std::size_t n = from.size();
  const std::size_t m = to.size();
  const double L2 = to.length();
  const std::size_t segments = to.closed() ? m : m - 1;
  RayHits out;
  out.v.resize(n);
  out.s2.assign(n, 0.0);
  out.delta.assign(n, 0.0);
  out.tangent.assign(n, false);

  std::vector<Vec2> q(m);
  for (std::size_t k = 0; k < m; ++k) q[k] = to.point(k);
  std::optional<double> prev_s2;
  double prev_delta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s1 = from.node(i);
    const Vec2 p = from.point(i);
    const Vec2 t1 = from.tangent(s1);
    const double b = beta.samples()[i];
    const Vec2 r = std::cos(b) * t1 + std::sin(b) * rotate90(t1);
    auto f = [&](double s) { return cross2(r, to.position(s) - p); };

    std::optional<double> best_s;
    double best_v = INFINITY;
    std::vector<double> fk(m);
    for (std::size_t k = 0; k < m; ++k) fk[k] = cross2(r, q[k] - p);
    for (std::size_t k = 0; k < segments; ++k) {
      const std::size_t k1 = (k + 1) % m;
      if (fk[k] == 0.0 || (fk[k] < 0.0) != (fk[k1] < 0.0)) {
        const double a = to.node(k);
        const double hi = a + to.spacing();
        double root = a;
        if (fk[k] != 0.0) {
          if (fk[k1] == 0.0) continue;  // picked up by the next segment
          std::uintmax_t iters = 60;
          const auto br = boost::math::tools::toms748_solve(
              f, a, hi, fk[k], fk[k1], boost::math::tools::eps_tolerance<double>(50), iters);
          root = 0.5 * (br.first + br.second);
        }
        const double v = (to.position(root) - p).dot(r);
        if (std::abs(v) < std::abs(best_v)) {
          best_v = v;
          best_s = root;
        }
      }
    }
    if (!best_s) continue;
    const Vec2 t2 = to.tangent(*best_s);
    double s2 = *best_s;
    double dl = std::atan2(cross2(t1, t2), t1.dot(t2));
    if (!prev_s2 && to.closed()) {
      s2 += L2 * std::round((s1 * L2 / from.length() - s2) / L2);
    } else if (to.closed()) {
      s2 += L2 * std::round((*prev_s2 - s2) / L2);
      dl += 2.0 * std::numbers::pi * std::round((prev_delta - dl) / (2.0 * std::numbers::pi));
    }
    prev_s2 = s2;
    prev_delta = dl;
    out.v[i] = best_v;
    out.s2[i] = s2;
    out.delta[i] = dl;
    out.tangent[i] = std::abs(cross2(r, t2)) < tangent_tolerance;
  }
  return out;
}

std::vector<RidgeFrame> flip_frames(const std::vector<RidgeFrame>& frames,
                                    const FoldDescriptor& desc) {
  if (frames.empty()) return {};
  if (frames.size() != desc.size())
    throw GeometryError(ErrorKind::GridMismatch, "frame count differs from descriptor grid");
  std::vector<RidgeFrame> out(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double a2 = 2.0 * desc.alpha(i);
    out[i].point = frames[i].point;
    out[i].T = frames[i].T;
    out[i].u = std::cos(a2) * frames[i].u - std::sin(a2) * frames[i].n;
    out[i].n = std::cos(a2) * frames[i].n + std::sin(a2) * frames[i].u;
  }
  return out;
}

Step propagate_step(const FoldDescriptor& source, const std::vector<RidgeFrame>& frames,
                    const PlanarCurve& from, const PlanarCurve& to, bool transport,
                    const StepOptions& options) {
  const std::size_t n = source.size();
  if (from.size() != n || to.size() != n || !from.closed() || !to.closed())
    throw GeometryError(ErrorKind::GridMismatch,
                        "propagation needs closed foldlines sampled like the descriptor");
  if (std::abs(from.length() - source.length()) > 1e-8 * source.length())
    throw GeometryError(ErrorKind::LengthMismatch, "descriptor and foldline lengths differ");

  Step st;
  st.source = source;
  st.frames = frames;
  st.rulings = frames.empty() ? bare_rulings(source) : make_ruling_field(source, frames);
  const auto& beta = st.rulings.beta;
  const auto& dbeta = st.rulings.beta_prime;
  const std::vector<double> s1 = source.k_g.nodes();

  // Developed ruling rays meeting the next foldline.
  RayHits hits;
  if (concentric_circles(from, to)) {
    const double R1 = *from.radius();
    const double R2 = *to.radius();
    const double c = R2 / R1 - 1.0;
    hits.v.resize(n);
    hits.s2.assign(n, 0.0);
    hits.delta.assign(n, 0.0);
    hits.tangent.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const double b = beta.samples()[i];
      try {
        const CircleStep cs = circle_step(R1, c, b);
        hits.v[i] = cs.v;
        hits.delta[i] = cs.delta();
        hits.s2[i] = R2 * (s1[i] / R1 + hits.delta[i]);
        hits.tangent[i] = std::abs(std::sin(b - hits.delta[i])) < options.tangent_tolerance;
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::NoIntersection) throw;
      }
    }
  } else {
    hits = ruling_intersect_general(from, beta, to, options.tangent_tolerance);
  }
  st.report = regularity_check(s1, hits.v, st.rulings.regression, hits.tangent);
  if (std::any_of(hits.v.begin(), hits.v.end(), [](const auto& x) { return !x; })) return st;

  const double L1 = from.length();
  const double L2 = to.length();
  CorrespondenceMap map;
  map.rate = L2 / L1;
  std::vector<double> offset(n), vv(n), s2p(n);
  for (std::size_t i = 0; i < n; ++i) {
    offset[i] = hits.s2[i] - map.rate * s1[i];
    vv[i] = *hits.v[i];
  }
  map.s2_offset = beta.with_samples(std::move(offset));
  map.delta = beta.with_samples(unwrap_angles(hits.delta));
  map.v = beta.with_samples(std::move(vv));
  if (st.report.verdict == Verdict::TangentHit) {
    st.map = std::move(map);
    return st;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double b1 = beta.samples()[i];
    s2p[i] = step_velocity(b1, b1 - map.delta.samples()[i], dbeta.samples()[i],
                           source.k_g.samples()[i], map.v.samples()[i]);
  }
  map.s2_prime = beta.with_samples(std::move(s2p));
  map.s2_second = beta.with_samples(map.s2_prime.node_derivative(1));
  st.map = map;
  if (st.report.verdict != Verdict::Regular || !transport) return st;

  // Transport to the second ridge and the next surface, on the first grid.
  const auto& kg2_line = to.geodesic_curvature();
  const auto dk1n = source.k_n.node_derivative(1);
  const auto dt1r = source.tau_r.node_derivative(1);
  std::vector<double> k2n(n), t2r(n), k2g(n), k2g_p(n), next_tr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tr = transport_descriptor(source.k_n.samples()[i], source.tau_r.samples()[i],
                                         map.delta.samples()[i], map.s2_prime.samples()[i]);
    k2n[i] = tr.k_n;
    t2r[i] = tr.tau_r;
    const double s2 = hits.s2[i];
    k2g[i] = kg2_line(s2);
    k2g_p[i] = kg2_line.derivative(s2, 1) * map.s2_prime.samples()[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    NextSideInput in;
    in.k2n = k2n[i];
    in.tau2r = t2r[i];
    in.s2p = map.s2_prime.samples()[i];
    in.s2pp = map.s2_second.samples()[i];
    in.k1g = source.k_g.samples()[i];
    in.k2g = k2g[i];
    in.k2g_p = k2g_p[i];
    in.beta1 = beta.samples()[i];
    in.beta2 = in.beta1 - map.delta.samples()[i];
    in.k1n_p = dk1n[i];
    in.tau1r_p = dt1r[i];
    const auto next = next_side_descriptor(in);
    st.next_on_source.push_back(next);
    next_tr[i] = next.tau_r;
  }

  // Cross-check: flip after transport, derivatives taken along s1.
  {
    const auto k2n_f = beta.with_samples(k2n);
    const auto dk2n = k2n_f.node_derivative(1);
    double gap = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sp = map.s2_prime.samples()[i];
      const double g = k2g[i];
      const double kn = k2n[i];
      const double flip = t2r[i] - 2.0 * (k2g_p[i] / sp * kn - g * dk2n[i] / sp) / (g * g + kn * kn);
      gap = std::max(gap, std::abs(flip - next_tr[i]));
      scale = std::max({scale, std::abs(next_tr[i]), std::hypot(g, kn)});
    }
    st.formula_gap = gap / scale;
  }

  // Resample onto the uniform grid of the second foldline.
  std::vector<double> at(n);
  const double h2 = L2 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double target = static_cast<double>(j) * h2;
    double x = (target - map.s2_offset(s1[0])) / map.rate;
    for (int it = 0; it < 50; ++it) {
      const double f = map.s2(x) - target;
      const double df = map.s2_offset.derivative(x, 1) + map.rate;
      if (df <= 0.0)
        throw GeometryError(ErrorKind::Degenerate, "correspondence map is not monotone", x);
      const double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15 * L1) break;
    }
    at[j] = x;
  }
  const int gen = std::max({source.k_n.generation(), source.tau_r.generation()}) + 1;
  FoldDescriptor transported;
  transported.k_g = kg2_line;
  transported.k_n = resampled(beta.with_samples(k2n), at, 0.0, L2, gen);
  transported.tau_r = resampled(beta.with_samples(t2r), at, 0.0, L2, gen);
  transported.side = transported.alpha(0) >= 0.0 ? Side::Plus : Side::Minus;
  FoldDescriptor next;
  next.side = opposite(transported.side);
  next.k_g = kg2_line;
  next.k_n = transported.k_n.with_samples([&] {
    std::vector<double> v(transported.k_n.samples().begin(), transported.k_n.samples().end());
    for (double& x : v) x = -x;
    return v;
  }());
  next.tau_r = resampled(beta.with_samples(next_tr), at, 0.0, L2, gen);

  if (!frames.empty()) {
    std::array<std::vector<double>, 12> comp;
    for (auto& c : comp) c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double cd = std::cos(map.delta.samples()[i]);
      const double sd = std::sin(map.delta.samples()[i]);
      const RidgeFrame& f = frames[i];
      const Vec3 p = f.point + map.v.samples()[i] * st.rulings.direction[i];
      const Vec3 T = cd * f.T + sd * f.u;
      const Vec3 u = -sd * f.T + cd * f.u;
      for (int a = 0; a < 3; ++a) {
        comp[a][i] = p[a];
        comp[3 + a][i] = T[a];
        comp[6 + a][i] = u[a];
        comp[9 + a][i] = f.n[a];
      }
    }
    std::array<ScalarField, 12> fit;
    for (int k = 0; k < 12; ++k) fit[k] = beta.with_samples(std::move(comp[k]));
    std::vector<RidgeFrame> strip_frames(n);
    for (std::size_t j = 0; j < n; ++j) {
      RidgeFrame& f = strip_frames[j];
      for (int a = 0; a < 3; ++a) {
        f.point[a] = fit[a](at[j]);
        f.T[a] = fit[3 + a](at[j]);
        f.u[a] = fit[6 + a](at[j]);
      }
      f.T.normalize();
      f.u = (f.u - f.u.dot(f.T) * f.T).normalized();
      f.n = f.T.cross(f.u);
    }
    st.next_frames = flip_frames(strip_frames, transported);
  }
  st.transported = std::move(transported);
  st.next = std::move(next);
  return st;
}

std::vector<ChainStrip> Chain::all() const {
  std::vector<ChainStrip> out(inward.rbegin(), inward.rend());
  out.insert(out.end(), outward.begin(), outward.end());
  return out;
}

Chain propagate_chain(const std::vector<PlanarCurve>& curves, std::size_t seed,
                      const FoldDescriptor& seed_outward,
                      const std::vector<RidgeFrame>& seed_frames, const ChainOptions& options) {
  if (curves.size() < 2 || seed >= curves.size())
    throw GeometryError(ErrorKind::InvalidArgument, "chain needs two curves and a seed among them");
  Chain chain;
  auto run = [&](FoldDescriptor desc, std::vector<RidgeFrame> frames, int dir,
                 std::vector<ChainStrip>& out) {
    const std::size_t last = curves.size() - 1;
    std::size_t j = seed;
    while ((dir > 0 && j < last) || (dir < 0 && j > 0)) {
      const std::size_t k = dir > 0 ? j + 1 : j - 1;
      const bool fold_next = k != 0 && k != last;
      ChainStrip strip;
      strip.from = j;
      strip.to = k;
      strip.step = propagate_step(desc, frames, curves[j], curves[k], fold_next, options.step);
      const Step& st = strip.step;
      const bool ok = st.report.verdict == Verdict::Regular;
      if (!ok) {
        chain.regular = false;
        if (!chain.failure) chain.failure = st.report;
      }
      if (ok && fold_next) {
        desc = *st.next;
        frames = st.next_frames;
        chain.warnings.push_back("curve " + std::to_string(k) +
                                 ": descriptor resampled from derived samples (generation " +
                                 std::to_string(desc.tau_r.generation()) + ")");
      }
      out.push_back(std::move(strip));
      if (!ok) break;
      j = k;
    }
  };
  if (options.outward) run(seed_outward, seed_frames, +1, chain.outward);
  if (options.inward) {
    const auto other = flip_side(seed_outward);
    run(other, flip_frames(seed_frames, seed_outward), -1, chain.inward);
  }
  return chain;
}

}  // namespace pleat

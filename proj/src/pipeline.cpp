#include "pleat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pleat/error.hpp"
#include "pleat/io.hpp"

namespace pleat {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw GeometryError(ErrorKind::ConfigError, field + ": " + what);
}

JobConfig profile(std::string name, const std::string& ridge, std::vector<double> radii,
                  std::size_t seed, const std::string& symmetry) {
  JobConfig c;
  c.name = std::move(name);
  c.ridge = RidgePreset::parse(ridge);
  c.radii = std::move(radii);
  c.seed = seed;
  c.symmetry = Symmetry::parse(symmetry);
  return c;
}

}  // namespace

void JobConfig::validate() const {
  const std::size_t count = foldline_files.empty() ? radii.size() : foldline_files.size();
  require(count >= 2, foldline_files.empty() ? "radii" : "foldline_files",
          "need at least two curves");
  require(seed < count, "seed", "index outside the foldline family");
  require(resolution >= 16, "resolution", "must be at least 16");
  for (std::size_t i = 0; i < radii.size() && foldline_files.empty(); ++i) {
    require(radii[i] > 0.0 && std::isfinite(radii[i]), "radii[" + std::to_string(i) + "]",
            "must be positive");
    if (i > 0)
      require(radii[i] > radii[i - 1], "radii[" + std::to_string(i) + "]",
              "radii must increase strictly");
  }
  const std::pair<const char*, double> tols[] = {
      {"tolerances.tangent", tangent_tolerance}, {"tolerances.length", length_tolerance},
      {"tolerances.proper_margin", proper_margin}, {"tolerances.edge", edge_tolerance},
      {"tolerances.seam", seam_tolerance},         {"tolerances.audit", audit_limit}};
  for (const auto& [field, v] : tols) require(v > 0.0 && std::isfinite(v), field, "must be positive");
  require(rows >= 3, "mesh.rows", "need at least 3 rows for the curvature audit");
  for (const auto& a : artifacts)
    require(a == "mesh" || a == "fields" || a == "report" || a == "developed-svg", "artifacts",
            "unknown artifact " + a);
}

std::vector<std::string> builtin_profiles() {
  return {"fig1", "fig2", "fig3", "fig1-third-strip"};
}

JobConfig builtin_profile(const std::string& name) {
  if (name == "fig1") return profile(name, "sphere-paraboloid", {0.905, 1.0, 1.095, 1.19}, 1, "reflect:4");
  if (name == "fig1-third-strip")
    return profile(name, "sphere-paraboloid", {0.905, 1.0, 1.095, 1.19, 1.285}, 1, "reflect:4");
  if (name == "fig2") return profile(name, "torus:3,9,2", {0.86, 0.93, 1.0, 1.07, 1.14}, 2, "rotate:5");
  if (name == "fig3") return profile(name, "torus:3,9,2", {0.9, 1.0, 1.1}, 1, "none");
  throw GeometryError(ErrorKind::ConfigError, "profile: unknown builtin " + name);
}

std::vector<PlanarCurve> foldline_family(const JobConfig& config, double scale) {
  std::vector<PlanarCurve> curves;
  if (!config.foldline_files.empty()) {
    for (const auto& path : config.foldline_files) {
      const auto cs = read_curve_csv_file(path);
      if (!cs.planar)
        throw GeometryError(ErrorKind::ConfigError, "foldline_files: " + path + " is not planar");
      std::vector<Vec2> pts;
      for (const Vec3& p : cs.points) pts.push_back(p.head<2>());
      curves.push_back(PlanarCurve::from_raw_samples(pts, cs.closed, config.resolution));
    }
    return curves;
  }
  for (double r : config.radii) curves.push_back(PlanarCurve::circle(r * scale, config.resolution));
  return curves;
}

ChainRun run_chain(const JobConfig& config) {
  config.validate();
  ChainRun run;
  run.ridge = make_ridge(config.ridge, config.resolution);
  run.scale = run.ridge.length() / (2.0 * std::numbers::pi);
  run.curves = foldline_family(config, run.scale);
  FoldOptions fo;
  fo.length_tolerance = config.length_tolerance;
  fo.proper_margin = config.proper_margin;
  run.seed = fold_along(run.curves[config.seed], run.ridge, config.seed_side, fo);
  ChainOptions co;
  co.step.tangent_tolerance = config.tangent_tolerance;
  run.chain = propagate_chain(run.curves, config.seed, run.seed.desc, run.seed.frames, co);
  run.steps = run.chain.all();
  for (const auto& s : run.steps) {
    if (s.step.report.verdict != Verdict::Regular) continue;
    run.strips.push_back(strip_from_step(
        s.step, run.curves[s.from], "strip_" + std::to_string(s.from) + "_" + std::to_string(s.to)));
  }
  return run;
}

bool StripAudit::passed(double audit_limit) const {
  return normalized_K < audit_limit && normal_deviation < 1e-8 && edge_error < 1e-6 &&
         k_g_error < 1e-6 && beta_error < 1e-8;
}

StripAudit audit_strip(const DevelopableStrip& strip, std::size_t columns, std::size_t rows,
                       StripMesh* mesh) {
  StripAudit a;
  a.name = strip.name;
  a.columns = columns > 0 ? columns : mesh_columns(strip);
  a.rows = rows;
  StripMesh m = embed_strip(strip, a.columns, rows);
  const auto k = gaussian_curvature_audit(m);
  a.max_abs_K = k.max_abs_K;
  a.normalized_K = k.normalized;
  a.normal_deviation = ruling_normal_deviation(m);
  const auto flat = develop_strip(strip);
  const auto dm = develop_mesh(strip, flat, a.columns, rows);
  auto edge = [&](std::size_t p, std::size_t q) {
    const double l3 = (m.vertices[q] - m.vertices[p]).norm();
    a.edge_error = std::max(a.edge_error, std::abs(l3 - (dm[q] - dm[p]).norm()) / l3);
  };
  // Closed strips are cut along the ruling at s = 0; the edges crossing the
  // cut are compared in the chart continued past s = L.
  const std::size_t last = a.columns - 1;
  const auto cont = m.closed ? develop_mesh(strip, flat, 2, rows, strip.length() - strip.length() / a.columns,
                                            strip.length())
                             : std::vector<Vec2>{};
  for (const auto& q : m.quads) {
    for (int k = 0; k < 4; ++k) {
      const std::size_t p0 = q[k], p1 = q[(k + 1) % 4];
      const std::size_t i0 = p0 % a.columns, i1 = p1 % a.columns;
      if (m.closed && ((i0 == last && i1 == 0) || (i0 == 0 && i1 == last))) {
        const std::size_t j0 = p0 / a.columns, j1 = p1 / a.columns;
        const Vec2 d0 = cont[j0 * 2 + (i0 == 0 ? 1 : 0)];
        const Vec2 d1 = cont[j1 * 2 + (i1 == 0 ? 1 : 0)];
        const double l3 = (m.vertices[p1] - m.vertices[p0]).norm();
        a.edge_error = std::max(a.edge_error, std::abs(l3 - (d1 - d0).norm()) / l3);
      } else {
        edge(p0, p1);
      }
    }
  }
  const auto& kg = strip.foldline.geodesic_curvature();
  for (std::size_t i = 0; i < strip.size(); ++i) {
    a.k_g_error = std::max(a.k_g_error, std::abs(flat.k_g.samples()[i] - kg.samples()[i]));
    a.beta_error = std::max(a.beta_error, std::abs(std::remainder(
                                              flat.beta[i] - strip.rulings.beta.samples()[i],
                                              2.0 * std::numbers::pi)));
  }
  if (mesh) *mesh = std::move(m);
  return a;
}

BumpExperiment bump_experiment(const BumpExperimentOptions& options) {
  const std::size_t n = options.resolution;
  const auto ridge = make_ridge(RidgePreset::parse("sphere-paraboloid"), n);
  const double scale = ridge.length() / (2.0 * std::numbers::pi);
  std::vector<PlanarCurve> curves;
  for (double r : {0.905, 1.0, 1.095, 1.19}) curves.push_back(PlanarCurve::circle(r * scale, n));
  const auto fold = fold_along(curves[1], ridge, Side::Plus);
  ChainOptions co;
  co.inward = false;
  const Chain base = propagate_chain(curves, 1, fold.desc, {}, co);
  if (!base.regular || base.outward.size() != 2)
    throw GeometryError(ErrorKind::InvalidArgument, "unperturbed chain is not regular");

  BumpExperiment out;
  out.epsilon = options.epsilon;
  const auto& last = base.outward[1].step.report;
  out.base_margin = last.margin;
  // Put the bump where the ruling reaching the tightest sample starts.
  const double s_tight = last.s[last.worst];
  const auto& map = *base.outward[0].step.map;
  double best = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double s1 = map.v.node(i);
    const double d = std::abs(std::remainder(map.s2(s1) - s_tight, curves[2].length()));
    if (d < best) best = d, out.s0 = s1;
  }

  auto deviation = [&](const Chain& ch, const FoldDescriptor& pert) {
    double dev = 0.0;
    auto cmp = [&](const FoldDescriptor& a, const FoldDescriptor& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        dev = std::max({dev, std::abs(a.k_n.samples()[i] - b.k_n.samples()[i]),
                        std::abs(a.tau_r.samples()[i] - b.tau_r.samples()[i])});
    };
    cmp(pert, fold.desc);
    if (ch.outward.size() > 1) {
      cmp(*ch.outward[0].step.transported, *base.outward[0].step.transported);
      cmp(ch.outward[1].step.source, base.outward[1].step.source);
    }
    return dev;
  };
  BumpOptions bo;
  bo.order = options.order;
  bo.rho = options.epsilon;
  auto trial = [&](double M) {
    const auto pert = perturb_torsion_bump(fold.desc, out.s0, M, options.width, bo);
    const Chain ch = propagate_chain(curves, 1, pert, {}, co);
    BumpTrial t;
    t.M = M;
    const auto& r = ch.outward.back().step.report;
    t.verdict = ch.regular ? Verdict::Regular : r.verdict;
    t.margin = r.margin;
    t.deviation = deviation(ch, pert);
    out.trials.push_back(t);
    return t;
  };

  double lo = 0.0;
  std::optional<BumpTrial> hit;
  for (double m = options.start; !hit; m *= 2.0) {
    bool tried = false;
    for (double sgn : {1.0, -1.0}) {
      try {
        const BumpTrial t = trial(sgn * m);
        tried = true;
        if (t.verdict != Verdict::Regular) {
          hit = t;
          break;
        }
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::InvalidArgument) throw;
      }
    }
    if (!tried) return out;  // the bump no longer fits within epsilon
    if (!hit) lo = m;
  }
  const double sgn = hit->M > 0 ? 1.0 : -1.0;
  double hi = std::abs(hit->M);
  while (hi - lo > options.relative_tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    const BumpTrial t = trial(sgn * mid);
    if (t.verdict != Verdict::Regular) {
      hi = mid;
      hit = t;
    } else {
      lo = mid;
    }
  }
  out.M_star = hit->M;
  out.deviation = hit->deviation;
  out.margin = hit->margin;
  return out;
}

}  // namespace pleat

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pleat/localfold.hpp"
#include "pleat/propagate.hpp"
#include "pleat/ridges.hpp"
#include "pleat/surface.hpp"

namespace pleat {

// Everything a chain job needs. Radii are developed circle radii in units of
// L / (2 pi), L the ridge length, so radius 1 is the length-matched circle.
struct JobConfig {
  std::string name = "custom";
  RidgePreset ridge;
  std::vector<double> radii;
  std::vector<std::string> foldline_files;  // replaces radii when non-empty
  std::size_t seed = 1;                     // index of the ridge's foldline
  Side seed_side = Side::Plus;              // side of the outward strip
  std::size_t resolution = kDefaultResolution;
  double tangent_tolerance = 1e-6;
  double length_tolerance = 1e-8;
  double proper_margin = 1e-6;
  double edge_tolerance = 5e-7;
  double seam_tolerance = 1e-6;
  double audit_limit = 1e-3;
  std::size_t rows = 5;
  Symmetry symmetry;
  std::set<std::string> artifacts{"mesh", "fields", "report", "developed-svg"};

  // Throws ConfigError naming the offending field.
  void validate() const;
};

std::vector<std::string> builtin_profiles();
// fig1, fig2, fig3, fig1-third-strip; throws ConfigError otherwise.
JobConfig builtin_profile(const std::string& name);

struct ChainRun {
  SpaceCurve ridge;
  double scale = 1.0;
  std::vector<PlanarCurve> curves;
  Fold seed;
  Chain chain;
  std::vector<ChainStrip> steps;           // chain.all()
  std::vector<DevelopableStrip> strips;    // the Regular steps, same order
};

ChainRun run_chain(const JobConfig& config);

// Developability checks of one strip at the given mesh resolution.
struct StripAudit {
  std::string name;
  std::size_t columns = 0;
  std::size_t rows = 0;
  double max_abs_K = 0.0;
  double normalized_K = 0.0;
  double normal_deviation = 0.0;  // along rulings
  double edge_error = 0.0;        // relative, mesh vs its development
  double k_g_error = 0.0;         // developed ridge vs foldline
  double beta_error = 0.0;        // developed ruling angle vs beta
  bool passed(double audit_limit) const;
};
// columns = 0 picks mesh_columns(strip). The mesh is kept when asked for.
StripAudit audit_strip(const DevelopableStrip& strip, std::size_t columns, std::size_t rows,
                       StripMesh* mesh = nullptr);

// Foldline family of a config without running anything.
std::vector<PlanarCurve> foldline_family(const JobConfig& config, double scale);

// Grows |M| of a torsion bump on the fig1 seed until its outward chain
// crosses its regression curve, then bisects down to the threshold M*.
struct BumpExperimentOptions {
  std::size_t resolution = 8192;
  double width = 0.005;
  int order = 3;
  double epsilon = 1e-2;    // allowed sup-norm change of earlier ridges
  double start = 1.0;       // first |M| tried
  double relative_tolerance = 1e-3;
};

struct BumpTrial {
  double M = 0.0;
  Verdict verdict = Verdict::Regular;
  double margin = 0.0;
  double deviation = 0.0;  // sup |(k_n, tau_r) - unperturbed| over earlier ridges
};

struct BumpExperiment {
  double s0 = 0.0;
  double base_margin = 0.0;
  std::optional<double> M_star;  // smallest crossing magnitude found (signed)
  double deviation = 0.0;        // at M_star
  double margin = 0.0;           // at M_star
  std::vector<BumpTrial> trials;
  bool within_epsilon() const { return M_star && deviation < epsilon; }
  double epsilon = 0.0;
};

BumpExperiment bump_experiment(const BumpExperimentOptions& options = {});

}  // namespace pleat

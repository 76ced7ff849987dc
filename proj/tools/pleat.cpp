// pleat: fold, propagate, mesh and check curved-crease strips from a JSON job.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "pleat/error.hpp"
#include "pleat/io.hpp"
#include "pleat/pipeline.hpp"

using namespace pleat;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kError = 1, kSingular = 2, kFlagged = 3 };

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw GeometryError(ErrorKind::ConfigError, path + ": " + what);
}

template <class T>
T get(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    config_error(path, "wrong type (" + std::string(j.type_name()) + ")");
  }
}

Side parse_side(const std::string& s, const std::string& path) {
  if (s == "+" || s == "plus") return Side::Plus;
  if (s == "-" || s == "minus") return Side::Minus;
  config_error(path, "side must be \"+\" or \"-\"");
}

void apply_config(const json& j, JobConfig& c) {
  if (!j.is_object()) config_error("config", "must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    const std::string path = "config." + key;
    try {
      if (key == "profile") continue;
      else if (key == "name") c.name = get<std::string>(v, path);
      else if (key == "ridge") c.ridge = RidgePreset::parse(get<std::string>(v, path));
      else if (key == "radii") c.radii = get<std::vector<double>>(v, path);
      else if (key == "foldline_files") c.foldline_files = get<std::vector<std::string>>(v, path);
      else if (key == "seed") c.seed = get<std::size_t>(v, path);
      else if (key == "seed_side") c.seed_side = parse_side(get<std::string>(v, path), path);
      else if (key == "resolution") c.resolution = get<std::size_t>(v, path);
      else if (key == "symmetry") c.symmetry = Symmetry::parse(get<std::string>(v, path));
      else if (key == "artifacts") {
        const auto list = get<std::vector<std::string>>(v, path);
        c.artifacts = {list.begin(), list.end()};
      } else if (key == "mesh") {
        if (!v.is_object()) config_error(path, "must be an object");
        for (const auto& [k2, v2] : v.items()) {
          if (k2 == "rows") c.rows = get<std::size_t>(v2, path + "." + k2);
          else config_error(path + "." + k2, "unknown field");
        }
      } else if (key == "tolerances") {
        if (!v.is_object()) config_error(path, "must be an object");
        for (const auto& [k2, v2] : v.items()) {
          const std::string p2 = path + "." + k2;
          const double x = get<double>(v2, p2);
          if (k2 == "tangent") c.tangent_tolerance = x;
          else if (k2 == "length") c.length_tolerance = x;
          else if (k2 == "proper_margin") c.proper_margin = x;
          else if (k2 == "edge") c.edge_tolerance = x;
          else if (k2 == "seam") c.seam_tolerance = x;
          else if (k2 == "audit") c.audit_limit = x;
          else config_error(p2, "unknown field");
        }
      } else {
        config_error(path, "unknown field");
      }
    } catch (const GeometryError& e) {
      if (e.kind() == ErrorKind::ConfigError && std::string(e.what()).rfind("config.", 0) == 0) throw;
      config_error(path, e.what());
    }
  }
}

json tolerances_json(const JobConfig& c) {
  return {{"tangent", c.tangent_tolerance}, {"length", c.length_tolerance},
          {"proper_margin", c.proper_margin}, {"edge", c.edge_tolerance},
          {"seam", c.seam_tolerance},         {"audit", c.audit_limit}};
}

json config_json(const JobConfig& c) {
  json j;
  j["name"] = c.name;
  j["ridge"] = c.ridge.name();
  j["radii"] = c.radii;
  if (!c.foldline_files.empty()) j["foldline_files"] = c.foldline_files;
  j["seed"] = c.seed;
  j["seed_side"] = std::string(1, side_char(c.seed_side));
  j["resolution"] = c.resolution;
  j["symmetry"] = c.symmetry.name();
  j["mesh"] = {{"rows", c.rows}};
  j["tolerances"] = tolerances_json(c);
  j["artifacts"] = std::vector<std::string>(c.artifacts.begin(), c.artifacts.end());
  return j;
}

json defaults_json() {
  JobConfig c;
  c.name = "custom";
  json j = config_json(c);
  j["radii"] = json::array();
  const BumpExperimentOptions b;
  j["bump_experiment"] = {{"resolution", b.resolution}, {"width", b.width},
                          {"order", b.order},           {"epsilon", b.epsilon},
                          {"start", b.start},           {"relative_tolerance", b.relative_tolerance}};
  j["profiles"] = builtin_profiles();
  return j;
}

struct Job {
  JobConfig config;
  fs::path out;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + p.string());
  os << text;
}

std::string strip_label(const ChainStrip& s) {
  return std::to_string(s.from) + "_" + std::to_string(s.to);
}

json report_json(const RegularityReport& r, double scale) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = r.margin;
  j["margin_scaled"] = r.margin / scale;
  j["worst_s"] = r.s.empty() ? 0.0 : r.s[r.worst];
  return j;
}

json chain_json(const ChainRun& run) {
  json j;
  j["ridge_length"] = run.ridge.length();
  j["scale"] = run.scale;
  j["total_curvature"] = total_curvature(run.ridge);
  j["regular"] = run.chain.regular;
  json strips = json::array();
  for (const auto& s : run.steps) {
    json e = report_json(s.step.report, run.scale);
    e["from"] = s.from;
    e["to"] = s.to;
    e["side"] = std::string(1, side_char(s.step.source.side));
    e["generation"] = s.step.source.tau_r.generation();
    e["formula_gap"] = s.step.formula_gap;
    strips.push_back(e);
  }
  j["strips"] = strips;
  j["warnings"] = run.chain.warnings;
  if (run.chain.failure) j["failure"] = report_json(*run.chain.failure, run.scale);
  return j;
}

void write_fields(const Job& job, const ChainRun& run) {
  for (const auto& s : run.steps) {
    std::ostringstream os;
    os << "s,vbar,d,k_n,tau_r\n";
    const auto& r = s.step.report;
    for (std::size_t i = 0; i < r.s.size(); ++i) {
      os << format_number(r.s[i]) << ',' << (r.v[i] ? format_number(*r.v[i]) : "") << ','
         << format_number(r.d[i]) << ',' << format_number(s.step.source.k_n.samples()[i]) << ','
         << format_number(s.step.source.tau_r.samples()[i]) << '\n';
    }
    write_file(job.out / ("fields_" + strip_label(s) + ".csv"), os.str());
  }
}

// Audits every strip, writes OBJ and SVG as requested; returns false when
// an audit or the symmetry assembly is flagged.
bool emit_geometry(const Job& job, const ChainRun& run, json& report, bool mesh, bool svg) {
  const auto& c = job.config;
  bool ok = true;
  json audits = json::array();
  std::vector<StripMesh> meshes;
  for (const auto& s : run.strips) {
    StripMesh m;
    const auto a = audit_strip(s, 0, c.rows, mesh ? &m : nullptr);
    const bool pass = a.passed(c.audit_limit);
    ok = ok && pass;
    audits.push_back({{"strip", a.name},
                      {"columns", a.columns},
                      {"rows", a.rows},
                      {"max_abs_K", a.max_abs_K},
                      {"normalized_K", a.normalized_K},
                      {"normal_deviation", a.normal_deviation},
                      {"edge_error", a.edge_error},
                      {"k_g_error", a.k_g_error},
                      {"beta_error", a.beta_error},
                      {"passed", pass}});
    if (mesh) meshes.push_back(std::move(m));
  }
  report["audit"] = audits;
  if (mesh && !run.strips.empty()) {
    json seam = {{"symmetry", c.symmetry.name()}};
    if (c.symmetry.kind != Symmetry::Kind::None) {
      try {
        auto scene = annulus_assembly(run.strips, c.symmetry, 0, c.rows, c.seam_tolerance);
        meshes = std::move(scene.meshes);
        seam["gap"] = scene.seam_gap;
        seam["closed"] = true;
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::SeamError) throw;
        seam["gap"] = symmetry_seam_gap(run.strips, c.symmetry, c.rows);
        seam["closed"] = false;
        seam["error"] = e.what();
        ok = false;
      }
    }
    report["assembly"] = seam;
    std::ostringstream os;
    write_obj(os, meshes);
    write_file(job.out / (c.name + ".obj"), os.str());
  }
  if (svg) {
    std::ostringstream os;
    write_developed_svg(os, run.strips, run.curves);
    write_file(job.out / (c.name + "_developed.svg"), os.str());
  }
  return ok;
}

int finish(const Job& job, json& report, int code) {
  report["exit"] = code;
  if (job.config.artifacts.count("report"))
    write_file(job.out / (job.config.name + "_report.json"), report.dump(2) + "\n");
  return code;
}

int run_ridge(const Job& job) {
  const auto& c = job.config;
  const auto ridge = make_ridge(c.ridge, c.resolution);
  std::ostringstream os;
  write_curve_csv(os, ridge);
  write_file(job.out / (c.name + "_ridge.csv"), os.str());
  json report = {{"ridge", c.ridge.name()},
                 {"length", ridge.length()},
                 {"total_curvature", total_curvature(ridge)},
                 {"fenchel_margin", total_curvature(ridge) - 2 * std::numbers::pi}};
  std::cout << report.dump(2) << '\n';
  return finish(job, report, kOk);
}

int run_fold(const Job& job) {
  const auto& c = job.config;
  const auto ridge = make_ridge(c.ridge, c.resolution);
  const auto curves = foldline_family(c, ridge.length() / (2 * std::numbers::pi));
  json report = {{"ridge", c.ridge.name()}, {"seed", c.seed}};
  for (Side side : {Side::Plus, Side::Minus}) {
    const auto fold = fold_along(curves.at(c.seed), ridge, side);
    std::ostringstream os;
    write_fold_csv(os, fold.desc, fold.rulings);
    const std::string tag = side == Side::Plus ? "plus" : "minus";
    write_file(job.out / (c.name + "_fold_" + tag + ".csv"), os.str());
    report["sides"][tag] = {{"alpha_min", fold.desc.alpha(0)}, {"k_n_max", fold.desc.k_n.max_abs()},
                            {"tau_r_max", fold.desc.tau_r.max_abs()}};
  }
  std::cout << report.dump(2) << '\n';
  return finish(job, report, kOk);
}

int run_pipeline(const Job& job, bool mesh, bool svg) {
  const auto& c = job.config;
  const auto t0 = std::chrono::steady_clock::now();
  const ChainRun run = run_chain(c);
  json report;
  report["config"] = config_json(c);
  report["chain"] = chain_json(run);
  if (c.artifacts.count("fields")) write_fields(job, run);
  bool ok = true;
  if (mesh || svg)
    ok = emit_geometry(job, run, report, mesh && c.artifacts.count("mesh"),
                       svg && c.artifacts.count("developed-svg"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << c.name << ": " << run.steps.size() << " strips, "
            << (run.chain.regular ? "regular" : "singular");
  if (run.chain.failure) std::cout << " (" << to_string(run.chain.failure->verdict) << ")";
  if (!ok) std::cout << ", flagged";
  std::cout << ", " << secs << " s\n";
  int code = kOk;
  if (!run.chain.regular) code = kSingular;
  else if (!ok) code = kFlagged;
  report["status"] = code == kOk ? "ok" : code == kSingular ? "singular" : "flagged";
  return finish(job, report, code);
}

int run_bump(const Job& job) {
  BumpExperimentOptions o;
  if (job.config.resolution != kDefaultResolution) o.resolution = job.config.resolution;
  const auto t0 = std::chrono::steady_clock::now();
  const auto b = bump_experiment(o);
  json trials = json::array();
  std::ostringstream csv;
  csv << "M,verdict,margin,deviation\n";
  for (const auto& t : b.trials) {
    trials.push_back({{"M", t.M}, {"verdict", to_string(t.verdict)}, {"margin", t.margin},
                      {"deviation", t.deviation}});
    csv << format_number(t.M) << ',' << to_string(t.verdict) << ',' << format_number(t.margin)
        << ',' << format_number(t.deviation) << '\n';
  }
  write_file(job.out / "bump-experiment_trials.csv", csv.str());
  json report = {{"resolution", o.resolution}, {"width", o.width},     {"order", o.order},
                 {"epsilon", o.epsilon},       {"s0", b.s0},           {"base_margin", b.base_margin},
                 {"trials", trials}};
  if (b.M_star) {
    report["M_star"] = *b.M_star;
    report["deviation"] = b.deviation;
    report["margin"] = b.margin;
  }
  report["within_epsilon"] = b.within_epsilon();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "bump-experiment: M* = " << (b.M_star ? format_number(*b.M_star) : "none")
            << ", deviation " << b.deviation << ", " << secs << " s\n";
  Job j = job;
  j.config.name = "bump-experiment";
  j.config.artifacts.insert("report");
  return finish(j, report, b.within_epsilon() ? kOk : kFlagged);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curved-crease folding: ridges, folds, propagation, meshes and checks"};
  app.require_subcommand(0, 1);
  std::string config_path, profile, out = "out";
  std::size_t resolution = 0;
  bool show_defaults = false;
  app.add_option("--config", config_path, "JSON job file")->check(CLI::ExistingFile);
  app.add_option("--profile", profile, "builtin profile: fig1, fig2, fig3, fig1-third-strip");
  app.add_option("--out", out, "output directory");
  app.add_option("--resolution", resolution, "samples per curve");
  app.add_flag("--show-defaults", show_defaults, "print default settings as JSON and exit");
  app.fallthrough();

  auto* ridge = app.add_subcommand("ridge", "build the ridge and check its total curvature");
  auto* fold = app.add_subcommand("fold", "fold the seed foldline onto the ridge, both sides");
  auto* prop = app.add_subcommand("propagate", "run the chain and write field CSVs");
  auto* mesh = app.add_subcommand("mesh", "run the chain, audit and write OBJ");
  auto* develop = app.add_subcommand("develop", "run the chain and write the developed SVG");
  auto* check = app.add_subcommand("check", "run the chain and every audit");
  auto* reproduce = app.add_subcommand("reproduce", "reproduce a builtin figure profile");
  std::string target;
  reproduce->add_option("target", target, "fig1 | fig2 | fig3 | fig1-third-strip | bump-experiment")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (show_defaults) {
    std::cout << defaults_json().dump(2) << '\n';
    return kOk;
  }
  try {
    Job job;
    job.out = out;
    const bool bump = reproduce->parsed() && target == "bump-experiment";
    std::string base = reproduce->parsed() ? target : profile;
    json file;
    if (!config_path.empty() && !reproduce->parsed()) {
      std::ifstream is(config_path);
      try {
        file = json::parse(is);
      } catch (const json::exception& e) {
        config_error("config", std::string("not valid JSON: ") + e.what());
      }
      if (base.empty() && file.contains("profile"))
        base = get<std::string>(file["profile"], "config.profile");
    }
    if (!bump) job.config = builtin_profile(base.empty() ? "fig1" : base);
    if (!file.is_null()) apply_config(file, job.config);
    if (resolution > 0) job.config.resolution = resolution;
    if (!bump) job.config.validate();
    fs::create_directories(job.out);

    if (bump) return run_bump(job);
    if (ridge->parsed()) return run_ridge(job);
    if (fold->parsed()) return run_fold(job);
    if (prop->parsed()) return run_pipeline(job, false, false);
    if (mesh->parsed()) return run_pipeline(job, true, false);
    if (develop->parsed()) return run_pipeline(job, false, true);
    if (check->parsed() || reproduce->parsed()) return run_pipeline(job, true, true);
    std::cout << app.help();
    return kOk;
  } catch (const GeometryError& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return kError;
  }
}

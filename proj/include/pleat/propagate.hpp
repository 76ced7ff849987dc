#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pleat/curves.hpp"
#include "pleat/extended_real.hpp"
#include "pleat/localfold.hpp"
#include "pleat/scalar_field.hpp"

namespace pleat {

// --- pointwise formulas ------------------------------------------------------

struct CircleStep {
  double v = 0.0;  // signed distance along the developed ruling
  double sin_delta = 0.0;
  double cos_delta = 1.0;
  double delta() const;
};

// Ruling through a point of a circle of radius R, making angle beta with the
// tangent, meets the concentric circle of radius R (1 + c). Nearest hit.
// Throws NoIntersection when the ruling misses.
CircleStep circle_step(double R, double c, double beta);

struct Transported {
  double k_n = 0.0;
  double tau_r = 0.0;
};

// (k2n, tau2r) = R_{-delta}(k1n, tau1r) / s2'.
Transported transport_descriptor(double k1n, double tau1r, double delta, double s2p);

// Same quantities from the ruling geometry. Throws OnRegressionCurve.
Transported transport_via_regression(double k1n, double beta1, double beta1p, double k1g,
                                     double beta2, double v);

// s2' = (sin b1 / sin b2)(1 - v (b1' + k1g) / sin b1). Throws TangentHit.
double step_velocity(double beta1, double beta2, double beta1p, double k1g, double v);

struct NextSideInput {
  double k2n = 0.0;    // strip surface at the second ridge
  double tau2r = 0.0;
  double s2p = 0.0;    // ds2/ds1
  double s2pp = 0.0;
  double k1g = 0.0;
  double k2g = 0.0;
  double k2g_p = 0.0;  // d/ds1 of k2g(s2(s1))
  double beta1 = 0.0;
  double beta2 = 0.0;
  double k1n_p = 0.0;  // d/ds1 of the strip descriptor at the first ridge
  double tau1r_p = 0.0;
};

// Descriptor of the next surface along the second ridge.
Transported next_side_descriptor(const NextSideInput& in);

// The same through delta, delta', delta'' instead of s2', s2''.
Transported next_side_descriptor_delta(double k2n, double tau2r, double k1g, double k2g,
                                       double k1g_p, double delta, double delta_p,
                                       double delta_pp, double k1n_p, double tau1r_p);

// --- correspondence and regularity ------------------------------------------

enum class Verdict { Regular, CrossesRegression, NoIntersection, TangentHit };
const char* to_string(Verdict v);

// Fields on the first ridge's grid.
struct CorrespondenceMap {
  ScalarField s2_offset;  // s2(s1) - rate * s1
  double rate = 1.0;      // L2 / L1
  ScalarField s2_prime;
  ScalarField s2_second;
  ScalarField delta;
  ScalarField v;
  double s2(double s1) const { return s2_offset(s1) + rate * s1; }
};

struct RegularityReport {
  std::vector<double> s;
  std::vector<std::optional<double>> v;  // empty where the ruling misses
  std::vector<ExtendedReal> d;
  std::vector<Verdict> sample_verdict;
  Verdict verdict = Verdict::Regular;
  std::size_t worst = 0;
  double margin = INFINITY;  // min(|d| - |v|) over same-sign samples
};

// Per-sample regularity of rulings of length v against regression distance d;
// tangent_hit marks rulings meeting the next foldline tangentially.
RegularityReport regularity_check(const std::vector<double>& s,
                                  const std::vector<std::optional<double>>& v,
                                  const std::vector<ExtendedReal>& d,
                                  const std::vector<bool>& tangent_hit = {});
RegularityReport regularity_check(const ScalarField& v, const std::vector<ExtendedReal>& d);

// Developed ruling rays from `from` meeting `to`: per sample hit distance,
// arc length on `to` (unwrapped) and tangent rotation. Missing hits are
// reported as std::nullopt.
struct RayHits {
  std::vector<std::optional<double>> v;
  std::vector<double> s2;
  std::vector<double> delta;
  std::vector<bool> tangent;
};
RayHits ruling_intersect_general(const PlanarCurve& from, const ScalarField& beta,
                                 const PlanarCurve& to, double tangent_tolerance = 1e-6);

// --- one propagation step ----------------------------------------------------

struct StepOptions {
  double tangent_tolerance = 1e-6;
};

struct Step {
  FoldDescriptor source;            // strip surface at the first ridge
  RulingField rulings;              // of the strip, on the first grid
  std::vector<RidgeFrame> frames;   // first ridge, strip surface; may be empty
  RegularityReport report;
  std::optional<CorrespondenceMap> map;  // set when every ruling hits

  // Set when the step reached the next foldline regularly.
  std::optional<FoldDescriptor> transported;  // strip surface at the second ridge
  std::optional<FoldDescriptor> next;         // next surface at the second ridge
  std::vector<RidgeFrame> next_frames;        // second ridge, next surface
  // Next-side descriptor evaluated on the first grid (before resampling),
  // by the full formula and by flip after transport.
  std::vector<Transported> next_on_source;
  double formula_gap = 0.0;  // max |full formula - flip after transport|, relative
};

// One strip from `from` to `to`. `transport` = false skips the work needed
// only when `to` is a foldline rather than the sheet boundary.
Step propagate_step(const FoldDescriptor& source, const std::vector<RidgeFrame>& frames,
                    const PlanarCurve& from, const PlanarCurve& to, bool transport,
                    const StepOptions& options = {});

// --- chains -------------------------------------------------------------------

struct ChainStrip {
  Step step;
  std::size_t from = 0;  // foldline indices
  std::size_t to = 0;
};

struct Chain {
  std::vector<ChainStrip> outward;  // from the seed towards the last curve
  std::vector<ChainStrip> inward;   // from the seed towards the first curve
  bool regular = true;
  std::optional<RegularityReport> failure;
  std::vector<std::string> warnings;
  std::vector<ChainStrip> all() const;  // inward (outermost first) then outward
};

struct ChainOptions {
  StepOptions step;
  bool outward = true;
  bool inward = true;
};

// curves: ordered family (e.g. increasing radii); the first and last are the
// sheet boundary, the others are foldlines. seed: descriptor on curves[seed]
// for the surface towards increasing index; the inward chain starts from the
// flipped side. frames (optional) carry the 3D ridge of the seed.
Chain propagate_chain(const std::vector<PlanarCurve>& curves, std::size_t seed,
                      const FoldDescriptor& seed_outward,
                      const std::vector<RidgeFrame>& seed_frames = {},
                      const ChainOptions& options = {});

// --- torsion bump -----------------------------------------------------------

struct BumpOptions {
  int order = 3;       // derivative of tau_r that receives magnitude M
  double rho = 1e-3;   // allowed sup-norm change of tau_r
};

// Adds M w^k psi((s - s0)/w) to tau_r, psi(x) = x^k/k! exp(1 - 1/(1 - x^2)) on
// |x| < 1, so the k-th derivative at s0 is M and the j-th moves by at most
// |M| w^(k-j) bump_derivative_bound(k, j). Throws InvalidArgument when tau_r
// itself would move by rho or more, or when the grid does not resolve the bump.
FoldDescriptor perturb_torsion_bump(const FoldDescriptor& seed, double s0, double M, double w,
                                    const BumpOptions& options = {});

// sup over |x| < 1 of |d^j/dx^j psi_k(x)|, j <= k.
double bump_derivative_bound(int k, int j);

// Frames of the other surface along the same ridge (rotation by -2 alpha
// about T, alpha taken from desc).
std::vector<RidgeFrame> flip_frames(const std::vector<RidgeFrame>& frames,
                                    const FoldDescriptor& desc);

}  // namespace pleat

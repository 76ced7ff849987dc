#include "pleat/localfold.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pleat/darboux.hpp"
#include "pleat/error.hpp"
#include "pleat/io.hpp"

namespace pleat {

double FoldDescriptor::curvature(std::size_t i) const {
  return std::hypot(k_g.samples()[i], k_n.samples()[i]);
}

double FoldDescriptor::alpha(std::size_t i) const {
  return std::atan2(-k_n.samples()[i], k_g.samples()[i]);
}

Vec3 ruling_direction(double k_n, double tau_r, const Vec3& T, const Vec3& u) {
  const double norm = std::hypot(tau_r, k_n);
  if (norm == 0.0)
    throw GeometryError(ErrorKind::Degenerate, "k_n and tau_r both vanish");
  return (tau_r * T - k_n * u) / norm;
}

RulingAngle ruling_angle(double k_n, double tau_r, double k_n_prime, double tau_r_prime) {
  const double q = tau_r * tau_r + k_n * k_n;
  if (q == 0.0) throw GeometryError(ErrorKind::Degenerate, "k_n and tau_r both vanish");
  return {std::atan2(-k_n, tau_r), (tau_r_prime * k_n - k_n_prime * tau_r) / q};
}

std::pair<ScalarField, ScalarField> ruling_angle(const ScalarField& k_n,
                                                 const ScalarField& tau_r) {
  require_same_grid(k_n, tau_r, "ruling_angle");
  const auto dkn = k_n.node_derivative(1);
  const auto dtr = tau_r.node_derivative(1);
  std::vector<double> beta(k_n.size());
  std::vector<double> dbeta(k_n.size());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const auto a = ruling_angle(k_n.samples()[i], tau_r.samples()[i], dkn[i], dtr[i]);
    beta[i] = a.beta;
    dbeta[i] = a.beta_prime;
  }
  return {k_n.with_samples(unwrap_angles(beta)), k_n.with_samples(std::move(dbeta))};
}

FoldDescriptor flip_side(const FoldDescriptor& desc) {
  require_same_grid(desc.k_g, desc.k_n, "flip_side");
  require_same_grid(desc.k_g, desc.tau_r, "flip_side");
  const auto dkg = desc.k_g.node_derivative(1);
  const auto dkn = desc.k_n.node_derivative(1);
  std::vector<double> kn(desc.size());
  std::vector<double> tr(desc.size());
  for (std::size_t i = 0; i < kn.size(); ++i) {
    const double g = desc.k_g.samples()[i];
    const double n = desc.k_n.samples()[i];
    kn[i] = -n;
    tr[i] = desc.tau_r.samples()[i] - 2.0 * (dkg[i] * n - g * dkn[i]) / (g * g + n * n);
  }
  FoldDescriptor out;
  out.side = opposite(desc.side);
  out.k_g = desc.k_g;
  out.k_n = desc.k_n.with_samples(std::move(kn));
  out.tau_r = desc.tau_r.with_samples(std::move(tr));
  return out;
}

double principal_curvature(double k_n, double beta) {
  const double sb = std::sin(beta);
  if (std::abs(sb) < 1e-14)
    throw GeometryError(ErrorKind::RulingTangent, "ruling tangent to the ridge");
  return k_n / (sb * sb);
}

ExtendedReal regression_distance(double beta, double beta_prime, double k_g) {
  return extended_divide(std::sin(beta), beta_prime + k_g);
}

RulingField make_ruling_field(const FoldDescriptor& desc, std::span<const RidgeFrame> frames) {
  if (frames.size() != desc.size())
    throw GeometryError(ErrorKind::GridMismatch, "frame count differs from descriptor grid");
  RulingField r;
  std::tie(r.beta, r.beta_prime) = ruling_angle(desc.k_n, desc.tau_r);
  const std::size_t n = desc.size();
  r.direction.resize(n);
  r.regression.resize(n);
  r.principal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double kn = desc.k_n.samples()[i];
    r.direction[i] = ruling_direction(kn, desc.tau_r.samples()[i], frames[i].T, frames[i].u);
    const double b = r.beta.samples()[i];
    r.regression[i] = regression_distance(b, r.beta_prime.samples()[i], desc.k_g.samples()[i]);
    r.principal[i] = principal_curvature(kn, b);
  }
  return r;
}

std::vector<RidgeFrame> ridge_frames(const SpaceCurve& ridge, const FoldDescriptor& desc) {
  if (ridge.size() != desc.size())
    throw GeometryError(ErrorKind::GridMismatch, "ridge and descriptor grids differ");
  std::vector<RidgeFrame> out(ridge.size());
  for (std::size_t i = 0; i < ridge.size(); ++i) {
    const FrenetFrame& f = ridge.frame(i);
    if (!f.defined)
      throw GeometryError(ErrorKind::FrameUndefined, "ridge frame undefined", ridge.node(i));
    const double a = desc.alpha(i);
    out[i].point = ridge.points()[i];
    out[i].T = f.T;
    out[i].u = std::cos(a) * f.N + std::sin(a) * f.B;
    out[i].n = f.T.cross(out[i].u);
  }
  return out;
}

Fold fold_along(const PlanarCurve& foldline, const SpaceCurve& ridge, Side side,
                const FoldOptions& options) {
  const double L = ridge.length();
  if (std::abs(foldline.length() - L) > options.length_tolerance * L)
    throw GeometryError(ErrorKind::LengthMismatch,
                        "foldline length " + format_number(foldline.length()) +
                            " differs from ridge length " + format_number(L));
  if (foldline.size() != ridge.size() || foldline.closed() != ridge.closed())
    throw GeometryError(ErrorKind::GridMismatch, "foldline and ridge sampled differently");

  const auto& kf = ridge.curvature();
  const auto& kg_line = foldline.geodesic_curvature();
  const double margin = options.proper_margin * kf.max_abs();
  std::size_t worst = 0;
  double worst_gap = INFINITY;
  for (std::size_t i = 0; i < ridge.size(); ++i) {
    const double g = kg_line.samples()[i];
    const double gap = std::min(g, kf.samples()[i] - g);
    if (gap < worst_gap) {
      worst_gap = gap;
      worst = i;
    }
  }
  if (worst_gap < margin || !ridge.frames_defined())
    throw GeometryError(ErrorKind::NotProper,
                        "fold needs k > k_g > 0 (margin " + format_number(worst_gap) + ")",
                        ridge.node(worst));

  const int S = sign(side);
  std::vector<double> alpha(ridge.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    alpha[i] = S * std::acos(kg_line.samples()[i] / kf.samples()[i]);
  const auto darboux = darboux_from_alpha(kf, kf.with_samples(std::move(alpha)), ridge.torsion());

  Fold fold;
  fold.desc.side = side;
  fold.desc.k_g = kf.with_samples(std::vector<double>(kg_line.samples().begin(),
                                                      kg_line.samples().end()));
  fold.desc.k_n = darboux.k_n;
  fold.desc.tau_r = darboux.tau_r;
  fold.frames = ridge_frames(ridge, fold.desc);
  fold.rulings = make_ruling_field(fold.desc, fold.frames);
  return fold;
}

void write_fold_csv(std::ostream& os, const FoldDescriptor& desc, const RulingField& rulings) {
  os << "s,alpha,beta,beta_prime,d,k_p\n";
  for (std::size_t i = 0; i < desc.size(); ++i) {
    os << format_number(desc.k_g.node(i)) << ',' << format_number(desc.alpha(i)) << ','
       << format_number(rulings.beta.samples()[i]) << ','
       << format_number(rulings.beta_prime.samples()[i]) << ','
       << format_number(rulings.regression[i]) << ',' << format_number(rulings.principal[i])
       << '\n';
  }
}

}  // namespace pleat

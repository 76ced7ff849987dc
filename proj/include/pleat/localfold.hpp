#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "pleat/curves.hpp"
#include "pleat/extended_real.hpp"
#include "pleat/scalar_field.hpp"

namespace pleat {

enum class Side { Plus = 1, Minus = -1 };

inline int sign(Side s) { return static_cast<int>(s); }
inline Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }
inline char side_char(Side s) { return s == Side::Plus ? '+' : '-'; }

// Fold parameters along one ridge for one adjacent surface. All fields share
// the ridge's arc-length grid; k_g is the (invariant) geodesic curvature of
// the foldline.
struct FoldDescriptor {
  Side side = Side::Plus;
  ScalarField k_g;
  ScalarField k_n;
  ScalarField tau_r;

  double length() const { return k_g.period(); }
  std::size_t size() const { return k_g.size(); }
  // k = sqrt(k_g^2 + k_n^2) at node i.
  double curvature(std::size_t i) const;
  // alpha = atan2(-k_n, k_g) at node i; positive on the + side.
  double alpha(std::size_t i) const;
};

// Darboux frame of the ridge relative to one surface, at one sample.
struct RidgeFrame {
  Vec3 point = Vec3::Zero();
  Vec3 T = Vec3::Zero();
  Vec3 u = Vec3::Zero();  // in-surface normal
  Vec3 n = Vec3::Zero();  // surface normal, T x u
};

struct RulingField {
  std::vector<Vec3> direction;
  ScalarField beta;
  ScalarField beta_prime;
  std::vector<ExtendedReal> regression;  // signed distance d along the ruling
  std::vector<double> principal;         // k_p = k_n / sin^2(beta)
};

// Unit ruling direction (tau_r T - k_n u) / sqrt(tau_r^2 + k_n^2).
Vec3 ruling_direction(double k_n, double tau_r, const Vec3& T, const Vec3& u);

struct RulingAngle {
  double beta = 0.0;
  double beta_prime = 0.0;
};

// Pointwise angle between T and the ruling, with its derivative.
RulingAngle ruling_angle(double k_n, double tau_r, double k_n_prime, double tau_r_prime);
// Field version; beta is unwrapped along s.
std::pair<ScalarField, ScalarField> ruling_angle(const ScalarField& k_n, const ScalarField& tau_r);

// The descriptor of the other surface meeting along the same ridge.
FoldDescriptor flip_side(const FoldDescriptor& desc);

// k_n / sin^2(beta); throws RulingTangent when sin(beta) vanishes.
double principal_curvature(double k_n, double beta);

// sin(beta) / (beta' + k_g), +inf when the denominator vanishes.
ExtendedReal regression_distance(double beta, double beta_prime, double k_g);

RulingField make_ruling_field(const FoldDescriptor& desc, std::span<const RidgeFrame> frames);

struct FoldOptions {
  double length_tolerance = 1e-8;   // relative
  double proper_margin = 1e-6;      // relative to max k
};

struct Fold {
  FoldDescriptor desc;
  std::vector<RidgeFrame> frames;
  RulingField rulings;
};

// Folds foldline onto ridge (matched by arc length from their start points)
// and returns the surface on the requested side.
Fold fold_along(const PlanarCurve& foldline, const SpaceCurve& ridge, Side side,
                const FoldOptions& options = {});

// Darboux frames of a ridge for the given side (u = cos a N + sin a B).
std::vector<RidgeFrame> ridge_frames(const SpaceCurve& ridge, const FoldDescriptor& desc);

// CSV columns: s, alpha, beta, beta_prime, d, k_p.
void write_fold_csv(std::ostream& os, const FoldDescriptor& desc, const RulingField& rulings);

}  // namespace pleat

#include <cmath>
#include <numbers>

#include "pleat/error.hpp"
#include "pleat/propagate.hpp"
#include "pleat/taylor.hpp"

namespace pleat {

namespace {

constexpr int kMaxBumpOrder = 6;

template <class T>
T psi(T x, int k) {
  using std::exp;
  T p = T(1.0);
  double f = 1.0;
  for (int i = 1; i <= k; ++i) {
    p = p * x;
    f *= i;
  }
  return p / f * exp(1.0 - 1.0 / (1.0 - x * x));
}

// j-th derivative of psi_k at x, |x| < 1.
double psi_derivative(double x, int k, int j) {
  const auto jet = psi(Jet<kMaxBumpOrder>::variable(x), k);
  return jet.derivative(j);
}

}  // namespace

double bump_derivative_bound(int k, int j) {
  if (k < 0 || k > kMaxBumpOrder || j < 0 || j > k)
    throw GeometryError(ErrorKind::InvalidArgument, "bump order out of range");
  double m = 0.0;
  constexpr int kSamples = 4000;
  for (int i = 1; i < kSamples; ++i) {
    const double x = -1.0 + 2.0 * i / kSamples;
    m = std::max(m, std::abs(psi_derivative(x, k, j)));
  }
  return m;
}

FoldDescriptor perturb_torsion_bump(const FoldDescriptor& seed, double s0, double M, double w,
                                    const BumpOptions& options) {
  const int k = options.order;
  if (k < 1 || k > kMaxBumpOrder)
    throw GeometryError(ErrorKind::InvalidArgument, "bump order must be in 1..6");
  if (!(w > 0.0) || 2.0 * w >= seed.length())
    throw GeometryError(ErrorKind::InvalidArgument, "bump width must be positive and short");
  if (M == 0.0) return seed;
  if (w < 4.0 * seed.tau_r.spacing())
    throw GeometryError(ErrorKind::InvalidArgument,
                        "bump width is below four grid spacings; raise the resolution");
  if (std::abs(M) * std::pow(w, k) * bump_derivative_bound(k, 0) >= options.rho)
    throw GeometryError(ErrorKind::InvalidArgument, "bump moves tau_r by rho or more");
  const double L = seed.length();
  std::vector<double> tr(seed.tau_r.samples().begin(), seed.tau_r.samples().end());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double x = std::remainder(seed.tau_r.node(i) - s0, L) / w;
    if (std::abs(x) < 1.0) tr[i] += M * std::pow(w, k) * psi(x, k);
  }
  FoldDescriptor out = seed;
  out.tau_r = seed.tau_r.with_samples(std::move(tr));
  return out;
}

}  // namespace pleat

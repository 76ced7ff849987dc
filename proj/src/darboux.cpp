#include "pleat/darboux.hpp"

#include <cmath>

#include "pleat/error.hpp"

namespace pleat {

DarbouxData darboux_from_alpha(const ScalarField& k, const ScalarField& alpha,
                               const ScalarField& tau) {
  require_same_grid(k, alpha, "darboux_from_alpha");
  require_same_grid(k, tau, "darboux_from_alpha");
  const std::size_t n = k.size();
  const auto dalpha = alpha.node_derivative(1);
  std::vector<double> kg(n), kn(n), tr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = alpha.samples()[i];
    kg[i] = std::cos(a) * k.samples()[i];
    kn[i] = -std::sin(a) * k.samples()[i];
    tr[i] = tau.samples()[i] + dalpha[i];
  }
  DarbouxData d;
  d.alpha = alpha;
  d.k_g = k.with_samples(std::move(kg));
  d.k_n = k.with_samples(std::move(kn));
  d.tau_r = k.with_samples(std::move(tr));
  return d;
}

DarbouxData darboux_from_alpha(const SpaceCurve& ridge, const ScalarField& alpha) {
  DarbouxData d = darboux_from_alpha(ridge.curvature(), alpha, ridge.torsion());
  d.u.resize(ridge.size());
  d.n.resize(ridge.size());
  for (std::size_t i = 0; i < ridge.size(); ++i) {
    const FrenetFrame& f = ridge.frame(i);
    if (!f.defined)
      throw GeometryError(ErrorKind::FrameUndefined, "ridge frame undefined", ridge.node(i));
    const double a = alpha.samples()[i];
    d.u[i] = std::cos(a) * f.N + std::sin(a) * f.B;
    d.n[i] = f.T.cross(d.u[i]);
  }
  return d;
}

ScalarField alpha_from_descriptor(const ScalarField& k_g, const ScalarField& k_n) {
  require_same_grid(k_g, k_n, "alpha_from_descriptor");
  std::vector<double> a(k_g.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double g = k_g.samples()[i];
    const double nn = k_n.samples()[i];
    if (g == 0.0 && nn == 0.0)
      throw GeometryError(ErrorKind::Degenerate, "k_g and k_n both vanish", k_g.node(i));
    a[i] = std::atan2(-nn, g);
  }
  return k_g.with_samples(unwrap_angles(a));
}

}  // namespace pleat

#pragma once

#include <vector>

#include "pleat/curves.hpp"
#include "pleat/scalar_field.hpp"

namespace pleat {

// Darboux data of a ridge relative to one adjacent surface. The surface
// normal n is the binormal rotated by alpha about T (anticlockwise seen from
// the tip of T); u = cos(alpha) N + sin(alpha) B and n = T x u.
struct DarbouxData {
  ScalarField alpha;
  ScalarField k_g;
  ScalarField k_n;
  ScalarField tau_r;
  std::vector<Vec3> u;  // empty unless built from a curve
  std::vector<Vec3> n;
};

// k_g = cos(alpha) k, k_n = -sin(alpha) k, tau_r = tau + alpha'.
DarbouxData darboux_from_alpha(const ScalarField& k, const ScalarField& alpha,
                               const ScalarField& tau);
// Same, plus per-node frame vectors of the ridge.
DarbouxData darboux_from_alpha(const SpaceCurve& ridge, const ScalarField& alpha);

// alpha = atan2(-k_n, k_g), unwrapped. Throws Degenerate where both vanish.
ScalarField alpha_from_descriptor(const ScalarField& k_g, const ScalarField& k_n);

}  // namespace pleat

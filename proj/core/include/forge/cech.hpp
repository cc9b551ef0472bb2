#pragma once

#include <array>
#include <functional>

#include "forge/branch.hpp"
#include "forge/holo.hpp"

namespace forge {

// Two-annulus cover of the elliptic curve w^2 = (z^2 - a^2)(z^2 - b^2):
// U is the double cover of the disc |z| < rho_inf (containing the cut at
// +-a), V = rho(U) its sheet-swapped image from the infinity side. Points
// are represented as (z, sheet); sheet +1 carries w = canonical_w(z).
struct EllipticCover {
  cx a, b;
  double rho0 = 0.0;     // inner contour radius; 0 picks |a|^{3/4}|b|^{1/4}
  double rho_inf = 0.0;  // outer contour radius; 0 picks |a|^{1/4}|b|^{3/4}
  std::size_t n = 512;   // contour nodes

  double inner_radius() const;
  double outer_radius() const;
};

// \oint phi(t)/W(t) dt per component on the mid circle: the pairing of the
// coboundary data with the regular differential dz/w. Vanishes for tau-odd
// phi.
std::array<cx, 2> period_check(const HoloData& data,
                               const EllipticCover& cover);

struct CochainSolution {
  // evaluators on (z, sheet), sheet in {+1, -1}
  std::function<std::array<cx, 2>(cx, int)> f_U, f_V;
  std::array<cx, 2> c0;  // the constant fixing f_U(1, +1) = 0
};

// Solves the coboundary problem f_U - f_V = phi-hat with f_V = f_U o tau o
// rho: f_U on the + sheet is
//   c0 + (1/4 pi i) [oint_{rho_inf} - oint_{rho0}]
//        phi(t) (W(z)/W(t)) dt/(t - z),
// continued into the collars |z| < rho0, |z| > rho_inf by adding phi(z)/2
// (the jump the Cauchy kernel picks up when z crosses a contour); on the
// - sheet f_U(z, -) = f_U(-z, +) + phi(z). Throws OnCutError for z in the
// cut neighbourhoods.
CochainSolution solve_cochain(const HoloData& data, const EllipticCover& cover);

}  // namespace forge

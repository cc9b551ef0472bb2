#pragma once

#include <array>
#include <functional>
#include <string>

#include "forge/contour.hpp"
#include "forge/dsl.hpp"

namespace forge {

using dsl::ExprPtr;
using dsl::eval;
using dsl::eval_dual;
using dsl::parse;

// Antipodal map on the sphere, z -> -1/conj(z).
cx gamma_map(cx z);

enum class TauKind { Linear, TauC, RationalD2 };

struct TauSpec {
  TauKind kind = TauKind::Linear;
  cx c{-1.0, 0.0};  // TauC parameter, c not in {0, 1}
};

// Pair-valued density evaluator.
using PhiFn = std::function<std::array<cx, 2>(cx)>;

// The classification input: an involution tau fixing 0 with tau'(0) = -1
// and a C^2-valued density phi, odd with respect to tau, with phi'(0) and
// conj(phi'(0)) independent. `reality` marks data meant to produce real
// metrics on the slice s = 1/conj(r).
struct HoloData {
  TauSpec tau;
  PhiFn phi;
  std::function<cx(cx)> tau_fn;        // evaluator; built by make_holo
  std::array<ExprPtr, 2> phi_exprs{};  // source expressions, if any
  std::array<ExprPtr, 2> lambda_exprs{};  // rational_d2: phi = sqrt(lambda(z^2))
  double domain_radius = 1.0;
  bool reality = false;
  // evaluable on all of C away from the density cuts, not just |z| < radius
  bool global_domain = false;

  std::array<cx, 2> phi_at(cx z) const { return phi(z); }
  cx tau_at(cx z) const { return tau_fn(z); }
};

struct ValidationReport {
  bool tau_ok = false;
  bool odd_ok = false;
  bool independent_ok = false;
  bool reality_ok = true;  // vacuously true when data.reality is false
  double tau_residual = 0.0;
  double odd_residual = 0.0;
  double det_abs = 0.0;
  double reality_residual = 0.0;
  bool pass() const { return tau_ok && odd_ok && independent_ok && reality_ok; }
};

// Build data from parsed expressions (variable z). For RationalD2 the
// expressions are the lambda pair and phi_i(z) = sqrt(lambda_i(z^2)) with the
// odd branch; the exprs must make that branch well defined (odd leading term).
HoloData make_holo(TauSpec tau, std::array<ExprPtr, 2> phi_exprs,
                   double domain_radius, bool reality);
HoloData make_holo_rational_d2(std::array<ExprPtr, 2> lambda_exprs,
                               double domain_radius, bool reality);

// Does phi already satisfy phi(gamma(z)) = conj(phi(z)) at samples?
bool is_reality_compatible(const HoloData& data, double tol = 1e-8);

// phi -> phi + conj . phi . gamma, which satisfies the reality relation by
// construction (and is odd when phi is). No-op if already compatible or if
// data.reality is false.
HoloData reality_complete(const HoloData& data);

ValidationReport validate(const HoloData& data);

// First Laurent coefficient (1/2pi i) \oint phi/z^2 dz on a small circle;
// equals phi'(0) for data regular at 0 and stays meaningful for completed
// densities with a simple pole there.
std::array<cx, 2> phi_linear_coeff(const HoloData& data, double radius = 0.0);

// The sheet-exchange involution of f with df = t dt/((t-1)^2 (t-c)^2).
// Newton from seed -z on f(w) = f(z); f by straight-path quadrature.
// Throws NoConvergence after 50 iterations, OutOfDomain if a validity
// radius is supplied and |z| exceeds it.
cx tau_c(cx c, cx z, double validity_radius = -1.0);

// Empirical validity radius: start at 0.25 min(1, |c|), shrink until the
// involution converges at boundary samples.
double tau_c_radius(cx c);

// z dz / ((z - lambda)^2 (z - mu)^2), lambda = mu / c, scaled by `scale`.
struct BetaForm {
  cx mu;
  cx c;
  cx scale{1.0, 0.0};
  bool reality = false;  // then lambda = -1/conj(mu) must hold, c < 0
  cx lambda() const { return mu / c; }
};

// Residue of beta at mu: -scale (mu + lambda)/(mu - lambda)^3.
// Throws DegeneratePoles when lambda == mu.
cx beta_residue(const BetaForm& b);

// Pull back by z -> e^{i theta} z: phi_new = phi . rot, tau_new = rot^{-1}
// . tau . rot. The result passes validate whenever the input does.
HoloData gauge_rotate(const HoloData& data, double theta);

// lambda_i(z) = (z + p)(z - 1)/((z - p)(z + 1)) for |p| = 1.
cx fs_lambda(cx p, cx z);

// Data with tau(z) = -z and phi_i = -i log lambda_i, the branch with
// phi(0) = 0 = phi(infinity); reality holds. p1, p2 on the unit circle,
// away from +-1, distinct. Throws DegenerateExample otherwise.
HoloData fubini_study_data(cx p1, cx p2);

}  // namespace forge

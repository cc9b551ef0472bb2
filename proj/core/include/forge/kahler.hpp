#pragma once

#include <functional>

#include "forge/holo.hpp"

namespace forge {

struct KahlerVerdict {
  bool is_tau_c = false;  // residual < 1e-6
  cx c{0, 0};
  double residual = 0.0;
  bool kahler = false;      // c real and negative
  bool lagrangian = false;  // |c + 1| < 1e-8
};

// Least-squares fit of the sheet-exchange family parameter c to a sampled
// involution: minimizes sum |tau(z_k) - tau_c(c, z_k)|^2 over 32 circle
// samples (radius capped at 0.1 so every candidate disc is valid). The
// initial guess comes from the series tau_c(z) = -z(1 + b z + ...) with
// b = (4/3)(1 + 1/c). Divergence is reported as a failed verdict rather
// than thrown.
KahlerVerdict fit_tau_c(const std::function<cx(cx)>& tau,
                        double domain_radius);

KahlerVerdict classify(const HoloData& data);

// The S^1 of Kahler representatives for c < 0: mu = sqrt(-c) e^{i theta},
// lambda = -1/conj(mu) (antipodal pair with lambda/mu... = 1/c), scale
// i e^{2i theta} chosen so 2 pi i res(beta) is real and theta-independent.
// Throws NotKahler for c >= 0.
BetaForm kahler_circle(double c, double theta);

}  // namespace forge

#pragma once

#include <array>

#include "forge/holo.hpp"
#include "forge/so_engine.hpp"

namespace forge {

// Degree-2 rational family fixing 0 -> r, 1 -> 1, infinity -> s:
//   F_{r,s}(z) = s (k z^2 + r)/(k z^2 + s),  k = (1 - r)/(1 - 1/s).
cx family_k(cx r, cx s);
cx family_F(cx r, cx s, cx z);
// F''_{r,s}(0) = 2 k (s - r)/s
cx family_d2_at0(cx r, cx s);
// second derivative in the coordinate 1/z at infinity: 2 s (r - s)/k
cx family_d2_atinf(cx r, cx s);

// The uniformisation branch of F_{r,s}^{-1}(z^2) continued from the fixed
// point 1: zhat^2 = s (z^2 - r)/(k (s - z^2)), zhat(1) = 1. Throws
// OnCutError when the continuation path cannot avoid the cuts.
cx uniformize_d2(cx r, cx s, cx z);

struct MNPair {
  std::array<cx, 2> M, N;
  int sign_token = +1;
};

// Residue route: with g_i(zhat) = lambda_i(F_{r,s}(zhat)) branch-continued
// from the density phi itself,
//   M_i = -(1/(4 pi i F''_0)) \oint_{C_0}   sqrt(g_i) dzhat / zhat^2,
//   N_i = -(1/(4 pi i F''_inf)) \oint_{C_inf} sqrt(g_i) dzhat,
// C_0 enclosing the 0-cut of the family, C_inf the infinity-cut. Requires
// rational_d2 data (lambda pair present).
MNPair compute_MN(const HoloData& data, cx r, cx s, int sign_token = +1);

// Closed-form route for d = 2: M = a A, N = B / a with
// a = sqrt((1-s)/(1-r)) and (A, B) the cut-derivative integrals.
MNPair compute_MN_closed_form(const HoloData& data, cx r, cx s,
                              int sign_token = +1);

// dr rho_M - ds rho_N + rho_M rho_N / (M2 N1 - M1 N2), with
// rho_M = M2 dv1 - M1 dv2 and rho_N likewise, in coordinates (r, s, v).
MetricSample general_metric(const HoloData& data, const LinePoint& p);
MetricSample general_metric_from_MN(const std::array<cx, 2>& M,
                                    const std::array<cx, 2>& N,
                                    const LinePoint& p);

}  // namespace forge

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "forge/holo.hpp"

namespace forge {

// Half-plane bridge: the fixed Mobius pair taking (zeta, xi) near (i, -i)
// to the cut positions (r, s), plus the gauge factor lambda.
cx bridge_r(cx zeta);       // (zeta - i)/(zeta + i)
cx bridge_s(cx xi);         // (xi - i)/(xi + i)
cx bridge_r_zeta(cx zeta);  // 2i/(zeta + i)^2
cx bridge_s_xi(cx xi);      // 2i/(xi + i)^2
cx bridge_lambda(cx zeta, cx xi);  // ((zeta+i)/(xi+i))^{1/2}, principal

// Derivative pair (F_zeta, F_xi) of the half-plane potential:
// F_zeta = lambda A r_zeta, F_xi = lambda^{-1} B s_xi, with (A, B) the cut
// derivatives of G. The pair satisfies
//   F_zeta_xi = (F_zeta - F_xi)/(2(zeta - xi))
// and its lambda-products are branch-unambiguous.
struct FPrimePair {
  std::array<cx, 2> Fz, Fx;
};
FPrimePair bridge_F_from_G(const HoloData& data, cx zeta, cx xi);

// A solution of the axially symmetric harmonic equation
// F_xx + F_yy + F_y/y = 0 on the half-plane, with the derived Joyce data
// P = -y F_x, Q = y F_y (4th-order finite differences when only F is given).
struct JoyceField {
  std::function<std::array<double, 2>(double, double)> F;
  double fd_step = 1e-3;  // relative step for derived quantities

  std::array<double, 2> P(double x, double y) const;
  std::array<double, 2> Q(double x, double y) const;
};

// Pointwise residual of F_xx + F_yy + F_y/y by 4th-order central
// differences. Throws AxisError if the stencil touches y <= 0.
std::array<double, 2> ash_residual_at(const JoyceField& f, double x, double y);

// Residuals of the Joyce system P_x = Q_y, P_y + Q_x = P/y.
std::array<double, 4> joyce_residual_at(const JoyceField& f, double x,
                                        double y);

struct RealityReport {
  double g_residual = 0.0;  // conj(A) + s (r/|r|) B on the real slice
  double f_residual = 0.0;  // F_xi - conj(F_zeta)
  bool pass(double tol = 1e-7) const {
    return g_residual < tol && f_residual < tol;
  }
};

// Both reality relations at the given half-plane samples (zeta = x + iy).
RealityReport reality_check(const HoloData& data, const std::vector<cx>& zetas);

// F(zeta, xi) = \oint Psi(u) du / ((u - zeta)^{1/2} (u - xi)^{1/2}) over a
// circle enclosing both arguments; a forward generator of axially symmetric
// harmonic functions. Throws GeometryError if zeta or xi is on or outside
// the contour.
std::array<cx, 2> psi_forward(const std::array<ExprPtr, 2>& psi, cx zeta,
                              cx xi, const Contour& c);

}  // namespace forge

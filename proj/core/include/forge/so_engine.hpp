#pragma once

#include <array>

#include "forge/branch.hpp"
#include "forge/holo.hpp"

namespace forge {

// A point of the 4-dimensional space of lines in the surface-orthogonal
// chart: two cut positions r (near 0) and s (near infinity) and the group
// coordinate v. Real slice: s = 1/conj(r), v real.
struct LinePoint {
  cx r, s;
  std::array<cx, 2> v{cx{0, 0}, cx{0, 0}};
};

struct ABPair {
  std::array<cx, 2> A, B;
  int sign_token = +1;  // flips both A and B; products are token-free
};

struct MetricSample {
  enum class Kind { Holomorphic, Real };
  std::array<cx, 4> point{};
  std::array<std::array<cx, 4>, 4> g{};
  Kind kind = Kind::Holomorphic;
};

// Single mid-annulus circle enclosing the 0-cut and excluding the
// infinity-cut, radius sqrt(|sqrt r| min(|sqrt s|, 0.99 R)) with R the
// data's domain radius; sufficient for densities analytic between the cuts
// (the integrals below use a two-circle average internally to also handle
// densities with jumps across unit-circle arcs). Throws GeometryError when
// the cuts collide with it.
Contour so_contour(const HoloData& data, cx r, cx s);

// A = -(1/8 pi i) \oint z phi dz / ((z^2-r) W),
// B = -(1/8 pi i) \oint z phi dz / ((z^2-s) W),  W = canonical_w * token.
ABPair compute_AB(const HoloData& data, cx r, cx s, int sign_token = +1);

// G = -(1/4 pi i) \oint z phi dz / W; A = dG/dr, B = dG/ds and G satisfies
// G_rs = (G_r - G_s)/(2(r-s)).
std::array<cx, 2> compute_G(const HoloData& data, cx r, cx s,
                            int sign_token = +1);

// dr ds + (A2 dv1 - A1 dv2)(B2 dv1 - B1 dv2) / (A2 B1 - A1 B2)^2 in
// coordinates (r, s, v1, v2). Data with the reality flag is completed to a
// reality-compatible density first. Throws DegenerateFrame when
// |A2 B1 - A1 B2| < 1e-12 |A||B|.
MetricSample holomorphic_metric(const HoloData& data, const LinePoint& p);

// Same tensor assembled from injected frame vectors (test support).
MetricSample metric_from_frame(const std::array<cx, 2>& A,
                               const std::array<cx, 2>& B,
                               const LinePoint& p);

// Real Riemannian metric at x = (x, y, u1, u2), y > 0, via the half-plane
// bridge: zeta = x + iy, xi = conj(zeta), r = (zeta-i)/(zeta+i),
// s = (xi-i)/(xi+i), F' from the gauged G-derivatives, P = -y F_x,
// Q = y F_y, assembled in the Joyce form
//   (dx^2+dy^2)/y^2 + [(P2 du1 - P1 du2)^2 + (Q2 du1 - Q1 du2)^2]
//                      / (P1 Q2 - Q1 P2)^2.
// Requires data.reality; throws NotReal when the conjugation relation
// between F_zeta and F_xi fails, NearSingularMetric when P1 Q2 - Q1 P2
// vanishes.
MetricSample real_metric(const HoloData& data, const std::array<double, 4>& x);

}  // namespace forge

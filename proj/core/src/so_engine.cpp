#include "forge/so_engine.hpp"

#include <cmath>

#include "forge/errors.hpp"
#include "forge/joyce.hpp"

namespace forge {

namespace {

cx oint(const std::function<cx(cx)>& f, const Contour& c) {
  return contour_integrate_adaptive(f, c, 1e-12);
}

// Contours for the A and B integrals. When the annulus between the cuts
// straddles the unit circle the two contours bracket it, so densities with
// singularities on |z| = 1 (and paired cuts r, 1/conj r) still integrate on
// the correct side; otherwise both collapse to the single mid circle.
struct ABContours {
  Contour ca, cb;
};

ABContours ab_contours(const HoloData& data, cx r, cx s) {
  double lo = std::sqrt(std::abs(r));
  double hs = std::sqrt(std::abs(s));
  double hi = data.global_domain ? hs : std::min(hs, 0.99 * data.domain_radius);
  if (std::abs(r - s) < 1e-12 * std::max(1.0, std::abs(r)))
    throw GeometryError("compute_AB: coincident cuts");
  double sep = (lo < 1.0 && 1.0 < hi) ? 1.0 : std::sqrt(lo * hi);
  double ra = std::sqrt(lo * sep);
  double rb = std::sqrt(sep * hi);
  if (!(lo < 0.97 * ra) || !(hs > 1.03 * rb))
    throw GeometryError("compute_AB: cuts collide with the contours");
  return {Contour{cx{0, 0}, ra, 128}, Contour{cx{0, 0}, rb, 128}};
}

}  // namespace

Contour so_contour(const HoloData& data, cx r, cx s) {
  double ar = std::sqrt(std::abs(r));
  double as = std::sqrt(std::abs(s));
  double rho = std::sqrt(ar * std::min(as, 0.99 * data.domain_radius));
  if (!(ar < 0.97 * rho) || !(as > 1.03 * rho) ||
      std::abs(r - s) < 1e-12 * std::max(1.0, std::abs(r)))
    throw GeometryError("so_contour: cuts collide with the contour");
  return Contour{cx{0, 0}, rho, 128};
}

ABPair compute_AB(const HoloData& data, cx r, cx s, int sign_token) {
  ABContours cs = ab_contours(data, r, s);
  double tok = sign_token >= 0 ? 1.0 : -1.0;
  ABPair out;
  out.sign_token = sign_token >= 0 ? +1 : -1;
  cx pref = kI / (8.0 * kPi);  // -1/(8 pi i)
  // Both A and B average the two contour components. For densities analytic
  // in the annulus the components agree and this is one mid-circle integral;
  // for densities with jumps across |z| = 1 the average is what satisfies
  // both the reality relation and the linear PDE.
  for (int i = 0; i < 2; ++i) {
    auto fa = [&](cx z) {
      cx w = tok * canonical_w(z, r, s);
      return z * data.phi_at(z)[i] / ((z * z - r) * w);
    };
    auto fb = [&](cx z) {
      cx w = tok * canonical_w(z, r, s);
      return z * data.phi_at(z)[i] / ((z * z - s) * w);
    };
    out.A[i] = pref * 0.5 * (oint(fa, cs.ca) + oint(fa, cs.cb));
    out.B[i] = pref * 0.5 * (oint(fb, cs.ca) + oint(fb, cs.cb));
  }
  return out;
}

std::array<cx, 2> compute_G(const HoloData& data, cx r, cx s, int sign_token) {
  ABContours cs = ab_contours(data, r, s);
  double tok = sign_token >= 0 ? 1.0 : -1.0;
  cx pref = kI / (4.0 * kPi);  // -1/(4 pi i)
  std::array<cx, 2> g;
  for (int i = 0; i < 2; ++i) {
    auto f = [&](cx z) {
      cx w = tok * canonical_w(z, r, s);
      return z * data.phi_at(z)[i] / w;
    };
    g[i] = pref * 0.5 * (oint(f, cs.ca) + oint(f, cs.cb));
  }
  return g;
}

MetricSample metric_from_frame(const std::array<cx, 2>& A,
                               const std::array<cx, 2>& B, const LinePoint& p) {
  cx delta = A[1] * B[0] - A[0] * B[1];
  double na = std::hypot(std::abs(A[0]), std::abs(A[1]));
  double nb = std::hypot(std::abs(B[0]), std::abs(B[1]));
  if (std::abs(delta) < 1e-12 * na * nb)
    throw DegenerateFrame("metric frame: A and B are parallel");
  cx d2 = delta * delta;
  MetricSample m;
  m.kind = MetricSample::Kind::Holomorphic;
  m.point = {p.r, p.s, p.v[0], p.v[1]};
  m.g[0][1] = m.g[1][0] = cx{0.5, 0};
  m.g[2][2] = A[1] * B[1] / d2;
  m.g[2][3] = m.g[3][2] = -(A[1] * B[0] + A[0] * B[1]) / (2.0 * d2);
  m.g[3][3] = A[0] * B[0] / d2;
  return m;
}

MetricSample holomorphic_metric(const HoloData& data, const LinePoint& p) {
  HoloData d = reality_complete(data);
  ABPair ab = compute_AB(d, p.r, p.s);
  return metric_from_frame(ab.A, ab.B, p);
}

MetricSample real_metric(const HoloData& data, const std::array<double, 4>& x) {
  double y = x[1];
  if (y <= 0) throw AxisError("real_metric: y must be positive");
  if (!data.reality) throw DomainError("real_metric: data is not real");
  HoloData d = reality_complete(data);
  cx zeta{x[0], y};
  cx xi = std::conj(zeta);
  FPrimePair fp = bridge_F_from_G(d, zeta, xi);
  double scale = std::max({1.0, std::abs(fp.Fz[0]), std::abs(fp.Fz[1])});
  for (int i = 0; i < 2; ++i) {
    if (std::abs(fp.Fx[i] - std::conj(fp.Fz[i])) > 1e-8 * scale)
      throw NotReal("real_metric: F derivatives violate conjugation");
  }
  // F_x = 2 Re F_zeta, F_y = -2 Im F_zeta
  std::array<double, 2> P{-2.0 * y * fp.Fz[0].real(),
                          -2.0 * y * fp.Fz[1].real()};
  std::array<double, 2> Q{-2.0 * y * fp.Fz[0].imag(),
                          -2.0 * y * fp.Fz[1].imag()};
  double det = P[0] * Q[1] - Q[0] * P[1];
  double ns = std::max({std::abs(P[0]), std::abs(P[1]), std::abs(Q[0]),
                        std::abs(Q[1]), 1e-30});
  if (std::abs(det) < 1e-12 * ns * ns)
    throw NearSingularMetric("real_metric: P, Q frame degenerate");
  MetricSample m;
  m.kind = MetricSample::Kind::Real;
  m.point = {cx{x[0], 0}, cx{x[1], 0}, cx{x[2], 0}, cx{x[3], 0}};
  double iy2 = 1.0 / (y * y);
  double id2 = 1.0 / (det * det);
  m.g[0][0] = m.g[1][1] = cx{iy2, 0};
  m.g[2][2] = cx{(P[1] * P[1] + Q[1] * Q[1]) * id2, 0};
  m.g[2][3] = m.g[3][2] = cx{-(P[0] * P[1] + Q[0] * Q[1]) * id2, 0};
  m.g[3][3] = cx{(P[0] * P[0] + Q[0] * Q[0]) * id2, 0};
  return m;
}

}  // namespace forge

#include "forge/gen_engine.hpp"

#include <cmath>
#include <vector>

#include "forge/branch.hpp"
#include "forge/errors.hpp"

namespace forge {

namespace {

// continue sqrt(g) through a polyline
cx continue_polyline(const std::function<cx(cx)>& g,
                     const std::vector<cx>& pts, cx w0) {
  cx w = w0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    w = sqrt_continue(g, pts[i], w, pts[i + 1]);
  return w;
}

// polyline along the arc of radius |z0| from z0 to z1 (same radius), chords
// no wider than pi/12
std::vector<cx> arc_points(cx z0, cx z1) {
  double rho = std::abs(z0);
  double a0 = std::arg(z0), a1 = std::arg(z1);
  double d = a1 - a0;
  while (d > kPi) d -= 2 * kPi;
  while (d < -kPi) d += 2 * kPi;
  int steps = std::max(1, int(std::ceil(std::abs(d) / (kPi / 12))));
  std::vector<cx> pts(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double a = a0 + d * i / steps;
    pts[i] = rho * cx{std::cos(a), std::sin(a)};
  }
  return pts;
}

}  // namespace

cx family_k(cx r, cx s) {
  if (std::abs(s) < 1e-300) throw DomainError("family_k: s = 0");
  cx den = cx{1, 0} - cx{1, 0} / s;
  if (std::abs(den) < 1e-14) throw DomainError("family_k: s = 1");
  return (cx{1, 0} - r) / den;
}

cx family_F(cx r, cx s, cx z) {
  cx k = family_k(r, s);
  cx den = k * z * z + s;
  if (std::abs(den) < 1e-300) throw DomainError("family_F: pole");
  return s * (k * z * z + r) / den;
}

cx family_d2_at0(cx r, cx s) { return 2.0 * family_k(r, s) * (s - r) / s; }

cx family_d2_atinf(cx r, cx s) { return 2.0 * s * (r - s) / family_k(r, s); }

cx uniformize_d2(cx r, cx s, cx z) {
  cx k = family_k(r, s);
  auto g = [r, s, k](cx t) { return s * (t * t - r) / (k * (s - t * t)); };
  cx one{1, 0};
  try {
    return sqrt_continue(g, one, one, z);
  } catch (const BranchCutOnContour&) {
    // retry along radial-then-arc legs from 1
    try {
      cx mid = z / std::abs(z);  // same angle handled by arc from 1
      std::vector<cx> pts = arc_points(one, mid);
      cx w = continue_polyline(g, pts, one);
      return sqrt_continue(g, mid, w, z);
    } catch (const BranchCutOnContour&) {
      throw OnCutError("uniformize_d2: continuation path crosses a cut");
    }
  }
}

MNPair compute_MN(const HoloData& data, cx r, cx s, int sign_token) {
  if (!data.lambda_exprs[0] || !data.lambda_exprs[1])
    throw DomainError("compute_MN: data has no rational density pair");
  cx k = family_k(r, s);
  // cut radii in the zhat plane: F = 0 at zhat^2 = -r/k, F = inf at -s/k.
  // Either cut may be the inner one; both contours only need to sit in the
  // annulus between them, biased toward the cut their integral encircles.
  double cr = std::sqrt(std::abs(r / k));
  double cs = std::sqrt(std::abs(s / k));
  double lo = std::min(cr, cs), hi = std::max(cr, cs);
  double rho_ref = std::sqrt(lo * hi);
  double rho_m = std::sqrt(cr * rho_ref);
  double rho_n = std::sqrt(cs * rho_ref);
  if (!(lo < 0.97 * std::min(rho_m, rho_n) &&
        hi > 1.03 * std::max(rho_m, rho_n)))
    throw GeometryError("compute_MN: cuts collide with the contours");

  // reference point away from the real axis (where densities often vanish)
  cx dir = std::polar(1.0, kPi / 4);
  cx zhat_ref = rho_ref * dir;
  // the uniformised coordinate at the reference point, x(1) = 1
  auto Ff = [r, s](cx t) { return family_F(r, s, t); };
  cx x_ref = continue_polyline(Ff, arc_points(cx{1, 0}, dir), cx{1, 0});
  x_ref = sqrt_continue(Ff, dir, x_ref, zhat_ref);

  double tok = sign_token >= 0 ? 1.0 : -1.0;
  MNPair out;
  out.sign_token = sign_token >= 0 ? +1 : -1;
  cx pref0 = tok / (4.0 * kPi * kI * family_d2_at0(r, s));
  cx prefi = tok / (4.0 * kPi * kI * family_d2_atinf(r, s));
  for (int i = 0; i < 2; ++i) {
    ExprPtr le = data.lambda_exprs[i];
    auto gi = [le, r, s](cx t) { return eval(le, family_F(r, s, t)); };
    // seed sqrt(g_i) from the density itself: phi_i(x_ref)^2 = g_i(zhat_ref)
    cx w_ref = data.phi_at(x_ref)[i];
    // carry the seed to the angle-0 node of each contour
    cx wm = sqrt_continue(gi, zhat_ref, w_ref, rho_m * dir);
    wm = continue_polyline(gi, arc_points(rho_m * dir, cx{rho_m, 0}), wm);
    cx wn = sqrt_continue(gi, zhat_ref, w_ref, rho_n * dir);
    wn = continue_polyline(gi, arc_points(rho_n * dir, cx{rho_n, 0}), wn);

    Contour cm{cx{0, 0}, rho_m, 512};
    BranchTrack tm = branch_sqrt_track(gi, cm, &wm);
    std::vector<cx> sm(cm.n);
    for (std::size_t j = 0; j < cm.n; ++j) {
      cx z = cm.node(j);
      sm[j] = tm.values[j] / (z * z);
    }
    out.M[i] = -pref0 * contour_integrate(sm, cm);

    Contour cn{cx{0, 0}, rho_n, 512};
    BranchTrack tn = branch_sqrt_track(gi, cn, &wn);
    out.N[i] = -prefi * contour_integrate(tn.values, cn);
  }
  return out;
}

MNPair compute_MN_closed_form(const HoloData& data, cx r, cx s,
                              int sign_token) {
  cx a = std::sqrt((cx{1, 0} - s) / (cx{1, 0} - r));
  ABPair ab = compute_AB(data, r, s, sign_token);
  MNPair out;
  out.sign_token = ab.sign_token;
  for (int i = 0; i < 2; ++i) {
    out.M[i] = a * ab.A[i];
    out.N[i] = ab.B[i] / a;
  }
  return out;
}

MetricSample general_metric_from_MN(const std::array<cx, 2>& M,
                                    const std::array<cx, 2>& N,
                                    const LinePoint& p) {
  cx delta = M[1] * N[0] - M[0] * N[1];
  double nm = std::hypot(std::abs(M[0]), std::abs(M[1]));
  double nn = std::hypot(std::abs(N[0]), std::abs(N[1]));
  if (std::abs(delta) < 1e-12 * nm * nn)
    throw DegenerateFrame("general_metric: M and N are parallel");
  MetricSample m;
  m.kind = MetricSample::Kind::Holomorphic;
  m.point = {p.r, p.s, p.v[0], p.v[1]};
  // dr rho_M
  m.g[0][2] = m.g[2][0] = M[1] / 2.0;
  m.g[0][3] = m.g[3][0] = -M[0] / 2.0;
  // -ds rho_N
  m.g[1][2] = m.g[2][1] = -N[1] / 2.0;
  m.g[1][3] = m.g[3][1] = N[0] / 2.0;
  // rho_M rho_N / delta
  m.g[2][2] = M[1] * N[1] / delta;
  m.g[2][3] = m.g[3][2] = -(M[1] * N[0] + M[0] * N[1]) / (2.0 * delta);
  m.g[3][3] = M[0] * N[0] / delta;
  return m;
}

MetricSample general_metric(const HoloData& data, const LinePoint& p) {
  HoloData d = reality_complete(data);
  MNPair mn = compute_MN(d, p.r, p.s);
  return general_metric_from_MN(mn.M, mn.N, p);
}

}  // namespace forge

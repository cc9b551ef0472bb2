#include "forge/branch.hpp"

#include <cmath>

#include "forge/errors.hpp"

namespace forge {

namespace {

// Choose the square root of `g` closest in phase to `prev`.
cx nearest_root(cx g, cx prev) {
  cx r = std::sqrt(g);
  if (std::abs(r - prev) > std::abs(-r - prev)) r = -r;
  return r;
}

}  // namespace

BranchTrack branch_sqrt_track(const std::function<cx(cx)>& g, const Contour& c,
                              const cx* seed, double vanish_tol) {
  std::vector<cx> gv(c.n);
  double gmax = 0.0;
  for (std::size_t k = 0; k < c.n; ++k) {
    gv[k] = g(c.node(k));
    if (!is_finite(gv[k]))
      throw NumericalError("branch_sqrt_track: non-finite sample");
    gmax = std::max(gmax, std::abs(gv[k]));
  }
  if (gmax == 0.0) throw BranchCutOnContour("branch_sqrt_track: function vanishes");
  for (std::size_t k = 0; k < c.n; ++k)
    if (std::abs(gv[k]) < vanish_tol * gmax)
      throw BranchCutOnContour(
          "branch_sqrt_track: tracked function vanishes on the contour");

  BranchTrack t;
  t.values.resize(c.n);
  if (seed) {
    cx s = *seed;
    if (std::abs(s * s - gv[0]) > 1e-6 * std::abs(gv[0]))
      throw BranchError("branch_sqrt_track: seed does not square to g(node 0)");
    t.values[0] = s;
  } else {
    cx r = std::sqrt(gv[0]);
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
    t.values[0] = r;
  }
  for (std::size_t k = 1; k < c.n; ++k) {
    t.values[k] = nearest_root(gv[k], t.values[k - 1]);
    // Angle between successive roots must stay below pi/2; a larger jump
    // means the sampling cannot distinguish the two sheets.
    cx ratio = t.values[k] / t.values[k - 1];
    if (std::abs(std::arg(ratio)) > kPi / 2.0)
      throw ResolutionError("branch_sqrt_track: phase step exceeds pi/2");
  }
  cx closure = nearest_root(gv[0], t.values[c.n - 1]);
  if (std::abs(closure - t.values[0]) > 1e-8 * std::abs(t.values[0]) + 1e-300)
    throw NumericalError("branch_sqrt_track: track does not close up");
  return t;
}

BranchTrack branch_sqrt_product(const std::vector<std::function<cx(cx)>>& factors,
                                const Contour& c, const cx* seed) {
  auto prod = [&factors](cx z) {
    cx p{1, 0};
    for (const auto& f : factors) p *= f(z);
    return p;
  };
  return branch_sqrt_track(prod, c, seed);
}

cx sqrt_continue(const std::function<cx(cx)>& g, cx z0, cx w0, cx z1,
                 int max_depth) {
  cx gb = g(z1);
  if (!is_finite(gb)) throw NumericalError("sqrt_continue: non-finite value");
  if (std::abs(gb) == 0.0)
    throw BranchCutOnContour("sqrt_continue: path hits a zero");
  cx wb = nearest_root(gb, w0);
  if (std::abs(std::arg(wb / w0)) <= kPi / 4.0) return wb;
  if (max_depth <= 0)
    throw ResolutionError("sqrt_continue: max subdivision depth");
  cx mid = 0.5 * (z0 + z1);
  cx wm = sqrt_continue(g, z0, w0, mid, max_depth - 1);
  return sqrt_continue(g, mid, wm, z1, max_depth - 1);
}

cx canonical_w(cx z, cx r, cx s) {
  cx qr = z * std::sqrt(cx{1, 0} - r / (z * z));
  cx qs = kI * std::sqrt(s) * std::sqrt(cx{1, 0} - z * z / s);
  return qr * qs;
}

}  // namespace forge

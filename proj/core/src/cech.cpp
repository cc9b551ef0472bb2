#include "forge/cech.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

namespace {

struct ContourData {
  Contour c;
  std::vector<cx> nodes, dnodes;
  std::vector<std::array<cx, 2>> phi;
  std::vector<cx> w;
};

ContourData sample_contour(const HoloData& data, cx r, cx s, double rho,
                           std::size_t n) {
  ContourData cd{Contour{cx{0, 0}, rho, n}, {}, {}, {}, {}};
  cd.nodes.resize(n);
  cd.dnodes.resize(n);
  cd.phi.resize(n);
  cd.w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd.nodes[k] = cd.c.node(k);
    cd.dnodes[k] = cd.c.dnode(k);
    cd.phi[k] = data.phi_at(cd.nodes[k]);
    cd.w[k] = canonical_w(cd.nodes[k], r, s);
  }
  return cd;
}

}  // namespace

double EllipticCover::inner_radius() const {
  if (rho0 > 0) return rho0;
  return std::pow(std::abs(a), 0.75) * std::pow(std::abs(b), 0.25);
}

double EllipticCover::outer_radius() const {
  if (rho_inf > 0) return rho_inf;
  return std::pow(std::abs(a), 0.25) * std::pow(std::abs(b), 0.75);
}

std::array<cx, 2> period_check(const HoloData& data,
                               const EllipticCover& cover) {
  cx r = cover.a * cover.a, s = cover.b * cover.b;
  double rho = std::sqrt(cover.inner_radius() * cover.outer_radius());
  Contour c{cx{0, 0}, rho, cover.n};
  std::array<cx, 2> out;
  for (int i = 0; i < 2; ++i) {
    out[i] = contour_integrate(
        [&](cx t) { return data.phi_at(t)[i] / canonical_w(t, r, s); }, c);
  }
  return out;
}

CochainSolution solve_cochain(const HoloData& data,
                              const EllipticCover& cover) {
  cx r = cover.a * cover.a, s = cover.b * cover.b;
  double aa = std::abs(cover.a), ab = std::abs(cover.b);
  double ri = cover.inner_radius(), ro = cover.outer_radius();
  if (!(aa < ri && ri < ro && ro < ab))
    throw GeometryError("solve_cochain: contour radii out of order");

  auto inner = std::make_shared<ContourData>(
      sample_contour(data, r, s, ri, cover.n));
  auto outer = std::make_shared<ContourData>(
      sample_contour(data, r, s, ro, cover.n));
  PhiFn phi = data.phi;

  // u(z): + sheet value before normalization
  auto raw_u = [inner, outer, phi, r, s, aa, ab, ri,
                ro](cx z) -> std::array<cx, 2> {
    double az = std::abs(z);
    if (az <= 1.05 * aa || az >= 0.95 * ab)
      throw OnCutError("solve_cochain: evaluation point in a cut region");
    if (std::abs(az - ri) < 0.05 * ri || std::abs(az - ro) < 0.05 * ro)
      throw GeometryError("solve_cochain: evaluation point on a contour");
    cx wz = canonical_w(z, r, s);
    std::array<cx, 2> acc{cx{0, 0}, cx{0, 0}};
    for (const ContourData* cd : {outer.get(), inner.get()}) {
      double sign = (cd == outer.get()) ? 1.0 : -1.0;
      cx part0{0, 0}, part1{0, 0};
      for (std::size_t k = 0; k < cd->nodes.size(); ++k) {
        cx kernel = (wz / cd->w[k]) / (cd->nodes[k] - z) * cd->dnodes[k];
        part0 += cd->phi[k][0] * kernel;
        part1 += cd->phi[k][1] * kernel;
      }
      double fac = sign * 2.0 * kPi / double(cd->nodes.size());
      acc[0] += fac * part0;
      acc[1] += fac * part1;
    }
    cx pref = 1.0 / (4.0 * kPi * kI);
    acc[0] *= pref;
    acc[1] *= pref;
    // continuation across the contours: the Cauchy kernel drops the pole
    // contribution once z leaves the mid annulus
    if (az < ri || az > ro) {
      auto p = phi(z);
      acc[0] += 0.5 * p[0];
      acc[1] += 0.5 * p[1];
    }
    if (!is_finite(acc[0]) || !is_finite(acc[1]))
      throw NumericalError("solve_cochain: non-finite evaluation");
    return acc;
  };

  std::array<cx, 2> u1 = raw_u(cx{1, 0});
  std::array<cx, 2> c0{-u1[0], -u1[1]};

  auto fU = [raw_u, phi, c0](cx z, int sheet) -> std::array<cx, 2> {
    if (sheet >= 0) {
      auto v = raw_u(z);
      return {v[0] + c0[0], v[1] + c0[1]};
    }
    auto v = raw_u(-z);
    auto p = phi(z);
    return {v[0] + c0[0] + p[0], v[1] + c0[1] + p[1]};
  };
  auto fV = [fU](cx z, int sheet) { return fU(-z, sheet); };

  CochainSolution sol;
  sol.f_U = fU;
  sol.f_V = fV;
  sol.c0 = c0;
  return sol;
}

}  // namespace forge

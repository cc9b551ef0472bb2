#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "forge/errors.hpp"
#include "forge/gen_engine.hpp"

#include "fixtures.hpp"

using namespace forge;

namespace {

const cx kR{0.08, 0.02};
const cx kS = 1.0 / std::conj(kR);

// align the branch sign of `got` with `want`, component-consistently
std::array<cx, 2> aligned(const std::array<cx, 2>& got,
                          const std::array<cx, 2>& want) {
  double sp = std::abs(got[0] - want[0]);
  double sm = std::abs(got[0] + want[0]);
  if (sm < sp) return {-got[0], -got[1]};
  return got;
}

}  // namespace

TEST_CASE("rational family fixes 0, 1, infinity") {
  for (cx r : {kR, cx{0.2, -0.1}}) {
    cx s{3.0, 1.0};
    CHECK(std::abs(family_F(r, s, cx{0, 0}) - r) < 1e-14);
    CHECK(std::abs(family_F(r, s, cx{1, 0}) - 1.0) < 1e-13);
    CHECK(std::abs(family_F(r, s, cx{1e8, 0}) - s) < 1e-6);
    cx k = family_k(r, s);
    CHECK(std::abs(k - (1.0 - r) / (1.0 - 1.0 / s)) < 1e-14);
  }
}

TEST_CASE("curvature coefficients of the family match finite differences") {
  cx r{0.1, 0.05}, s{4.0, -1.0};
  double h = 1e-4;
  cx fd0 = (family_F(r, s, cx{h, 0}) - 2.0 * family_F(r, s, cx{0, 0}) +
            family_F(r, s, cx{-h, 0})) /
           (h * h);
  CHECK(std::abs(fd0 - family_d2_at0(r, s)) < 1e-5);

  auto Ginf = [&](double u) { return family_F(r, s, cx{1.0 / u, 0}); };
  cx fdi = (Ginf(h) - 2.0 * s + Ginf(-h)) / (h * h);
  CHECK(std::abs(fdi - family_d2_atinf(r, s)) < 1e-5);
}

TEST_CASE("uniformisation inverts the family") {
  cx r{0.06, 0.01}, s{9.0, 2.0};
  CHECK(std::abs(uniformize_d2(r, s, cx{1, 0}) - 1.0) < 1e-12);
  for (cx z : {cx{0.8, 0.3}, cx{1.2, -0.4}, cx{0.5, 0.9}}) {
    cx zh = uniformize_d2(r, s, z);
    CHECK(std::abs(family_F(r, s, zh) - z * z) < 1e-10);
  }
}

TEST_CASE("residue route agrees with the closed form") {
  HoloData d = d2_seed();
  for (cx r : {kR, cx{0.12, -0.03}}) {
    cx s = 1.0 / std::conj(r);
    MNPair res = compute_MN(d, r, s);
    MNPair cf = compute_MN_closed_form(d, r, s);
    auto m = aligned(res.M, cf.M);
    auto n = aligned(res.N, cf.N);
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(m[i] - cf.M[i]) < 1e-8 * std::max(1.0, std::abs(cf.M[i])));
      CHECK(std::abs(n[i] - cf.N[i]) < 1e-8 * std::max(1.0, std::abs(cf.N[i])));
    }
  }
}

TEST_CASE("swapping the cut roles exchanges the two residue integrals") {
  HoloData d = d2_seed();
  for (cx r : {cx{0.15, 0.05}, cx{0.2, -0.08}}) {
    cx s{5.0, 1.0};
    MNPair a = compute_MN(d, r, s);
    MNPair b = compute_MN(d, s, r);
    auto n = aligned(b.N, a.M);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(a.M[i] - n[i]) < 1e-9 * std::max(1.0, std::abs(a.M[i])));
  }
}

TEST_CASE("identity density reduces to the literal root") {
  // lambda(w) = w makes phi(z) = +-z and M_i proportional to the plain
  // second-derivative residue of sqrt(F)
  HoloData idd = make_holo_rational_d2({parse("z"), parse("z")}, 10.0, false);
  cx r{0.1, 0.02}, s{6.0, -1.0};
  MNPair res = compute_MN(idd, r, s);
  MNPair cf = compute_MN_closed_form(idd, r, s);
  auto m = aligned(res.M, cf.M);
  CHECK(std::abs(m[0] - cf.M[0]) < 1e-8 * std::abs(cf.M[0]));
  CHECK(std::abs(res.M[0] - res.M[1]) < 1e-12 * std::abs(res.M[0]));
}

TEST_CASE("general metric from an injected pair") {
  LinePoint p{kR, kS, {cx{0.2, 0}, cx{-0.1, 0}}};
  MetricSample m = general_metric_from_MN({cx{1, 0}, cx{0, 0}},
                                          {cx{0, 0}, cx{1, 0}}, p);
  // -dr dv2 - ds dv1 + dv1 dv2
  CHECK(std::abs(m.g[0][3] + 0.5) < 1e-15);
  CHECK(std::abs(m.g[1][2] + 0.5) < 1e-15);
  CHECK(std::abs(m.g[2][3] - 0.5) < 1e-15);
  CHECK(std::abs(m.g[0][1]) < 1e-15);
  CHECK(std::abs(m.g[0][2]) < 1e-15);
  CHECK(std::abs(m.g[1][3]) < 1e-15);
  // the (r, s) plane is null
  CHECK(std::abs(m.g[0][0]) < 1e-15);
  CHECK(std::abs(m.g[1][1]) < 1e-15);
}

TEST_CASE("general metric null plane for real data") {
  HoloData d = d2_seed();
  LinePoint p{kR, kS, {cx{0.3, 0}, cx{0.5, 0}}};
  MetricSample m = general_metric(d, p);
  CHECK(std::abs(m.g[0][0]) < 1e-13);
  CHECK(std::abs(m.g[1][1]) < 1e-13);
  CHECK(std::abs(m.g[0][1]) < 1e-13);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(m.g[i][j] - m.g[j][i]) < 1e-15);
}

TEST_CASE("general route matches the surface-orthogonal route conformally") {
  // moving the torus origin by the (M, N) pair absorbs the dr dv / ds dv
  // blocks; what is left is a constant multiple of the surface-orthogonal
  // tensor at the same point
  HoloData d = d2_seed();
  for (cx r : {kR, cx{0.11, -0.04}}) {
    cx s = 1.0 / std::conj(r);
    LinePoint p{r, s, {cx{0.4, 0.1}, cx{-0.3, 0.2}}};
    MNPair cf = compute_MN_closed_form(d, r, s);
    MNPair res = compute_MN(d, r, s);
    auto M = aligned(res.M, cf.M);
    auto N = aligned(res.N, cf.N);
    MetricSample gen = general_metric_from_MN(M, N, p);
    MetricSample so = holomorphic_metric(d, p);

    // dv_i = dv~_i + M_i dr + N_i ds
    cx J[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0},
                  {M[0], N[0], 1, 0}, {M[1], N[1], 0, 1}};
    cx gt[4][4] = {};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            gt[a][b] += gen.g[i][j] * J[i][a] * J[j][b];

    cx ratio = gt[0][1] / so.g[0][1];
    double scale = std::abs(ratio);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(std::abs(gt[a][b] - ratio * so.g[a][b]) < 1e-6 * scale);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "forge/errors.hpp"
#include "forge/joyce.hpp"
#include "forge/so_engine.hpp"

#include "fixtures.hpp"

using namespace forge;

TEST_CASE("half-plane bridge maps") {
  CHECK(std::abs(bridge_r(cx{0, 1})) < 1e-15);
  CHECK(std::abs(bridge_s(cx{0, 1})) < 1e-15);

  cx zeta{0.4, 0.9};
  // on the real slice xi = conj(zeta): s conj(r) = 1
  CHECK(std::abs(bridge_s(std::conj(zeta)) * std::conj(bridge_r(zeta)) - 1.0) <
        1e-14);

  double h = 1e-6;
  cx fd = (bridge_r(zeta + h) - bridge_r(zeta - h)) / (2.0 * h);
  CHECK(std::abs(fd - bridge_r_zeta(zeta)) < 1e-9);

  cx xi{-0.2, -1.1};
  cx lam = bridge_lambda(zeta, xi);
  CHECK(std::abs(lam * lam - (zeta + cx{0, 1}) / (xi + cx{0, 1})) < 1e-14);
}

TEST_CASE("the bridge map obeys the cross-ratio identity") {
  cx zeta{0.4, 0.9}, xi{-0.3, -1.2};
  cx q = (bridge_r(zeta) - bridge_s(xi)) / (zeta - xi);
  CHECK(std::abs(bridge_r_zeta(zeta) * bridge_s_xi(xi) - q * q) < 1e-14);
}

TEST_CASE("gauged potential derivatives satisfy the half-plane hierarchy") {
  HoloData d = reality_complete(linear_seed());
  cx zeta{0.3, 0.8}, xi{0.1, -0.9};
  double h = 1e-4;
  FPrimePair f0 = bridge_F_from_G(d, zeta, xi);
  for (int i = 0; i < 2; ++i) {
    cx fzx = (bridge_F_from_G(d, zeta, xi + h).Fz[i] -
              bridge_F_from_G(d, zeta, xi - h).Fz[i]) /
             (2.0 * h);
    cx rhs = (f0.Fz[i] - f0.Fx[i]) / (2.0 * (zeta - xi));
    CHECK(std::abs(fzx - rhs) < 1e-6);
  }
}

TEST_CASE("gauge-invariant products of the derivative pair") {
  HoloData d = reality_complete(linear_seed());
  cx zeta{0.3, 0.8}, xi{0.1, -0.9};
  FPrimePair f = bridge_F_from_G(d, zeta, xi);
  ABPair ab = compute_AB(d, bridge_r(zeta), bridge_s(xi));
  cx jac = bridge_r_zeta(zeta) * bridge_s_xi(xi);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(f.Fz[i] * f.Fx[i] - ab.A[i] * ab.B[i] * jac) <
          1e-12 * std::max(1.0, std::abs(f.Fz[i] * f.Fx[i])));
}

TEST_CASE("axially symmetric harmonic fixtures") {
  JoyceField f;
  f.F = [](double x, double y) {
    return std::array<double, 2>{x, std::log(y)};
  };
  auto ash = ash_residual_at(f, 0.4, 0.8);
  CHECK(std::abs(ash[0]) < 1e-9);
  CHECK(std::abs(ash[1]) < 1e-9);

  auto p = f.P(0.4, 0.8);
  auto q = f.Q(0.4, 0.8);
  CHECK(p[0] == doctest::Approx(-0.8).epsilon(1e-9));
  CHECK(std::abs(p[1]) < 1e-9);
  CHECK(std::abs(q[0]) < 1e-9);
  CHECK(q[1] == doctest::Approx(1.0).epsilon(1e-9));

  auto jr = joyce_residual_at(f, 0.4, 0.8);
  for (double v : jr) CHECK(std::abs(v) < 1e-8);

  JoyceField bad;
  bad.F = [](double x, double) { return std::array<double, 2>{x * x, 0.0}; };
  auto r = ash_residual_at(bad, 0.1, 1.0);
  CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(r[1]) < 1e-9);

  CHECK_THROWS_AS(ash_residual_at(f, 0.0, 0.0), AxisError);
}

TEST_CASE("another closed-form harmonic pair") {
  // F = x^2 - y^2/2 solves F_xx + F_yy + F_y/y = 2 - 1 - 1 = 0
  JoyceField f;
  f.F = [](double x, double y) {
    return std::array<double, 2>{x * x - 0.5 * y * y, 0.0};
  };
  auto ash = ash_residual_at(f, 0.3, 0.6);
  CHECK(std::abs(ash[0]) < 1e-8);
  auto jr = joyce_residual_at(f, 0.3, 0.6);
  for (double v : jr) CHECK(std::abs(v) < 1e-7);
}

TEST_CASE("reality relations on the real slice") {
  std::vector<cx> zetas{cx{0.3, 0.8}, cx{-0.2, 1.2}, cx{0.5, 0.6}};
  RealityReport rep = reality_check(linear_seed(), zetas);
  CHECK(rep.pass());
  CHECK(rep.g_residual < 1e-10);
  CHECK(rep.f_residual < 1e-10);

  RealityReport rep2 = reality_check(d2_seed(), zetas);
  CHECK(rep2.pass());

  CHECK_THROWS_AS(reality_check(linear_seed(false), zetas), DomainError);
}

TEST_CASE("forward map from a disc density") {
  Contour c{cx{0, 0}, 2.0, 512};
  cx zeta{0.3, 0.2}, xi{-0.4, 0.1};

  // psi = (1, u) has exact moments 2 pi i and pi i (zeta + xi)
  auto F = psi_forward({parse("1"), parse("z")}, zeta, xi, c);
  CHECK(std::abs(F[0] - 2.0 * kPi * kI) < 1e-12);
  CHECK(std::abs(F[1] - kPi * kI * (zeta + xi)) < 1e-12);

  auto Fswap = psi_forward({parse("1"), parse("z")}, xi, zeta, c);
  CHECK(std::abs(F[1] - Fswap[1]) < 1e-12);

  CHECK_THROWS_AS(psi_forward({parse("1"), parse("z")}, cx{2.5, 0}, xi, c),
                  GeometryError);
}

TEST_CASE("forward map generates hierarchy solutions") {
  Contour c{cx{0, 0}, 2.0, 512};
  std::array<ExprPtr, 2> psi{parse("z^2"), parse("exp(z/4)")};
  cx zeta{0.3, 0.2}, xi{-0.4, 0.1};
  double h = 1e-4;
  auto at = [&](cx a, cx b) { return psi_forward(psi, a, b, c); };
  for (int i = 0; i < 2; ++i) {
    cx fz = (at(zeta + h, xi)[i] - at(zeta - h, xi)[i]) / (2.0 * h);
    cx fx = (at(zeta, xi + h)[i] - at(zeta, xi - h)[i]) / (2.0 * h);
    cx fzx = (at(zeta + h, xi + h)[i] - at(zeta + h, xi - h)[i] -
              at(zeta - h, xi + h)[i] + at(zeta - h, xi - h)[i]) /
             (4.0 * h * h);
    CHECK(std::abs(fzx - (fz - fx) / (2.0 * (zeta - xi))) < 1e-5);
  }
}

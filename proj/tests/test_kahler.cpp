#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "forge/errors.hpp"
#include "forge/kahler.hpp"

#include "fixtures.hpp"

using namespace forge;

TEST_CASE("sheet-exchange parameter fits round-trip") {
  for (cx c : {cx{-1, 0}, cx{-2, 0}, cx{-0.5, 0}, cx{-1.7, 0.4}}) {
    auto tau = [c](cx z) { return tau_c(c, z); };
    KahlerVerdict v = fit_tau_c(tau, tau_c_radius(c));
    CHECK(v.is_tau_c);
    CHECK(std::abs(v.c - c) < 1e-6);
  }
}

TEST_CASE("fit verdict for the named parameters") {
  KahlerVerdict m1 = fit_tau_c([](cx z) { return tau_c(cx{-1, 0}, z); }, 0.2);
  CHECK(m1.kahler);
  CHECK(m1.lagrangian);

  KahlerVerdict m2 = fit_tau_c([](cx z) { return tau_c(cx{-2, 0}, z); }, 0.2);
  CHECK(m2.kahler);
  CHECK(!m2.lagrangian);

  KahlerVerdict cc =
      fit_tau_c([](cx z) { return tau_c(cx{2, 1}, z); }, tau_c_radius(cx{2, 1}));
  CHECK(cc.is_tau_c);
  CHECK(!cc.kahler);
}

TEST_CASE("a cubic perturbation is not in the family") {
  auto tau = [](cx z) { return -z + z * z * z; };
  KahlerVerdict v = fit_tau_c(tau, 1.0);
  CHECK(!v.is_tau_c);
  CHECK(v.residual > 1e-6);
}

TEST_CASE("seed classification") {
  KahlerVerdict lin = classify(linear_seed());
  CHECK(lin.is_tau_c);
  CHECK(std::abs(lin.c + 1.0) < 1e-8);
  CHECK(lin.kahler);
  CHECK(lin.lagrangian);

  KahlerVerdict d2 = classify(d2_seed());
  CHECK(d2.is_tau_c);
  CHECK(std::abs(d2.c + 1.0) < 1e-6);
  CHECK(d2.lagrangian);

  KahlerVerdict fs = classify(fs_seed());
  CHECK(fs.is_tau_c);
  CHECK(fs.kahler);
}

TEST_CASE("circle of representatives") {
  double c = -2.0;
  double q = std::sqrt(-c);
  // closed form of the symplectic pairing: 2 pi (q - 1/q)/(q + 1/q)^3
  double expected = 2.0 * kPi * (q - 1.0 / q) / std::pow(q + 1.0 / q, 3);

  cx omega0;
  for (int k = 0; k < 8; ++k) {
    double th = 2.0 * kPi * k / 8.0;
    BetaForm b = kahler_circle(c, th);
    CHECK(std::abs(std::abs(b.mu) - q) < 1e-12);
    CHECK(std::abs(b.lambda() + 1.0 / std::conj(b.mu)) < 1e-12);
    cx omega = 2.0 * kPi * kI * beta_residue(b);
    CHECK(std::abs(omega.imag()) < 1e-10);
    CHECK(std::abs(omega - expected) < 1e-10);
    if (k == 0) omega0 = omega;
    CHECK(std::abs(omega - omega0) < 1e-10);
  }

  // the lagrangian point has vanishing pairing
  BetaForm bl = kahler_circle(-1.0, 0.9);
  CHECK(std::abs(beta_residue(bl)) < 1e-12);

  CHECK_THROWS_AS(kahler_circle(0.5, 0.0), NotKahler);
  CHECK_THROWS_AS(kahler_circle(0.0, 1.0), NotKahler);
}

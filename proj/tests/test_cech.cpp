#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "forge/cech.hpp"
#include "forge/errors.hpp"

#include "fixtures.hpp"

using namespace forge;

namespace {
HoloData completed() { return reality_complete(linear_seed()); }
const EllipticCover kCover{cx{0.3, 0}, cx{3, 0}};
}  // namespace

TEST_CASE("cover radii bracket the cuts") {
  CHECK(kCover.inner_radius() > 0.3);
  CHECK(kCover.outer_radius() < 3.0);
  CHECK(kCover.inner_radius() < kCover.outer_radius());
}

TEST_CASE("periods of odd data vanish") {
  auto p = period_check(completed(), kCover);
  CHECK(std::abs(p[0]) < 1e-10);
  CHECK(std::abs(p[1]) < 1e-10);

  EllipticCover fine = kCover;
  fine.n = 1024;
  auto p2 = period_check(completed(), fine);
  CHECK(std::abs(p2[0] - p[0]) < 1e-10);
  CHECK(std::abs(p2[1] - p[1]) < 1e-10);
}

TEST_CASE("cochain solves the coboundary problem") {
  HoloData d = completed();
  CochainSolution sol = solve_cochain(d, kCover);

  // normalization
  auto base = sol.f_U(cx{1, 0}, +1);
  CHECK(std::abs(base[0]) < 1e-12);
  CHECK(std::abs(base[1]) < 1e-12);

  double mid = std::sqrt(kCover.inner_radius() * kCover.outer_radius());
  for (int k = 0; k < 32; ++k) {
    cx z = std::polar(mid, 2.0 * kPi * (k + 0.5) / 32.0);
    auto phi = d.phi_at(z);
    for (int sheet : {+1, -1}) {
      auto fu = sol.f_U(z, sheet);
      auto fv = sol.f_V(z, sheet);
      // coboundary f_U - f_V = phi-hat; the hat density on the swapped
      // sheet picks up the sign of the sheet
      for (int i = 0; i < 2; ++i) {
        cx jump = fu[i] - fv[i];
        CHECK(std::min(std::abs(jump - phi[i]), std::abs(jump + phi[i])) <
              1e-9);
      }
    }
  }
}

TEST_CASE("sheet jump relation") {
  HoloData d = completed();
  CochainSolution sol = solve_cochain(d, kCover);
  for (double th : {0.4, 1.9, 3.7, 5.5}) {
    cx z = std::polar(1.0, th);
    auto lo = sol.f_U(z, -1);
    auto hi = sol.f_U(-z, +1);
    auto phi = d.phi_at(z);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(lo[i] - hi[i] - phi[i]) < 1e-12);
  }
}

TEST_CASE("collar continuation stays coherent") {
  HoloData d = completed();
  CochainSolution sol = solve_cochain(d, kCover);
  // points inside the inner contour and outside the outer one, off the cuts
  cx zin = std::polar(0.9 * kCover.inner_radius(), 2.2);
  cx zout = std::polar(1.1 * kCover.outer_radius(), 1.1);
  for (cx z : {zin, zout}) {
    auto fu = sol.f_U(z, +1);
    CHECK(std::isfinite(fu[0].real()));
    auto fv = sol.f_V(z, +1);
    for (int i = 0; i < 2; ++i) {
      cx jump = fu[i] - fv[i];
      cx phi = d.phi_at(z)[i];
      CHECK(std::min(std::abs(jump - phi), std::abs(jump + phi)) < 1e-9);
    }
  }
}

TEST_CASE("solution is unique up to a constant across contour radii") {
  HoloData d = completed();
  EllipticCover c1 = kCover, c2 = kCover;
  c1.rho0 = 0.9 * kCover.inner_radius();
  c1.rho_inf = 0.9 * kCover.outer_radius();
  c2.rho0 = 1.1 * kCover.inner_radius();
  c2.rho_inf = 1.1 * kCover.outer_radius();
  CochainSolution s1 = solve_cochain(d, c1);
  CochainSolution s2 = solve_cochain(d, c2);

  cx zref{1.1, 0.2};
  auto d0 = s1.f_U(zref, +1);
  auto e0 = s2.f_U(zref, +1);
  for (double th : {0.6, 2.5, 4.1}) {
    cx z = std::polar(1.2, th);
    auto a = s1.f_U(z, +1);
    auto b = s2.f_U(z, +1);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs((a[i] - b[i]) - (d0[i] - e0[i])) < 1e-9);
  }
}

TEST_CASE("zero density gives the zero cochain") {
  HoloData d = completed();
  d.phi = [](cx) { return std::array<cx, 2>{cx{0, 0}, cx{0, 0}}; };
  CochainSolution sol = solve_cochain(d, kCover);
  auto fu = sol.f_U(cx{0.9, 0.4}, +1);
  CHECK(std::abs(fu[0]) < 1e-12);
  CHECK(std::abs(fu[1]) < 1e-12);
}

TEST_CASE("evaluation on a cut is refused") {
  CochainSolution sol = solve_cochain(completed(), kCover);
  CHECK_THROWS_AS(sol.f_U(cx{0.3, 0}, +1), OnCutError);
  CHECK_THROWS_AS(sol.f_U(cx{-3.0, 0}, +1), OnCutError);
}

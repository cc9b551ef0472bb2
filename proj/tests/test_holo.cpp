#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "forge/errors.hpp"
#include "forge/holo.hpp"

#include "fixtures.hpp"

using namespace forge;

TEST_CASE("antipodal map") {
  cx z{0.4, -1.2};
  CHECK(std::abs(gamma_map(gamma_map(z)) - z) < 1e-15);
  CHECK(std::abs(gamma_map(z)) == doctest::Approx(1.0 / std::abs(z)));
}

TEST_CASE("the linear seed validates") {
  ValidationReport rep = validate(linear_seed());
  CHECK(rep.tau_ok);
  CHECK(rep.odd_ok);
  CHECK(rep.independent_ok);
  CHECK(rep.reality_ok);
  CHECK(rep.pass());
  // phi'(0) = (1, i): |det| of the frame pair is 2
  CHECK(rep.det_abs == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("dependent derivative pairs are rejected") {
  HoloData d = make_holo(TauSpec{}, {parse("z"), parse("2*z")}, 1.0, false);
  ValidationReport rep = validate(d);
  CHECK(rep.odd_ok);
  CHECK(!rep.independent_ok);
  CHECK(!rep.pass());
}

TEST_CASE("even densities are rejected") {
  HoloData d = make_holo(TauSpec{}, {parse("z^2"), parse("i*z")}, 1.0, false);
  ValidationReport rep = validate(d);
  CHECK(!rep.odd_ok);
  CHECK(!rep.pass());
}

TEST_CASE("reality completion") {
  HoloData raw = linear_seed();
  CHECK(!is_reality_compatible(raw));
  HoloData done = reality_complete(raw);
  CHECK(is_reality_compatible(done));

  // completed density has the closed form (z - 1/z, i(z + 1/z))
  for (cx z : {cx{0.7, 0.2}, cx{-1.3, 0.5}, cx{0.1, -2.0}}) {
    auto p = done.phi_at(z);
    CHECK(std::abs(p[0] - (z - 1.0 / z)) < 1e-13);
    CHECK(std::abs(p[1] - kI * (z + 1.0 / z)) < 1e-13);
  }

  // idempotent
  HoloData twice = reality_complete(done);
  cx z{0.5, 0.8};
  CHECK(std::abs(twice.phi_at(z)[0] - done.phi_at(z)[0]) < 1e-14);

  // no-op without the flag
  HoloData plain = linear_seed(false);
  CHECK(std::abs(reality_complete(plain).phi_at(z)[0] - z) < 1e-15);
}

TEST_CASE("first Laurent coefficient survives the completed pole") {
  std::array<cx, 2> a = phi_linear_coeff(reality_complete(linear_seed()));
  CHECK(std::abs(a[0] - 1.0) < 1e-10);
  CHECK(std::abs(a[1] - kI) < 1e-10);
}

TEST_CASE("sheet-exchange involution tau_c") {
  // c = -1 is the linear case
  for (cx z : {cx{0.03, 0.01}, cx{-0.02, 0.04}})
    CHECK(std::abs(tau_c(cx{-1, 0}, z) + z) < 1e-10);

  for (cx c : {cx{-2, 0}, cx{-0.5, 0}, cx{2, 1}}) {
    double rad = tau_c_radius(c);
    CHECK(rad > 0);
    for (double th : {0.3, 2.1, 4.4}) {
      cx z = std::polar(0.5 * rad, th);
      cx tz = tau_c(c, z);
      CHECK(std::abs(tau_c(c, tz) - z) < 1e-8 * rad);
    }
    // tau'(0) = -1
    double h = 1e-5 * rad;
    cx d = (tau_c(c, cx{h, 0}) - tau_c(c, cx{-h, 0})) / (2 * h);
    CHECK(std::abs(d + 1.0) < 1e-6);
  }

  CHECK_THROWS_AS(tau_c(cx{-2, 0}, cx{0.05, 0}, 0.01), OutOfDomain);
}

TEST_CASE("quadratic-differential residue") {
  // mu = -2, lambda = mu/c = 1: residue -(mu + lambda)/(mu - lambda)^3
  BetaForm b{cx{-2, 0}, cx{-2, 0}};
  CHECK(std::abs(b.lambda() - 1.0) < 1e-15);
  CHECK(std::abs(beta_residue(b) - cx{-1.0 / 27.0, 0}) < 1e-15);

  // swapping the poles reverses the sign
  BetaForm bs{cx{1, 0}, cx{-0.5, 0}};
  CHECK(std::abs(bs.lambda() + 2.0) < 1e-15);
  CHECK(std::abs(beta_residue(bs) - cx{1.0 / 27.0, 0}) < 1e-15);

  CHECK(std::abs(beta_residue(BetaForm{cx{-2, 0}, cx{-2, 0}, cx{0, 3}}) -
                 cx{0, -3.0 / 27.0}) < 1e-15);

  CHECK_THROWS_AS(beta_residue(BetaForm{cx{1, 0}, cx{1, 0}}), DegeneratePoles);
}

TEST_CASE("circle-action gauge on the seed") {
  HoloData d = linear_seed(false);
  HoloData same = gauge_rotate(d, 0.0);
  cx z{0.4, 0.3};
  CHECK(std::abs(same.phi_at(z)[0] - d.phi_at(z)[0]) < 1e-15);

  double th = 0.7;
  HoloData rot = gauge_rotate(d, th);
  cx w = std::polar(1.0, th) * z;
  CHECK(std::abs(rot.phi_at(z)[0] - d.phi_at(w)[0]) < 1e-13);
  CHECK(validate(rot).pass());

  HoloData full = gauge_rotate(d, 2.0 * kPi);
  CHECK(std::abs(full.phi_at(z)[1] - d.phi_at(z)[1]) < 1e-12);
  CHECK(std::abs(full.tau_at(z) - d.tau_at(z)) < 1e-12);
}

TEST_CASE("projective-line ratio density") {
  cx p = std::polar(1.0, kPi / 3.0);
  CHECK(std::abs(fs_lambda(p, cx{0, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(fs_lambda(p, cx{1, 0})) < 1e-15);
  for (cx z : {cx{0.4, 0.7}, cx{-1.2, 0.3}}) {
    CHECK(std::abs(fs_lambda(p, z) * fs_lambda(p, -z) - 1.0) < 1e-13);
    // antipodal relation: lambda(gamma(z)) conj(lambda(z)) = 1
    CHECK(std::abs(fs_lambda(p, gamma_map(z)) * std::conj(fs_lambda(p, z)) -
                   1.0) < 1e-13);
  }
}

TEST_CASE("fubini-study seed") {
  HoloData d = fs_seed();
  CHECK(d.reality);
  ValidationReport rep = validate(d);
  CHECK(rep.pass());
  // phi(0) = 0 branch
  CHECK(std::abs(d.phi_at(cx{1e-3, 0})[0]) < 1e-2);

  CHECK_THROWS_AS(fubini_study_data(cx{1, 0}, cx{0, 1}), DegenerateExample);
  CHECK_THROWS_AS(fubini_study_data(cx{0, 1}, cx{0, 1}), DegenerateExample);
  CHECK_THROWS_AS(fubini_study_data(cx{0.5, 0}, cx{0, 1}), DegenerateExample);
}

TEST_CASE("degree-2 rational seed") {
  HoloData d = d2_seed();
  CHECK(validate(d).pass());
  // phi_1 = sqrt(z^2 - 2 + 1/z^2) = +-(z - 1/z)
  for (cx z : {cx{2, 0.5}, cx{0.3, 1.1}}) {
    auto p = d.phi_at(z);
    cx e0 = z - 1.0 / z, e1 = kI * (z + 1.0 / z);
    CHECK(std::min(std::abs(p[0] - e0), std::abs(p[0] + e0)) < 1e-12);
    CHECK(std::min(std::abs(p[1] - e1), std::abs(p[1] + e1)) < 1e-12);
    CHECK(std::abs(p[0] + d.phi_at(-z)[0]) < 1e-12);
  }

  // identity density: phi = +-z
  HoloData idd = make_holo_rational_d2({parse("z"), parse("z")}, 10.0, false);
  cx q = idd.phi_at(cx{2, 0})[0];
  CHECK(std::min(std::abs(q - 2.0), std::abs(q + 2.0)) < 1e-13);

  // even leading behaviour cannot define an odd root
  CHECK_THROWS_AS(
      make_holo_rational_d2({parse("z^2 + 1"), parse("z")}, 10.0, false),
      BranchError);
}

#include "forge/kahler.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

namespace {

double sum_sq(const std::function<cx(cx)>& tau, const std::vector<cx>& zs,
              cx c) {
  double acc = 0;
  for (cx z : zs) {
    cx d = tau(z) - tau_c(c, z);
    acc += std::norm(d);
  }
  return acc;
}

}  // namespace

KahlerVerdict fit_tau_c(const std::function<cx(cx)>& tau,
                        double domain_radius) {
  KahlerVerdict v;
  v.residual = std::numeric_limits<double>::infinity();
  double rho = std::min(0.1, 0.8 * domain_radius);
  std::vector<cx> zs(32);
  for (int k = 0; k < 32; ++k) {
    double th = 2.0 * kPi * (k + 0.37) / 32.0;
    zs[k] = rho * cx{std::cos(th), std::sin(th)};
  }
  try {
    // series guess: tau(z) = -z(1 + b z + ...), b = (4/3)(1 + 1/c)
    cx b{0, 0};
    double rs = 0.2 * rho;
    for (int k = 0; k < 8; ++k) {
      double th = 2.0 * kPi * k / 8.0;
      cx z = rs * cx{std::cos(th), std::sin(th)};
      b += (-tau(z) / z - cx{1, 0}) / z;
    }
    b /= 8.0;
    cx c = (std::abs(0.75 * b - cx{1, 0}) < 1e-8)
               ? cx{-1e6, 0}
               : cx{1, 0} / (0.75 * b - cx{1, 0});
    if (std::abs(c) < 1e-3) c = cx{-1, 0};

    // Gauss-Newton on the holomorphic residuals r_k(c)
    double f = sum_sq(tau, zs, c);
    for (int it = 0; it < 40; ++it) {
      cx dc = 1e-6 * std::max(1.0, std::abs(c));
      cx num{0, 0};
      double den = 0;
      for (cx z : zs) {
        cx r0 = tau(z) - tau_c(c, z);
        cx J = -(tau_c(c + dc, z) - tau_c(c - dc, z)) / (2.0 * dc);
        num += std::conj(J) * r0;
        den += std::norm(J);
      }
      if (den < 1e-300) break;
      cx step = -num / den;
      // backtracking
      double fn = f;
      cx cn = c;
      for (int bt = 0; bt < 8; ++bt) {
        cx cand = c + step;
        if (std::abs(cand) < 1e-9 || std::abs(cand - cx{1, 0}) < 1e-9) {
          step *= 0.5;
          continue;
        }
        double fc;
        try {
          fc = sum_sq(tau, zs, cand);
        } catch (const Error&) {
          step *= 0.5;
          continue;
        }
        if (fc < f) {
          cn = cand;
          fn = fc;
          break;
        }
        step *= 0.5;
      }
      if (cn == c) break;
      bool done = std::abs(cn - c) < 1e-12 * std::max(1.0, std::abs(c));
      c = cn;
      f = fn;
      if (done) break;
    }
    v.c = c;
    v.residual = std::sqrt(f / zs.size());
  } catch (const Error&) {
    return v;  // NoFit: verdict stays false
  }
  v.is_tau_c = v.residual < 1e-6;
  v.kahler = v.is_tau_c && std::abs(v.c.imag()) < 1e-6 && v.c.real() < 0;
  v.lagrangian = v.kahler && std::abs(v.c + cx{1, 0}) < 1e-8;
  return v;
}

KahlerVerdict classify(const HoloData& data) {
  if (data.tau.kind == TauKind::Linear) {
    // tau(z) = -z is tau_{-1} exactly
    KahlerVerdict v;
    v.is_tau_c = true;
    v.c = cx{-1, 0};
    v.residual = 0.0;
    v.kahler = true;
    v.lagrangian = true;
    return v;
  }
  return fit_tau_c(data.tau_fn, data.domain_radius);
}

BetaForm kahler_circle(double c, double theta) {
  if (c >= 0) throw NotKahler("kahler_circle: c must be negative");
  double q = std::sqrt(-c);
  cx rot{std::cos(theta), std::sin(theta)};
  BetaForm b;
  b.mu = q * rot;
  b.c = cx{c, 0};
  b.scale = kI * rot * rot;
  b.reality = true;
  return b;
}

}  // namespace forge

#include "forge/holo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

namespace {

constexpr double kTiny = 1e-300;

cx alpha_c_integrand(cx c, cx t) {
  cx d1 = t - cx{1, 0};
  cx d2 = t - c;
  if (std::abs(d1) < kTiny || std::abs(d2) < kTiny)
    throw DomainError("alpha_c: pole on integration path");
  return t / (d1 * d1 * d2 * d2);
}

cx f_c(cx c, cx z) {
  if (std::abs(z) < kTiny) return {0, 0};
  return path_integrate([c](cx t) { return alpha_c_integrand(c, t); }, cx{0, 0},
                        z);
}

// Laurent coefficient c_k of g on |z| = rho.
cx laurent_coeff(const std::function<cx(cx)>& g, int k, double rho,
                 std::size_t n = 512) {
  Contour c{cx{0, 0}, rho, n};
  cx acc = contour_integrate(
      [&](cx z) { return g(z) * std::pow(z, -(k + 1)); }, c);
  return acc / (2.0 * kPi * kI);
}

}  // namespace

cx gamma_map(cx z) {
  if (std::abs(z) < kTiny) throw DomainError("gamma_map at 0");
  return -1.0 / std::conj(z);
}

cx tau_c(cx c, cx z, double validity_radius) {
  if (std::abs(c) < kTiny || std::abs(c - cx{1, 0}) < kTiny)
    throw DomainError("tau_c: c in {0, 1}");
  if (validity_radius > 0 && std::abs(z) > validity_radius * (1 + 1e-12))
    throw OutOfDomain("tau_c: z outside validity disc");
  if (std::abs(z) < kTiny) return {0, 0};
  cx fz = f_c(c, z);
  cx w = -z;
  for (int it = 0; it < 50; ++it) {
    cx fw = f_c(c, w);
    cx dw = (fw - fz) / alpha_c_integrand(c, w);
    w -= dw;
    if (std::abs(dw) < 1e-14 * std::max(1.0, std::abs(w))) {
      if (std::abs(w - z) < 1e-10 * std::abs(z))
        throw NoConvergence("tau_c: collapsed onto the trivial sheet");
      return w;
    }
  }
  throw NoConvergence("tau_c: Newton did not converge");
}

double tau_c_radius(cx c) {
  double r = 0.25 * std::min(1.0, std::abs(c));
  double floor_r = 1e-4 * r;
  while (r > floor_r) {
    bool ok = true;
    for (int k = 0; k < 16 && ok; ++k) {
      double th = 2.0 * kPi * k / 16.0;
      cx z = r * cx{std::cos(th), std::sin(th)};
      try {
        cx w = tau_c(c, z);
        cx back = tau_c(c, w);
        if (std::abs(back - z) > 1e-9 * std::max(1.0, std::abs(z))) ok = false;
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) return r;
    r *= 0.75;
  }
  throw NoConvergence("tau_c_radius: no usable disc found");
}

HoloData make_holo(TauSpec tau, std::array<ExprPtr, 2> phi_exprs,
                   double domain_radius, bool reality) {
  if (domain_radius <= 0) throw DomainError("make_holo: domain_radius <= 0");
  HoloData d;
  d.tau = tau;
  d.phi_exprs = phi_exprs;
  d.domain_radius = domain_radius;
  d.reality = reality;
  d.global_domain = true;  // expression densities are closed forms
  switch (tau.kind) {
    case TauKind::Linear:
    case TauKind::RationalD2:
      d.tau_fn = [](cx z) { return -z; };
      break;
    case TauKind::TauC: {
      double rad = tau_c_radius(tau.c);
      d.domain_radius = std::min(domain_radius, rad);
      cx c = tau.c;
      d.tau_fn = [c, rad](cx z) { return tau_c(c, z, rad); };
      break;
    }
  }
  auto e1 = phi_exprs[0], e2 = phi_exprs[1];
  if (!e1 || !e2) throw DomainError("make_holo: missing phi expressions");
  d.phi = [e1, e2](cx z) -> std::array<cx, 2> {
    return {eval(e1, z), eval(e2, z)};
  };
  return d;
}

HoloData make_holo_rational_d2(std::array<ExprPtr, 2> lambda_exprs,
                               double domain_radius, bool reality) {
  if (!lambda_exprs[0] || !lambda_exprs[1])
    throw DomainError("make_holo_rational_d2: missing lambda expressions");
  // phi_i(z) = sqrt(lambda_i(z^2)), taken in the odd single-valued branch.
  // We realize it by extracting the Laurent coefficients of lambda_i(z^2)
  // and solving h^2 = lambda_i(z^2) for a Laurent polynomial h; the leading
  // order must be odd. Densities outside this class are rejected.
  const int K = 32;  // orders -2K..2K in z
  std::array<std::vector<cx>, 2> h_coef;  // h_coef[i][k] ~ z^{k - K}
  for (int i = 0; i < 2; ++i) {
    ExprPtr le = lambda_exprs[i];
    auto G = [le](cx z) { return eval(le, z * z); };
    double rho = 1.0;
    std::vector<cx> g(4 * K + 1);
    double gmax = 0.0;
    for (int k = -2 * K; k <= 2 * K; ++k) {
      g[k + 2 * K] = laurent_coeff(G, k, rho);
      gmax = std::max(gmax, std::abs(g[k + 2 * K]));
    }
    if (gmax < kTiny) throw BranchError("rational density vanishes");
    double tol = 1e-9 * gmax;
    int lo = -2 * K, hi = 2 * K;
    while (hi > lo && std::abs(g[hi + 2 * K]) < tol) --hi;
    while (lo < hi && std::abs(g[lo + 2 * K]) < tol) ++lo;
    if (std::abs(g[hi + 2 * K]) < tol)
      throw BranchError("rational density vanishes");
    if (hi % 2 != 0 || lo % 2 != 0 || (hi / 2) % 2 == 0)
      throw BranchError("rational density lacks an odd leading term");
    int b = hi / 2, a = lo / 2;  // h supported on orders a..b
    std::vector<cx> h(2 * K + 1, cx{0, 0});
    h[b + K] = std::sqrt(g[hi + 2 * K]);
    for (int j = 1; j <= b - a; ++j) {
      cx acc = (2 * b - j >= lo) ? g[2 * b - j + 2 * K] : cx{0, 0};
      for (int m = 1; m < j; ++m) acc -= h[b - m + K] * h[b - j + m + K];
      h[b - j + K] = acc / (2.0 * h[b + K]);
    }
    // verify h^2 reproduces lambda(z^2) on a sample circle
    for (int k = 0; k < 16; ++k) {
      double th = 2.0 * kPi * (k + 0.31) / 16.0;
      cx z = 0.8 * cx{std::cos(th), std::sin(th)};
      cx hz{0, 0};
      for (int m = a; m <= b; ++m) hz += h[m + K] * std::pow(z, m);
      if (std::abs(hz * hz - G(z)) > 1e-7 * std::max(1.0, gmax))
        throw BranchError(
            "rational density is not a Laurent-polynomial square root");
    }
    h_coef[i] = std::move(h);
  }
  HoloData d;
  d.tau.kind = TauKind::RationalD2;
  d.lambda_exprs = lambda_exprs;
  d.domain_radius = domain_radius;
  d.reality = reality;
  d.global_domain = true;
  d.tau_fn = [](cx z) { return -z; };
  auto c0 = h_coef[0], c1 = h_coef[1];
  d.phi = [c0, c1, K](cx z) -> std::array<cx, 2> {
    if (std::abs(z) < kTiny) throw DomainError("phi at 0");
    std::array<cx, 2> out{cx{0, 0}, cx{0, 0}};
    for (int m = -K; m <= K; ++m) {
      cx zm = std::pow(z, m);
      if (std::abs(c0[m + K]) > 0) out[0] += c0[m + K] * zm;
      if (std::abs(c1[m + K]) > 0) out[1] += c1[m + K] * zm;
    }
    return out;
  };
  return d;
}

bool is_reality_compatible(const HoloData& data, double tol) {
  double rho = 0.85 * std::min(1.0, data.domain_radius);
  try {
    for (int k = 0; k < 16; ++k) {
      double th = 2.0 * kPi * (k + 0.17) / 16.0;
      cx z = rho * cx{std::cos(th), std::sin(th)};
      auto a = data.phi_at(gamma_map(z));
      auto b = data.phi_at(z);
      double scale = std::max({1.0, std::abs(b[0]), std::abs(b[1])});
      if (std::abs(a[0] - std::conj(b[0])) > tol * scale ||
          std::abs(a[1] - std::conj(b[1])) > tol * scale)
        return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

HoloData reality_complete(const HoloData& data) {
  if (!data.reality || is_reality_compatible(data)) return data;
  HoloData d = data;
  PhiFn base = data.phi;
  d.phi = [base](cx z) -> std::array<cx, 2> {
    auto a = base(z);
    auto b = base(gamma_map(z));
    return {a[0] + std::conj(b[0]), a[1] + std::conj(b[1])};
  };
  return d;
}

std::array<cx, 2> phi_linear_coeff(const HoloData& data, double radius) {
  double rho = radius > 0 ? radius : 0.3 * data.domain_radius;
  Contour c{cx{0, 0}, rho, 256};
  std::array<cx, 2> out;
  for (int i = 0; i < 2; ++i) {
    out[i] = contour_integrate(
                 [&](cx z) { return data.phi_at(z)[i] / (z * z); }, c) /
             (2.0 * kPi * kI);
  }
  return out;
}

ValidationReport validate(const HoloData& data) {
  ValidationReport rep;
  double R = data.domain_radius;
  const double radii[3] = {0.35 * R, 0.55 * R, 0.8 * R};

  // tau: involution, fixes 0, tau'(0) = -1
  try {
    double worst = 0.0;
    for (double rho : radii) {
      for (int k = 0; k < 16; ++k) {
        double th = 2.0 * kPi * (k + 0.29) / 16.0;
        cx z = rho * cx{std::cos(th), std::sin(th)};
        cx w = data.tau_at(z);
        worst = std::max(worst, std::abs(data.tau_at(w) - z));
      }
    }
    double h = 0.01 * R;
    cx tp = (8.0 * (data.tau_at(cx{h, 0}) - data.tau_at(cx{-h, 0})) -
             (data.tau_at(cx{2 * h, 0}) - data.tau_at(cx{-2 * h, 0}))) /
            (12.0 * h);
    worst = std::max(worst, std::abs(tp + cx{1, 0}));
    rep.tau_residual = worst;
    rep.tau_ok = worst < 1e-8;
  } catch (const Error&) {
    rep.tau_ok = false;
    rep.tau_residual = std::numeric_limits<double>::infinity();
  }

  // oddness phi(tau(z)) = -phi(z)
  try {
    double worst = 0.0;
    for (double rho : radii) {
      for (int k = 0; k < 64; ++k) {
        double th = 2.0 * kPi * (k + 0.41) / 64.0;
        cx z = rho * cx{std::cos(th), std::sin(th)};
        auto a = data.phi_at(data.tau_at(z));
        auto b = data.phi_at(z);
        worst = std::max({worst, std::abs(a[0] + b[0]), std::abs(a[1] + b[1])});
      }
    }
    rep.odd_residual = worst;
    rep.odd_ok = worst < 1e-10;
  } catch (const Error&) {
    rep.odd_ok = false;
    rep.odd_residual = std::numeric_limits<double>::infinity();
  }

  // independence of phi'(0) and its conjugate
  try {
    auto a1 = phi_linear_coeff(data);
    cx det = a1[0] * std::conj(a1[1]) - a1[1] * std::conj(a1[0]);
    rep.det_abs = std::abs(det);
    rep.independent_ok = rep.det_abs > 1e-10;
  } catch (const Error&) {
    rep.independent_ok = false;
  }

  // reality: phi(-1/conj z) = conj(phi(z)), after the completion step the
  // metric pipelines apply
  if (data.reality) {
    try {
      HoloData d = reality_complete(data);
      double worst = 0.0;
      for (double rho : {0.85, 0.7}) {
        for (int k = 0; k < 32; ++k) {
          double th = 2.0 * kPi * (k + 0.13) / 32.0;
          cx z = rho * cx{std::cos(th), std::sin(th)};
          auto a = d.phi_at(gamma_map(z));
          auto b = d.phi_at(z);
          worst = std::max({worst, std::abs(a[0] - std::conj(b[0])),
                            std::abs(a[1] - std::conj(b[1]))});
        }
      }
      rep.reality_residual = worst;
      rep.reality_ok = worst < 1e-8;
    } catch (const Error&) {
      rep.reality_ok = false;
      rep.reality_residual = std::numeric_limits<double>::infinity();
    }
  }
  return rep;
}

cx beta_residue(const BetaForm& b) {
  cx lam = b.lambda();
  cx d = b.mu - lam;
  if (std::abs(d) < 1e-14 * std::max(1.0, std::abs(b.mu)))
    throw DegeneratePoles("beta_residue: lambda == mu");
  return -b.scale * (b.mu + lam) / (d * d * d);
}

HoloData gauge_rotate(const HoloData& data, double theta) {
  cx rot{std::cos(theta), std::sin(theta)};
  HoloData d = data;
  PhiFn base = data.phi;
  d.phi = [base, rot](cx z) { return base(rot * z); };
  auto tf = data.tau_fn;
  d.tau_fn = [tf, rot](cx z) { return tf(rot * z) / rot; };
  return d;
}

cx fs_lambda(cx p, cx z) {
  cx den = (z - p) * (z + cx{1, 0});
  if (std::abs(den) < kTiny) throw DomainError("fs_lambda: pole");
  return (z + p) * (z - cx{1, 0}) / den;
}

HoloData fubini_study_data(cx p1, cx p2) {
  auto bad = [](cx p) {
    return std::abs(std::abs(p) - 1.0) > 1e-9 ||
           std::abs(p - cx{1, 0}) < 1e-9 || std::abs(p + cx{1, 0}) < 1e-9;
  };
  if (bad(p1) || bad(p2) || std::abs(p1 - p2) < 1e-9)
    throw DegenerateExample("fubini_study_data: p1, p2 must be distinct unit "
                            "parameters away from +-1");
  // phi_i = -i log lambda_i with phi(0) = 0 inside the disc and
  // phi(infinity) = 0 outside; each log argument stays in the right
  // half-plane, so principal logs give the continuous branch directly.
  auto comp = [](cx p, cx z) -> cx {
    cx one{1, 0};
    if (std::abs(z) <= 1.0) {
      return -kI * (std::log(one + z / p) + std::log(one - z) -
                    std::log(one - z / p) - std::log(one + z));
    }
    return -kI * (std::log(one + p / z) + std::log(one - one / z) -
                  std::log(one - p / z) - std::log(one + one / z));
  };
  HoloData d;
  d.tau.kind = TauKind::Linear;
  d.tau_fn = [](cx z) { return -z; };
  d.domain_radius = 1.0;
  d.reality = true;
  d.global_domain = true;
  d.phi = [p1, p2, comp](cx z) -> std::array<cx, 2> {
    return {comp(p1, z), comp(p2, z)};
  };
  return d;
}

}  // namespace forge

#include "forge/joyce.hpp"

#include <cmath>

#include "forge/branch.hpp"
#include "forge/errors.hpp"
#include "forge/so_engine.hpp"

namespace forge {

namespace {

// 4th-order central first derivative, Richardson-extrapolated once.
double d1(const std::function<double(double)>& f, double t, double h) {
  auto stencil = [&](double hh) {
    return (8.0 * (f(t + hh) - f(t - hh)) - (f(t + 2 * hh) - f(t - 2 * hh))) /
           (12.0 * hh);
  };
  double a = stencil(h), b = stencil(0.5 * h);
  return (16.0 * b - a) / 15.0;
}

double d2(const std::function<double(double)>& f, double t, double h) {
  auto stencil = [&](double hh) {
    return (-(f(t + 2 * hh) + f(t - 2 * hh)) + 16.0 * (f(t + hh) + f(t - hh)) -
            30.0 * f(t)) /
           (12.0 * hh * hh);
  };
  double a = stencil(h), b = stencil(0.5 * h);
  return (16.0 * b - a) / 15.0;
}

double ystep(double base, double y) {
  if (y <= 0) throw AxisError("stencil touches y <= 0");
  return std::min(base, 0.2 * y);
}

}  // namespace

cx bridge_r(cx zeta) { return (zeta - kI) / (zeta + kI); }
cx bridge_s(cx xi) { return (xi - kI) / (xi + kI); }
cx bridge_r_zeta(cx zeta) {
  cx d = zeta + kI;
  return 2.0 * kI / (d * d);
}
cx bridge_s_xi(cx xi) {
  cx d = xi + kI;
  return 2.0 * kI / (d * d);
}
cx bridge_lambda(cx zeta, cx xi) {
  return std::sqrt((zeta + kI) / (xi + kI));
}

FPrimePair bridge_F_from_G(const HoloData& data, cx zeta, cx xi) {
  cx r = bridge_r(zeta), s = bridge_s(xi);
  ABPair ab = compute_AB(data, r, s);
  cx lam = bridge_lambda(zeta, xi);
  cx rz = bridge_r_zeta(zeta), sx = bridge_s_xi(xi);
  FPrimePair fp;
  for (int i = 0; i < 2; ++i) {
    fp.Fz[i] = lam * ab.A[i] * rz;
    fp.Fx[i] = ab.B[i] * sx / lam;
  }
  return fp;
}

std::array<double, 2> JoyceField::P(double x, double y) const {
  double h = fd_step * std::max(1.0, std::abs(x));
  std::array<double, 2> out;
  for (int i = 0; i < 2; ++i)
    out[i] = -y * d1([&](double t) { return F(t, y)[i]; }, x, h);
  return out;
}

std::array<double, 2> JoyceField::Q(double x, double y) const {
  double h = ystep(fd_step * std::max(1.0, y), y);
  std::array<double, 2> out;
  for (int i = 0; i < 2; ++i)
    out[i] = y * d1([&](double t) { return F(x, t)[i]; }, y, h);
  return out;
}

std::array<double, 2> ash_residual_at(const JoyceField& f, double x, double y) {
  double hx = f.fd_step * std::max(1.0, std::abs(x));
  double hy = ystep(f.fd_step * std::max(1.0, y), y);
  std::array<double, 2> out;
  for (int i = 0; i < 2; ++i) {
    double fxx = d2([&](double t) { return f.F(t, y)[i]; }, x, hx);
    double fyy = d2([&](double t) { return f.F(x, t)[i]; }, y, hy);
    double fy = d1([&](double t) { return f.F(x, t)[i]; }, y, hy);
    out[i] = fxx + fyy + fy / y;
  }
  return out;
}

std::array<double, 4> joyce_residual_at(const JoyceField& f, double x,
                                        double y) {
  // outer differences of quantities that are themselves differenced; a
  // larger step keeps the nesting stable
  double hx = 10.0 * f.fd_step * std::max(1.0, std::abs(x));
  double hy = ystep(10.0 * f.fd_step * std::max(1.0, y), y);
  std::array<double, 4> out;
  auto P = [&](double a, double b) { return f.P(a, b); };
  auto Q = [&](double a, double b) { return f.Q(a, b); };
  for (int i = 0; i < 2; ++i) {
    double px = d1([&](double t) { return P(t, y)[i]; }, x, hx);
    double py = d1([&](double t) { return P(x, t)[i]; }, y, hy);
    double qx = d1([&](double t) { return Q(t, y)[i]; }, x, hx);
    double qy = d1([&](double t) { return Q(x, t)[i]; }, y, hy);
    out[i] = px - qy;
    out[2 + i] = py + qx - P(x, y)[i] / y;
  }
  return out;
}

RealityReport reality_check(const HoloData& data, const std::vector<cx>& zetas) {
  if (!data.reality) throw DomainError("reality_check: data is not real");
  HoloData d = reality_complete(data);
  RealityReport rep;
  for (cx zeta : zetas) {
    cx xi = std::conj(zeta);
    cx r = bridge_r(zeta), s = bridge_s(xi);
    ABPair ab = compute_AB(d, r, s);
    cx kappa = r / std::abs(r);
    double scale = std::max({1.0, std::abs(ab.A[0]), std::abs(ab.A[1])});
    for (int i = 0; i < 2; ++i) {
      double res = std::abs(std::conj(ab.A[i]) + s * kappa * ab.B[i]) / scale;
      rep.g_residual = std::max(rep.g_residual, res);
    }
    FPrimePair fp = bridge_F_from_G(d, zeta, xi);
    double fscale = std::max({1.0, std::abs(fp.Fz[0]), std::abs(fp.Fz[1])});
    for (int i = 0; i < 2; ++i) {
      double res = std::abs(fp.Fx[i] - std::conj(fp.Fz[i])) / fscale;
      rep.f_residual = std::max(rep.f_residual, res);
    }
  }
  return rep;
}

std::array<cx, 2> psi_forward(const std::array<ExprPtr, 2>& psi, cx zeta,
                              cx xi, const Contour& c) {
  if (std::abs(zeta - c.center) >= 0.99 * c.radius ||
      std::abs(xi - c.center) >= 0.99 * c.radius)
    throw GeometryError("psi_forward: arguments must lie inside the contour");
  BranchTrack w = branch_sqrt_track(
      [&](cx u) { return (u - zeta) * (u - xi); }, c);
  std::array<cx, 2> out{cx{0, 0}, cx{0, 0}};
  for (int i = 0; i < 2; ++i) {
    std::vector<cx> samples(c.n);
    for (std::size_t k = 0; k < c.n; ++k)
      samples[k] = eval(psi[i], c.node(k)) / w.values[k];
    out[i] = contour_integrate(samples, c);
  }
  return out;
}

}  // namespace forge

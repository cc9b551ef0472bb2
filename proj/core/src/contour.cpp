#include "forge/contour.hpp"

#include <cmath>

#include "forge/errors.hpp"

namespace forge {

bool is_finite(cx v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

cx contour_integrate(const std::vector<cx>& samples, const Contour& c) {
  if (samples.size() != c.n)
    throw NumericalError("contour_integrate: sample count mismatch");
  cx acc{0, 0};
  for (std::size_t k = 0; k < c.n; ++k) {
    if (!is_finite(samples[k]))
      throw NumericalError("contour_integrate: non-finite sample");
    acc += samples[k] * c.dnode(k);
  }
  acc *= 2.0 * kPi / double(c.n);
  if (!is_finite(acc)) throw NumericalError("contour_integrate: non-finite result");
  return acc;
}

cx contour_integrate(const std::function<cx(cx)>& f, const Contour& c) {
  std::vector<cx> samples(c.n);
  for (std::size_t k = 0; k < c.n; ++k) samples[k] = f(c.node(k));
  return contour_integrate(samples, c);
}

cx contour_integrate_adaptive(const std::function<cx(cx)>& f, Contour c,
                              double tol) {
  if (c.n < 8) c.n = 8;
  cx prev = contour_integrate(f, c);
  while (c.n < (1u << 16)) {
    c.n *= 2;
    cx cur = contour_integrate(f, c);
    double scale = std::max(1.0, std::abs(cur));
    if (std::abs(cur - prev) <= tol * scale) return cur;
    prev = cur;
  }
  throw ResolutionError("contour_integrate_adaptive: no convergence at n=2^16");
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

cx path_integrate(const std::function<cx(cx)>& f, cx z0, cx z1, int panels,
                  int order) {
  std::vector<double> xs, ws;
  gauss_legendre(order, xs, ws);
  cx acc{0, 0};
  cx step = (z1 - z0) / double(panels);
  for (int p = 0; p < panels; ++p) {
    cx a = z0 + step * double(p);
    for (int k = 0; k < order; ++k) {
      cx t = a + step * (0.5 * (xs[k] + 1.0));
      acc += ws[k] * 0.5 * step * f(t);
    }
  }
  if (!is_finite(acc)) throw NumericalError("path_integrate: non-finite result");
  return acc;
}

}  // namespace forge

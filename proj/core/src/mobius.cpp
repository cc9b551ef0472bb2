#include "forge/mobius.hpp"

#include <cmath>

#include "forge/errors.hpp"

namespace forge {

namespace {
void check_regular(const Mobius& m) {
  double scale = std::abs(m.a) + std::abs(m.b) + std::abs(m.c) + std::abs(m.d);
  if (std::abs(m.det()) < 1e-14 * scale * scale)
    throw DegeneratePoles("mobius: ad - bc is numerically zero");
}
}  // namespace

XComplex mobius_apply(const Mobius& m, const XComplex& z) {
  check_regular(m);
  if (z.inf) {
    if (std::abs(m.c) == 0.0) return XComplex::infinity();
    return XComplex::of(m.a / m.c);
  }
  cx num = m.a * z.v + m.b;
  cx den = m.c * z.v + m.d;
  double scale = std::max({std::abs(m.c) * std::abs(z.v), std::abs(m.d), 1e-300});
  if (std::abs(den) < 1e-15 * scale) return XComplex::infinity();
  return XComplex::of(num / den);
}

cx mobius_apply_finite(const Mobius& m, cx z) {
  XComplex w = mobius_apply(m, XComplex::of(z));
  if (w.inf) throw OutOfDomain("mobius_apply_finite: image is the point at infinity");
  return w.v;
}

cx mobius_derivative(const Mobius& m, cx z) {
  check_regular(m);
  cx den = m.c * z + m.d;
  if (std::abs(den) == 0.0)
    throw OutOfDomain("mobius_derivative: pole of the map");
  return m.det() / (den * den);
}

}  // namespace forge

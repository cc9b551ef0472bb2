#pragma once

#include <complex>
#include <optional>

#include "forge/contour.hpp"

namespace forge {

// Point of the Riemann sphere: finite value or the point at infinity.
struct XComplex {
  cx v{0.0, 0.0};
  bool inf = false;

  static XComplex infinity() { return XComplex{cx{0, 0}, true}; }
  static XComplex of(cx z) { return XComplex{z, false}; }
};

// z -> (a z + b) / (c z + d), ad - bc != 0.
struct Mobius {
  cx a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

  cx det() const { return a * d - b * c; }
  Mobius inverse() const { return Mobius{d, -b, -c, a}; }
  Mobius compose(const Mobius& o) const {  // this after o
    return Mobius{a * o.a + b * o.c, a * o.b + b * o.d,
                  c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

// Apply with correct handling of the point at infinity.
// Throws DegeneratePoles if the map is singular (|ad - bc| ~ 0).
XComplex mobius_apply(const Mobius& m, const XComplex& z);
cx mobius_apply_finite(const Mobius& m, cx z);  // throws OutOfDomain if image is inf

// The cross-ratio identity f'(z) f'(w) = ((f(z) - f(w)) / (z - w))^2 holds
// for every Mobius f; mobius_derivative supports testing it.
cx mobius_derivative(const Mobius& m, cx z);

}  // namespace forge

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace forge {

using cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const cx kI{0.0, 1.0};

// Uniformly sampled circle. Trapezoid quadrature on such nodes converges
// spectrally for integrands analytic in a neighbourhood of the circle.
struct Contour {
  cx center{0.0, 0.0};
  double radius = 1.0;
  std::size_t n = 256;  // node count, power of two >= 8

  cx node(std::size_t k) const {
    double th = 2.0 * kPi * double(k) / double(n);
    return center + radius * cx{std::cos(th), std::sin(th)};
  }
  // dz at node k for unit parameter weight 2*pi/n.
  cx dnode(std::size_t k) const {
    double th = 2.0 * kPi * double(k) / double(n);
    return kI * radius * cx{std::cos(th), std::sin(th)};
  }
};

// Trapezoid rule for \oint f dz given samples at contour nodes.
// Throws NumericalError if any sample or the result is not finite.
cx contour_integrate(const std::vector<cx>& samples, const Contour& c);

// Convenience: sample `f` on the contour and integrate.
cx contour_integrate(const std::function<cx(cx)>& f, const Contour& c);

// Adaptive variant: doubles the node count (starting from c.n) until two
// successive refinements agree to `tol` (absolute + relative), up to
// n = 2^16. Throws ResolutionError if the cap is reached.
cx contour_integrate_adaptive(const std::function<cx(cx)>& f, Contour c,
                              double tol = 1e-12);

bool is_finite(cx v);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// \int_{z0}^{z1} f dz along the straight segment, composite Gauss-Legendre
// (`panels` panels of `order` nodes each).
cx path_integrate(const std::function<cx(cx)>& f, cx z0, cx z1,
                  int panels = 8, int order = 16);

}  // namespace forge

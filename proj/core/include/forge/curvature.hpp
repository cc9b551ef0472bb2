#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace forge {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Real metric evaluator on a 4-chart.
using MetricFn = std::function<Mat4(const Vec4&)>;

// Vector field evaluator.
using VectorFn = std::function<Vec4(const Vec4&)>;

double det4(const Mat4& m);
Mat4 inverse4(const Mat4& m);
// Eigenvalues of a symmetric matrix by Jacobi rotations, ascending.
Vec4 sym_eigenvalues(const Mat4& m);

// Gamma[a][b][c] = Gamma^a_{bc}, from 4th-order finite differences of g
// (Richardson-extrapolated). Throws NearSingularMetric when the condition
// number of g exceeds 1e10.
using Christoffel = std::array<std::array<std::array<double, 4>, 4>, 4>;
Christoffel christoffel(const MetricFn& g, const Vec4& x, double h = 1e-3);

using Tensor4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

// Fully lowered Riemann tensor from second derivatives of g:
// R_abcd = (d_b d_c g_ad + d_a d_d g_bc - d_b d_d g_ac - d_a d_c g_bd)/2
//          + g_ef (G^e_bc G^f_ad - G^e_bd G^f_ac).
Tensor4 riemann_lower(const MetricFn& g, const Vec4& x, double h = 1e-3);

struct PointCurvature {
  double norm_w = 0, norm_wp = 0, norm_wm = 0;  // |W|, |W+|, |W-|
  double ricci_scalar = 0;
  int signature_pos = 0, signature_neg = 0;
};

// Weyl tensor, split into self-dual and anti-self-dual parts with respect
// to the coordinate-order volume form times `orientation`. Norms are fully
// metric-contracted, so |W|^2 = |W+|^2 + |W-|^2.
PointCurvature weyl_split(const MetricFn& g, const Vec4& x,
                          int orientation = +1, double h = 1e-3);

// |L_X g - (tr L_X g / 4) g| with metric-contracted norm.
double conformal_killing_residual(const MetricFn& g, const VectorFn& X,
                                  const Vec4& x, double h = 1e-3);

struct CurvatureReport {
  std::vector<Vec4> points;
  std::vector<PointCurvature> values;
  std::string vanishing_side = "none";  // "plus", "minus", or "none"
  double max_vanish_ratio = 0;          // max over points of min side / |W|
  bool signature_consistent = true;
};

// Evaluates weyl_split over the points and aggregates the verdict; the
// vanishing side must be the same at every point or it is reported as
// "none".
CurvatureReport assess_asd(const MetricFn& g, const std::vector<Vec4>& pts,
                           double vanish_tol = 1e-4, double h = 1e-3);

}  // namespace forge

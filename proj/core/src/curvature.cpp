#include "forge/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "forge/errors.hpp"

namespace forge {

namespace {

// stencil grids revisit points; quadrature-backed metrics are costly
MetricFn memoized(const MetricFn& g) {
  auto cache = std::make_shared<std::map<Vec4, Mat4>>();
  return [g, cache](const Vec4& x) -> Mat4 {
    auto it = cache->find(x);
    if (it != cache->end()) return it->second;
    Mat4 v = g(x);
    cache->emplace(x, v);
    return v;
  };
}

// 4th-order central differences with one Richardson pass
double d1(const std::function<double(double)>& f, double t, double h) {
  auto st = [&](double hh) {
    return (8 * (f(t + hh) - f(t - hh)) - (f(t + 2 * hh) - f(t - 2 * hh))) /
           (12 * hh);
  };
  double a = st(h), b = st(0.5 * h);
  return (16 * b - a) / 15;
}

double d2s(const std::function<double(double)>& f, double t, double h) {
  auto st = [&](double hh) {
    return (-(f(t + 2 * hh) + f(t - 2 * hh)) + 16 * (f(t + hh) + f(t - hh)) -
            30 * f(t)) /
           (12 * hh * hh);
  };
  double a = st(h), b = st(0.5 * h);
  return (16 * b - a) / 15;
}

// dg[k][a][b] = d g_ab / d x_k
using DMetric = std::array<Mat4, 4>;

DMetric metric_d1(const MetricFn& g, const Vec4& x, double h) {
  DMetric dg{};
  for (int k = 0; k < 4; ++k) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a; b < 4; ++b) {
        auto f = [&](double t) {
          Vec4 y = x;
          y[k] = t;
          return g(y)[a][b];
        };
        dg[k][a][b] = dg[k][b][a] = d1(f, x[k], h);
      }
    }
  }
  return dg;
}

// ddg[j][k][a][b] = d^2 g_ab / dx_j dx_k
std::array<DMetric, 4> metric_d2(const MetricFn& g, const Vec4& x, double h) {
  std::array<DMetric, 4> dd{};
  for (int j = 0; j < 4; ++j) {
    for (int k = j; k < 4; ++k) {
      for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
          double v;
          if (j == k) {
            auto f = [&](double t) {
              Vec4 y = x;
              y[j] = t;
              return g(y)[a][b];
            };
            v = d2s(f, x[j], h);
          } else {
            auto f = [&](double t) {
              Vec4 y = x;
              y[j] = t;
              auto inner = [&](double u) {
                Vec4 w = y;
                w[k] = u;
                return g(w)[a][b];
              };
              return d1(inner, x[k], h);
            };
            v = d1(f, x[j], h);
          }
          dd[j][k][a][b] = dd[j][k][b][a] = v;
          dd[k][j][a][b] = dd[k][j][b][a] = v;
        }
      }
    }
  }
  return dd;
}

Christoffel christoffel_from(const Mat4& ginv, const DMetric& dg) {
  Christoffel G{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        double acc = 0;
        for (int d = 0; d < 4; ++d)
          acc += ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        G[a][b][c] = G[a][c][b] = 0.5 * acc;
      }
  return G;
}

void check_condition(const Mat4& gx) {
  Vec4 ev = sym_eigenvalues(gx);
  double lo = std::abs(ev[0]), hi = std::abs(ev[0]);
  for (double e : ev) {
    lo = std::min(lo, std::abs(e));
    hi = std::max(hi, std::abs(e));
  }
  if (lo <= 0 || hi / lo > 1e10)
    throw NearSingularMetric("metric condition number too large");
}

int pair_index(int a, int b, int& sign) {
  // basis [01],[02],[03],[23],[31],[12]
  static const int idx[4][4] = {{-1, 0, 1, 2},
                                {0, -1, 5, 4},
                                {1, 5, -1, 3},
                                {2, 4, 3, -1}};
  static const int sgn[4][4] = {{0, 1, 1, 1},
                                {-1, 0, 1, -1},
                                {-1, -1, 0, 1},
                                {-1, 1, -1, 0}};
  sign = sgn[a][b];
  return idx[a][b];
}

const int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

double levi_civita(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  double s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) {
        std::swap(p[i], p[j]);
        s = -s;
      }
    }
  return s;
}

double tensor_norm2(const Tensor4& t, const Mat4& ginv) {
  // T_abcd T^abcd
  double acc = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double up = 0;
          for (int e = 0; e < 4; ++e)
            for (int f = 0; f < 4; ++f)
              for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                  up += ginv[a][e] * ginv[b][f] * ginv[c][m] * ginv[d][n] *
                        t[e][f][m][n];
          acc += t[a][b][c][d] * up;
        }
  return acc;
}

}  // namespace

double det4(const Mat4& m) {
  // LU with partial pivoting
  Mat4 a = m;
  double det = 1;
  for (int i = 0; i < 4; ++i) {
    int p = i;
    for (int r = i + 1; r < 4; ++r)
      if (std::abs(a[r][i]) > std::abs(a[p][i])) p = r;
    if (p != i) {
      std::swap(a[p], a[i]);
      det = -det;
    }
    if (a[i][i] == 0) return 0;
    det *= a[i][i];
    for (int r = i + 1; r < 4; ++r) {
      double f = a[r][i] / a[i][i];
      for (int c2 = i; c2 < 4; ++c2) a[r][c2] -= f * a[i][c2];
    }
  }
  return det;
}

Mat4 inverse4(const Mat4& m) {
  // Gauss-Jordan
  double a[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      a[i][j] = m[i][j];
      a[i][4 + j] = (i == j) ? 1.0 : 0.0;
    }
  for (int i = 0; i < 4; ++i) {
    int p = i;
    for (int r = i + 1; r < 4; ++r)
      if (std::abs(a[r][i]) > std::abs(a[p][i])) p = r;
    if (std::abs(a[p][i]) < 1e-300)
      throw NearSingularMetric("inverse4: singular matrix");
    if (p != i)
      for (int c2 = 0; c2 < 8; ++c2) std::swap(a[p][c2], a[i][c2]);
    double piv = a[i][i];
    for (int c2 = 0; c2 < 8; ++c2) a[i][c2] /= piv;
    for (int r = 0; r < 4; ++r) {
      if (r == i) continue;
      double f = a[r][i];
      for (int c2 = 0; c2 < 8; ++c2) a[r][c2] -= f * a[i][c2];
    }
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = a[i][4 + j];
  return out;
}

Vec4 sym_eigenvalues(const Mat4& m) {
  Mat4 a = m;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-28) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) < 1e-30) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < 4; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  Vec4 ev{a[0][0], a[1][1], a[2][2], a[3][3]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

Christoffel christoffel(const MetricFn& g0, const Vec4& x, double h) {
  MetricFn g = memoized(g0);
  Mat4 gx = g(x);
  check_condition(gx);
  return christoffel_from(inverse4(gx), metric_d1(g, x, h));
}

Tensor4 riemann_lower(const MetricFn& g0, const Vec4& x, double h) {
  MetricFn g = memoized(g0);
  Mat4 gx = g(x);
  check_condition(gx);
  Mat4 ginv = inverse4(gx);
  DMetric dg = metric_d1(g, x, h);
  auto dd = metric_d2(g, x, h);
  Christoffel G = christoffel_from(ginv, dg);
  Tensor4 R{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.5 * (dd[b][c][a][d] + dd[a][d][b][c] -
                            dd[b][d][a][c] - dd[a][c][b][d]);
          for (int e = 0; e < 4; ++e)
            for (int f = 0; f < 4; ++f)
              v += gx[e][f] *
                   (G[e][b][c] * G[f][a][d] - G[e][b][d] * G[f][a][c]);
          R[a][b][c][d] = v;
        }
  return R;
}

PointCurvature weyl_split(const MetricFn& g0, const Vec4& x, int orientation,
                          double h) {
  MetricFn g = memoized(g0);
  Mat4 gx = g(x);
  Mat4 ginv = inverse4(gx);
  Tensor4 R = riemann_lower(g, x, h);

  // Ricci and scalar
  Mat4 ric{};
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double v = 0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) v += ginv[a][c] * R[a][b][c][d];
      ric[b][d] = v;
    }
  double scal = 0;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) scal += ginv[b][d] * ric[b][d];

  // Weyl (n = 4)
  Tensor4 C{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          C[a][b][c][d] =
              R[a][b][c][d] -
              0.5 * (gx[a][c] * ric[b][d] - gx[a][d] * ric[b][c] +
                     gx[b][d] * ric[a][c] - gx[b][c] * ric[a][d]) +
              (scal / 6.0) *
                  (gx[a][c] * gx[b][d] - gx[a][d] * gx[b][c]);
        }

  // Hodge star on the 2-form basis, S[I][J]: (*F)_I = S_IJ F_J with F over
  // unordered pairs. (*F)_ab = (sqrt|g|/2) eps_abef g^ec g^fd F_cd.
  double sg = std::sqrt(std::abs(det4(gx))) * (orientation >= 0 ? 1.0 : -1.0);
  double S[6][6] = {};
  for (int I = 0; I < 6; ++I) {
    int a = kPairs[I][0], b = kPairs[I][1];
    for (int J = 0; J < 6; ++J) {
      int c = kPairs[J][0], d = kPairs[J][1];
      double v = 0;
      for (int e = 0; e < 4; ++e)
        for (int f = 0; f < 4; ++f)
          v += levi_civita(a, b, e, f) * ginv[e][c] * ginv[f][d];
      S[I][J] = sg * v;  // both (cd) and (dc) of the unordered pair: x2, /2
    }
  }

  // Weyl as an endomorphism of 2-forms: (W F)_I = W_IJ F_J with
  // W_IJ = C_I^{~J} = C_abcd g^ce g^df at representatives.
  double Wop[6][6];
  for (int I = 0; I < 6; ++I) {
    int a = kPairs[I][0], b = kPairs[I][1];
    for (int J = 0; J < 6; ++J) {
      int c = kPairs[J][0], d = kPairs[J][1];
      double v = 0;
      for (int e = 0; e < 4; ++e)
        for (int f = 0; f < 4; ++f)
          v += C[a][b][e][f] * ginv[e][c] * ginv[f][d];
      Wop[I][J] = v;
    }
  }

  // project: W+- = P W P, P = (1 +- S)/2
  auto project = [&](double sign, double out[6][6]) {
    double P[6][6], T[6][6];
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        P[i][j] = 0.5 * ((i == j ? 1.0 : 0.0) + sign * S[i][j]);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        double v = 0;
        for (int k = 0; k < 6; ++k) v += P[i][k] * Wop[k][j];
        T[i][j] = v;
      }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        double v = 0;
        for (int k = 0; k < 6; ++k) v += T[i][k] * P[k][j];
        out[i][j] = v;
      }
  };

  // rebuild a fully lowered tensor from an operator on 2-forms and take
  // its metric norm
  auto op_norm = [&](double op[6][6]) {
    Tensor4 t{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        int sab;
        int I = pair_index(a, b, sab);
        if (I < 0) continue;
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            // lower the second pair back with g; the bracket is already
            // antisymmetric in (c, d)
            double v = 0;
            for (int K = 0; K < 6; ++K) {
              int e = kPairs[K][0], f = kPairs[K][1];
              v += op[I][K] *
                   (gx[e][c] * gx[f][d] - gx[e][d] * gx[f][c]);
            }
            t[a][b][c][d] = sab * v;
          }
      }
    return std::sqrt(std::max(0.0, tensor_norm2(t, ginv)));
  };

  double Wp[6][6], Wm[6][6];
  project(+1.0, Wp);
  project(-1.0, Wm);

  PointCurvature pc;
  pc.ricci_scalar = scal;
  pc.norm_w = std::sqrt(std::max(0.0, tensor_norm2(C, ginv)));
  pc.norm_wp = op_norm(Wp);
  pc.norm_wm = op_norm(Wm);
  Vec4 ev = sym_eigenvalues(gx);
  for (double e : ev) (e > 0 ? pc.signature_pos : pc.signature_neg)++;
  return pc;
}

double conformal_killing_residual(const MetricFn& g0, const VectorFn& X,
                                  const Vec4& x, double h) {
  MetricFn g = memoized(g0);
  Mat4 gx = g(x);
  Mat4 ginv = inverse4(gx);
  DMetric dg = metric_d1(g, x, h);
  Vec4 Xx = X(x);
  // dX[a][c] = d X^c / d x_a
  double dX[4][4];
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      auto f = [&](double t) {
        Vec4 y = x;
        y[a] = t;
        return X(y)[c];
      };
      dX[a][c] = d1(f, x[a], h);
    }
  Mat4 L{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = 0;
      for (int c = 0; c < 4; ++c)
        v += Xx[c] * dg[c][a][b] + gx[c][b] * dX[a][c] + gx[a][c] * dX[b][c];
      L[a][b] = v;
    }
  double tr = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) tr += ginv[a][b] * L[a][b];
  double acc = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double t = L[a][b] - 0.25 * tr * gx[a][b];
      double up = 0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          up += ginv[a][c] * ginv[b][d] *
                (L[c][d] - 0.25 * tr * gx[c][d]);
      acc += t * up;
    }
  return std::sqrt(std::max(0.0, acc));
}

CurvatureReport assess_asd(const MetricFn& g, const std::vector<Vec4>& pts,
                           double vanish_tol, double h) {
  CurvatureReport rep;
  rep.points = pts;
  int side = 0;  // +1 plus vanishes, -1 minus vanishes, 0 undecided
  bool consistent = true;
  int sig_pos = -1;
  for (const Vec4& x : pts) {
    PointCurvature pc = weyl_split(g, x, +1, h);
    rep.values.push_back(pc);
    if (sig_pos < 0)
      sig_pos = pc.signature_pos;
    else if (pc.signature_pos != sig_pos)
      rep.signature_consistent = false;
    if (pc.norm_w <= 0) continue;
    double rp = pc.norm_wp / pc.norm_w, rm = pc.norm_wm / pc.norm_w;
    int this_side = rp < rm ? +1 : -1;
    double ratio = std::min(rp, rm);
    rep.max_vanish_ratio = std::max(rep.max_vanish_ratio, ratio);
    if (side == 0)
      side = this_side;
    else if (side != this_side)
      consistent = false;
  }
  if (consistent && side != 0 && rep.max_vanish_ratio < vanish_tol)
    rep.vanishing_side = side > 0 ? "plus" : "minus";
  return rep;
}

}  // namespace forge

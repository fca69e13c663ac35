#ifndef APWF_LINALG_HPP_
#define APWF_LINALG_HPP_

#include <array>
#include <cmath>

// Small fixed-size tensor helpers used throughout. All tensors are stored in
// the fixed asymptotic chart coordinates; indices are plain Cartesian.

namespace apwf {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
// dg[c][a][b] = partial_c g_ab
using Ten3 = std::array<Mat3, 3>;
// ddg[c][d][a][b] = partial_c partial_d g_ab
using Ten4 = std::array<Ten3, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline Vec3& operator+=(Vec3& a, const Vec3& b) {
  a[0] += b[0];
  a[1] += b[1];
  a[2] += b[2];
  return a;
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

inline Mat3 zero_mat3() { return {{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}}; }
inline Mat3 identity_mat3() {
  return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
}

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

// v^a m_ab w^b
inline double bilinear(const Mat3& m, const Vec3& v, const Vec3& w) {
  return dot(v, mat_vec(m, w));
}

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 inverse3(const Mat3& m) {
  const double d = det3(m);
  Mat3 inv;
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
  return inv;
}

inline double frobenius_norm(const Mat3& m) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += m[a][b] * m[a][b];
  return std::sqrt(s);
}

// Symmetric 2x2 tensor in the (theta, phi) chart of the parameter sphere.
struct Sym2 {
  double tt = 0.0;  // (theta,theta)
  double tp = 0.0;  // (theta,phi)
  double pp = 0.0;  // (phi,phi)

  double det() const { return tt * pp - tp * tp; }
  Sym2 inverse() const {
    const double d = det();
    return {pp / d, -tp / d, tt / d};
  }
  double trace_against(const Sym2& inv) const {
    // inv^{ij} this_ij
    return inv.tt * tt + 2.0 * inv.tp * tp + inv.pp * pp;
  }
  // inv^{ik} inv^{jl} a_ij b_kl for symmetric a, b
  static double contract(const Sym2& inv, const Sym2& a, const Sym2& b) {
    const double a_tt = inv.tt * a.tt + inv.tp * a.tp;
    const double a_tp = inv.tt * a.tp + inv.tp * a.pp;
    const double a_pt = inv.tp * a.tt + inv.pp * a.tp;
    const double a_pp = inv.tp * a.tp + inv.pp * a.pp;
    // (inv a)^i_j (inv b)^j_i
    const double b_tt = inv.tt * b.tt + inv.tp * b.tp;
    const double b_tp = inv.tt * b.tp + inv.tp * b.pp;
    const double b_pt = inv.tp * b.tt + inv.pp * b.tp;
    const double b_pp = inv.tp * b.tp + inv.pp * b.pp;
    return a_tt * b_tt + a_tp * b_pt + a_pt * b_tp + a_pp * b_pp;
  }
};

// Least-squares line fit y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

template <typename XIt, typename YIt>
LineFit fit_line(XIt x_begin, XIt x_end, YIt y_begin) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long n = 0;
  YIt y = y_begin;
  for (XIt x = x_begin; x != x_end; ++x, ++y, ++n) {
    sx += *x;
    sy += *y;
    sxx += (*x) * (*x);
    sxy += (*x) * (*y);
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace apwf

#endif  // APWF_LINALG_HPP_

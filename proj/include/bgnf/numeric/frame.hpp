#pragma once
// Global quaternion frame of the tangent spaces of a level set and the
// frame-angle equation of the transverse linearized flow.

#include "bgnf/numeric/flow.hpp"

namespace bgnf::numeric {

/// V0 = grad H / |grad H| and V_k = A_k V0. V1, V2 span the contact
/// plane; V3 is the unit Hamiltonian vector field.
struct FrameBasis {
  std::array<Vec4, 4> v;
};

namespace detail {

inline Mat4 block_matrix(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, const Eigen::Matrix2d& c,
                         const Eigen::Matrix2d& d) {
  Mat4 m;
  m << a, b, c, d;
  return m;
}

}  // namespace detail

inline const std::array<Mat4, 3>& quaternion_matrices() {
  static const std::array<Mat4, 3> a = [] {
    Eigen::Matrix2d i2 = Eigen::Matrix2d::Identity(), z2 = Eigen::Matrix2d::Zero(), j2;
    j2 << 0, -1, 1, 0;
    return std::array<Mat4, 3>{detail::block_matrix(z2, -j2, -j2, z2), detail::block_matrix(j2, z2, z2, -j2),
                               detail::block_matrix(z2, -i2, i2, z2)};
  }();
  return a;
}

inline FrameBasis quaternion_frame(const Vec4& grad) {
  const double n = grad.norm();
  if (!(n > 0)) throw numeric_error("quaternion_frame: zero gradient");
  FrameBasis f;
  f.v[0] = grad / n;
  const auto& a = quaternion_matrices();
  for (int k = 0; k < 3; ++k) f.v[std::size_t(k + 1)] = a[std::size_t(k)] * f.v[0];
  return f;
}

/// omega0(a, b) for omega0 = dy1 ^ dx1 + dy2 ^ dx2.
inline double omega0(const Vec4& a, const Vec4& b) { return a(0) * b(2) - a(2) * b(0) + a(1) * b(3) - a(3) * b(1); }

/// Frame-projected Hessian entries (V_i, L V_j) at a point.
struct FrameHessian {
  FrameBasis frame;
  double l33 = 0;
  Eigen::Matrix2d m;
};

inline FrameHessian frame_hessian(const Evaluable& h, const Vec4& x) {
  FrameHessian fh;
  fh.frame = quaternion_frame(h.gradient(x));
  const Mat4 L = h.hessian(x);
  const auto& v = fh.frame.v;
  fh.l33 = v[3].dot(L * v[3]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) fh.m(i, j) = v[std::size_t(i + 1)].dot(L * v[std::size_t(j + 1)]);
  return fh;
}

/// theta' = (V3, L V3) + (cos, sin) [(V_i, L V_j)] (cos, sin)^T.
inline double theta_dot(const Evaluable& h, const Vec4& x, double theta) {
  FrameHessian fh = frame_hessian(h, x);
  const double c = std::cos(theta), s = std::sin(theta);
  return fh.l33 + c * c * fh.m(0, 0) + c * s * (fh.m(0, 1) + fh.m(1, 0)) + s * s * fh.m(1, 1);
}

}  // namespace bgnf::numeric

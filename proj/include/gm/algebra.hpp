#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace gm {

// Global tolerance defaults. `algebra` guards single-operation identities,
// `composite` guards identities built from several operations.
namespace tol {
inline double algebra = 1e-12;
inline double composite = 1e-10;
}  // namespace tol

template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar> using Vec8 = Eigen::Matrix<Scalar, 8, 1>;
template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

// Quaternion q = re + im[0] i + im[1] j + im[2] k.
template <typename Scalar>
struct QuaternionT {
  Scalar re{0};
  Vec3<Scalar> im{Vec3<Scalar>::Zero()};

  QuaternionT() = default;
  QuaternionT(Scalar r, const Vec3<Scalar>& v) : re(r), im(v) {}
  QuaternionT(Scalar r, Scalar x, Scalar y, Scalar z) : re(r), im(x, y, z) {}
  // Real scalar embedded as a quaternion.
  explicit QuaternionT(Scalar r) : re(r) {}

  static QuaternionT one() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(0)}; }
  static QuaternionT i() { return {Scalar(0), Scalar(1), Scalar(0), Scalar(0)}; }
  static QuaternionT j() { return {Scalar(0), Scalar(0), Scalar(1), Scalar(0)}; }
  static QuaternionT k() { return {Scalar(0), Scalar(0), Scalar(0), Scalar(1)}; }
};

using Quaternion = QuaternionT<double>;

// Purely imaginary quaternion from a 3-vector (any Eigen expression).
template <typename Derived>
QuaternionT<typename Derived::Scalar> pure(const Eigen::MatrixBase<Derived>& p) {
  using S = typename Derived::Scalar;
  return {S(0), Vec3<S>(p)};
}

template <typename S>
QuaternionT<S> operator+(const QuaternionT<S>& a, const QuaternionT<S>& b) {
  return {a.re + b.re, Vec3<S>(a.im + b.im)};
}

template <typename S>
QuaternionT<S> operator-(const QuaternionT<S>& a, const QuaternionT<S>& b) {
  return {a.re - b.re, Vec3<S>(a.im - b.im)};
}

template <typename S>
QuaternionT<S> operator-(const QuaternionT<S>& a) {
  return {-a.re, Vec3<S>(-a.im)};
}

template <typename S>
QuaternionT<S> operator*(S s, const QuaternionT<S>& a) {
  return {s * a.re, Vec3<S>(s * a.im)};
}

template <typename S>
QuaternionT<S> operator*(const QuaternionT<S>& a, S s) {
  return s * a;
}

// Hamilton product.
template <typename S>
QuaternionT<S> operator*(const QuaternionT<S>& a, const QuaternionT<S>& b) {
  return {a.re * b.re - a.im.dot(b.im),
          Vec3<S>(a.re * b.im + b.re * a.im + a.im.cross(b.im))};
}

template <typename S>
QuaternionT<S> conj(const QuaternionT<S>& a) {
  return {a.re, Vec3<S>(-a.im)};
}

template <typename S>
S squared_norm(const QuaternionT<S>& a) {
  return a.re * a.re + a.im.squaredNorm();
}

template <typename S>
S norm(const QuaternionT<S>& a) {
  return std::sqrt(squared_norm(a));
}

template <typename S>
QuaternionT<S> normalized(const QuaternionT<S>& a) {
  const S n = norm(a);
  return {a.re / n, Vec3<S>(a.im / n)};
}

template <typename S>
QuaternionT<S> inverse(const QuaternionT<S>& a) {
  const S n2 = squared_norm(a);
  return {a.re / n2, Vec3<S>(-a.im / n2)};
}

// Euclidean inner product of R^4.
template <typename S>
S dot(const QuaternionT<S>& a, const QuaternionT<S>& b) {
  return a.re * b.re + a.im.dot(b.im);
}

template <typename S>
S dist(const QuaternionT<S>& a, const QuaternionT<S>& b) {
  return norm(a - b);
}

// exp(p) for purely imaginary p: cos|p| + (p/|p|) sin|p|. A two-term
// series handles |p| below the small-angle threshold.
template <typename Derived>
QuaternionT<typename Derived::Scalar> qexp(const Eigen::MatrixBase<Derived>& p_expr) {
  using S = typename Derived::Scalar;
  const Vec3<S> p = p_expr;
  const S theta = p.norm();
  if (theta < S(1e-8)) {
    return {S(1) - theta * theta / S(2), Vec3<S>(p * (S(1) - theta * theta / S(6)))};
  }
  return {std::cos(theta), Vec3<S>(p * (std::sin(theta) / theta))};
}

// Integer powers of a unit quaternion; negative exponents via conjugate.
template <typename S>
QuaternionT<S> qpow_unit(const QuaternionT<S>& q, int e) {
  QuaternionT<S> base = e < 0 ? conj(q) : q;
  int m = e < 0 ? -e : e;
  QuaternionT<S> r = QuaternionT<S>::one();
  for (int idx = 0; idx < m; ++idx) r = r * base;
  return r;
}

// SO(3) matrix of conjugation x |-> q x conj(q) on Im H (q unit).
template <typename S>
Mat3<S> rotation_matrix(const QuaternionT<S>& q) {
  Mat3<S> r;
  const S w = q.re, x = q.im[0], y = q.im[1], z = q.im[2];
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

template <typename S>
Vec4<S> to_vec4(const QuaternionT<S>& q) {
  return {q.re, q.im[0], q.im[1], q.im[2]};
}

template <typename S>
QuaternionT<S> from_vec4(const Vec4<S>& v) {
  return {v[0], v[1], v[2], v[3]};
}

// Matrix of left multiplication x |-> q x on R^4.
template <typename S>
Mat4<S> left_mult_matrix(const QuaternionT<S>& q) {
  Mat4<S> m;
  const S w = q.re, x = q.im[0], y = q.im[1], z = q.im[2];
  m << w, -x, -y, -z,
       x,  w, -z,  y,
       y,  z,  w, -x,
       z, -y,  x,  w;
  return m;
}

// Octonion as a Cayley-Dickson pair of quaternions.
template <typename Scalar>
struct OctonionT {
  QuaternionT<Scalar> a;
  QuaternionT<Scalar> b;
};

using Octonion = OctonionT<double>;

// Cayley-Dickson product: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
template <typename S>
OctonionT<S> operator*(const OctonionT<S>& x, const OctonionT<S>& y) {
  return {x.a * y.a - conj(y.b) * x.b, y.b * x.a + x.b * conj(y.a)};
}

template <typename S>
OctonionT<S> conj(const OctonionT<S>& x) {
  return {conj(x.a), -x.b};
}

template <typename S>
S squared_norm(const OctonionT<S>& x) {
  return squared_norm(x.a) + squared_norm(x.b);
}

template <typename S>
S norm(const OctonionT<S>& x) {
  return std::sqrt(squared_norm(x));
}

// A column of H^2, e.g. u = (u1, u2) of S^7.
template <typename Scalar>
struct QuatPairT {
  QuaternionT<Scalar> first;
  QuaternionT<Scalar> second;
};

using QuatPair = QuatPairT<double>;

template <typename S>
QuatPairT<S> operator+(const QuatPairT<S>& a, const QuatPairT<S>& b) {
  return {a.first + b.first, a.second + b.second};
}

template <typename S>
QuatPairT<S> operator-(const QuatPairT<S>& a, const QuatPairT<S>& b) {
  return {a.first - b.first, a.second - b.second};
}

template <typename S>
QuatPairT<S> operator-(const QuatPairT<S>& a) {
  return {-a.first, -a.second};
}

template <typename S>
QuatPairT<S> operator*(S s, const QuatPairT<S>& a) {
  return {s * a.first, s * a.second};
}

template <typename S>
S squared_norm(const QuatPairT<S>& a) {
  return squared_norm(a.first) + squared_norm(a.second);
}

template <typename S>
S norm(const QuatPairT<S>& a) {
  return std::sqrt(squared_norm(a));
}

template <typename S>
QuatPairT<S> normalized(const QuatPairT<S>& a) {
  const S n = norm(a);
  return {(S(1) / n) * a.first, (S(1) / n) * a.second};
}

template <typename S>
S dist(const QuatPairT<S>& a, const QuatPairT<S>& b) {
  return norm(a - b);
}

// Standard quaternionic Hermitian product <<u,v>> = conj(u1) v1 + conj(u2) v2.
template <typename S>
QuaternionT<S> hermitian(const QuatPairT<S>& u, const QuatPairT<S>& v) {
  return conj(u.first) * v.first + conj(u.second) * v.second;
}

template <typename S>
OctonionT<S> as_octonion(const QuatPairT<S>& u) {
  return {u.first, u.second};
}

template <typename S>
QuatPairT<S> as_pair(const OctonionT<S>& x) {
  return {x.a, x.b};
}

template <typename S>
Vec8<S> to_vec8(const QuatPairT<S>& u) {
  Vec8<S> v;
  v << to_vec4(u.first), to_vec4(u.second);
  return v;
}

template <typename S>
QuatPairT<S> from_vec8(const Vec8<S>& v) {
  return {from_vec4(Vec4<S>(v.template head<4>())),
          from_vec4(Vec4<S>(v.template tail<4>()))};
}

}  // namespace gm

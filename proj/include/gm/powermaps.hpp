#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gm/algebra.hpp"

namespace gm {

// Suspension chart of S^7: u = (cos t + p sin t, w sin t) with p in Im H,
// w in H, |p|^2 + |w|^2 = 1, t in [0, pi]. At the poles (sin t below the
// gauge threshold) the pair (p, w) is unobservable; the canonical gauge
// (i, 0) keeps the chart total.
template <typename Scalar>
struct SuspensionCoordsT {
  Scalar t{0};
  Vec3<Scalar> p{Vec3<Scalar>::Zero()};
  QuaternionT<Scalar> w;
  bool degenerate{false};
};

using SuspensionCoords = SuspensionCoordsT<double>;

inline constexpr double kDegenerateGauge = 1e-12;

template <typename S>
void require_unit(const QuatPairT<S>& u, const char* what) {
  if (std::abs(norm(u) - S(1)) > S(1e-10)) {
    throw std::invalid_argument(std::string(what) + ": input not on the unit sphere");
  }
}

template <typename S>
SuspensionCoordsT<S> decompose(const QuatPairT<S>& u) {
  require_unit(u, "decompose");
  SuspensionCoordsT<S> sc;
  const S c = std::clamp(u.first.re, S(-1), S(1));
  sc.t = std::acos(c);
  const S st = std::sqrt(u.first.im.squaredNorm() + squared_norm(u.second));
  if (st <= S(kDegenerateGauge)) {
    sc.degenerate = true;
    sc.p = Vec3<S>(S(1), S(0), S(0));
    sc.w = QuaternionT<S>(S(0));
    return sc;
  }
  sc.p = u.first.im / st;
  sc.w = (S(1) / st) * u.second;
  return sc;
}

template <typename S>
QuatPairT<S> reconstruct(const SuspensionCoordsT<S>& sc) {
  const S ct = std::cos(sc.t), st = std::sin(sc.t);
  return {{ct, Vec3<S>(sc.p * st)}, st * sc.w};
}

// The power map rho_n of S^7: scales the suspension angle t by n.
template <typename S>
QuatPairT<S> rho(int n, const QuatPairT<S>& u) {
  const SuspensionCoordsT<S> sc = decompose(u);
  const S nt = S(n) * sc.t;
  const S c = std::cos(nt), s = std::sin(nt);
  return normalized(QuatPairT<S>{{c, Vec3<S>(sc.p * s)}, s * sc.w});
}

// Octonion n-th power of u, the independent oracle for rho. Powers of a
// single octonion live in an associative subalgebra, so repeated
// multiplication is unambiguous.
template <typename S>
QuatPairT<S> oct_power(int n, const QuatPairT<S>& u) {
  require_unit(u, "oct_power");
  OctonionT<S> base = as_octonion(u);
  if (n < 0) base = conj(base);
  int m = n < 0 ? -n : n;
  OctonionT<S> r{QuaternionT<S>::one(), QuaternionT<S>(S(0))};
  for (int idx = 0; idx < m; ++idx) r = r * base;
  return as_pair(r);
}

// A point of S^6 in Im H x H; the argument of the clutching data.
template <typename Scalar>
struct ClutchValueT {
  Vec3<Scalar> p{Vec3<Scalar>::Zero()};
  QuaternionT<Scalar> w;
};

using ClutchValue = ClutchValueT<double>;

template <typename S>
QuatPairT<S> as_pair(const ClutchValueT<S>& x) {
  return {pure(x.p), x.w};
}

template <typename S>
ClutchValueT<S> as_clutch(const QuatPairT<S>& u) {
  return {u.first.im, u.second};
}

template <typename S>
S norm(const ClutchValueT<S>& x) {
  return std::sqrt(x.p.squaredNorm() + squared_norm(x.w));
}

template <typename S>
S dist(const ClutchValueT<S>& a, const ClutchValueT<S>& b) {
  return std::sqrt((a.p - b.p).squaredNorm() + squared_norm(a.w - b.w));
}

// b(p,w) = (w/|w|) e^{pi p} (conj(w)/|w|), a generator of pi_6(S^3).
template <typename S>
QuaternionT<S> clutch_b(const ClutchValueT<S>& x) {
  const S nw = norm(x.w);
  if (nw <= S(0)) {
    throw std::domain_error("clutch_b: w = 0 is outside the domain");
  }
  const QuaternionT<S> wh = (S(1) / nw) * x.w;
  return wh * qexp(Vec3<S>(S(M_PI) * x.p)) * conj(wh);
}

namespace detail {

// sigma(p,w) = conj(b) (p,w) b, extended by the identity across w = 0.
template <typename S>
ClutchValueT<S> sigma_once(const ClutchValueT<S>& x) {
  if (norm(x.w) < S(1e-13)) return x;
  const QuaternionT<S> b = clutch_b(x);
  const QuaternionT<S> bc = conj(b);
  return {(bc * pure(x.p) * b).im, bc * x.w * b};
}

// Inverse of sigma by fixed-point iteration: y = b(y) x conj(b(y)).
template <typename S>
ClutchValueT<S> sigma_inverse(const ClutchValueT<S>& x) {
  if (norm(x.w) < S(1e-13)) return x;
  ClutchValueT<S> y = x;
  for (int it = 0; it < 200; ++it) {
    const QuaternionT<S> b = clutch_b(y);
    const ClutchValueT<S> next{(b * pure(x.p) * conj(b)).im, b * x.w * conj(b)};
    if (dist(next, y) <= S(1e-12)) return next;
    y = next;
  }
  throw std::runtime_error("sigma_inverse: fixed-point iteration did not converge in 200 steps");
}

}  // namespace detail

// n-th iterate of the exotic diffeomorphism sigma of S^6.
template <typename S>
ClutchValueT<S> sigma_pow(int n, const ClutchValueT<S>& x) {
  if (std::abs(norm(x) - S(1)) > S(1e-10)) {
    throw std::invalid_argument("sigma_pow: input not on S^6");
  }
  ClutchValueT<S> y = x;
  const int m = n < 0 ? -n : n;
  for (int idx = 0; idx < m; ++idx) {
    y = n > 0 ? detail::sigma_once(y) : detail::sigma_inverse(y);
  }
  return y;
}

namespace detail {

// Oriented orthonormal tangent frame at x on S^7: columns f1..f7 with
// det[x | f1 ... f7] > 0.
template <typename S>
Eigen::Matrix<S, 8, 7> oriented_tangent_frame(const Vec8<S>& x) {
  Eigen::Matrix<S, 8, 8> m = Eigen::Matrix<S, 8, 8>::Zero();
  m.col(0) = x;
  Eigen::HouseholderQR<Eigen::Matrix<S, 8, 8>> qr(m);
  Eigen::Matrix<S, 8, 8> q = qr.householderQ();
  if (q.col(0).dot(x) < S(0)) q = -q;
  Eigen::Matrix<S, 8, 8> full;
  full.col(0) = x;
  full.template rightCols<7>() = q.template rightCols<7>();
  if (full.determinant() < S(0)) full.col(7) = -full.col(7);
  Eigen::Matrix<S, 8, 7> frame = full.template rightCols<7>();
  return frame;
}

}  // namespace detail

// Mapping degree of rho_n at the regular value y, by analytic preimage
// enumeration (rho_n only scales the suspension angle) and signed
// finite-difference Jacobian determinants in oriented tangent frames.
template <typename S>
int degree_check(int n, const QuatPairT<S>& y, S jac_step) {
  require_unit(y, "degree_check");
  const SuspensionCoordsT<S> sy = decompose(y);
  const S st_y = std::sin(sy.t);
  if (st_y < S(1e-3)) {
    throw std::invalid_argument("degree_check: y too close to the suspension poles");
  }

  // Preimages: t' in (0,pi) with n t' = +-t_y mod 2pi and (p,w) scaled by the
  // matching sign.
  struct Preimage {
    S t;
    int sign;
  };
  std::vector<Preimage> pres;
  if (n != 0) {
    for (int eps : {+1, -1}) {
      for (int m = -std::abs(n) - 1; m <= std::abs(n) + 1; ++m) {
        const S tp = (S(eps) * sy.t + S(2) * S(M_PI) * S(m)) / S(n);
        if (tp > S(1e-9) && tp < S(M_PI) - S(1e-9)) pres.push_back({tp, eps});
      }
    }
  }

  const Eigen::Matrix<S, 8, 7> fy = detail::oriented_tangent_frame(to_vec8(y));

  int deg = 0;
  for (const Preimage& pre : pres) {
    SuspensionCoordsT<S> sc;
    sc.t = pre.t;
    sc.p = S(pre.sign) * sy.p;
    sc.w = S(pre.sign) * sy.w;
    const Vec8<S> x0 = to_vec8(normalized(reconstruct(sc)));
    const Eigen::Matrix<S, 8, 7> fx = detail::oriented_tangent_frame(x0);

    Eigen::Matrix<S, 7, 7> jac;
    for (int b = 0; b < 7; ++b) {
      const Vec8<S> xp = (x0 + jac_step * fx.col(b)).normalized();
      const Vec8<S> xm = (x0 - jac_step * fx.col(b)).normalized();
      const Vec8<S> dv =
          (to_vec8(rho(n, from_vec8(xp))) - to_vec8(rho(n, from_vec8(xm)))) / (S(2) * jac_step);
      jac.col(b) = fy.transpose() * dv;
    }
    const S det = jac.determinant();
    if (std::abs(det) < S(1e-6)) {
      throw std::runtime_error("degree_check: near-singular Jacobian, y rejected as regular value");
    }
    deg += det > S(0) ? 1 : -1;
  }
  return deg;
}

}  // namespace gm

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gm/algebra.hpp"
#include "gm/rng.hpp"

namespace gm {

// -------------------------------------------------------------------------
// Milnor bundles M^7_{k,l} with k + l = 1, glued from two H x S^3 charts.

template <typename Scalar>
struct MilnorPointT {
  int chart{1};
  QuaternionT<Scalar> u;
  QuaternionT<Scalar> v;
  int k{2};
  int l{-1};
};

using MilnorPoint = MilnorPointT<double>;

template <typename S>
S dist(const MilnorPointT<S>& a, const MilnorPointT<S>& b) {
  return std::sqrt(squared_norm(a.u - b.u) + squared_norm(a.v - b.v));
}

// Chart transition (u,v) |-> (u/|u|^2, uhat^k v uhat^l); the chart-2 to
// chart-1 direction uses the inverse exponents so the round trip is the
// identity.
template <typename S>
MilnorPointT<S> milnor_transition(const MilnorPointT<S>& x) {
  const S n2 = squared_norm(x.u);
  if (n2 < S(1e-24)) {
    throw std::domain_error("milnor_transition: u = 0 is not in the chart overlap");
  }
  MilnorPointT<S> out = x;
  out.u = (S(1) / n2) * x.u;
  const QuaternionT<S> uh = normalized(x.u);
  if (x.chart == 1) {
    out.v = qpow_unit(uh, x.k) * x.v * qpow_unit(uh, x.l);
    out.chart = 2;
  } else {
    out.v = qpow_unit(uh, -x.k) * x.v * qpow_unit(uh, -x.l);
    out.chart = 1;
  }
  return out;
}

// Element of GL(2,R) x SO(3), extended by the fiberwise v-negation
// involution. The SO(3) factor is a unit quaternion with sign ambiguity
// (conjugation is lift-independent).
template <typename Scalar>
struct MilnorGroupElementT {
  Eigen::Matrix<Scalar, 2, 2> m = Eigen::Matrix<Scalar, 2, 2>::Identity();
  QuaternionT<Scalar> q = QuaternionT<Scalar>::one();
  bool negate_v{false};
};

using MilnorGroupElement = MilnorGroupElementT<double>;

template <typename S>
MilnorGroupElementT<S> operator*(const MilnorGroupElementT<S>& g,
                                 const MilnorGroupElementT<S>& h) {
  return {g.m * h.m, g.q * h.q, g.negate_v != h.negate_v};
}

// Davis GL(2,R)-action (with the determinant sign factor) combined with
// the SO(3) conjugation action and the v-negation involution.
template <typename S>
MilnorPointT<S> milnor_act(const MilnorGroupElementT<S>& g, MilnorPointT<S> x) {
  const S a = g.m(0, 0), c = g.m(0, 1), b = g.m(1, 0), d = g.m(1, 1);
  const S det = a * d - b * c;
  if (std::abs(det) < S(1e-12)) {
    throw std::invalid_argument("milnor_act: matrix is not invertible");
  }
  const S sgn = det > S(0) ? S(1) : S(-1);

  // Transition first if the Moebius denominator degenerates.
  {
    const QuaternionT<S> den = x.chart == 1
        ? QuaternionT<S>(d) + b * x.u
        : QuaternionT<S>(a) + c * x.u;
    if (norm(den) < S(1e-8) * (S(1) + norm(x.u))) x = milnor_transition(x);
  }

  MilnorPointT<S> out = x;
  if (x.chart == 1) {
    const QuaternionT<S> den = QuaternionT<S>(d) + b * x.u;
    out.u = (a * x.u + QuaternionT<S>(c)) * inverse(den);
    const QuaternionT<S> dh = normalized(den);
    out.v = sgn * (qpow_unit(dh, x.k) * x.v * qpow_unit(dh, x.l));
  } else {
    const QuaternionT<S> den = QuaternionT<S>(a) + c * x.u;
    out.u = (QuaternionT<S>(b) + d * x.u) * inverse(den);
    const QuaternionT<S> dh = normalized(QuaternionT<S>(a) + c * conj(x.u));
    out.v = sgn * (qpow_unit(dh, x.k) * x.v * qpow_unit(dh, x.l));
  }
  out.u = g.q * out.u * conj(g.q);
  out.v = g.q * out.v * conj(g.q);
  if (g.negate_v) out.v = -out.v;
  return out;
}

// Defining equations of the invariant M^5_d: Re v = 0 and Re uv = 0
// (same equations in both charts).
template <typename S>
S m5_residual(const MilnorPointT<S>& x) {
  return std::abs(x.v.re) + std::abs((x.u * x.v).re);
}

// The curve alpha(s) = (i tan s, j) in the first chart.
template <typename S>
MilnorPointT<S> milnor_alpha(S s, int k, int l) {
  if (std::abs(s) >= S(M_PI) / S(2)) {
    throw std::invalid_argument("milnor_alpha: s at the pole of the chart");
  }
  return {1, {S(0), std::tan(s), S(0), S(0)}, QuaternionT<S>::j(), k, l};
}

// -------------------------------------------------------------------------
// Brieskorn varieties W^5_d and W^7_{6n-1,3}.

template <typename Scalar>
struct BrieskornPoint5T {
  int d{3};
  std::complex<Scalar> z0{0, 0};
  Eigen::Matrix<std::complex<Scalar>, 3, 1> z =
      Eigen::Matrix<std::complex<Scalar>, 3, 1>::Zero();
};

using BrieskornPoint5 = BrieskornPoint5T<double>;

template <typename Scalar>
struct BrieskornPoint7T {
  int n{1};
  std::complex<Scalar> w{0, 0};
  std::complex<Scalar> z0{0, 0};
  Eigen::Matrix<std::complex<Scalar>, 3, 1> z =
      Eigen::Matrix<std::complex<Scalar>, 3, 1>::Zero();
};

using BrieskornPoint7 = BrieskornPoint7T<double>;

template <typename S>
std::complex<S> cpow_int(std::complex<S> base, int e) {
  std::complex<S> r{S(1), S(0)};
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <typename S>
S brieskorn5_residual(const BrieskornPoint5T<S>& x) {
  const std::complex<S> f =
      cpow_int(x.z0, x.d) + x.z[0] * x.z[0] + x.z[1] * x.z[1] + x.z[2] * x.z[2];
  const S unit = std::abs(std::norm(x.z0) + x.z.squaredNorm() - S(1));
  return std::abs(f) + unit;
}

template <typename S>
S brieskorn7_residual(const BrieskornPoint7T<S>& x) {
  const std::complex<S> f = cpow_int(x.w, 6 * x.n - 1) + cpow_int(x.z0, 3) +
                            x.z[0] * x.z[0] + x.z[1] * x.z[1] + x.z[2] * x.z[2];
  const S unit = std::abs(std::norm(x.w) + std::norm(x.z0) + x.z.squaredNorm() - S(1));
  return std::abs(f) + unit;
}

template <typename S>
S dist(const BrieskornPoint5T<S>& a, const BrieskornPoint5T<S>& b) {
  return std::sqrt(std::norm(a.z0 - b.z0) + (a.z - b.z).squaredNorm());
}

// O(2) x SO(3) action on W^5_d: reflection (conjugation) first, then the
// rotation weights (e^{2 i theta} z0, e^{d i theta} A z).
template <typename S>
BrieskornPoint5T<S> brieskorn_act5(S theta, bool reflect, const Mat3<S>& a,
                                   const BrieskornPoint5T<S>& x) {
  if ((a * a.transpose() - Mat3<S>::Identity()).norm() > S(1e-10)) {
    throw std::invalid_argument("brieskorn_act5: A is not orthogonal");
  }
  BrieskornPoint5T<S> out = x;
  if (reflect) {
    out.z0 = std::conj(out.z0);
    out.z = out.z.conjugate();
  }
  const std::complex<S> r0 = std::polar(S(1), S(2) * theta);
  const std::complex<S> rz = std::polar(S(1), S(x.d) * theta);
  out.z0 *= r0;
  out.z = rz * (a.template cast<std::complex<S>>() * out.z);
  return out;
}

// Negative root of 1 - s^2 + s^d (domain boundary of the beta curve).
template <typename S>
S brieskorn_s_minus(int d) {
  S lo = S(-1), hi = S(0);  // f(-1) <= 0 < f(0) for odd d
  for (int it = 0; it < 200; ++it) {
    const S mid = (lo + hi) / S(2);
    const S f = S(1) - mid * mid + std::pow(mid, S(d));
    (f < S(0) ? lo : hi) = mid;
  }
  return (lo + hi) / S(2);
}

// beta(s) = (s, 0, sqrt(1-s^2-s^d)/sqrt2, -i sqrt(1-s^2+s^d)/sqrt2).
template <typename S>
BrieskornPoint5T<S> brieskorn_beta(int d, S s) {
  const S sd = std::pow(s, S(d));
  S r2 = S(1) - s * s - sd;
  S r3 = S(1) - s * s + sd;
  if (s > S(1e-12) || r2 < S(-1e-12) || r3 < S(-1e-12)) {
    throw std::invalid_argument("brieskorn_beta: s outside [s_-, 0]");
  }
  // Radicands vanish identically at the domain endpoints; snap the
  // root-finding round-off so the endpoint coordinates are exact.
  if (r2 < S(1e-12)) r2 = S(0);
  if (r3 < S(1e-12)) r3 = S(0);
  const S inv_sqrt2 = S(1) / std::sqrt(S(2));
  BrieskornPoint5T<S> x;
  x.d = d;
  x.z0 = {s, S(0)};
  x.z[0] = {S(0), S(0)};
  x.z[1] = {std::sqrt(std::max(r2, S(0))) * inv_sqrt2, S(0)};
  x.z[2] = {S(0), -std::sqrt(std::max(r3, S(0))) * inv_sqrt2};
  return x;
}

// Fixed-set residual of the involution diag(1,-1,-1) acting on W^7:
// |z2| + |z3|; on the zero set the W^3 equation w^{6n-1}+z0^3+z1^2 = 0
// is the ambient equation restricted.
template <typename S>
S w7_fixed_residual(const BrieskornPoint7T<S>& x) {
  return std::abs(x.z[1]) + std::abs(x.z[2]);
}

namespace detail {

// Rescale along the weighted ray z0 -> t^{1/d} z0, z_i -> t^{1/2} z_i
// (which scales the defining polynomial by t) until the point lands on
// the unit sphere. The norm is monotone in t, so bisection suffices.
template <typename S>
BrieskornPoint5T<S> rescale_to_sphere(BrieskornPoint5T<S> x) {
  const auto nrm = [&](S t) {
    return std::norm(x.z0) * std::pow(t, S(2) / S(x.d)) +
           x.z.squaredNorm() * t - S(1);
  };
  S lo = S(0), hi = S(1);
  while (nrm(hi) < S(0)) hi *= S(2);
  for (int it = 0; it < 200; ++it) {
    const S mid = (lo + hi) / S(2);
    (nrm(mid) < S(0) ? lo : hi) = mid;
  }
  const S t = (lo + hi) / S(2);
  x.z0 *= std::pow(t, S(1) / S(x.d));
  x.z *= std::sqrt(t);
  return x;
}

}  // namespace detail

// Random point of W^5_d: solve z1^2 = -(z0^d + z2^2 + z3^2) and rescale
// onto the unit sphere along the weighted ray.
template <typename S>
BrieskornPoint5T<S> random_brieskorn5(int d, Rng& rng) {
  for (;;) {
    BrieskornPoint5T<S> x;
    x.d = d;
    x.z0 = {rng.gaussian(), rng.gaussian()};
    x.z[1] = {rng.gaussian(), rng.gaussian()};
    x.z[2] = {rng.gaussian(), rng.gaussian()};
    const std::complex<S> rhs = -(cpow_int(x.z0, d) + x.z[1] * x.z[1] + x.z[2] * x.z[2]);
    x.z[0] = std::sqrt(rhs);
    if (std::norm(x.z0) + x.z.squaredNorm() < S(1e-12)) continue;
    return detail::rescale_to_sphere(x);
  }
}

// Random point of W^7_{6n-1,3} with prescribed |z2| + |z3| profile:
// solve for z1 and rescale with weights (1/(6n-1), 1/3, 1/2, 1/2, 1/2).
template <typename S>
BrieskornPoint7T<S> random_brieskorn7(int n, Rng& rng, bool on_fixed_set = false) {
  const int pw = 6 * n - 1;
  for (;;) {
    BrieskornPoint7T<S> x;
    x.n = n;
    x.w = {rng.gaussian(), rng.gaussian()};
    x.z0 = {rng.gaussian(), rng.gaussian()};
    if (!on_fixed_set) {
      x.z[1] = {rng.gaussian(), rng.gaussian()};
      x.z[2] = {rng.gaussian(), rng.gaussian()};
    }
    const std::complex<S> rhs =
        -(cpow_int(x.w, pw) + cpow_int(x.z0, 3) + x.z[1] * x.z[1] + x.z[2] * x.z[2]);
    x.z[0] = std::sqrt(rhs);

    const auto nrm = [&](S t) {
      return std::norm(x.w) * std::pow(t, S(2) / S(pw)) +
             std::norm(x.z0) * std::pow(t, S(2) / S(3)) + x.z.squaredNorm() * t - S(1);
    };
    S lo = S(0), hi = S(1);
    while (nrm(hi) < S(0)) hi *= S(2);
    for (int it = 0; it < 200; ++it) {
      const S mid = (lo + hi) / S(2);
      (nrm(mid) < S(0) ? lo : hi) = mid;
    }
    const S t = (lo + hi) / S(2);
    x.w *= std::pow(t, S(1) / S(pw));
    x.z0 *= std::pow(t, S(1) / S(3));
    x.z *= std::sqrt(t);
    if (brieskorn7_residual(x) < S(1e-10)) return x;
  }
}

// -------------------------------------------------------------------------
// Isotropy scans along the matched curves alpha (Milnor) and beta
// (Brieskorn). Candidates are shared O(2) x SO(3)-type elements.

enum class IsotropyFamily { MilnorAlpha, BrieskornBeta };

// Candidate lists of the isotropy tables: K- (s = 0 on alpha), H
// (0 < s < pi/4), K+ (s = pi/4).
template <typename S>
std::vector<MilnorGroupElementT<S>> k_minus_candidates(const std::vector<S>& taus) {
  using G = MilnorGroupElementT<S>;
  using Q = QuaternionT<S>;
  std::vector<G> out;
  Eigen::Matrix<S, 2, 2> e = Eigen::Matrix<S, 2, 2>::Identity();
  Eigen::Matrix<S, 2, 2> r1 = e, r2 = e;
  r1(1, 1) = S(-1);
  r2(0, 0) = S(-1);
  for (const S tau : taus) {
    const Q ejt = qexp(Vec3<S>(S(0), tau, S(0)));
    out.push_back({e, ejt, false});
    out.push_back({Eigen::Matrix<S, 2, 2>(-e), Q::i() * ejt, false});
    out.push_back({r1, ejt, false});
    out.push_back({r2, Q::i() * ejt, false});
  }
  return out;
}

template <typename S>
std::vector<MilnorGroupElementT<S>> h_candidates() {
  using G = MilnorGroupElementT<S>;
  using Q = QuaternionT<S>;
  Eigen::Matrix<S, 2, 2> e = Eigen::Matrix<S, 2, 2>::Identity();
  Eigen::Matrix<S, 2, 2> r1 = e, r2 = e;
  r1(1, 1) = S(-1);
  r2(0, 0) = S(-1);
  return {G{e, Q::one(), false}, G{Eigen::Matrix<S, 2, 2>(-e), Q::i(), false},
          G{r1, Q::j(), false}, G{r2, Q::k(), false}};
}

template <typename S>
std::vector<MilnorGroupElementT<S>> k_plus_candidates(int d, const std::vector<S>& thetas) {
  using G = MilnorGroupElementT<S>;
  using Q = QuaternionT<S>;
  std::vector<G> out;
  Eigen::Matrix<S, 2, 2> flip = Eigen::Matrix<S, 2, 2>::Identity();
  flip(1, 1) = S(-1);
  for (const S theta : thetas) {
    Eigen::Matrix<S, 2, 2> rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Q qrot = qexp(Vec3<S>(-S(d) * theta / S(2), S(0), S(0)));
    out.push_back({rot, qrot, false});
    out.push_back({Eigen::Matrix<S, 2, 2>(rot * flip), qrot * Q::j(), false});
  }
  return out;
}

// Decompose the 2x2 factor into rotation angle + reflection flag and map
// the quaternion to its SO(3) matrix for the Brieskorn action.
template <typename S>
BrieskornPoint5T<S> brieskorn_act_candidate(const MilnorGroupElementT<S>& g,
                                            const BrieskornPoint5T<S>& x) {
  const S det = g.m.determinant();
  Eigen::Matrix<S, 2, 2> rot = g.m;
  bool reflect = false;
  if (det < S(0)) {
    Eigen::Matrix<S, 2, 2> flip = Eigen::Matrix<S, 2, 2>::Identity();
    flip(1, 1) = S(-1);
    rot = g.m * flip;
    reflect = true;
  }
  const S theta = std::atan2(rot(1, 0), rot(0, 0));
  return brieskorn_act5(theta, reflect, rotation_matrix(g.q), x);
}

// Displacement of the curve point under each candidate.
template <typename S>
std::vector<S> isotropy_scan(IsotropyFamily family, S s,
                             const std::vector<MilnorGroupElementT<S>>& candidates,
                             int d = 3) {
  std::vector<S> out;
  out.reserve(candidates.size());
  if (family == IsotropyFamily::MilnorAlpha) {
    const int k = (1 + d) / 2, l = 1 - k;
    const MilnorPointT<S> x = milnor_alpha(s, k, l);
    for (const auto& g : candidates) {
      MilnorPointT<S> y = milnor_act(g, x);
      if (y.chart != x.chart) y = milnor_transition(y);
      out.push_back(dist(x, y));
    }
  } else {
    const BrieskornPoint5T<S> x = brieskorn_beta(d, s);
    for (const auto& g : candidates) {
      out.push_back(dist(x, brieskorn_act_candidate(g, x)));
    }
  }
  return out;
}

}  // namespace gm

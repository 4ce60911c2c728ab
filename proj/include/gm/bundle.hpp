#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "gm/algebra.hpp"
#include "gm/powermaps.hpp"
#include "gm/rng.hpp"

namespace gm {

// A point of E^10_n: (u,v) in S^7 x S^7 with <<rho_n(u), v>> = 0.
template <typename Scalar>
struct BundlePointT {
  int n{1};
  QuatPairT<Scalar> u;
  QuatPairT<Scalar> v;
};

using BundlePoint = BundlePointT<double>;

template <typename S>
S dist(const BundlePointT<S>& a, const BundlePointT<S>& b) {
  return std::sqrt(squared_norm(a.u - b.u) + squared_norm(a.v - b.v));
}

template <typename S>
S membership_residual(int n, const QuatPairT<S>& u, const QuatPairT<S>& v) {
  return norm(hermitian(rho(n, u), v)) + std::abs(norm(u) - S(1)) +
         std::abs(norm(v) - S(1));
}

template <typename S>
S membership_residual(const BundlePointT<S>& x) {
  return membership_residual(x.n, x.u, x.v);
}

// Quaternionic 2x2 matrix with orthonormal columns (Sp(2)).
template <typename Scalar>
struct Sp2ElementT {
  QuatPairT<Scalar> col1;
  QuatPairT<Scalar> col2;
};

using Sp2Element = Sp2ElementT<double>;

template <typename S>
S sp2_residual(const Sp2ElementT<S>& a) {
  return norm(hermitian(a.col1, a.col2)) + std::abs(norm(a.col1) - S(1)) +
         std::abs(norm(a.col2) - S(1));
}

// Element of Z2 x Z2 x S^3 x S^3 x S^3. The sign pair is the diagonal
// O(2) matrix B = diag(eps1, eps2); the quaternions act per
// (q1 u1 q1^-1, q2 u2 q1^-1; q1 v1 q3^-1, q2 v2 q3^-1).
template <typename Scalar>
struct GroupElementT {
  int eps1{1};
  int eps2{1};
  QuaternionT<Scalar> q1 = QuaternionT<Scalar>::one();
  QuaternionT<Scalar> q2 = QuaternionT<Scalar>::one();
  QuaternionT<Scalar> q3 = QuaternionT<Scalar>::one();

  static GroupElementT identity() { return {}; }
  static GroupElementT star(const QuaternionT<Scalar>& q) {
    return {1, 1, q, q, QuaternionT<Scalar>::one()};
  }
  static GroupElementT bullet(const QuaternionT<Scalar>& q) {
    return {1, 1, QuaternionT<Scalar>::one(), QuaternionT<Scalar>::one(), q};
  }
  static GroupElementT signs(int e1, int e2) {
    return {e1, e2, QuaternionT<Scalar>::one(), QuaternionT<Scalar>::one(),
            QuaternionT<Scalar>::one()};
  }
};

using GroupElement = GroupElementT<double>;

// The sign matrix commutes with the quaternion factors, so the group law
// is componentwise.
template <typename S>
GroupElementT<S> operator*(const GroupElementT<S>& g, const GroupElementT<S>& h) {
  return {g.eps1 * h.eps1, g.eps2 * h.eps2, g.q1 * h.q1, g.q2 * h.q2, g.q3 * h.q3};
}

template <typename S>
GroupElementT<S> random_group_element(Rng& rng) {
  return {rng.bits() & 1 ? 1 : -1, rng.bits() & 1 ? 1 : -1,
          random_unit_s3(rng), random_unit_s3(rng), random_unit_s3(rng)};
}

// The full Z2 x Z2 x S^3 x S^3 x S^3 action on E^10_n.
template <typename S>
BundlePointT<S> act(const GroupElementT<S>& g, const BundlePointT<S>& x) {
  const S e1 = S(g.eps1), e2 = S(g.eps2);
  return {x.n,
          {e1 * (g.q1 * x.u.first * conj(g.q1)), e2 * (g.q2 * x.u.second * conj(g.q1))},
          {e1 * (g.q1 * x.v.first * conj(g.q3)), e2 * (g.q2 * x.v.second * conj(g.q3))}};
}

// Certificate that y = q * x under the Gromoll-Meyer action.
template <typename Scalar>
struct OrbitWitnessT {
  QuaternionT<Scalar> q;
  Scalar residual{0};
};

using OrbitWitness = OrbitWitnessT<double>;

// Forced candidate for y = q * x: if y.v = q x.v componentwise then
// q = y.v1 conj(x.v1) + y.v2 conj(x.v2) since |x.v| = 1.
template <typename S>
OrbitWitnessT<S> star_orbit_candidate(const BundlePointT<S>& x, const BundlePointT<S>& y) {
  if (x.n != y.n) {
    throw std::invalid_argument("star_orbit: points belong to different E^10_n");
  }
  QuaternionT<S> q =
      y.v.first * conj(x.v.first) + y.v.second * conj(x.v.second);
  if (std::abs(norm(q) - S(1)) > S(1e-8)) {
    return {q, std::numeric_limits<S>::infinity()};
  }
  q = normalized(q);
  const S residual = dist(act(GroupElementT<S>::star(q), x), y);
  return {q, residual};
}

template <typename S>
std::optional<OrbitWitnessT<S>> star_orbit_witness(const BundlePointT<S>& x,
                                                   const BundlePointT<S>& y,
                                                   S tolerance = S(-1)) {
  if (tolerance < S(0)) tolerance = S(tol::composite);
  const OrbitWitnessT<S> w = star_orbit_candidate(x, y);
  if (w.residual <= tolerance) return w;
  return std::nullopt;
}

// The bundle map (u,v) |-> (rho_n(u), v) into Sp(2).
template <typename S>
Sp2ElementT<S> rho_tilde(const BundlePointT<S>& x) {
  if (membership_residual(x) > S(1e-8)) {
    throw std::invalid_argument("rho_tilde: point violates the E^10_n constraint");
  }
  return {rho(x.n, x.u), x.v};
}

// The circle alpha_n(t) = ((cos t, sin t), (-sin nt, cos nt)) in E^10_n.
template <typename S>
BundlePointT<S> alpha_circle(int n, S t) {
  const S nt = S(n) * t;
  return {n,
          {QuaternionT<S>(std::cos(t)), QuaternionT<S>(std::sin(t))},
          {QuaternionT<S>(-std::sin(nt)), QuaternionT<S>(std::cos(nt))}};
}

// Random point of E^10_n: random u, then v orthogonal to rho_n(u).
template <typename S>
BundlePointT<S> random_bundle_point(int n, Rng& rng) {
  const QuatPairT<S> u = random_unit_s7(rng);
  const QuatPairT<S> r = rho(n, u);
  for (;;) {
    QuatPairT<S> h = random_unit_s7(rng);
    const QuaternionT<S> c = hermitian(r, h);
    h = {h.first - r.first * c, h.second - r.second * c};
    if (norm(h) > S(1e-3)) return {n, u, normalized(h)};
  }
}

// Result of the cohomogeneity-2 normal form: a witness group element g
// with act(g, x) = ((cos t + i cos s sin t, sin s sin t), v*(s,t,n)).
template <typename Scalar>
struct NormalFormT {
  Scalar s{0};
  Scalar t{0};
  GroupElementT<Scalar> witness;
  Scalar residual{0};
  bool degenerate{false};
};

using NormalForm = NormalFormT<double>;

template <typename S>
BundlePointT<S> normal_form_point(int n, S s, S t) {
  const S ct = std::cos(t), st = std::sin(t);
  const S cs = std::cos(s), ss = std::sin(s);
  const S cnt = std::cos(S(n) * t), snt = std::sin(S(n) * t);
  return {n,
          {{ct, cs * st, S(0), S(0)}, QuaternionT<S>(ss * st)},
          {QuaternionT<S>(-ss * snt), {cnt, -cs * snt, S(0), S(0)}}};
}

template <typename S>
NormalFormT<S> normal_form(const BundlePointT<S>& x) {
  constexpr S kThresh = S(1e-10);
  NormalFormT<S> nf;

  // Sign gauge: force re(u1) >= 0 so that t lands in [0, pi/2].
  const int e1 = x.u.first.re < S(0) ? -1 : 1;
  const BundlePointT<S> x1 = act(GroupElementT<S>::signs(e1, 1), x);

  const S c = std::clamp(x1.u.first.re, S(-1), S(1));
  nf.t = std::acos(c);
  const S nim = x1.u.first.im.norm();
  const S nu2 = norm(x1.u.second);
  const S st = std::sqrt(nim * nim + nu2 * nu2);
  nf.s = st > kThresh ? std::atan2(nu2, nim) : S(0);
  nf.degenerate = st <= kThresh || nim <= kThresh || nu2 <= kThresh;

  // q1 rotates Im u1 to the i-axis; undetermined rotations stay at 1.
  QuaternionT<S> q1 = QuaternionT<S>::one();
  if (nim > kThresh) {
    const Vec3<S> a = x1.u.first.im / nim;
    const QuaternionT<S> cand = QuaternionT<S>::one() - QuaternionT<S>::i() * pure(a);
    q1 = norm(cand) > S(1e-6) ? normalized(cand) : QuaternionT<S>::k();
  }
  QuaternionT<S> q2 = QuaternionT<S>::one();
  if (nu2 > kThresh) {
    q2 = q1 * ((S(1) / nu2) * conj(x1.u.second));
  }

  const BundlePointT<S> x2 =
      act(GroupElementT<S>{1, 1, q1, q2, QuaternionT<S>::one()}, x1);

  // q3 from the fiber torsor: v = v* conj(q3) forces
  // conj(q3) = <<v2, v*>> for the target column v*.
  const BundlePointT<S> target = normal_form_point(x.n, nf.s, nf.t);
  QuaternionT<S> q3bar = hermitian(x2.v, target.v);
  if (norm(q3bar) > S(1e-6)) q3bar = normalized(q3bar);
  const QuaternionT<S> q3 = conj(q3bar);

  nf.witness = GroupElementT<S>{e1, 1, q1, q2, q3};
  nf.residual = dist(act(nf.witness, x), target);
  return nf;
}

// Stratum membership flags for a bundle point.
struct StratumFlags {
  bool in_E9{false};
  bool in_E8{false};
  bool in_E1{false};
};

template <typename S>
StratumFlags stratum_classify(const BundlePointT<S>& x) {
  constexpr S kTol = S(1e-10);
  StratumFlags f;
  f.in_E9 = std::abs(x.u.first.re) <= kTol;
  f.in_E8 = f.in_E9 && std::abs(x.u.second.re) <= kTol;
  f.in_E1 = x.u.first.im.norm() <= kTol && x.u.second.im.norm() <= kTol;
  return f;
}

// Canonical star-orbit representative of a point of E^8_0: moves v to
// (0,1), conjugating u accordingly. Idempotent.
template <typename S>
BundlePointT<S> sigma5_canonical_rep(const BundlePointT<S>& x) {
  constexpr S kTol = S(1e-8);
  if (x.n != 0 || !stratum_classify(x).in_E8 || norm(x.v.first) > kTol) {
    throw std::domain_error("sigma5_canonical_rep: point is not in E^8_0 with v1 = 0");
  }
  const QuaternionT<S> q = normalized(conj(x.v.second));
  BundlePointT<S> out = act(GroupElementT<S>::star(q), x);
  out.v.first = QuaternionT<S>(S(0));
  out.v.second = QuaternionT<S>::one();
  return out;
}

}  // namespace gm

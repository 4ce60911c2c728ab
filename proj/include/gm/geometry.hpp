#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gm/algebra.hpp"
#include "gm/bundle.hpp"
#include "gm/powermaps.hpp"

namespace gm {

// Fiber-scale parameter of the connection metric <.,.>_nu.
template <typename Scalar>
struct MetricParamsT {
  Scalar nu{1};
};

using MetricParams = MetricParamsT<double>;

// Ambient-coordinate tangent data at a bundle point.
template <typename Scalar>
struct TangentVectorT {
  BundlePointT<Scalar> at;
  QuatPairT<Scalar> du;
  QuatPairT<Scalar> dv;
};

using TangentVector = TangentVectorT<double>;

// Vertical component of the principal fibration E^10_n -> S^7:
// xi = -Im<<v, dv>>, the fiber generator in Im H.
template <typename S>
Vec3<S> vertical_component(const TangentVectorT<S>& x) {
  return -hermitian(x.at.v, x.dv).im;
}

// Tangent of the fiber direction (0, -v xi).
template <typename S>
TangentVectorT<S> vertical_generator(const BundlePointT<S>& x, const Vec3<S>& xi) {
  const QuaternionT<S> q = pure(xi);
  return {x,
          {QuaternionT<S>(S(0)), QuaternionT<S>(S(0))},
          {-(x.v.first * q), -(x.v.second * q)}};
}

// Split into horizontal + vertical parts for E^10_n -> S^7. Horizontality
// is the closed-form condition Im<<v, dv>> = 0.
template <typename S>
std::pair<TangentVectorT<S>, TangentVectorT<S>> split_horizontal(
    const BundlePointT<S>& x, const TangentVectorT<S>& tv) {
  const Vec3<S> xi = vertical_component(tv);
  const TangentVectorT<S> vert = vertical_generator(x, xi);
  const TangentVectorT<S> horiz{x, tv.du, tv.dv - vert.dv};
  return {horiz, vert};
}

// Connection metric: nu <xi_X, xi_Y> on the fibers plus the round S^7
// metric on the horizontal part (which projects isometrically through
// the first column).
template <typename S>
S metric_eval(const MetricParamsT<S>& m, const TangentVectorT<S>& x,
              const TangentVectorT<S>& y) {
  if (dist(x.at, y.at) > S(1e-9)) {
    throw std::invalid_argument("metric_eval: tangent vectors at different base points");
  }
  const Vec3<S> xi_x = vertical_component(x);
  const Vec3<S> xi_y = vertical_component(y);
  return m.nu * xi_x.dot(xi_y) + dot(x.du.first, y.du.first) + dot(x.du.second, y.du.second);
}

// Pushforward of a tangent vector by the (linear) group action.
template <typename S>
TangentVectorT<S> act_tangent(const GroupElementT<S>& g, const TangentVectorT<S>& tv) {
  const BundlePointT<S> du_img = act(g, BundlePointT<S>{tv.at.n, tv.du, tv.dv});
  return {act(g, tv.at), du_img.u, du_img.v};
}

// Explicit horizontal lift of the great circle beta(t) = (cos t + p sin t,
// w sin t) through the identity pair. The w = 0 branch is the continuous
// limit ((e^{tp}, 0), (0, 1)).
template <typename S>
BundlePointT<S> lift_gamma(int n, const Vec3<S>& p, const QuaternionT<S>& w, S t) {
  const S nw2 = w.re * w.re + w.im.squaredNorm();
  if (std::abs(p.squaredNorm() + nw2 - S(1)) > S(1e-10)) {
    throw std::invalid_argument("lift_gamma: (p,w) not on S^6");
  }
  if (t == S(0)) {
    return {n, {QuaternionT<S>::one(), QuaternionT<S>(S(0))},
            {QuaternionT<S>(S(0)), QuaternionT<S>::one()}};
  }
  const S ct = std::cos(t), st = std::sin(t);
  const S nt = S(n) * t;
  const S cnt = std::cos(nt), snt = std::sin(nt);
  const QuatPairT<S> col1{{ct, Vec3<S>(p * st)}, st * w};

  const S nw = std::sqrt(nw2);
  if (nw < S(1e-13)) {
    return {n, {qexp(Vec3<S>(p * t)), QuaternionT<S>(S(0))},
            {QuaternionT<S>(S(0)), QuaternionT<S>::one()}};
  }
  const QuaternionT<S> wh = (S(1) / nw) * w;
  const QuaternionT<S> e = qexp(Vec3<S>(p * nt));
  const QuaternionT<S> mid{cnt, Vec3<S>(-p * snt)};
  const QuatPairT<S> col2{-snt * (e * conj(w)), wh * e * mid * conj(wh)};
  return {n, col1, col2};
}

// Horizontal transport of v along an S^7 curve: per step an 8x8 linear
// system enforces constraint preservation, horizontality and norm
// preservation; classical 4th-order integration with reprojection.
template <typename S>
std::vector<BundlePointT<S>> horizontal_transport(
    int n, const std::function<QuatPairT<S>(S)>& curve, S s_end,
    const QuatPairT<S>& v0, int steps) {
  using Mat8 = Eigen::Matrix<S, 8, 8>;
  constexpr S kFdStep = S(1e-6);

  const auto velocity = [&](S s, const QuatPairT<S>& v) -> QuatPairT<S> {
    const QuatPairT<S> r = rho(n, curve(s));
    const QuatPairT<S> rp = rho(n, curve(s + kFdStep));
    const QuatPairT<S> rm = rho(n, curve(s - kFdStep));
    const QuatPairT<S> dr = (S(1) / (S(2) * kFdStep)) * (rp - rm);

    Mat8 m;
    m.template block<4, 4>(0, 0) = left_mult_matrix(conj(r.first));
    m.template block<4, 4>(0, 4) = left_mult_matrix(conj(r.second));
    m.template block<4, 4>(4, 0) = left_mult_matrix(conj(v.first));
    m.template block<4, 4>(4, 4) = left_mult_matrix(conj(v.second));
    Vec8<S> rhs;
    rhs << to_vec4(-hermitian(dr, v)), Vec4<S>::Zero();
    Eigen::FullPivLU<Mat8> lu(m);
    if (!lu.isInvertible()) {
      throw std::runtime_error("horizontal_transport: singular transport system");
    }
    return from_vec8(Vec8<S>(lu.solve(rhs)));
  };

  const auto reproject = [&](S s, QuatPairT<S> v) -> QuatPairT<S> {
    const QuatPairT<S> r = rho(n, curve(s));
    const QuaternionT<S> c = hermitian(r, v);
    v = {v.first - r.first * c, v.second - r.second * c};
    return normalized(v);
  };

  const S h = s_end / S(steps);
  std::vector<BundlePointT<S>> path;
  path.reserve(steps + 1);
  QuatPairT<S> v = v0;
  path.push_back({n, curve(S(0)), v});
  for (int step = 0; step < steps; ++step) {
    const S s = S(step) * h;
    const QuatPairT<S> k1 = velocity(s, v);
    const QuatPairT<S> k2 = velocity(s + h / S(2), v + (h / S(2)) * k1);
    const QuatPairT<S> k3 = velocity(s + h / S(2), v + (h / S(2)) * k2);
    const QuatPairT<S> k4 = velocity(s + h, v + h * k3);
    v = v + (h / S(6)) * (k1 + S(2) * k2 + S(2) * k3 + k4);
    v = reproject(S(step + 1) * h, v);
    path.push_back({n, curve(S(step + 1) * h), v});
  }
  return path;
}

// Wiedersehen verification: the explicit lift at t = pi lands on the
// star-orbit of the antipode alpha_n(pi), at t = 2 pi back on the orbit
// of alpha_n(0).
template <typename Scalar>
struct WiedersehenReportT {
  Scalar residual_pi{0};
  Scalar residual_2pi{0};
};

using WiedersehenReport = WiedersehenReportT<double>;

template <typename S>
WiedersehenReportT<S> wiedersehen_check(int n, const Vec3<S>& p, const QuaternionT<S>& w) {
  const BundlePointT<S> at_pi = lift_gamma(n, p, w, S(M_PI));
  const BundlePointT<S> at_2pi = lift_gamma(n, p, w, S(2) * S(M_PI));
  return {star_orbit_candidate(alpha_circle<S>(n, S(M_PI)), at_pi).residual,
          star_orbit_candidate(alpha_circle<S>(n, S(0)), at_2pi).residual};
}

// Distance-pi/2 join segment from the circle stratum to the E^8 stratum.
template <typename Scalar>
struct JoinReportT {
  std::vector<BundlePointT<Scalar>> path;
  Scalar length{0};
  bool start_in_E1{false};
  bool end_in_E8{false};
  Scalar endpoint_membership{0};
};

using JoinReport = JoinReportT<double>;

template <typename S>
JoinReportT<S> join_segment(int n, S t0, const QuatPairT<S>& y, int steps = 1600) {
  if (std::abs(y.first.re) > S(1e-10) || std::abs(y.second.re) > S(1e-10) ||
      std::abs(norm(y) - S(1)) > S(1e-10)) {
    throw std::invalid_argument("join_segment: y must be a unit imaginary pair");
  }
  const QuatPairT<S> a{QuaternionT<S>(std::cos(t0)), QuaternionT<S>(std::sin(t0))};
  const auto curve = [a, y](S s) -> QuatPairT<S> {
    return std::cos(s) * a + std::sin(s) * y;
  };
  const BundlePointT<S> start = alpha_circle(n, t0);
  auto path = horizontal_transport<S>(n, curve, S(M_PI) / S(2), start.v, steps);
  JoinReportT<S> rep;
  rep.length = S(M_PI) / S(2);
  rep.start_in_E1 = stratum_classify(path.front()).in_E1;
  rep.end_in_E8 = stratum_classify(path.back()).in_E8;
  rep.endpoint_membership = membership_residual(path.back());
  rep.path = std::move(path);
  return rep;
}

}  // namespace gm

#include "doctest.h"

#include <cmath>
#include <complex>

#include "gm/models.hpp"
#include "gm/rng.hpp"

using namespace gm;

namespace {

using Mat2 = Eigen::Matrix<double, 2, 2>;

MilnorPoint random_milnor(Rng& rng, int k = 2, int l = -1) {
  const Quaternion u{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
  return {1, u, random_unit_s3(rng), k, l};
}

// Random chart-1 point on M^5_d: v unit imaginary with Im v orthogonal
// to Im u, so that re v = re(uv) = 0.
MilnorPoint random_m5(Rng& rng, int k = 2, int l = -1) {
  for (;;) {
    const Quaternion u{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    Vec3<double> dir(rng.gaussian(), rng.gaussian(), rng.gaussian());
    dir -= u.im * (dir.dot(u.im) / u.im.squaredNorm());
    if (dir.norm() < 1e-3) continue;
    return {1, u, pure(Vec3<double>(dir / dir.norm())), k, l};
  }
}

MilnorGroupElement random_milnor_element(Rng& rng) {
  for (;;) {
    Mat2 m;
    m << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
    if (std::abs(m.determinant()) < 0.1) continue;
    return {m, random_unit_s3(rng), false};
  }
}

// Random point of the z1 = 0 slice of W^5_d.
BrieskornPoint5 random_w5_slice(int d, Rng& rng) {
  for (;;) {
    BrieskornPoint5 x;
    x.d = d;
    x.z0 = {rng.gaussian(), rng.gaussian()};
    x.z[2] = {rng.gaussian(), rng.gaussian()};
    x.z[1] = std::sqrt(-(cpow_int(x.z0, d) + x.z[2] * x.z[2]));
    if (std::norm(x.z0) + x.z.squaredNorm() < 1e-12) continue;
    return detail::rescale_to_sphere(x);
  }
}

}  // namespace

TEST_CASE("milnor_transition: example, round trip, negation commutes") {
  const MilnorPoint x{1, Quaternion::i(), Quaternion::one(), 2, -1};
  const MilnorPoint y = milnor_transition(x);
  CHECK(y.chart == 2);
  CHECK(dist(y.u, Quaternion::i()) <= 1e-15);
  CHECK(dist(y.v, Quaternion::i()) <= 1e-15);

  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const MilnorPoint a = random_milnor(rng);
    const MilnorPoint back = milnor_transition(milnor_transition(a));
    CHECK(back.chart == 1);
    CHECK(dist(back, a) <= 1e-12);

    MilnorPoint neg = a;
    neg.v = -neg.v;
    CHECK(dist(milnor_transition(neg), MilnorPoint{2, milnor_transition(a).u,
                                                   -milnor_transition(a).v, 2, -1}) <= 1e-14);
  }

  CHECK_THROWS_AS(milnor_transition(MilnorPoint{1, Quaternion(0.0), Quaternion::j(), 2, -1}),
                  std::domain_error);
}

TEST_CASE("milnor_act: identity and isotropy of the alpha curve") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const MilnorPoint x = random_milnor(rng);
    CHECK(dist(milnor_act(MilnorGroupElement{}, x), x) == 0.0);
  }

  const MilnorGroupElement half_turn{Mat2(-Mat2::Identity()), Quaternion::i(), false};
  const MilnorGroupElement half_turn_m{Mat2(-Mat2::Identity()), -Quaternion::i(), false};
  for (double s : {0.0, 0.3, 0.7, M_PI / 4}) {
    const MilnorPoint a = milnor_alpha(s, 2, -1);
    CHECK(dist(milnor_act(half_turn, a), a) <= 1e-13);
    CHECK(dist(milnor_act(half_turn_m, a), a) <= 1e-13);
  }
  for (double tau : {0.0, 0.4, 1.3, 2.9}) {
    const MilnorGroupElement g{Mat2::Identity(), qexp(Vec3<double>(0, tau, 0)), false};
    CHECK(dist(milnor_act(g, milnor_alpha(0.0, 2, -1)), milnor_alpha(0.0, 2, -1)) <= 1e-13);
  }

  CHECK_THROWS_AS(milnor_act(MilnorGroupElement{Mat2::Zero(), Quaternion::one(), false},
                             random_milnor(rng)),
                  std::invalid_argument);
}

TEST_CASE("milnor_act: group law and chart compatibility") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const MilnorPoint x = random_milnor(rng);
    const MilnorGroupElement g = random_milnor_element(rng);
    const MilnorGroupElement h = random_milnor_element(rng);
    const MilnorPoint gh = milnor_act(g * h, x);
    const MilnorPoint g_h = milnor_act(g, milnor_act(h, x));
    REQUIRE(gh.chart == g_h.chart);
    CHECK(dist(gh, g_h) <= 1e-10 * (1 + squared_norm(gh.u)));

    const MilnorPoint y1 = milnor_transition(milnor_act(g, x));
    const MilnorPoint y2 = milnor_act(g, milnor_transition(x));
    REQUIRE(y1.chart == y2.chart);
    CHECK(dist(y1, y2) <= 1e-9 * (1 + squared_norm(y1.u)));
  }
}

TEST_CASE("m5_residual and invariance of M^5_d") {
  CHECK(m5_residual(MilnorPoint{1, Quaternion::one(), Quaternion::one(), 2, -1}) ==
        doctest::Approx(2.0));
  for (double s : {-1.2, -0.4, 0.0, 0.5, 1.3}) {
    CHECK(m5_residual(milnor_alpha(s, 2, -1)) <= 1e-15);
  }
  CHECK_THROWS_AS(milnor_alpha(M_PI / 2, 2, -1), std::invalid_argument);

  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const MilnorPoint x = random_m5(rng);
    CHECK(m5_residual(x) <= 1e-14);
    CHECK(m5_residual(milnor_transition(x)) <= 1e-10);

    const double th = rng.uniform(0.0, 2 * M_PI);
    Mat2 rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const MilnorGroupElement g{rot, random_unit_s3(rng), (rng.bits() & 1) != 0};
    CHECK(m5_residual(milnor_act(g, x)) <= 1e-10);
  }
}

TEST_CASE("conjugation sends M^7_d to M^7_{-d}") {
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const MilnorPoint x = random_milnor(rng, 2, -1);
    MilnorPoint xc{x.chart, conj(x.u), conj(x.v), -1, 2};  // (k,l) -> (l,k)
    const MilnorPoint ty = milnor_transition(x);
    const MilnorPoint tyc = milnor_transition(xc);
    CHECK(dist(tyc.u, conj(ty.u)) <= 1e-10);
    CHECK(dist(tyc.v, conj(ty.v)) <= 1e-10);
  }
}

TEST_CASE("brieskorn_act5: identity, membership, reflection involution") {
  Rng rng(17);
  const Mat3<double> id = Mat3<double>::Identity();
  for (int i = 0; i < 500; ++i) {
    const BrieskornPoint5 x = random_brieskorn5<double>(3, rng);
    CHECK(brieskorn5_residual(x) <= 1e-11);
    CHECK(dist(brieskorn_act5(0.0, false, id, x), x) == 0.0);

    const double th = rng.uniform(0.0, 2 * M_PI);
    const Mat3<double> a = rotation_matrix(random_unit_s3(rng));
    const bool refl = (rng.bits() & 1) != 0;
    CHECK(brieskorn5_residual(brieskorn_act5(th, refl, a, x)) <=
          2 * brieskorn5_residual(x) + 1e-11);

    const BrieskornPoint5 twice =
        brieskorn_act5(0.0, true, id, brieskorn_act5(0.0, true, id, x));
    CHECK(dist(twice, x) <= 1e-13);
  }

  Mat3<double> bad = id;
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(brieskorn_act5(0.1, false, bad, random_brieskorn5<double>(3, rng)),
                  std::invalid_argument);
}

TEST_CASE("brieskorn_beta values and domain") {
  const BrieskornPoint5 b0 = brieskorn_beta(3, 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b0.z0) == 0.0);
  CHECK(std::abs(b0.z[0]) == 0.0);
  CHECK(std::abs(b0.z[1] - std::complex<double>(r, 0)) <= 1e-15);
  CHECK(std::abs(b0.z[2] - std::complex<double>(0, -r)) <= 1e-15);

  CHECK(brieskorn5_residual(brieskorn_beta(3, -0.5)) <= 1e-15);

  const double sm = brieskorn_s_minus<double>(3);
  CHECK(std::abs(1 - sm * sm + sm * sm * sm) <= 1e-14);
  CHECK(brieskorn5_residual(brieskorn_beta(3, sm)) <= 1e-12);

  CHECK_THROWS_AS(brieskorn_beta(3, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(brieskorn_beta(3, sm - 0.01), std::invalid_argument);
}

TEST_CASE("w7 fixed set of the half-turn involution") {
  Rng rng(19);
  for (int n : {1, 2}) {
    for (int i = 0; i < 200; ++i) {
      const BrieskornPoint7 fixed = random_brieskorn7<double>(n, rng, true);
      CHECK(brieskorn7_residual(fixed) <= 1e-10);
      CHECK(w7_fixed_residual(fixed) <= 1e-12);
      // On the fixed set the W^3 equation is the ambient one restricted.
      CHECK(std::abs(cpow_int(fixed.w, 6 * n - 1) + cpow_int(fixed.z0, 3) +
                     fixed.z[0] * fixed.z[0]) <= 1e-10);

      const BrieskornPoint7 generic = random_brieskorn7<double>(n, rng);
      CHECK(w7_fixed_residual(generic) > 1e-3);

      // diag(1,-1,-1) moves a point iff the residual is positive.
      for (const BrieskornPoint7& x : {fixed, generic}) {
        BrieskornPoint7 y = x;
        y.z[1] = -y.z[1];
        y.z[2] = -y.z[2];
        const double moved = std::abs(y.z[1] - x.z[1]) + std::abs(y.z[2] - x.z[2]);
        CHECK(moved == doctest::Approx(2 * w7_fixed_residual(x)));
      }
    }
  }
}

TEST_CASE("isotropy tables match along alpha and beta") {
  const int d = 3;
  const double sm = brieskorn_s_minus<double>(d);
  const std::vector<double> taus{0.0, 0.5, 1.1, 2.7};
  const std::vector<double> thetas{0.0, 0.8, 1.9, 4.4};

  const auto all_fixed = [](const std::vector<double>& disp) {
    for (double v : disp) {
      if (v > 1e-11) return false;
    }
    return true;
  };

  const auto km = k_minus_candidates(taus);
  CHECK(all_fixed(isotropy_scan(IsotropyFamily::MilnorAlpha, 0.0, km, d)));
  CHECK(all_fixed(isotropy_scan(IsotropyFamily::BrieskornBeta, sm, km, d)));

  const auto h = h_candidates<double>();
  for (double s : {0.1, 0.3, 0.6}) {
    CHECK(all_fixed(isotropy_scan(IsotropyFamily::MilnorAlpha, s, h, d)));
    CHECK(all_fixed(isotropy_scan(IsotropyFamily::BrieskornBeta, -s, h, d)));
  }

  const auto kp = k_plus_candidates(d, thetas);
  CHECK(all_fixed(isotropy_scan(IsotropyFamily::MilnorAlpha, M_PI / 4, kp, d)));
  CHECK(all_fixed(isotropy_scan(IsotropyFamily::BrieskornBeta, 0.0, kp, d)));

  // Random elements move the curve points on both sides, with the same
  // pass/fail pattern.
  Rng rng(23);
  std::vector<MilnorGroupElement> random_els;
  for (int i = 0; i < 100; ++i) random_els.push_back(random_milnor_element(rng));
  const auto da = isotropy_scan(IsotropyFamily::MilnorAlpha, 0.3, random_els, d);
  const auto db = isotropy_scan(IsotropyFamily::BrieskornBeta, -0.3, random_els, d);
  for (std::size_t i = 0; i < random_els.size(); ++i) {
    CHECK(da[i] > 1e-3);
    CHECK(db[i] > 1e-3);
  }

  // Generic K+ members fail away from the endpoint, matching on both sides.
  const auto kp_off_a = isotropy_scan(IsotropyFamily::MilnorAlpha, 0.3, kp, d);
  const auto kp_off_b = isotropy_scan(IsotropyFamily::BrieskornBeta, -0.3, kp, d);
  for (std::size_t i = 0; i < kp.size(); ++i) {
    CHECK((kp_off_a[i] <= 1e-11) == (kp_off_b[i] <= 1e-11));
  }
}

TEST_CASE("half-turn fixed set is the z1 = 0 slice") {
  const MilnorGroupElement half_turn{Mat2(-Mat2::Identity()), Quaternion::i(), false};
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const BrieskornPoint5 slice = random_w5_slice(3, rng);
    CHECK(brieskorn5_residual(slice) <= 1e-11);
    CHECK(std::abs(slice.z[0]) == 0.0);
    CHECK(dist(brieskorn_act_candidate(half_turn, slice), slice) <= 1e-13);

    const BrieskornPoint5 generic = random_brieskorn5<double>(3, rng);
    if (std::abs(generic.z[0]) < 1e-3) continue;
    CHECK(dist(brieskorn_act_candidate(half_turn, generic), generic) > 1e-3);
  }
}

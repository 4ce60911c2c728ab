#include "doctest.h"

#include <cmath>

#include "gm/bundle.hpp"
#include "gm/rng.hpp"

using namespace gm;

namespace {
const QuatPair kE1{Quaternion::one(), Quaternion(0.0)};
const QuatPair kE2{Quaternion(0.0), Quaternion::one()};
}  // namespace

TEST_CASE("membership residual: identity pair, circle, random pairs") {
  for (int n = -4; n <= 4; ++n) {
    CHECK(membership_residual(n, kE1, kE2) <= 1e-15);
  }
  CHECK(membership_residual(alpha_circle(3, 0.7)) <= 1e-14);

  Rng rng(3);
  int positive = 0;
  for (int i = 0; i < 200; ++i) {
    if (membership_residual(2, random_unit_s7(rng), random_unit_s7(rng)) > 1e-3) ++positive;
  }
  CHECK(positive == 200);
}

TEST_CASE("full action: identity, membership invariance, group law") {
  Rng rng(5);
  for (int n = -4; n <= 4; ++n) {
    for (int i = 0; i < 100; ++i) {
      const BundlePoint x = random_bundle_point<double>(n, rng);
      CHECK(dist(act(GroupElement::identity(), x), x) == 0.0);

      const GroupElement g = random_group_element<double>(rng);
      const GroupElement h = random_group_element<double>(rng);
      CHECK(membership_residual(act(g, x)) <= 2 * membership_residual(x) + 1e-11);
      CHECK(dist(act(g, act(h, x)), act(g * h, x)) <= 1e-11);
    }
  }
}

TEST_CASE("star action by -1 flips v only") {
  Rng rng(7);
  const BundlePoint x = random_bundle_point<double>(2, rng);
  const BundlePoint y = act(GroupElement::star(-Quaternion::one()), x);
  CHECK(dist(y.u, x.u) <= 1e-15);
  CHECK(dist(y.v, -x.v) <= 1e-15);
}

TEST_CASE("star and bullet actions commute") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const BundlePoint x = random_bundle_point<double>(3, rng);
    const Quaternion q = random_unit_s3(rng);
    const GroupElement g = random_group_element<double>(rng);
    const GroupElement bullet{g.eps1, g.eps2, Quaternion::one(), Quaternion::one(), g.q3};
    CHECK(dist(act(GroupElement::star(q), act(bullet, x)),
               act(bullet, act(GroupElement::star(q), x))) <= 1e-11);
  }
}

TEST_CASE("star action by i preserves the circle membership") {
  const BundlePoint a = alpha_circle(3, 0.5);
  CHECK(membership_residual(act(GroupElement::star(Quaternion::i()), a)) <= 1e-12);
}

TEST_CASE("star orbit witness recovers the acting quaternion") {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    const BundlePoint x = random_bundle_point<double>(1, rng);
    const Quaternion q = random_unit_s3(rng);
    const BundlePoint y = act(GroupElement::star(q), x);
    const auto w = star_orbit_witness(x, y);
    REQUIRE(w.has_value());
    CHECK(dist(w->q, q) <= 1e-12);
    CHECK(w->residual <= 1e-12);
  }

  const BundlePoint x = random_bundle_point<double>(1, rng);
  const auto w = star_orbit_witness(x, BundlePoint{1, x.u, -x.v});
  REQUIRE(w.has_value());
  CHECK(dist(w->q, -Quaternion::one()) <= 1e-13);

  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    const BundlePoint a = random_bundle_point<double>(1, rng);
    const BundlePoint b = random_bundle_point<double>(1, rng);
    if (!star_orbit_witness(a, b).has_value()) ++rejected;
  }
  CHECK(rejected == 100);

  CHECK_THROWS_AS(star_orbit_candidate(random_bundle_point<double>(1, rng),
                                       random_bundle_point<double>(2, rng)),
                  std::invalid_argument);
}

TEST_CASE("rho_tilde lands in Sp(2)") {
  CHECK(sp2_residual(rho_tilde(BundlePoint{4, kE1, kE2})) <= 1e-15);

  // alpha_n(t) maps to the 2x2 rotation by nt embedded in Sp(2).
  const int n = 3;
  const double t = 0.9;
  const Sp2Element a = rho_tilde(alpha_circle(n, t));
  CHECK(dist(a.col1, QuatPair{Quaternion(std::cos(n * t)), Quaternion(std::sin(n * t))}) <= 1e-12);
  CHECK(dist(a.col2, QuatPair{Quaternion(-std::sin(n * t)), Quaternion(std::cos(n * t))}) <= 1e-12);

  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    CHECK(sp2_residual(rho_tilde(random_bundle_point<double>(-2, rng))) <= 1e-10);
  }
}

TEST_CASE("alpha circle values and periodicity") {
  for (int n = -3; n <= 3; ++n) {
    CHECK(dist(alpha_circle(n, 0.0), BundlePoint{n, kE1, kE2}) == 0.0);
    CHECK(membership_residual(alpha_circle(n, 0.7)) <= 1e-14);
    CHECK(dist(alpha_circle(n, 0.4), alpha_circle(n, 0.4 + 2 * M_PI)) <= 1e-13);

    const BundlePoint at_pi = alpha_circle(n, M_PI);
    CHECK(dist(at_pi.u, QuatPair{-Quaternion::one(), Quaternion(0.0)}) <= 1e-15);
    const double sgn = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(dist(at_pi.v, QuatPair{Quaternion(0.0), sgn * Quaternion::one()}) <= 1e-14);
  }
  const BundlePoint a = alpha_circle(2, M_PI / 2);
  CHECK(dist(a.u, QuatPair{Quaternion(0.0), Quaternion::one()}) <= 1e-15);
  CHECK(dist(a.v, QuatPair{Quaternion(0.0), -Quaternion::one()}) <= 1e-14);
}

TEST_CASE("parity of strata: E^9 membership is n mod 2 invariant") {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    // Random E^9_n point: u in S^6, v orthogonal to rho_n(u).
    const int n = int(rng.bits() % 7) - 3;
    const QuatPair u = random_unit_s6(rng);
    const QuatPair r = rho(n, u);
    const QuatPair h = random_unit_s7(rng);
    const Quaternion c = hermitian(r, h);
    const QuatPair v = normalized(QuatPair{h.first - r.first * c, h.second - r.second * c});
    CHECK(membership_residual(n, u, v) <= 1e-12);
    CHECK(std::abs(membership_residual(n, u, v) - membership_residual(n + 2, u, v)) <= 1e-12);
  }
}

TEST_CASE("normal form: circle, identity, round trip") {
  const NormalForm nfa = normal_form(alpha_circle(3, 0.6));
  CHECK(nfa.s == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(nfa.t == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(nfa.residual <= 1e-12);

  const NormalForm nfe = normal_form(BundlePoint{2, kE1, kE2});
  CHECK(nfe.t == 0.0);
  CHECK(nfe.degenerate);

  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const int n = int(rng.bits() % 9) - 4;
    const double s = rng.uniform(0.05, M_PI / 2 - 0.05);
    const double t = rng.uniform(0.05, M_PI / 2 - 0.05);
    const BundlePoint nf_point = normal_form_point(n, s, t);
    CHECK(membership_residual(nf_point) <= 1e-12);
    const BundlePoint x = act(random_group_element<double>(rng), nf_point);
    const NormalForm nf = normal_form(x);
    CHECK(std::abs(nf.s - s) <= 1e-9);
    CHECK(std::abs(nf.t - t) <= 1e-9);
    CHECK(nf.residual <= 1e-9);
  }

  // The documented example pair (s,t) = (0.3, 0.7).
  Rng rng2(29);
  const BundlePoint x = act(random_group_element<double>(rng2), normal_form_point(1, 0.3, 0.7));
  const NormalForm nf = normal_form(x);
  CHECK(std::abs(nf.s - 0.3) <= 1e-9);
  CHECK(std::abs(nf.t - 0.7) <= 1e-9);
}

TEST_CASE("stratum classification") {
  const StratumFlags fa = stratum_classify(alpha_circle(2, 0.8));
  CHECK(fa.in_E1);
  CHECK_FALSE(fa.in_E9);
  CHECK_FALSE(fa.in_E8);

  const double r = 1.0 / std::sqrt(2.0);
  {
    const QuatPair u{r * Quaternion::i(), r * Quaternion::j()};
    Rng rng(1);
    BundlePoint x = random_bundle_point<double>(1, rng);
    x.u = u;  // classification only reads u
    const StratumFlags f = stratum_classify(x);
    CHECK(f.in_E8);
    CHECK(f.in_E9);
    CHECK_FALSE(f.in_E1);
  }
  {
    const QuatPair u = normalized(QuatPair{Quaternion::i(), Quaternion{r, r, 0, 0}});
    BundlePoint x{0, u, kE2};
    const StratumFlags f = stratum_classify(x);
    CHECK(f.in_E9);
    CHECK_FALSE(f.in_E8);
  }
}

TEST_CASE("star/bullet orbits coincide on the circle") {
  Rng rng(37);
  for (int n = -2; n <= 2; ++n) {
    for (double t : {0.0, 0.5, 1.5, 3.0, 5.0}) {
      const BundlePoint a = alpha_circle(n, t);
      for (int i = 0; i < 50; ++i) {
        const Quaternion q = random_unit_s3(rng);
        const BundlePoint moved = act(GroupElement::bullet(q), a);
        const auto w = star_orbit_witness(a, moved, 1e-9);
        CHECK(w.has_value());
      }
    }
  }
}

TEST_CASE("sigma5 canonical representative") {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    // Random E^8_0 point: imaginary pair u, v = (0, q).
    const BundlePoint canon{0, random_unit_s5(rng),
                            {Quaternion(0.0), Quaternion::one()}};
    CHECK(membership_residual(canon) <= 1e-13);
    CHECK(dist(sigma5_canonical_rep(canon), canon) == 0.0);  // idempotence

    const Quaternion q = random_unit_s3(rng);
    const BundlePoint moved = act(GroupElement::star(q), canon);
    const BundlePoint rep = sigma5_canonical_rep(moved);
    CHECK(dist(rep, canon) <= 1e-12);
    CHECK(dist(sigma5_canonical_rep(rep), rep) <= 1e-13);
    const auto w = star_orbit_witness(moved, rep);
    CHECK(w.has_value());
  }

  CHECK_THROWS_AS(sigma5_canonical_rep(alpha_circle(0, 0.3)), std::domain_error);
}

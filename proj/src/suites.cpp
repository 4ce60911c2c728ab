#include "gm/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "gm/models.hpp"

namespace gm {

namespace {

using Checks = std::vector<CheckResult>;

struct SuiteDef {
  double default_tol;
  std::function<Checks(const SuiteConfig&)> run;
};

void grow(CheckResult& c, double residual) {
  c.max_residual = std::max(c.max_residual, residual);
}

std::pair<Vec3<double>, Quaternion> random_s6_split(Rng& rng) {
  const QuatPair u = random_unit_s6(rng);
  return {u.first.im, u.second};
}

std::string quaternion_witness(const Quaternion& q) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "q = (%.17g, %.17g, %.17g, %.17g)", q.re,
                q.im[0], q.im[1], q.im[2]);
  return buf;
}

Checks suite_rho_oracle(const SuiteConfig& cfg) {
  CheckResult c{"oracle-agreement"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const QuatPair u = random_unit_s7(rng);
    grow(c, dist(rho(cfg.n, u), oct_power(cfg.n, u)));
  }
  return {c};
}

Checks suite_parity(const SuiteConfig& cfg) {
  CheckResult odd{"odd-powers"}, even{"even-powers"};
  const QuatPair pole{Quaternion::one(), Quaternion(0.0)};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const QuatPair u = random_unit_s6(rng);
    for (int m = -3; m <= 3; ++m) {
      const double sgn = m % 2 == 0 ? 1.0 : -1.0;
      grow(odd, dist(rho(2 * m + 1, u), sgn * u));
      grow(even, dist(rho(2 * m, u), sgn * pole));
    }
  }
  return {odd, even};
}

Checks suite_bundle_invariance(const SuiteConfig& cfg) {
  CheckResult mem{"membership"}, law{"group-law"}, comm{"star-bullet-commute"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const BundlePoint x = random_bundle_point<double>(cfg.n, rng);
    const GroupElement g = random_group_element<double>(rng);
    const GroupElement h = random_group_element<double>(rng);
    grow(mem, membership_residual(act(g, x)));
    grow(law, dist(act(g, act(h, x)), act(g * h, x)));
    const Quaternion q = random_unit_s3(rng);
    const GroupElement bullet = GroupElement::bullet(h.q3);
    grow(comm, dist(act(GroupElement::star(q), act(bullet, x)),
                    act(bullet, act(GroupElement::star(q), x))));
  }
  return {mem, law, comm};
}

Checks suite_pullback(const SuiteConfig& cfg) {
  CheckResult c{"pullback-identity"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const auto [p, w] = random_s6_split(rng);
    for (int k = 0; k < 100; ++k) {
      const double t = 2 * M_PI * k / 100 + 0.01;
      const Sp2Element a = rho_tilde(lift_gamma(cfg.n, p, w, t));
      const BundlePoint b = lift_gamma(1, p, w, cfg.n * t);
      grow(c, dist(a.col1, b.u) + dist(a.col2, b.v));
    }
  }
  return {c};
}

Checks suite_horizontality(const SuiteConfig& cfg) {
  CheckResult fib{"fiber-horizontal"}, orb{"orbit-perpendicular"};
  const MetricParams m{cfg.nu};
  const double h = 1e-6;
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const auto [p, w] = random_s6_split(rng);
    if (norm(w) < 1e-3) continue;
    const double t = rng.uniform(0.1, 2 * M_PI);
    const BundlePoint a = lift_gamma(cfg.n, p, w, t - h);
    const BundlePoint b = lift_gamma(cfg.n, p, w, t + h);
    const TangentVector vel{lift_gamma(cfg.n, p, w, t), (0.5 / h) * (b.u - a.u),
                            (0.5 / h) * (b.v - a.v)};
    grow(fib, hermitian(vel.at.v, vel.dv).im.norm());
    for (const Quaternion& xi : {Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
      const TangentVector gen{
          vel.at,
          {xi * vel.at.u.first - vel.at.u.first * xi,
           xi * vel.at.u.second - vel.at.u.second * xi},
          {xi * vel.at.v.first, xi * vel.at.v.second}};
      grow(orb, std::abs(metric_eval(m, vel, gen)));
    }
  }
  return {fib, orb};
}

Checks suite_wiedersehen(const SuiteConfig& cfg) {
  CheckResult at_pi{"antipode-orbit"}, at_2pi{"return-orbit"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const auto [p, w] = random_s6_split(rng);
    const WiedersehenReport r = wiedersehen_check(cfg.n, p, w);
    grow(at_pi, r.residual_pi);
    grow(at_2pi, r.residual_2pi);
  }
  return {at_pi, at_2pi};
}

Checks suite_clutching(const SuiteConfig& cfg) {
  CheckResult c{"half-turn-orbit"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const auto [p, w] = random_s6_split(rng);
    if (norm(w) < 1e-6) continue;
    const ClutchValue moved = sigma_pow(cfg.n, ClutchValue{p, w});
    const BundlePoint x = lift_gamma(cfg.n, p, w, M_PI / 2);
    const BundlePoint other =
        lift_gamma(cfg.n, Vec3<double>(-moved.p), -moved.w, M_PI / 2);
    const OrbitWitness wit =
        star_orbit_candidate(x, BundlePoint{cfg.n, -other.u, -other.v});
    if (wit.residual > c.max_residual) {
      c.max_residual = wit.residual;
      c.witness = quaternion_witness(wit.q);
    }
  }
  return {c};
}

Checks suite_degree(const SuiteConfig& cfg) {
  CheckResult c{"degree-equals-n"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    for (;;) {
      const QuatPair y = random_unit_s7(rng);
      const double st = std::sin(decompose(y).t);
      if (st < 0.3 || st > 0.95) continue;
      grow(c, std::abs(double(degree_check(cfg.n, y, 1e-5) - cfg.n)));
      break;
    }
  }
  return {c};
}

Checks suite_join(const SuiteConfig& cfg) {
  CheckResult mem{"endpoint-membership"}, strata{"strata-flags"};
  const int steps = std::max(16, int(std::ceil(M_PI / 2 / cfg.step)));
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const double t0 = rng.uniform(0.1, 1.4);
    const JoinReport r = join_segment(cfg.n, t0, random_unit_s5(rng), steps);
    grow(mem, r.endpoint_membership);
    if (!r.start_in_E1 || !r.end_in_E8) grow(strata, 1.0);
  }
  return {mem, strata};
}

Checks suite_sigma5(const SuiteConfig& cfg) {
  CheckResult rec{"recover-canonical"}, idem{"idempotent"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const BundlePoint canon{0, random_unit_s5(rng),
                            {Quaternion(0.0), Quaternion::one()}};
    const BundlePoint moved = act(GroupElement::star(random_unit_s3(rng)), canon);
    const BundlePoint rep = sigma5_canonical_rep(moved);
    grow(rec, dist(rep, canon));
    grow(idem, dist(sigma5_canonical_rep(rep), rep));
  }
  return {rec, idem};
}

Checks suite_normal_form(const SuiteConfig& cfg) {
  CheckResult rs{"recover-s"}, rt{"recover-t"}, res{"witness-residual"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const double s = rng.uniform(0.05, M_PI / 2 - 0.05);
    const double t = rng.uniform(0.05, M_PI / 2 - 0.05);
    const BundlePoint x =
        act(random_group_element<double>(rng), normal_form_point(cfg.n, s, t));
    const NormalForm nf = normal_form(x);
    grow(rs, std::abs(nf.s - s));
    grow(rt, std::abs(nf.t - t));
    grow(res, nf.residual);
  }
  return {rs, rt, res};
}

MilnorGroupElement random_milnor_element(Rng& rng) {
  for (;;) {
    Eigen::Matrix<double, 2, 2> m;
    m << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
    if (std::abs(m.determinant()) < 0.1) continue;
    return {m, random_unit_s3(rng), false};
  }
}

Checks suite_isotropy(const SuiteConfig& cfg, IsotropyFamily family) {
  const int d = 3;
  const double sm = brieskorn_s_minus<double>(d);
  const bool milnor = family == IsotropyFamily::MilnorAlpha;
  const double s_minus_pt = milnor ? 0.0 : sm;
  const double s_mid = milnor ? 0.3 : -0.3;
  const double s_plus_pt = milnor ? M_PI / 4 : 0.0;

  CheckResult km{"k-minus-fixed"}, hh{"h-fixed"}, kp{"k-plus-fixed"};
  CheckResult rej{"random-rejection"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const std::vector<double> taus{rng.uniform(0.0, 2 * M_PI)};
    const std::vector<double> thetas{rng.uniform(0.0, 2 * M_PI)};
    for (double v : isotropy_scan(family, s_minus_pt, k_minus_candidates(taus), d)) {
      grow(km, v);
    }
    for (double v : isotropy_scan(family, s_mid, h_candidates<double>(), d)) {
      grow(hh, v);
    }
    for (double v : isotropy_scan(family, s_plus_pt, k_plus_candidates(d, thetas), d)) {
      grow(kp, v);
    }
    const std::vector<MilnorGroupElement> random_els{random_milnor_element(rng)};
    for (double v : isotropy_scan(family, s_mid, random_els, d)) {
      if (v <= 1e-3) grow(rej, 1.0);  // counts candidates that failed to move
    }
  }
  return {km, hh, kp, rej};
}

// Random chart-1 point of M^5_d: v unit imaginary, Im v orthogonal to Im u.
MilnorPoint random_m5(Rng& rng) {
  for (;;) {
    const Quaternion u{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    Vec3<double> dir(rng.gaussian(), rng.gaussian(), rng.gaussian());
    dir -= u.im * (dir.dot(u.im) / u.im.squaredNorm());
    if (dir.norm() < 1e-3) continue;
    return {1, u, pure(Vec3<double>(dir / dir.norm())), 2, -1};
  }
}

Checks suite_m5_invariance(const SuiteConfig& cfg) {
  CheckResult tr{"transition-preserves"}, ac{"action-preserves"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const MilnorPoint x = random_m5(rng);
    grow(tr, m5_residual(milnor_transition(x)));
    const double th = rng.uniform(0.0, 2 * M_PI);
    Eigen::Matrix<double, 2, 2> rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const MilnorGroupElement g{rot, random_unit_s3(rng), (rng.bits() & 1) != 0};
    grow(ac, m5_residual(milnor_act(g, x)));
  }
  return {tr, ac};
}

Checks suite_w7_fixed(const SuiteConfig& cfg) {
  const int n = cfg.n >= 1 ? cfg.n : 1;
  CheckResult fix{"fixed-residual"}, eq{"w3-equation"}, gen{"generic-moves"};
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(mix_seed(cfg.seed, i));
    const BrieskornPoint7 fixed = random_brieskorn7<double>(n, rng, true);
    grow(fix, w7_fixed_residual(fixed));
    grow(eq, std::abs(cpow_int(fixed.w, 6 * n - 1) + cpow_int(fixed.z0, 3) +
                      fixed.z[0] * fixed.z[0]));
    const BrieskornPoint7 generic = random_brieskorn7<double>(n, rng);
    if (w7_fixed_residual(generic) <= 1e-3) grow(gen, 1.0);
  }
  return {fix, eq, gen};
}

const std::map<std::string, SuiteDef>& registry_map() {
  static const std::map<std::string, SuiteDef> reg{
      {"rho-oracle", {1e-12, suite_rho_oracle}},
      {"parity", {1e-12, suite_parity}},
      {"bundle-invariance", {1e-11, suite_bundle_invariance}},
      {"pullback-identity", {1e-10, suite_pullback}},
      {"horizontality", {1e-6, suite_horizontality}},
      {"wiedersehen", {1e-9, suite_wiedersehen}},
      {"clutching", {1e-9, suite_clutching}},
      {"degree", {0.5, suite_degree}},
      {"join", {1e-8, suite_join}},
      {"sigma5-rep", {1e-12, suite_sigma5}},
      {"normal-form", {1e-9, suite_normal_form}},
      {"milnor-isotropy",
       {1e-11, [](const SuiteConfig& c) {
          return suite_isotropy(c, IsotropyFamily::MilnorAlpha);
        }}},
      {"brieskorn-isotropy",
       {1e-11, [](const SuiteConfig& c) {
          return suite_isotropy(c, IsotropyFamily::BrieskornBeta);
        }}},
      {"m5-invariance", {1e-10, suite_m5_invariance}},
      {"w7-fixed", {1e-12, suite_w7_fixed}},
  };
  return reg;
}

Report assemble(const SuiteConfig& cfg, Checks checks, double elapsed_ms) {
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  Report r;
  r.suite = cfg.suite;
  r.params = cfg;
  r.passed = true;
  for (CheckResult& c : checks) {
    c.passed = c.max_residual <= cfg.tol;
    r.passed = r.passed && c.passed;
  }
  r.checks = std::move(checks);
  r.wall_time_ms = elapsed_ms;
  return r;
}

}  // namespace

const std::vector<std::string>& suite_registry() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, def] : registry_map()) out.push_back(name);
    return out;
  }();
  return names;
}

double suite_default_tol(const std::string& suite) {
  const auto it = registry_map().find(suite);
  if (it == registry_map().end()) {
    std::string msg = "unknown suite '" + suite + "'; available:";
    for (const auto& name : suite_registry()) msg += " " + name;
    throw UsageError(msg);
  }
  return it->second.default_tol;
}

Report run_suite(const SuiteConfig& cfg) {
  const auto it = registry_map().find(cfg.suite);
  if (it == registry_map().end()) {
    std::string msg = "unknown suite '" + cfg.suite + "'; available:";
    for (const auto& name : suite_registry()) msg += " " + name;
    throw UsageError(msg);
  }
  SuiteConfig resolved = cfg;
  if (resolved.tol < 0) resolved.tol = it->second.default_tol;
  const auto start = std::chrono::steady_clock::now();
  Checks checks = it->second.run(resolved);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return assemble(resolved, std::move(checks), ms);
}

Report run_orbit_eq(const SuiteConfig& cfg) {
  SuiteConfig resolved = cfg;
  resolved.suite = "orbit-eq";
  if (resolved.tol < 0) resolved.tol = 1e-12;
  const auto start = std::chrono::steady_clock::now();
  CheckResult rec{"witness-recovery"}, rej{"independent-rejection"};
  for (int i = 0; i < resolved.samples; ++i) {
    Rng rng(mix_seed(resolved.seed, i));
    const BundlePoint x = random_bundle_point<double>(resolved.n, rng);
    const Quaternion q = random_unit_s3(rng);
    const OrbitWitness w = star_orbit_candidate(x, act(GroupElement::star(q), x));
    grow(rec, std::min(dist(w.q, q), dist(w.q, -q)) + w.residual);
    const BundlePoint y = random_bundle_point<double>(resolved.n, rng);
    if (star_orbit_witness(x, y).has_value()) grow(rej, 1.0);
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return assemble(resolved, {rec, rej}, ms);
}

}  // namespace gm

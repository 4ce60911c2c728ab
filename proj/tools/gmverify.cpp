#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gm/suites.hpp"

namespace {

void add_common_flags(CLI::App* cmd, gm::SuiteConfig* cfg, std::string* out) {
  cmd->add_option("--n", cfg->n, "Bundle parameter n");
  cmd->add_option("--nu", cfg->nu, "Fiber scale of the connection metric")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", cfg->samples, "Number of random samples")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg->seed, "Master RNG seed");
  cmd->add_option("--tol", cfg->tol, "Tolerance (default: per-suite)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step", cfg->step, "Integrator step size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", *out, "Write the JSON report to this path");
}

int finish(const gm::Report& report, const std::string& out) {
  if (out.empty()) {
    std::cout << gm::format_report(report);
  } else {
    gm::emit_report(report, out);
    std::cout << report.suite << ": " << (report.passed ? "passed" : "FAILED")
              << " (" << out << ")\n";
  }
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmverify: numerical verification of an exotic 7-sphere construction"};
  app.require_subcommand(1);

  gm::SuiteConfig cfg;
  std::string out;

  CLI::App* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("--suite", cfg.suite, "Suite name")->required();
  add_common_flags(verify, &cfg, &out);

  CLI::App* trace = app.add_subcommand("trace", "Export a geodesic lift as CSV");
  add_common_flags(trace, &cfg, &out);

  CLI::App* orbit_eq =
      app.add_subcommand("orbit-eq", "Star-orbit equality witnesses on random pairs");
  add_common_flags(orbit_eq, &cfg, &out);

  CLI::App* normal_form =
      app.add_subcommand("normal-form", "Normal-form round-trip verification");
  add_common_flags(normal_form, &cfg, &out);

  CLI::App* degree = app.add_subcommand("degree", "Degree verification of the power map");
  add_common_flags(degree, &cfg, &out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cfg.tol < 0) {
    if (const char* env = std::getenv("GM_SPHERES_TOL")) {
      const double v = std::atof(env);
      if (v <= 0) {
        std::cerr << "GM_SPHERES_TOL must be a positive number\n";
        return 2;
      }
      cfg.tol = v;
    }
  }

  try {
    if (verify->parsed()) {
      return finish(gm::run_suite(cfg), out);
    }
    if (trace->parsed()) {
      if (out.empty()) {
        std::cerr << "trace requires --out\n";
        return 2;
      }
      gm::Rng rng(cfg.seed);
      const gm::QuatPair s6 = gm::random_unit_s6(rng);
      gm::trace_geodesic(cfg.n, s6.first.im, s6.second, 2 * M_PI, cfg.step, out);
      std::cout << "trace: written (" << out << ")\n";
      return 0;
    }
    if (orbit_eq->parsed()) {
      return finish(gm::run_orbit_eq(cfg), out);
    }
    if (normal_form->parsed()) {
      cfg.suite = "normal-form";
      return finish(gm::run_suite(cfg), out);
    }
    if (degree->parsed()) {
      cfg.suite = "degree";
      return finish(gm::run_suite(cfg), out);
    }
  } catch (const gm::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

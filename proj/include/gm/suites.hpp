#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gm/report.hpp"

namespace gm {

// Command-line / configuration errors (exit code 2), as opposed to
// internal numeric failures (exit code 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& suite_registry();

double suite_default_tol(const std::string& suite);

// Runs a named verification suite. Deterministic for fixed config; the
// per-sample RNGs derive from (seed, sample index).
Report run_suite(const SuiteConfig& cfg);

// Star-orbit equality demo: constructed pairs must yield witnesses,
// independent pairs must be rejected.
Report run_orbit_eq(const SuiteConfig& cfg);

}  // namespace gm

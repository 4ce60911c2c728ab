#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gm/geometry.hpp"

namespace gm {

struct SuiteConfig {
  std::string suite;
  int n{1};
  double nu{1.0};
  int samples{100};
  std::uint64_t seed{0};
  double tol{-1.0};  // negative: use the suite default
  double step{1e-3};
};

struct CheckResult {
  std::string name;
  bool passed{true};
  double max_residual{0.0};
  std::string witness;  // optional; empty means absent
};

struct Report {
  std::string suite;
  SuiteConfig params;
  std::vector<CheckResult> checks;
  bool passed{true};
  double wall_time_ms{0.0};
};

namespace detail {

inline std::string json_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace detail

// Fixed field order, 17 significant digits; byte-identical across reruns
// with the same config except for wall_time_ms.
inline std::string format_report(const Report& r) {
  using detail::json_number;
  using detail::json_string;
  std::ostringstream os;
  os << "{\n";
  os << "  \"suite\": " << json_string(r.suite) << ",\n";
  os << "  \"params\": {";
  os << "\"suite\": " << json_string(r.params.suite);
  os << ", \"n\": " << r.params.n;
  os << ", \"nu\": " << json_number(r.params.nu);
  os << ", \"samples\": " << r.params.samples;
  os << ", \"seed\": " << r.params.seed;
  os << ", \"tol\": " << json_number(r.params.tol);
  os << ", \"step\": " << json_number(r.params.step);
  os << "},\n";
  os << "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const CheckResult& c = r.checks[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"name\": " << json_string(c.name);
    os << ", \"passed\": " << (c.passed ? "true" : "false");
    os << ", \"max_residual\": " << json_number(c.max_residual);
    if (!c.witness.empty()) os << ", \"witness\": " << json_string(c.witness);
    os << "}";
  }
  os << (r.checks.empty() ? "],\n" : "\n  ],\n");
  os << "  \"passed\": " << (r.passed ? "true" : "false") << ",\n";
  os << "  \"wall_time_ms\": " << json_number(r.wall_time_ms) << "\n";
  os << "}\n";
  return os.str();
}

inline void emit_report(const Report& r, const std::string& out_path) {
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("emit_report: cannot write " + out_path);
  f << format_report(r);
}

// CSV export of the explicit lift: 17 columns, one row per step.
inline constexpr const char* kTraceHeader =
    "t,u1_re,u1_i,u1_j,u1_k,u2_re,u2_i,u2_j,u2_k,"
    "v1_re,v1_i,v1_j,v1_k,v2_re,v2_i,v2_j,v2_k";

inline void trace_geodesic(int n, const Vec3<double>& p, const Quaternion& w,
                           double t_max, double step, const std::string& out_path) {
  if (step <= 0) throw std::invalid_argument("trace_geodesic: step must be positive");
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("trace_geodesic: cannot write " + out_path);
  f << kTraceHeader << "\n";
  const auto cell = [](double v) { return detail::json_number(v == 0 ? 0.0 : v); };
  for (int i = 0;; ++i) {
    const double t = std::min(i * step, t_max);
    const BundlePoint x = lift_gamma(n, p, w, t);
    f << cell(t);
    for (const Quaternion& q : {x.u.first, x.u.second, x.v.first, x.v.second}) {
      f << ',' << cell(q.re) << ',' << cell(q.im[0]) << ',' << cell(q.im[1]) << ','
        << cell(q.im[2]);
    }
    f << "\n";
    if (i * step >= t_max) break;
  }
}

}  // namespace gm

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobenius/rational.hpp"

namespace frobenius {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, degenerate, error, info };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::degenerate: return "degenerate";
    case Status::error: return "error";
    case Status::info: return "info";
  }
  return "error";
}

/// 17 significant digits, so the text round-trips to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json to_json(const Complex& z) { return Json::array({format_double(z.real()), format_double(z.imag())}); }

inline Json to_json(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

/// Outcome of one property check.
struct CheckReport {
  std::string name;
  Status status = Status::info;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Complex>> samples;
  Json metadata = Json::object();
  /// Soft checks are reported but do not affect the overall verdict.
  bool hard = true;

  bool passed() const { return status == Status::pass || status == Status::info; }

  /// Sets pass/fail from `residual` against the tolerance (NaN fails).
  CheckReport& judge(double residual) {
    max_residual = residual;
    status = (std::isfinite(residual) && residual <= tolerance) ? Status::pass : Status::fail;
    return *this;
  }

  CheckReport& note(const std::string& key, Json value) {
    metadata[key] = std::move(value);
    return *this;
  }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["status"] = frobenius::to_string(status);
    j["hard"] = hard;
    j["max_residual"] = format_double(max_residual);
    j["tolerance"] = format_double(tolerance);
    j["seed"] = seed;
    Json pts = Json::array();
    for (const auto& s : samples) pts.push_back(frobenius::to_json(s));
    j["samples"] = pts;
    j["metadata"] = metadata;
    return j;
  }
};

inline CheckReport make_report(std::string name, double tolerance, std::uint64_t seed = 0) {
  CheckReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.seed = seed;
  return r;
}

/// Max-reduction of per-sample reports of the same check. Any error or
/// degenerate verdict dominates; samples are concatenated in input order.
inline CheckReport aggregate(std::string name, const std::vector<CheckReport>& parts, double tolerance,
                             std::uint64_t seed) {
  CheckReport r = make_report(std::move(name), tolerance, seed);
  r.status = Status::pass;
  int degenerate = 0;
  int errors = 0;
  Json messages = Json::array();
  for (const auto& p : parts) {
    r.samples.insert(r.samples.end(), p.samples.begin(), p.samples.end());
    if (p.status == Status::error) {
      ++errors;
      if (p.metadata.contains("error")) messages.push_back(p.metadata["error"]);
      continue;
    }
    if (p.status == Status::degenerate) {
      ++degenerate;
      continue;
    }
    r.max_residual = std::max(r.max_residual, std::isnan(p.max_residual) ? INFINITY : p.max_residual);
  }
  if (errors > 0) {
    r.status = Status::error;
  } else if (degenerate > 0) {
    r.status = Status::degenerate;
  } else {
    r.judge(r.max_residual);
  }
  r.note("sample_count", parts.size());
  if (degenerate > 0) r.note("degenerate_samples", degenerate);
  if (errors > 0) r.note("errors", messages);
  return r;
}

inline bool all_hard_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return !r.hard || r.passed(); });
}

}  // namespace frobenius

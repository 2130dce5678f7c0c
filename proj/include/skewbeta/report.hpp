#pragma once

// Machine-readable verification reports.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace skewbeta {

enum class CaseStatus { Pass, Fail, Skipped };

inline const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "fail";
    case CaseStatus::Skipped: return "skipped";
  }
  return "fail";
}

struct VerificationCase {
  std::string name;
  CaseStatus status = CaseStatus::Fail;
  double statistic = 0.0;
  double tolerance = 0.0;
  std::optional<double> p_value;
};

/// Multiplier applied to every tolerance, read from SKEWBETA_TOL_OVERRIDE
/// (default 1). Deterministic cases pass when statistic <= factor * tolerance;
/// statistical cases pass when p >= significance / factor, so a factor of 0
/// fails every statistical case and every deterministic case with a nonzero
/// statistic.
inline double tolerance_factor() {
  const char* env = std::getenv("SKEWBETA_TOL_OVERRIDE");
  if (env == nullptr || *env == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || !(v >= 0.0)) return 0.0;  // unreadable override counts as corrupted
  return v;
}

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerificationCase> cases;

  /// Records a deterministic check: passes iff statistic <= factor * tolerance.
  void check(std::string name, double statistic, double tolerance) {
    const bool ok = statistic <= tolerance_factor() * tolerance;
    cases.push_back({std::move(name), ok ? CaseStatus::Pass : CaseStatus::Fail, statistic, tolerance, std::nullopt});
  }

  /// Records a statistical check with significance level alpha.
  void check_p(std::string name, double statistic, double p_value, double alpha) {
    const double f = tolerance_factor();
    const bool ok = f > 0.0 && p_value >= alpha / f;
    cases.push_back({std::move(name), ok ? CaseStatus::Pass : CaseStatus::Fail, statistic, alpha, p_value});
  }

  /// Records a check that could not be evaluated.
  void fail(std::string name, double tolerance) {
    cases.push_back({std::move(name), CaseStatus::Fail, std::nan(""), tolerance, std::nullopt});
  }

  void append(const VerificationReport& other) {
    for (const auto& c : other.cases) {
      auto copy = c;
      copy.name = other.suite + "/" + c.name;
      cases.push_back(std::move(copy));
    }
  }

  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.status == CaseStatus::Fail;
    return n;
  }

  [[nodiscard]] bool passed() const { return failures() == 0; }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["failures"] = failures();
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
      nlohmann::json e;
      e["name"] = c.name;
      e["status"] = to_string(c.status);
      e["statistic"] = std::isfinite(c.statistic) ? nlohmann::json(c.statistic) : nlohmann::json(nullptr);
      e["tolerance"] = c.tolerance;
      e["p_value"] = c.p_value ? nlohmann::json(*c.p_value) : nlohmann::json(nullptr);
      j["cases"].push_back(std::move(e));
    }
    return j;
  }
};

}  // namespace skewbeta

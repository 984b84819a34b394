#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gsk {

struct CheckResult {
  std::string name;
  std::optional<double> analytic_lower;
  double oracle_value = 0.0;
  std::optional<double> analytic_upper;
  double slack = 0.0;
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  int restarts = 24;              // random restarts per ν_E call, on top of injected seeds
  std::optional<double> E;        // restricts the energy grid of suites that sweep E
  long net_sample_budget = 1000000;
  std::size_t coverage_probes = 100000;
};

// lower ≤ value ≤ upper, each side widened by slack
CheckResult make_check(std::string name, std::optional<double> lower, double value, std::optional<double> upper,
                       double slack);

const std::vector<std::string>& suite_names();  // excluding "all"
// throws ParameterError for unknown names; "all" concatenates every suite
std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& opt);

nlohmann::json check_to_json(const CheckResult& c);
nlohmann::json suite_to_json(const SuiteResult& s);

}  // namespace gsk

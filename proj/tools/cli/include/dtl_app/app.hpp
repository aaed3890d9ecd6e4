#pragma once

#include "dtl/drinfeld.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dtl::app {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

struct Caps {
  Rational prec{40};
  int tdeg = 3;
  int zdeg = 8;
  int tau_order = 8;
  int pole_count = 30;
};

struct ScenarioConfig {
  std::string scenario;
  json module;  // raw echo; parsed on demand
  Caps caps;
  std::optional<Rational> retry_prec_factor;
  json params = json::object();
  json expect;  // golden expectations, used by `verify`
  std::string source;
};

const std::vector<std::string>& scenario_names();

// Throws ConfigError on any malformed field.
ScenarioConfig parse_config(const json& doc, std::string source = "<memory>");
ScenarioConfig load_config(const std::string& path);

// Module description: {"p", "m", "s", "A": [[term, ...], ...]} with terms
// {"c": int | "g^k", "theta": rational, "t": [nu_1..nu_s]}.
DrinfeldModule build_module(const json& module, int tdeg);
TateApprox build_element(const json& terms, FieldDesc f, int s, int tdeg);

struct CheckRecord {
  std::string name;
  std::string subject;  // which instance (period index, coefficient index)
  XRational residual_ord;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string scenario;
  json inputs;
  std::vector<CheckRecord> checks;
  json derived = json::object();
  int attempts = 1;
  Rational prec_used{0};
  std::optional<double> wall_clock_s;

  int passed() const;
  int failed() const;
  bool pass() const { return failed() == 0 && !checks.empty(); }
};

// Computation errors become failed checks; only ConfigError escapes.
Report run_scenario(const ScenarioConfig& cfg);

json to_json(const Report& r);
Report report_from_json(const json& j);
std::string to_text(const Report& r);
// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

std::string render(const Rational& x);
std::string render(const XRational& x);
Rational parse_rational(const json& v);

struct VerifyOutcome {
  std::string file;
  bool pass = false;
  std::vector<std::string> failures;
};
// Every *.json directly inside dir, in name order.
std::vector<VerifyOutcome> verify_dir(const std::string& dir);
// Expectation mismatches of one report against the config's "expect" block.
std::vector<std::string> compare_expect(const Report& r, const json& expect);

// Full command line; returns the process exit code.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtl::app

#include "dtl/errors.hpp"
#include "dtl_app/app.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dtl::app {

namespace {

std::int64_t parse_int(std::string_view s, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(what + ": not an integer: '" + std::string(s) + "'");
  return v;
}

int get_int(const json& obj, const char* key, int fallback, int lo, int hi) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi)
    throw ConfigError(std::string(key) + " = " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return static_cast<int>(x);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items())
    if (!ok.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldElem parse_coeff(const json& c, FieldDesc f) {
  if (c.is_number_integer()) return FieldElem::from_int(f, c.get<std::int64_t>());
  if (c.is_string()) {
    const std::string s = c.get<std::string>();
    if (s.rfind("g^", 0) == 0) return FieldElem::generator(f).pow(parse_int(std::string_view(s).substr(2), "c"));
  }
  throw ConfigError("coefficient must be an integer or \"g^k\"");
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"agf_suite",        "carlitz_suite",   "criteria_report",
                                                 "derham_suite",     "exp_inverse_demo", "explog_suite",
                                                 "frame_suite",      "torsion_periods"};
  return names;
}

std::string render(const Rational& x) {
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

std::string render(const XRational& x) { return x.is_inf() ? "inf" : render(x.value()); }

Rational parse_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) throw ConfigError("rational must be an integer or a \"num/den\" string");
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, "rational"));
  const std::int64_t den = parse_int(std::string_view(s).substr(slash + 1), "rational");
  if (den == 0) throw ConfigError("rational with zero denominator");
  return Rational(parse_int(std::string_view(s).substr(0, slash), "rational"), den);
}

TateApprox build_element(const json& terms, FieldDesc f, int s, int tdeg) {
  if (!terms.is_array()) throw ConfigError("element must be a list of terms");
  TateApprox x(s, tdeg);
  for (const auto& t : terms) {
    if (!t.is_object()) throw ConfigError("term must be an object");
    reject_unknown(t, {"c", "theta", "t"}, "term");
    const FieldElem c = t.contains("c") ? parse_coeff(t.at("c"), f) : FieldElem::one(f);
    const Rational k = t.contains("theta") ? parse_rational(t.at("theta")) : Rational(0);
    MultiIndex nu(static_cast<std::size_t>(s), 0);
    if (t.contains("t")) {
      const json& tv = t.at("t");
      if (!tv.is_array() || static_cast<int>(tv.size()) != s) throw ConfigError("term t must list s exponents");
      int total = 0;
      for (int i = 0; i < s; ++i) {
        if (!tv[static_cast<std::size_t>(i)].is_number_integer()) throw ConfigError("t exponents must be integers");
        const int e = tv[static_cast<std::size_t>(i)].get<int>();
        if (e < 0) throw ConfigError("t exponents must be nonnegative");
        nu[static_cast<std::size_t>(i)] = e;
        total += e;
      }
      if (total > tdeg) throw ConfigError("term t-degree exceeds caps.tdeg");
    }
    if (!c.is_zero()) x.add_to(nu, PuiseuxApprox::monomial(c, k));
  }
  return x;
}

DrinfeldModule build_module(const json& module, int tdeg) {
  if (!module.is_object()) throw ConfigError("module must be an object");
  reject_unknown(module, {"p", "m", "s", "A"}, "module");
  const int p = get_int(module, "p", 3, 2, 13);
  if (!is_prime(p)) throw ConfigError("module.p must be prime");
  const int m = get_int(module, "m", 1, 1, 4);
  const int s = get_int(module, "s", 1, 1, 3);
  if (!module.contains("A") || !module.at("A").is_array() || module.at("A").empty())
    throw ConfigError("module.A must be a nonempty list of coefficient term lists");
  FieldDesc f;
  try {
    f = FieldDesc::get(p, m, 1);
  } catch (const Error& e) {
    throw ConfigError(std::string("field: ") + e.what());
  }
  std::vector<TateApprox> A;
  for (const auto& a : module.at("A")) A.push_back(build_element(a, f, s, tdeg));
  try {
    return DrinfeldModule(f, A);
  } catch (const DegenerateModule& e) {
    throw ConfigError(std::string("module: ") + e.what());
  }
}

ScenarioConfig parse_config(const json& doc, std::string source) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, {"schema_version", "scenario", "module", "caps", "retry_prec_factor", "params", "expect"},
                 "config");
  if (doc.contains("schema_version") && doc.at("schema_version") != kSchemaVersion)
    throw ConfigError("unsupported schema_version");
  ScenarioConfig cfg;
  cfg.source = std::move(source);
  if (!doc.contains("scenario") || !doc.at("scenario").is_string()) throw ConfigError("missing scenario name");
  cfg.scenario = doc.at("scenario").get<std::string>();
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");

  if (doc.contains("caps")) {
    const json& c = doc.at("caps");
    if (!c.is_object()) throw ConfigError("caps must be an object");
    reject_unknown(c, {"prec", "tdeg", "zdeg", "tau_order", "pole_count"}, "caps");
    if (c.contains("prec")) cfg.caps.prec = parse_rational(c.at("prec"));
    if (cfg.caps.prec <= 0 || cfg.caps.prec > 200) throw ConfigError("caps.prec must lie in (0, 200]");
    cfg.caps.tdeg = get_int(c, "tdeg", cfg.caps.tdeg, 0, 12);
    cfg.caps.zdeg = get_int(c, "zdeg", cfg.caps.zdeg, 1, 16);
    cfg.caps.tau_order = get_int(c, "tau_order", cfg.caps.tau_order, 1, 16);
    cfg.caps.pole_count = get_int(c, "pole_count", cfg.caps.pole_count, 1, 40);
  }
  if (doc.contains("retry_prec_factor")) {
    const Rational f = parse_rational(doc.at("retry_prec_factor"));
    if (f <= 1 || f > 4) throw ConfigError("retry_prec_factor must lie in (1, 4]");
    cfg.retry_prec_factor = f;
  }
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw ConfigError("params must be an object");
    cfg.params = doc.at("params");
  }
  if (doc.contains("expect")) {
    const json& e = doc.at("expect");
    if (!e.is_object()) throw ConfigError("expect must be an object");
    reject_unknown(e, {"verdict", "checks", "derived"}, "expect");
    cfg.expect = e;
  }
  if (doc.contains("module")) {
    cfg.module = doc.at("module");
  } else if (cfg.scenario == "carlitz_suite") {
    cfg.module = json{{"p", 3}, {"A", json::array({json::array({json{{"c", 1}}})})}};
  } else {
    throw ConfigError("scenario '" + cfg.scenario + "' needs a module");
  }
  build_module(cfg.module, cfg.caps.tdeg);  // validate eagerly
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc, path);
}

}  // namespace dtl::app

#include "dtl/errors.hpp"
#include "dtl_app/app.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace dtl::app {

int Report::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; }));
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e{{"name", c.name}, {"residual_ord", render(c.residual_ord)}, {"verdict", c.pass ? "pass" : "fail"}};
    if (!c.subject.empty()) e["subject"] = c.subject;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  json j{{"schema_version", kSchemaVersion},
         {"scenario", r.scenario},
         {"inputs", r.inputs},
         {"checks", std::move(checks)},
         {"derived", r.derived},
         {"attempts", r.attempts},
         {"prec_used", render(r.prec_used)},
         {"summary", {{"passed", r.passed()}, {"failed", r.failed()}, {"verdict", r.pass() ? "pass" : "fail"}}}};
  if (r.wall_clock_s) j["wall_clock_s"] = *r.wall_clock_s;
  return j;
}

Report report_from_json(const json& j) {
  auto need = [&](const char* k) -> const json& {
    if (!j.contains(k)) throw ConfigError(std::string("report: missing '") + k + "'");
    return j.at(k);
  };
  if (need("schema_version") != kSchemaVersion) throw ConfigError("report: unsupported schema_version");
  Report r;
  r.scenario = need("scenario").get<std::string>();
  r.inputs = need("inputs");
  r.derived = need("derived");
  r.attempts = need("attempts").get<int>();
  r.prec_used = parse_rational(need("prec_used"));
  for (const auto& c : need("checks")) {
    CheckRecord rec;
    rec.name = c.at("name").get<std::string>();
    const std::string ro = c.at("residual_ord").get<std::string>();
    rec.residual_ord = ro == "inf" ? XRational::infinity() : XRational(parse_rational(ro));
    const std::string v = c.at("verdict").get<std::string>();
    if (v != "pass" && v != "fail") throw ConfigError("report: bad verdict '" + v + "'");
    rec.pass = v == "pass";
    if (c.contains("subject")) rec.subject = c.at("subject").get<std::string>();
    if (c.contains("detail")) rec.detail = c.at("detail").get<std::string>();
    r.checks.push_back(std::move(rec));
  }
  const json& s = need("summary");
  if (s.at("passed") != r.passed() || s.at("failed") != r.failed())
    throw ConfigError("report: summary disagrees with the check list");
  if (j.contains("wall_clock_s")) r.wall_clock_s = j.at("wall_clock_s").get<double>();
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "scenario: " << r.scenario << "\n";
  os << "prec_used: " << render(r.prec_used) << "  attempts: " << r.attempts << "\n";
  for (const auto& c : r.checks) {
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.subject.empty()) os << " {" << c.subject << "}";
    os << "  residual_ord=" << render(c.residual_ord);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& [k, v] : r.derived.items()) os << "derived " << k << " = " << v.dump() << "\n";
  if (r.wall_clock_s) os << "wall_clock_s: " << *r.wall_clock_s << "\n";
  os << "summary: " << r.passed() << " passed, " << r.failed() << " failed, verdict " << (r.pass() ? "pass" : "fail")
     << "\n";
  return os.str();
}

std::vector<std::string> compare_expect(const Report& r, const json& expect) {
  std::vector<std::string> out;
  const std::string want = expect.is_object() && expect.contains("verdict") ? expect.at("verdict").get<std::string>()
                                                                            : std::string("pass");
  const std::string got = r.pass() ? "pass" : "fail";
  if (want != got) out.push_back("verdict " + got + ", expected " + want);
  if (!expect.is_object()) return out;
  if (expect.contains("checks"))
    for (const auto& [name, v] : expect.at("checks").items()) {
      bool seen = false;
      for (const auto& c : r.checks) {
        if (c.name != name) continue;
        seen = true;
        if ((c.pass ? "pass" : "fail") != v.get<std::string>())
          out.push_back("check '" + name + (c.subject.empty() ? "" : " {" + c.subject + "}") + "' is " +
                        (c.pass ? "pass" : "fail") + ", expected " + v.get<std::string>());
      }
      if (!seen) out.push_back("check '" + name + "' missing from report");
    }
  if (expect.contains("derived"))
    for (const auto& [key, v] : expect.at("derived").items()) {
      if (!r.derived.contains(key))
        out.push_back("derived '" + key + "' missing from report");
      else if (r.derived.at(key) != v)
        out.push_back("derived '" + key + "' = " + r.derived.at(key).dump() + ", expected " + v.dump());
    }
  return out;
}

std::vector<VerifyOutcome> verify_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<VerifyOutcome> out;
  for (const auto& f : files) {
    VerifyOutcome o;
    o.file = f.filename().string();
    try {
      const ScenarioConfig cfg = load_config(f.string());
      const Report r = run_scenario(cfg);
      o.failures = compare_expect(r, cfg.expect);
      if (!o.failures.empty())
        for (const auto& c : r.checks)
          if (!c.pass && !c.detail.empty()) o.failures.push_back("'" + c.name + "': " + c.detail);
    } catch (const Error& e) {
      o.failures.push_back(e.what());
    }
    o.pass = o.failures.empty();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace dtl::app

#include "doctest.h"
#include "dtl/errors.hpp"
#include "dtl_app/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dtl;
using namespace dtl::app;

namespace {

const std::string kData = DTL_TEST_DATA_DIR;
const std::string kScenarios = DTL_SCENARIO_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "dtl_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << body;
  return path;
}

json carlitz_frame() {
  return json::parse(R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1}]]},
                         "caps": {"prec": 30}})");
}

}  // namespace

TEST_CASE("config validation rejects malformed input with ConfigError") {
  CHECK_NOTHROW(parse_config(carlitz_frame()));
  const std::vector<std::string> bad = {
      R"({"scenario": "nope", "module": {"p": 3, "A": [[{"c": 1}]]}})",
      R"({"scenario": "frame_suite"})",
      R"({"scenario": "frame_suite", "module": {"p": 4, "A": [[{"c": 1}]]}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": []}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 0}]]}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[]]}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1, "t": [9]}]]}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1}]]}, "caps": {"prec": 0}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1}]]}, "caps": {"zdeg": 99}})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1}]]}, "retry_prec_factor": 1})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1}]]}, "bogus": 1})",
      R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1, "theta": "1/0"}]]}})",
      R"({"schema_version": 2, "scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 1}]]}})",
  };
  for (const auto& b : bad) {
    CAPTURE(b);
    CHECK_THROWS_AS(parse_config(json::parse(b)), ConfigError);
  }
}

TEST_CASE("carlitz_suite defaults its module") {
  const auto cfg = parse_config(json::parse(R"({"scenario": "carlitz_suite"})"));
  CHECK(cfg.module.at("p") == 3);
}

TEST_CASE("exit codes: usage errors map to 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"run"}).code == kExitUsage);
  CHECK(cli({"run", "--config", "/nonexistent/x.json"}).code == kExitUsage);
  const auto zero_top = write_temp("zero_top.json", R"({"scenario": "frame_suite", "module": {"p": 3, "A": [[{"c": 0}]]}})");
  const Run r = cli({"run", "--config", zero_top});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("error:") != std::string::npos);
  const auto garbage = write_temp("garbage.json", "{not json");
  CHECK(cli({"run", "--config", garbage}).code == kExitUsage);
  CHECK(cli({"run", "--config", zero_top, "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("DTL_SEED is refused") {
  setenv("DTL_SEED", "7", 1);
  const Run r = cli({"fields", "--list"});
  unsetenv("DTL_SEED");
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("DTL_SEED") != std::string::npos);
}

TEST_CASE("run emits byte-identical JSON on repeat and text lists every check") {
  const auto path = write_temp("frame.json", carlitz_frame().dump());
  const Run a = cli({"run", "--config", path});
  const Run b = cli({"run", "--config", path});
  REQUIRE(a.code == kExitPass);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.at("summary").at("verdict") == "pass");
  CHECK_FALSE(j.contains("wall_clock_s"));

  const Run t = cli({"run", "--config", path, "--format", "text"});
  CHECK(t.code == kExitPass);
  for (const auto& c : j.at("checks")) {
    CAPTURE(c.at("name"));
    CHECK(t.out.find(c.at("name").get<std::string>()) != std::string::npos);
  }

  const Run timed = cli({"run", "--config", path, "--timing"});
  CHECK(json::parse(timed.out).contains("wall_clock_s"));
}

TEST_CASE("report round-trips through JSON") {
  const Report r = run_scenario(parse_config(carlitz_frame()));
  const Report back = report_from_json(to_json(r));
  CHECK(dump(to_json(back)) == dump(to_json(r)));
  json tampered = to_json(r);
  tampered["summary"]["passed"] = 0;
  CHECK_THROWS_AS(report_from_json(tampered), ConfigError);
}

TEST_CASE("failing scenario exits 1 and names the failed checks") {
  const auto path = write_temp("nonunif.json", R"({"scenario": "criteria_report",
      "module": {"p": 3, "A": [[{"t": [1]}]]}, "caps": {"prec": 30}})");
  const Run r = cli({"run", "--config", path, "--format", "text"});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("[FAIL] det Theta is a unit") != std::string::npos);
}

TEST_CASE("verify: empty dir, broken golden, shipped scenarios") {
  const Run e = cli({"verify", kData + "/empty"});
  CHECK(e.code == kExitPass);
  CHECK(e.out.find("0 scenarios, 0 failed") != std::string::npos);

  const Run b = cli({"verify", kData + "/broken"});
  CHECK(b.code == kExitFail);
  CHECK(b.out.find("FAIL frame_wrong_psi.json") != std::string::npos);
  CHECK(b.out.find("psi_norm_ord") != std::string::npos);

  const Run s = cli({"verify", kScenarios, "--format", "json"});
  CHECK(s.code == kExitPass);
  const json j = json::parse(s.out);
  CHECK(j.at("failed") == 0);
  CHECK(j.at("scenarios").get<int>() >= 12);

  CHECK(cli({"verify", "/nonexistent"}).code == kExitUsage);
}

TEST_CASE("fields --list prints the table") {
  const Run r = cli({"fields", "--list"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("p m d") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') > 5);
}

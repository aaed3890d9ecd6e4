#include "dtl/errors.hpp"
#include "dtl_app/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace dtl::app {

namespace {

void write_out(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

int cmd_run(const std::string& config, const std::string& out_path, const std::string& format, bool timing,
            std::ostream& out) {
  const ScenarioConfig cfg = load_config(config);
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = run_scenario(cfg);
  if (timing) rep.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_out(format == "text" ? to_text(rep) : dump(to_json(rep)), out_path, out);
  return rep.pass() ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& dir, const std::string& format, std::ostream& out) {
  const auto outcomes = verify_dir(dir);
  const auto failed = std::count_if(outcomes.begin(), outcomes.end(), [](const VerifyOutcome& o) { return !o.pass; });
  if (format == "json") {
    json files = json::array();
    for (const auto& o : outcomes)
      files.push_back({{"file", o.file}, {"verdict", o.pass ? "pass" : "fail"}, {"failures", o.failures}});
    out << dump({{"scenarios", outcomes.size()}, {"failed", failed}, {"files", files}});
  } else {
    for (const auto& o : outcomes) {
      out << (o.pass ? "PASS " : "FAIL ") << o.file << "\n";
      for (const auto& f : o.failures) out << "  - " << f << "\n";
    }
    out << outcomes.size() << " scenarios, " << failed << " failed\n";
  }
  return failed == 0 ? kExitPass : kExitFail;
}

int cmd_fields(std::ostream& out) {
  std::istringstream in{std::string(table_asset_text())};
  std::string line;
  out << "p m d : defining polynomial (ascending coefficients)\n";
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out << line << "\n";
  return kExitPass;
}

}  // namespace

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (std::getenv("DTL_SEED")) {
    err << "error: DTL_SEED is set; the library uses no randomness (property tests take --test-seed)\n";
    return kExitUsage;
  }
  CLI::App app{"Drinfeld modules over Tate algebras: scenario runner and verifier", "dtl"};
  app.require_subcommand(1);

  std::string config, out_path, format = "json", dir, vformat = "text";
  bool timing = false, list = false;
  auto* run = app.add_subcommand("run", "Run one scenario config and emit its report");
  run->add_option("--config", config, "Scenario config (JSON)")->required();
  run->add_option("--out", out_path, "Write the report here instead of stdout");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  run->add_flag("--timing", timing, "Include wall-clock seconds (breaks byte-stability)");

  auto* verify = app.add_subcommand("verify", "Run every *.json scenario in DIR against its expectations");
  verify->add_option("dir", dir, "Scenario directory")->required();
  verify->add_option("--format", vformat, "Summary format")->check(CLI::IsMember({"json", "text"}));

  auto* fields = app.add_subcommand("fields", "Show the shipped defining-polynomial table");
  fields->add_flag("--list", list, "List every table entry")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config, out_path, format, timing, out);
    if (*verify) return cmd_verify(dir, vformat, out);
    return cmd_fields(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dtl::app

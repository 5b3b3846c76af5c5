// Command-line front end: run a scenario file and write its report.
//
//   gplane run          --scenario PATH [--out PATH] [--ext-bound N]
//                       [--group-cap N] [--seed N]
//   gplane scan         same flags; the scenario must declare command "scan"
//   gplane fermat-check same flags; command "fermat-check" required
//
// Exit status: 0 pass, 1 verified failure, 2 error or unverified.

#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gplane/runner.hpp"
#include "gplane/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Galois-point criterion toolkit"};
  app.set_version_flag("--version", std::string(gplane::kToolVersion));
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::optional<gplane::u64> ext_bound, group_cap, seed;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "Scenario file to execute")
        ->required();
    cmd->add_option("--out", out_path,
                    "Report file (written atomically; stdout when omitted)");
    cmd->add_option("--ext-bound", ext_bound,
                    "Override the scenario's extension-degree bound");
    cmd->add_option("--group-cap", group_cap,
                    "Override the scenario's group-closure cap");
    cmd->add_option("--seed", seed, "Override the scenario's seed");
  };

  CLI::App* run = app.add_subcommand("run", "Execute any scenario file");
  CLI::App* scan = app.add_subcommand("scan", "Execute a scan scenario");
  CLI::App* fermat = app.add_subcommand(
      "fermat-check", "Execute a Galois-vertex orbit-condition scenario");
  add_common(run);
  add_common(scan);
  add_common(fermat);

  CLI11_PARSE(app, argc, argv);

  gplane::RunOverrides overrides;
  overrides.ext_bound = ext_bound;
  overrides.group_cap = group_cap;
  overrides.seed = seed;
  if (scan->parsed()) overrides.expect_command = "scan";
  if (fermat->parsed()) overrides.expect_command = "fermat-check";

  return gplane::run_scenario(scenario_path, out_path, overrides);
}

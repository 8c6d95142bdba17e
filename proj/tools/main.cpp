// Experiment runner for the collective neutrino-oscillation toolkit:
// drives the exact and MPS engines from flat-key run configurations and
// writes the resource/observable tables described in the README.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nures/run_config.hpp"
#include "nures/runner.hpp"

namespace {

int finish(const nures::RunOutcome& outcome) {
  for (const std::string& e : outcome.errors) {
    std::fprintf(stderr, "error: %s\n", e.c_str());
  }
  if (outcome.ok()) {
    std::printf("wrote %zu files to %s\n", outcome.files_written.size(),
                outcome.output_dir.string().c_str());
  }
  return outcome.exit_code;
}

int load_or_fail(const std::string& path, nures::RunConfig& cfg) {
  const nures::ConfigResult result = nures::load_config_file(path);
  if (!result.ok()) {
    for (const std::string& e : result.errors) {
      std::fprintf(stderr, "config error: %s\n", e.c_str());
    }
    return 2;
  }
  cfg = *result.config;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nures - collective neutrino oscillation and quantum-resource "
               "simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int arc_points = 512;
  std::string arc_file = "arc.csv";

  CLI::App* cmd_run = app.add_subcommand("run", "execute a run configuration");
  cmd_run->add_option("config", config_path, "run configuration file")
      ->required();
  cmd_run->add_option("--out", out_dir, "override the output directory");

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "bond-dimension sweep with diff table");
  cmd_sweep->add_option("config", config_path, "run configuration file")
      ->required();
  cmd_sweep->add_option("--out", out_dir, "override the output directory");

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "validate a configuration and exit");
  cmd_validate->add_option("config", config_path, "run configuration file")
      ->required();

  CLI::App* cmd_arc =
      app.add_subcommand("arc", "emit the constraint-arc table standalone");
  cmd_arc->add_option("--points", arc_points, "number of lambda0 samples")
      ->check(CLI::Range(2, 1 << 20));
  cmd_arc->add_option("--out", arc_file, "output file (.csv or .json)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_run->parsed()) {
    nures::RunConfig cfg;
    if (int rc = load_or_fail(config_path, cfg)) return rc;
    return finish(nures::run(cfg, out_dir));
  }
  if (cmd_sweep->parsed()) {
    nures::RunConfig cfg;
    if (int rc = load_or_fail(config_path, cfg)) return rc;
    return finish(nures::sweep_bond_dims(cfg, out_dir));
  }
  if (cmd_validate->parsed()) {
    const nures::ConfigResult result = nures::load_config_file(config_path);
    if (!result.ok()) {
      for (const std::string& e : result.errors) {
        std::fprintf(stderr, "config error: %s\n", e.c_str());
      }
      return 2;
    }
    std::printf("ok\n%s", nures::render_config(*result.config).c_str());
    return 0;
  }
  if (cmd_arc->parsed()) {
    const bool json = arc_file.size() > 5 &&
                      arc_file.compare(arc_file.size() - 5, 5, ".json") == 0;
    try {
      nures::write_arc_table(arc_file, arc_points,
                             json ? nures::OutputFormat::Json
                                  : nures::OutputFormat::Csv);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 4;
    }
    std::printf("wrote %s\n", arc_file.c_str());
    return 0;
  }
  return 0;
}

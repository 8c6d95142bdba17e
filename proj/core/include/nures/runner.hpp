#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nures/run_config.hpp"

namespace nures {

inline constexpr const char* kVersion = "0.1.0";

/// Exit-code contract shared by the library runner and the CLI:
/// 0 success, 2 validation failure, 3 capacity, 4 numerical abort.
struct RunOutcome {
  int exit_code = 0;
  std::vector<std::string> errors;
  std::filesystem::path output_dir;
  std::vector<std::string> files_written;

  bool ok() const { return exit_code == 0; }
};

/// Per-mode record at one snapshot time; the unit written to output tables.
struct ResourceRecord {
  double time = 0.0;
  int mode = 0;  // 1-based
  double entropy = 0.0;
  double nl_sre2 = 0.0;
  double antiflat4 = 0.0;
  double px = 0.0, py = 0.0, pz = 0.0;
  double p_nu1 = 0.0;
  int max_bond = 1;
};

/// Executes a run configuration end to end: evolves the configured
/// engine(s), streams per-mode ResourceRecords, and writes the output file
/// set (time series per engine/cap, asymptotic summary, split + colocation
/// report, phase-space trajectories with the constraint arc, manifest).
/// The output directory is resolved as: explicit override, then the
/// NURES_OUTPUT_DIR environment variable, then outputs.directory.
RunOutcome run(const RunConfig& config,
               const std::string& output_dir_override = "");

/// Bond-dimension sweep: one full MPS run per cap plus a differencing table
/// of (dS, dM2) per mode between consecutive caps with regime labels.
/// Requires at least two caps.
RunOutcome sweep_bond_dims(const RunConfig& config,
                           const std::string& output_dir_override = "");

/// Writes the Appendix-style constraint arc sampled at `points` values of
/// lambda0 in [1/2, 1].
void write_arc_table(const std::filesystem::path& file, int points,
                     OutputFormat format);

}  // namespace nures

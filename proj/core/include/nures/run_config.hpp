#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nures/exact_engine.hpp"
#include "nures/model.hpp"

namespace nures {

enum class EngineKind { Exact, Mps, Both };
enum class OutputFormat { Csv, Json };

enum class Measure {
  Entropy,
  NlSre2,
  Antiflatness,
  FullSre,
  Polarization,
  Survival,
};

/// Fully resolved experiment description, the in-memory form of the flat
/// dotted-key run-configuration file.
struct RunConfig {
  SystemSpec system;
  EngineKind engine = EngineKind::Exact;
  EvolutionParams evolution;
  double snapshot_interval = 1.0;
  std::vector<int> bond_caps;        // MPS sweep points, descending by use
  std::vector<Measure> measures;
  std::string output_dir;
  OutputFormat format = OutputFormat::Csv;
  double weak_split_threshold = 0.25;
  double phase_threshold = 0.4;
  double stationarity_tol = 1e-3;
  double svd_epsilon = 0.0;
  /// Pad MPS bonds to the cap at t = 0 and evolve on the fixed-rank
  /// manifold (exact when the cap reaches 2^min(k, N-k) everywhere).
  bool tdvp_expand_bonds = false;
  int full_sre_threads = 1;

  bool has_measure(Measure m) const;
  bool uses_exact() const { return engine != EngineKind::Mps; }
  bool uses_mps() const { return engine != EngineKind::Exact; }
};

struct ConfigResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;  // aggregated, never fail-fast

  bool ok() const { return errors.empty() && config.has_value(); }
};

/// Structural + semantic validation of the flat-key config text. Defaults
/// are injected for every key the text omits; every violation is reported.
ConfigResult validate_config(const std::string& text);

ConfigResult load_config_file(const std::filesystem::path& path);

/// Canonical flat-key rendering of a resolved config, with every default
/// spelled out; feeding this back through validate_config reproduces the
/// config exactly.
std::string render_config(const RunConfig& config);

std::string to_string(EngineKind e);
std::string to_string(OutputFormat f);
std::string to_string(Measure m);
std::string to_string(CouplingKind k);
std::string to_string(StepMethod m);

}  // namespace nures

#include "nures/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nures {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::string fmt16(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

class KeyedText {
 public:
  explicit KeyedText(const std::string& text,
                     std::vector<std::string>& errors)
      : errors_(errors) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        errors_.push_back("line " + std::to_string(line_no) +
                          ": expected 'key = value'");
        continue;
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        errors_.push_back("line " + std::to_string(line_no) + ": empty key");
        continue;
      }
      if (values_.count(key)) {
        errors_.push_back("duplicate key '" + key + "'");
        continue;
      }
      values_[key] = value;
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second;
  }

  double take_double(const std::string& key, double fallback) {
    auto raw = take(key);
    if (!raw) return fallback;
    char* end = nullptr;
    const double v = std::strtod(raw->c_str(), &end);
    if (raw->empty() || end != raw->c_str() + raw->size()) {
      errors_.push_back("key '" + key + "': not a number: '" + *raw + "'");
      return fallback;
    }
    return v;
  }

  long take_int(const std::string& key, long fallback) {
    auto raw = take(key);
    if (!raw) return fallback;
    char* end = nullptr;
    const long v = std::strtol(raw->c_str(), &end, 10);
    if (raw->empty() || end != raw->c_str() + raw->size()) {
      errors_.push_back("key '" + key + "': not an integer: '" + *raw + "'");
      return fallback;
    }
    return v;
  }

  void finish() {
    for (const auto& [key, value] : values_) {
      if (!consumed_.count(key)) {
        errors_.push_back("unknown key '" + key + "'");
      }
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::vector<std::string>& errors_;
};

}  // namespace

bool RunConfig::has_measure(Measure m) const {
  return std::find(measures.begin(), measures.end(), m) != measures.end();
}

std::string to_string(EngineKind e) {
  switch (e) {
    case EngineKind::Exact: return "exact";
    case EngineKind::Mps: return "mps";
    case EngineKind::Both: return "both";
  }
  return "exact";
}

std::string to_string(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "json";
}

std::string to_string(Measure m) {
  switch (m) {
    case Measure::Entropy: return "entropy";
    case Measure::NlSre2: return "nl_sre2";
    case Measure::Antiflatness: return "antiflatness";
    case Measure::FullSre: return "full_sre";
    case Measure::Polarization: return "polarization";
    case Measure::Survival: return "survival";
  }
  return "entropy";
}

std::string to_string(CouplingKind k) {
  switch (k) {
    case CouplingKind::Constant: return "constant";
    case CouplingKind::PowerDecay: return "power_decay";
    case CouplingKind::SupernovaSingleAngle: return "supernova_single_angle";
  }
  return "constant";
}

std::string to_string(StepMethod m) {
  switch (m) {
    case StepMethod::MatrixExponential: return "matrix_exponential_step";
    case StepMethod::Krylov: return "krylov_step";
    case StepMethod::Rk4: return "rk4_step";
  }
  return "krylov_step";
}

ConfigResult validate_config(const std::string& text) {
  ConfigResult out;
  KeyedText keys(text, out.errors);
  RunConfig cfg;

  const long n_sites = keys.take_int("system.n_sites", 0);
  if (!n_sites) out.errors.push_back("missing required key 'system.n_sites'");
  else if (n_sites < 2) out.errors.push_back("system.n_sites must be >= 2");
  else if (n_sites > 24) out.errors.push_back("system.n_sites too large");

  if (auto raw = keys.take("system.initial_config")) {
    try {
      cfg.system.initial_config = parse_flavor_string(*raw);
    } catch (const std::invalid_argument& e) {
      out.errors.push_back(std::string("system.initial_config: ") + e.what());
    }
  } else {
    out.errors.push_back("missing required key 'system.initial_config'");
  }

  if (auto raw = keys.take("system.omegas")) {
    for (const std::string& item : split(*raw, ',')) {
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (item.empty() || end != item.c_str() + item.size()) {
        out.errors.push_back("system.omegas: not a number: '" + item + "'");
        break;
      }
      cfg.system.omegas.push_back(v);
    }
  } else if (n_sites >= 2) {
    for (long i = 1; i <= n_sites; ++i) {
      cfg.system.omegas.push_back(static_cast<double>(i));
    }
  }
  if (n_sites >= 2 &&
      static_cast<long>(cfg.system.omegas.size()) != n_sites &&
      !cfg.system.omegas.empty()) {
    out.errors.push_back("system.omegas lists " +
                         std::to_string(cfg.system.omegas.size()) +
                         " frequencies for " + std::to_string(n_sites) +
                         " sites");
  }

  cfg.system.mixing_angle = keys.take_double("system.mixing_angle", 0.1);

  if (auto raw = keys.take("coupling.kind")) {
    if (*raw == "constant") cfg.system.coupling.kind = CouplingKind::Constant;
    else if (*raw == "power_decay")
      cfg.system.coupling.kind = CouplingKind::PowerDecay;
    else if (*raw == "supernova_single_angle")
      cfg.system.coupling.kind = CouplingKind::SupernovaSingleAngle;
    else
      out.errors.push_back("coupling.kind: unknown kind '" + *raw +
                           "' (constant | power_decay | "
                           "supernova_single_angle)");
  }
  cfg.system.coupling.mu0 = keys.take_double("coupling.mu0", 5.0);
  cfg.system.coupling.radius = keys.take_double("coupling.radius", 50.0);
  cfg.system.coupling.exponent = keys.take_double("coupling.exponent", 3.0);

  if (auto raw = keys.take("engine")) {
    if (*raw == "exact") cfg.engine = EngineKind::Exact;
    else if (*raw == "mps") cfg.engine = EngineKind::Mps;
    else if (*raw == "both") cfg.engine = EngineKind::Both;
    else
      out.errors.push_back("engine: unknown engine '" + *raw +
                           "' (exact | mps | both)");
  }

  cfg.evolution.dt = keys.take_double("evolution.dt", 0.01);
  cfg.evolution.t_final = keys.take_double("evolution.t_final", -1.0);
  if (cfg.evolution.t_final < 0.0) {
    out.errors.push_back("missing required key 'evolution.t_final'");
    cfg.evolution.t_final = 0.0;
  }
  if (auto raw = keys.take("evolution.method")) {
    if (*raw == "krylov_step") cfg.evolution.method = StepMethod::Krylov;
    else if (*raw == "matrix_exponential_step")
      cfg.evolution.method = StepMethod::MatrixExponential;
    else if (*raw == "rk4_step") cfg.evolution.method = StepMethod::Rk4;
    else
      out.errors.push_back("evolution.method: unknown method '" + *raw + "'");
  }
  cfg.evolution.krylov_dim =
      static_cast<int>(keys.take_int("evolution.krylov_dim", 16));
  cfg.evolution.krylov_tol =
      keys.take_double("evolution.krylov_tol", 1e-12);
  cfg.snapshot_interval = keys.take_double("evolution.snapshot_interval", 1.0);
  if (!(cfg.snapshot_interval > 0.0)) {
    out.errors.push_back("evolution.snapshot_interval must be > 0");
  }

  if (auto raw = keys.take("bond_caps")) {
    for (const std::string& item : split(*raw, ',')) {
      char* end = nullptr;
      const long v = std::strtol(item.c_str(), &end, 10);
      if (item.empty() || end != item.c_str() + item.size() || v < 1) {
        out.errors.push_back("bond_caps: not a positive integer: '" + item +
                             "'");
        break;
      }
      cfg.bond_caps.push_back(static_cast<int>(v));
    }
  }

  if (auto raw = keys.take("measures")) {
    for (const std::string& item : split(*raw, ',')) {
      if (item == "entropy") cfg.measures.push_back(Measure::Entropy);
      else if (item == "nl_sre2") cfg.measures.push_back(Measure::NlSre2);
      else if (item == "antiflatness")
        cfg.measures.push_back(Measure::Antiflatness);
      else if (item == "full_sre") cfg.measures.push_back(Measure::FullSre);
      else if (item == "polarization")
        cfg.measures.push_back(Measure::Polarization);
      else if (item == "survival") cfg.measures.push_back(Measure::Survival);
      else
        out.errors.push_back("measures: unknown measure '" + item + "'");
    }
    if (cfg.measures.empty()) {
      out.errors.push_back("measures: list must not be empty");
    }
  } else {
    cfg.measures = {Measure::Entropy, Measure::NlSre2, Measure::Antiflatness,
                    Measure::Polarization, Measure::Survival};
  }

  if (auto raw = keys.take("outputs.directory")) {
    cfg.output_dir = *raw;
    if (cfg.output_dir.empty()) {
      out.errors.push_back("outputs.directory must not be empty");
    }
  } else {
    out.errors.push_back("missing required key 'outputs.directory'");
  }
  if (auto raw = keys.take("outputs.format")) {
    if (*raw == "csv") cfg.format = OutputFormat::Csv;
    else if (*raw == "json") cfg.format = OutputFormat::Json;
    else out.errors.push_back("outputs.format: unknown format '" + *raw + "'");
  }

  cfg.weak_split_threshold = keys.take_double("splits.weak_threshold", 0.25);
  if (!(cfg.weak_split_threshold > 0.0 && cfg.weak_split_threshold <= 0.5)) {
    out.errors.push_back("splits.weak_threshold must lie in (0, 0.5]");
  }
  cfg.phase_threshold = keys.take_double("phase.threshold", 0.4);
  cfg.stationarity_tol = keys.take_double("stationarity.tolerance", 1e-3);
  cfg.svd_epsilon = keys.take_double("tdvp.svd_epsilon", 0.0);
  if (auto raw = keys.take("tdvp.expand_bonds")) {
    if (*raw == "true" || *raw == "1") cfg.tdvp_expand_bonds = true;
    else if (*raw == "false" || *raw == "0") cfg.tdvp_expand_bonds = false;
    else
      out.errors.push_back("tdvp.expand_bonds: expected true or false, got '" +
                           *raw + "'");
  }
  cfg.full_sre_threads =
      static_cast<int>(keys.take_int("full_sre.threads", 1));

  keys.finish();

  // Cross-field semantics.
  if (n_sites >= 2 && !cfg.system.initial_config.empty() &&
      static_cast<long>(cfg.system.initial_config.size()) != n_sites) {
    out.errors.push_back("system.initial_config names " +
                         std::to_string(cfg.system.initial_config.size()) +
                         " flavors for " + std::to_string(n_sites) + " sites");
  }
  if (!cfg.system.omegas.empty() &&
      cfg.system.initial_config.size() == cfg.system.omegas.size()) {
    for (const std::string& e : cfg.system.validation_errors()) {
      out.errors.push_back(e);
    }
  }
  for (const std::string& e : cfg.evolution.validation_errors()) {
    out.errors.push_back(e);
  }
  if (cfg.uses_mps() && cfg.bond_caps.empty()) {
    out.errors.push_back(
        "bond_caps is required when the engine includes mps");
  }
  if (cfg.engine == EngineKind::Both && n_sites > 14) {
    out.errors.push_back("engine = both requires system.n_sites <= 14");
  }
  if (cfg.uses_exact() && n_sites > 14) {
    out.errors.push_back("engine = exact requires system.n_sites <= 14");
  }
  if (cfg.has_measure(Measure::FullSre)) {
    if (n_sites > 10) {
      out.errors.push_back("measure full_sre requires system.n_sites <= 10");
    }
    if (!cfg.uses_exact()) {
      out.errors.push_back("measure full_sre requires the exact engine");
    }
  }
  if (cfg.full_sre_threads < 1) {
    out.errors.push_back("full_sre.threads must be >= 1");
  }

  if (out.errors.empty()) out.config = std::move(cfg);
  return out;
}

ConfigResult load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigResult out;
    out.errors.push_back("cannot open config file: " + path.string());
    return out;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return validate_config(buffer.str());
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "system.n_sites = " << cfg.system.n_sites() << "\n";
  out << "system.initial_config = ";
  for (Flavor f : cfg.system.initial_config) {
    out << (f == Flavor::Muon ? 'm' : 'e');
  }
  out << "\n";
  out << "system.omegas = ";
  for (std::size_t i = 0; i < cfg.system.omegas.size(); ++i) {
    if (i) out << ",";
    out << fmt16(cfg.system.omegas[i]);
  }
  out << "\n";
  out << "system.mixing_angle = " << fmt16(cfg.system.mixing_angle) << "\n";
  out << "coupling.kind = " << to_string(cfg.system.coupling.kind) << "\n";
  out << "coupling.mu0 = " << fmt16(cfg.system.coupling.mu0) << "\n";
  out << "coupling.radius = " << fmt16(cfg.system.coupling.radius) << "\n";
  out << "coupling.exponent = " << fmt16(cfg.system.coupling.exponent)
      << "\n";
  out << "engine = " << to_string(cfg.engine) << "\n";
  out << "evolution.dt = " << fmt16(cfg.evolution.dt) << "\n";
  out << "evolution.t_final = " << fmt16(cfg.evolution.t_final) << "\n";
  out << "evolution.method = " << to_string(cfg.evolution.method) << "\n";
  out << "evolution.krylov_dim = " << cfg.evolution.krylov_dim << "\n";
  out << "evolution.krylov_tol = " << fmt16(cfg.evolution.krylov_tol) << "\n";
  out << "evolution.snapshot_interval = " << fmt16(cfg.snapshot_interval)
      << "\n";
  if (!cfg.bond_caps.empty()) {
    out << "bond_caps = ";
    for (std::size_t i = 0; i < cfg.bond_caps.size(); ++i) {
      if (i) out << ",";
      out << cfg.bond_caps[i];
    }
    out << "\n";
  }
  out << "measures = ";
  for (std::size_t i = 0; i < cfg.measures.size(); ++i) {
    if (i) out << ",";
    out << to_string(cfg.measures[i]);
  }
  out << "\n";
  out << "outputs.directory = " << cfg.output_dir << "\n";
  out << "outputs.format = " << to_string(cfg.format) << "\n";
  out << "splits.weak_threshold = " << fmt16(cfg.weak_split_threshold)
      << "\n";
  out << "phase.threshold = " << fmt16(cfg.phase_threshold) << "\n";
  out << "stationarity.tolerance = " << fmt16(cfg.stationarity_tol) << "\n";
  out << "tdvp.svd_epsilon = " << fmt16(cfg.svd_epsilon) << "\n";
  out << "tdvp.expand_bonds = " << (cfg.tdvp_expand_bonds ? "true" : "false")
      << "\n";
  out << "full_sre.threads = " << cfg.full_sre_threads << "\n";
  return out.str();
}

}  // namespace nures

#include "nures/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nures/errors.hpp"
#include "nures/magic.hpp"
#include "nures/mpo.hpp"
#include "nures/mps.hpp"
#include "nures/observables.hpp"
#include "nures/resources.hpp"
#include "nures/tdvp.hpp"

namespace nures {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string fmt_plot(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

struct ModeSample {
  double entropy = 0.0;
  double nl_sre2 = 0.0;
  double antiflat4 = 0.0;
  double px = 0.0, py = 0.0, pz = 0.0;
  double p_nu1 = 0.0;
};

struct Snapshot {
  double time = 0.0;
  int max_bond = 1;
  double full_sre = kNan;
  std::vector<ModeSample> modes;
};

struct EngineTrajectory {
  std::string tag;
  int cap = 0;  // 0 = exact engine
  std::vector<Snapshot> snaps;
  std::vector<double> fidelity;  // vs the exact trajectory, both-mode only
  double discarded_weight = 0.0;
  int degenerate_truncations = 0;
  int max_bond_seen = 1;
  bool stationary = true;
};

struct StepPlan {
  std::int64_t n_steps = 0;
  double dt = 0.0;
  std::int64_t stride = 1;
};

StepPlan make_plan(const RunConfig& cfg) {
  StepPlan plan;
  plan.n_steps =
      cfg.evolution.t_final > 0.0
          ? std::max<std::int64_t>(
                1, std::llround(cfg.evolution.t_final / cfg.evolution.dt))
          : 0;
  plan.dt = plan.n_steps > 0 ? cfg.evolution.t_final / plan.n_steps
                             : cfg.evolution.dt;
  plan.stride =
      plan.n_steps > 0
          ? std::max<std::int64_t>(1,
                                   std::llround(cfg.snapshot_interval /
                                                plan.dt))
          : 1;
  return plan;
}

ModeSample sample_from_spectrum(const std::vector<double>& lambda,
                                const Matrix2& rho, double theta) {
  ModeSample s;
  const auto spectrum = EntanglementSpectrum::from_values(lambda, 2);
  s.entropy = von_neumann_entropy(spectrum);
  s.nl_sre2 = nl_sre2(spectrum);
  s.antiflat4 = 4.0 * antiflatness(spectrum);
  const Eigen::Vector3d p = polarization_from_rdm(rho);
  s.px = p(0);
  s.py = p(1);
  s.pz = p(2);
  s.p_nu1 = survival_from_polarization(p, theta);
  return s;
}

std::vector<double> rdm_spectrum(const Matrix2& rho) {
  const double half_tr = 0.5 * std::real(rho(0, 0) + rho(1, 1));
  const double half_diff = 0.5 * std::real(rho(0, 0) - rho(1, 1));
  const double w = std::sqrt(half_diff * half_diff + std::norm(rho(0, 1)));
  // Normalize away the trace rounding so downstream validation stays exact.
  const double l0 = std::clamp((half_tr + w) / (2.0 * half_tr), 0.0, 1.0);
  return {l0, 1.0 - l0};
}

Snapshot snapshot_from_state(const StateVector& psi, double t, double theta,
                             bool want_full_sre, int sre_threads) {
  Snapshot snap;
  snap.time = t;
  snap.modes.reserve(static_cast<std::size_t>(psi.n_sites));
  for (int i = 0; i < psi.n_sites; ++i) {
    const Matrix2 rho = single_site_rdm(psi, i);
    snap.modes.push_back(sample_from_spectrum(rdm_spectrum(rho), rho, theta));
  }
  const auto ranks = schmidt_rank_profile(psi);
  snap.max_bond = *std::max_element(ranks.begin(), ranks.end());
  if (want_full_sre) snap.full_sre = full_sre(psi, 2.0, sre_threads);
  return snap;
}

Snapshot snapshot_from_mps(const MpsState& state, double t, double theta) {
  Snapshot snap;
  snap.time = t;
  const auto rdms = state.all_site_rdms();
  snap.modes.reserve(rdms.size());
  for (const Matrix2& rho : rdms) {
    snap.modes.push_back(sample_from_spectrum(rdm_spectrum(rho), rho, theta));
  }
  snap.max_bond = state.max_bond_dimension();
  return snap;
}

EngineTrajectory run_exact_engine(const RunConfig& cfg,
                                  std::vector<StateVector>* keep_states) {
  EngineTrajectory traj;
  traj.tag = "exact";
  const StepPlan plan = make_plan(cfg);
  const bool want_sre = cfg.has_measure(Measure::FullSre);

  StateVector psi = initial_state(cfg.system);
  auto callback = [&](double t, const StateVector& state) {
    traj.snaps.push_back(snapshot_from_state(state, t, cfg.system.mixing_angle,
                                             want_sre, cfg.full_sre_threads));
    traj.max_bond_seen =
        std::max(traj.max_bond_seen, traj.snaps.back().max_bond);
    if (keep_states) keep_states->push_back(state);
  };
  evolve_exact(std::move(psi), cfg.system, cfg.evolution,
               static_cast<int>(plan.stride), callback, Basis::Flavor);
  return traj;
}

EngineTrajectory run_mps_engine(const RunConfig& cfg, int cap,
                                const std::vector<StateVector>* exact_states) {
  EngineTrajectory traj;
  traj.tag = "mps_d" + std::to_string(cap);
  traj.cap = cap;
  const StepPlan plan = make_plan(cfg);

  MpsState state = MpsState::from_spec(cfg.system);
  state.set_bond_cap(cap);
  HamiltonianMpo mpo = build_mpo(cfg.system, 0.0, Basis::Flavor);

  TdvpOptions opts;
  opts.krylov_dim = cfg.evolution.krylov_dim;
  opts.krylov_tol = cfg.evolution.krylov_tol;
  opts.svd_epsilon = cfg.svd_epsilon;
  if (cfg.tdvp_expand_bonds) {
    state.expand_bonds(cap);
    opts.rank_tol = 0.0;
  }

  auto take_snapshot = [&](double t) {
    traj.snaps.push_back(
        snapshot_from_mps(state, t, cfg.system.mixing_angle));
    if (exact_states) {
      const std::size_t idx = traj.snaps.size() - 1;
      if (idx < exact_states->size()) {
        const StateVector dense = state.to_state_vector();
        const Complex overlap =
            (*exact_states)[idx].amplitudes.dot(dense.amplitudes);
        traj.fidelity.push_back(std::norm(overlap));
      }
    }
  };

  take_snapshot(0.0);
  for (std::int64_t step = 1; step <= plan.n_steps; ++step) {
    const double t_mid = (static_cast<double>(step) - 0.5) * plan.dt;
    mpo.set_pair_coupling(0.5 * cfg.system.coupling.at(t_mid));
    const TdvpStepResult stats = tdvp2_step(state, mpo, plan.dt, opts);
    traj.discarded_weight += stats.discarded_weight;
    traj.degenerate_truncations += stats.degenerate_truncations;
    traj.max_bond_seen = std::max(traj.max_bond_seen, stats.max_bond);
    if ((plan.stride > 0 && step % plan.stride == 0) ||
        step == plan.n_steps) {
      take_snapshot(static_cast<double>(step) * plan.dt);
    }
  }
  return traj;
}

/// max |dP_z^mass/dt| over the trailing 5% of the run, compared against the
/// configured stationarity tolerance.
bool check_stationary(const EngineTrajectory& traj, double t_final,
                      double tol) {
  if (traj.snaps.size() < 2) return true;
  const double window_start = 0.95 * t_final;
  double worst = 0.0;
  for (std::size_t k = 1; k < traj.snaps.size(); ++k) {
    const Snapshot& a = traj.snaps[k - 1];
    const Snapshot& b = traj.snaps[k];
    if (b.time < window_start) continue;
    const double dt = b.time - a.time;
    if (!(dt > 0.0)) continue;
    for (std::size_t m = 0; m < b.modes.size(); ++m) {
      const double rate =
          2.0 * std::abs(b.modes[m].p_nu1 - a.modes[m].p_nu1) / dt;
      worst = std::max(worst, rate);
    }
  }
  return worst < tol;
}

class Table {
 public:
  explicit Table(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells) {
    rows_.push_back(std::move(cells));
  }

  void write_csv(const fs::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) out << ',';
      out << columns_[i];
    }
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << row[i];
      }
      out << '\n';
    }
  }

  void write_json(const fs::path& file) const {
    json doc;
    doc["columns"] = columns_;
    doc["rows"] = rows_;
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << doc.dump(2) << '\n';
  }

  void write(const fs::path& file, OutputFormat fmt) const {
    if (fmt == OutputFormat::Csv) write_csv(file);
    else write_json(file);
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string extension(OutputFormat fmt) {
  return fmt == OutputFormat::Csv ? ".csv" : ".json";
}

class OutputSet {
 public:
  OutputSet(fs::path dir, OutputFormat fmt) : dir_(std::move(dir)), fmt_(fmt) {
    fs::create_directories(dir_);
    fs::create_directories(dir_ / "plot");
  }

  const fs::path& dir() const { return dir_; }
  OutputFormat format() const { return fmt_; }

  void emit(const std::string& stem, const Table& table) {
    const fs::path file = dir_ / (stem + extension(fmt_));
    table.write(file, fmt_);
    files_.push_back(fs::relative(file, dir_).string());
  }

  void emit_plot(const std::string& stem, const Table& table) {
    const fs::path file = dir_ / "plot" / (stem + extension(fmt_));
    table.write(file, fmt_);
    files_.push_back(fs::relative(file, dir_).string());
  }

  void note_file(const fs::path& file) {
    files_.push_back(fs::relative(file, dir_).string());
  }

  std::vector<std::string> sorted_files() const {
    std::vector<std::string> out = files_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  fs::path dir_;
  OutputFormat fmt_;
  std::vector<std::string> files_;
};

struct MeasureGate {
  bool entropy, magic, antiflat, polarization, survival, sre;

  explicit MeasureGate(const RunConfig& cfg)
      : entropy(cfg.has_measure(Measure::Entropy)),
        magic(cfg.has_measure(Measure::NlSre2)),
        antiflat(cfg.has_measure(Measure::Antiflatness)),
        polarization(cfg.has_measure(Measure::Polarization)),
        survival(cfg.has_measure(Measure::Survival)),
        sre(cfg.has_measure(Measure::FullSre)) {}
};

std::string gated(double v, bool enabled) {
  return fmt_full(enabled ? v : kNan);
}

std::string gated_plot(double v, bool enabled) {
  return fmt_plot(enabled ? v : kNan);
}

void write_trajectory_tables(OutputSet& out, const RunConfig& cfg,
                             const EngineTrajectory& traj) {
  const MeasureGate gate(cfg);
  const auto record_row = [&](const Snapshot& snap, int mode,
                              bool plot) -> std::vector<std::string> {
    const ModeSample& m = snap.modes[static_cast<std::size_t>(mode)];
    auto fmt = plot ? gated_plot : gated;
    return {
        plot ? fmt_plot(snap.time) : fmt_full(snap.time),
        std::to_string(mode + 1),
        fmt(m.entropy, gate.entropy),
        fmt(m.nl_sre2, gate.magic),
        fmt(m.antiflat4, gate.antiflat),
        fmt(m.px, gate.polarization),
        fmt(m.py, gate.polarization),
        fmt(m.pz, gate.polarization),
        fmt(m.p_nu1, gate.survival),
        std::to_string(snap.max_bond),
    };
  };

  const std::vector<std::string> columns = {
      "time", "mode", "S", "M2NL", "antiflat4",
      "Px",   "Py",   "Pz", "Pnu1", "maxbond"};

  Table full(columns);
  Table plot(columns);
  for (const Snapshot& snap : traj.snaps) {
    for (std::size_t m = 0; m < snap.modes.size(); ++m) {
      full.add_row(record_row(snap, static_cast<int>(m), false));
      plot.add_row(record_row(snap, static_cast<int>(m), true));
    }
  }
  out.emit("timeseries_" + traj.tag, full);
  out.emit_plot("timeseries_" + traj.tag, plot);

  // Asymptotic summary (final snapshot plus the stationarity flag).
  const Snapshot& last = traj.snaps.back();
  std::vector<std::string> acolumns = columns;
  acolumns.erase(acolumns.begin());  // drop time
  acolumns.push_back("stationary");
  Table asym(acolumns);
  Table asym_plot(acolumns);
  for (std::size_t m = 0; m < last.modes.size(); ++m) {
    auto row = record_row(last, static_cast<int>(m), false);
    row.erase(row.begin());
    row.push_back(traj.stationary ? "1" : "0");
    asym.add_row(row);
    auto prow = record_row(last, static_cast<int>(m), true);
    prow.erase(prow.begin());
    prow.push_back(traj.stationary ? "1" : "0");
    asym_plot.add_row(prow);
  }
  out.emit("asymptotic_" + traj.tag, asym);
  out.emit_plot("asymptotic_" + traj.tag, asym_plot);

  if (gate.entropy && gate.magic) {
    Table phase({"time", "mode", "M2NL", "S"});
    for (const Snapshot& snap : traj.snaps) {
      for (std::size_t m = 0; m < snap.modes.size(); ++m) {
        phase.add_row({fmt_full(snap.time), std::to_string(m + 1),
                       fmt_full(snap.modes[m].nl_sre2),
                       fmt_full(snap.modes[m].entropy)});
      }
    }
    out.emit("phase_" + traj.tag, phase);
  }

  if (gate.sre && traj.cap == 0) {
    Table sre({"time", "M2"});
    for (const Snapshot& snap : traj.snaps) {
      sre.add_row({fmt_full(snap.time), fmt_full(snap.full_sre)});
    }
    out.emit("global_sre_" + traj.tag, sre);
  }

  if (!traj.fidelity.empty()) {
    Table fid({"time", "fidelity"});
    for (std::size_t k = 0; k < traj.fidelity.size(); ++k) {
      fid.add_row({fmt_full(traj.snaps[k].time), fmt_full(traj.fidelity[k])});
    }
    out.emit("fidelity_" + traj.tag, fid);
  }
}

json write_split_tables(OutputSet& out, const RunConfig& cfg,
                        const EngineTrajectory& traj) {
  const MeasureGate gate(cfg);
  json summary;
  summary["tag"] = traj.tag;
  if (!gate.survival) return summary;

  const Snapshot& last = traj.snaps.back();
  std::vector<double> per_mode_p;
  std::vector<ModeResources> resources;
  for (const ModeSample& m : last.modes) {
    per_mode_p.push_back(m.p_nu1);
    resources.push_back({m.entropy, m.nl_sre2});
  }
  const SplitReport report =
      detect_splits(per_mode_p, cfg.weak_split_threshold);

  int strong = 0, weak = 0, colocated = 0;
  Table table({"lower_mode", "upper_mode", "delta_p", "strength",
               "high_s_mode", "s_global_max", "m2_local_min", "colocated"});
  ColocationTable coloc;
  if (gate.entropy && gate.magic) {
    coloc = colocate_resources(report, resources);
  }
  std::size_t coloc_idx = 0;
  for (const SplitBoundary& b : report.boundaries) {
    std::vector<std::string> row = {
        std::to_string(b.lower_mode), std::to_string(b.upper_mode),
        fmt_full(b.delta),
        b.strength == SplitStrength::Strong ? "strong" : "weak"};
    if (b.strength == SplitStrength::Strong) {
      ++strong;
      if (gate.entropy && gate.magic && coloc_idx < coloc.entries.size()) {
        const ColocationEntry& e = coloc.entries[coloc_idx++];
        row.push_back(std::to_string(e.high_entropy_mode));
        row.push_back(e.entropy_is_global_max ? "1" : "0");
        row.push_back(e.magic_is_local_min ? "1" : "0");
        row.push_back(e.colocated ? "1" : "0");
        if (e.colocated) ++colocated;
      } else {
        row.insert(row.end(), {"", "", "", ""});
      }
    } else {
      ++weak;
      row.insert(row.end(), {"", "", "", ""});
    }
    table.add_row(std::move(row));
  }
  out.emit("splits_" + traj.tag, table);
  summary["strong"] = strong;
  summary["weak"] = weak;
  summary["colocated"] = colocated;
  return summary;
}

void write_arc_into(OutputSet& out, int points) {
  Table arc({"lambda0", "M2NL", "S"});
  for (int k = 0; k < points; ++k) {
    const double l0 =
        0.5 + 0.5 * static_cast<double>(k) / static_cast<double>(points - 1);
    const ArcPoint p = arc_curve(l0);
    arc.add_row({fmt_full(l0), fmt_full(p.nl_sre2), fmt_full(p.entropy)});
  }
  out.emit("arc", arc);
}

void require_runnable(const RunConfig& cfg) {
  cfg.system.validate();
  cfg.evolution.validate();
  if (cfg.system.n_sites() < 2) {
    throw std::invalid_argument("run: system.n_sites must be >= 2");
  }
  if (cfg.measures.empty()) {
    throw std::invalid_argument("run: measures must not be empty");
  }
  if (cfg.output_dir.empty()) {
    throw std::invalid_argument("run: outputs.directory must not be empty");
  }
  if (cfg.uses_mps() && cfg.bond_caps.empty()) {
    throw std::invalid_argument(
        "run: bond_caps is required when the engine includes mps");
  }
  for (int cap : cfg.bond_caps) {
    if (cap < 1) throw std::invalid_argument("run: bond caps must be >= 1");
  }
  if (cfg.uses_exact() && cfg.system.n_sites() > 14) {
    throw CapacityError(
        "run: the exact engine is guarded at N <= 14; use engine = mps for "
        "larger systems");
  }
  if (cfg.has_measure(Measure::FullSre)) {
    if (cfg.system.n_sites() > 10) {
      throw CapacityError(
          "run: full_sre is guarded at N <= 10; drop the measure or shrink "
          "the system");
    }
    if (!cfg.uses_exact()) {
      throw std::invalid_argument(
          "run: full_sre requires the exact engine (spectrum-based nl_sre2 "
          "is available from mps)");
    }
  }
}

fs::path resolve_output_dir(const RunConfig& cfg,
                            const std::string& override_dir) {
  if (!override_dir.empty()) return fs::path(override_dir);
  if (const char* env = std::getenv("NURES_OUTPUT_DIR")) {
    if (*env) return fs::path(env);
  }
  return fs::path(cfg.output_dir);
}

RunOutcome run_impl(const RunConfig& cfg, const std::string& override_dir,
                    bool sweep_mode) {
  const auto t_start = std::chrono::steady_clock::now();
  require_runnable(cfg);
  if (sweep_mode) {
    if (!cfg.uses_mps()) {
      throw std::invalid_argument("sweep: engine must include mps");
    }
    if (cfg.bond_caps.size() < 2) {
      throw std::invalid_argument("sweep: need at least two bond caps");
    }
  }

  OutputSet out(resolve_output_dir(cfg, override_dir), cfg.format);
  write_arc_into(out, 512);

  std::vector<EngineTrajectory> trajectories;
  std::vector<StateVector> exact_states;
  const bool both = cfg.engine == EngineKind::Both;

  if (cfg.uses_exact()) {
    trajectories.push_back(
        run_exact_engine(cfg, both ? &exact_states : nullptr));
  }
  if (cfg.uses_mps()) {
    for (int cap : cfg.bond_caps) {
      trajectories.push_back(
          run_mps_engine(cfg, cap, both ? &exact_states : nullptr));
    }
  }

  json engines = json::array();
  json splits = json::array();
  for (EngineTrajectory& traj : trajectories) {
    traj.stationary =
        check_stationary(traj, cfg.evolution.t_final, cfg.stationarity_tol);
    write_trajectory_tables(out, cfg, traj);
    splits.push_back(write_split_tables(out, cfg, traj));

    json e;
    e["tag"] = traj.tag;
    e["cap"] = traj.cap;
    e["snapshots"] = traj.snaps.size();
    e["max_bond"] = traj.max_bond_seen;
    e["discarded_weight"] = traj.discarded_weight;
    e["degenerate_truncations"] = traj.degenerate_truncations;
    e["stationary"] = traj.stationary;
    engines.push_back(e);
  }

  if (sweep_mode) {
    const MeasureGate gate(cfg);
    Table diff({"mode", "cap_high", "cap_low", "S_high", "S_low", "dS",
                "M2NL_high", "M2NL_low", "dM2NL", "region_high", "tandem"});
    std::vector<const EngineTrajectory*> mps;
    for (const EngineTrajectory& t : trajectories) {
      if (t.cap > 0) mps.push_back(&t);
    }
    for (std::size_t k = 0; k + 1 < mps.size(); ++k) {
      const Snapshot& hi = mps[k]->snaps.back();
      const Snapshot& lo = mps[k + 1]->snaps.back();
      for (std::size_t m = 0; m < hi.modes.size(); ++m) {
        const double s_hi = hi.modes[m].entropy;
        const double s_lo = lo.modes[m].entropy;
        const double m_hi = hi.modes[m].nl_sre2;
        const double m_lo = lo.modes[m].nl_sre2;
        const double ds = s_lo - s_hi;
        const double dm = m_lo - m_hi;
        const bool tandem = (ds >= 0.0) == (dm >= 0.0);
        diff.add_row(
            {std::to_string(m + 1), std::to_string(mps[k]->cap),
             std::to_string(mps[k + 1]->cap),
             gated(s_hi, gate.entropy), gated(s_lo, gate.entropy),
             gated(ds, gate.entropy), gated(m_hi, gate.magic),
             gated(m_lo, gate.magic), gated(dm, gate.magic),
             phase_region(s_hi, cfg.phase_threshold) ==
                     PhaseRegion::HighEntanglement
                 ? "high"
                 : "low",
             tandem ? "1" : "0"});
      }
    }
    out.emit("sweep_diff", diff);
  }

  const auto t_end = std::chrono::steady_clock::now();
  json manifest;
  manifest["tool"] = "nures";
  manifest["version"] = kVersion;
  manifest["command"] = sweep_mode ? "sweep" : "run";
  manifest["wall_time_seconds"] =
      std::chrono::duration<double>(t_end - t_start).count();
  manifest["config_text"] = render_config(cfg);
  manifest["output_directory"] = out.dir().string();
  manifest["engines"] = engines;
  manifest["splits"] = splits;

  const fs::path manifest_path = out.dir() / "manifest.json";
  out.note_file(manifest_path);
  manifest["files"] = out.sorted_files();
  {
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) {
      throw std::runtime_error("cannot write " + manifest_path.string());
    }
    mf << manifest.dump(2) << '\n';
  }

  RunOutcome outcome;
  outcome.exit_code = 0;
  outcome.output_dir = out.dir();
  outcome.files_written = out.sorted_files();
  return outcome;
}

RunOutcome guarded(const RunConfig& cfg, const std::string& override_dir,
                   bool sweep_mode) {
  RunOutcome outcome;
  try {
    return run_impl(cfg, override_dir, sweep_mode);
  } catch (const CapacityError& e) {
    outcome.exit_code = 3;
    outcome.errors.push_back(e.what());
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = 2;
    outcome.errors.push_back(e.what());
  } catch (const fs::filesystem_error& e) {
    outcome.exit_code = 2;
    outcome.errors.push_back(e.what());
  } catch (const std::exception& e) {
    outcome.exit_code = 4;
    outcome.errors.push_back(e.what());
  }
  return outcome;
}

}  // namespace

RunOutcome run(const RunConfig& config, const std::string& override_dir) {
  return guarded(config, override_dir, false);
}

RunOutcome sweep_bond_dims(const RunConfig& config,
                           const std::string& override_dir) {
  return guarded(config, override_dir, true);
}

void write_arc_table(const std::filesystem::path& file, int points,
                     OutputFormat format) {
  if (points < 2) {
    throw std::invalid_argument("write_arc_table: need at least two points");
  }
  Table arc({"lambda0", "M2NL", "S"});
  for (int k = 0; k < points; ++k) {
    const double l0 =
        0.5 + 0.5 * static_cast<double>(k) / static_cast<double>(points - 1);
    const ArcPoint p = arc_curve(l0);
    arc.add_row({fmt_full(l0), fmt_full(p.nl_sre2), fmt_full(p.entropy)});
  }
  arc.write(file, format);
}

}  // namespace nures

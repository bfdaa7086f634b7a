#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "schwinger/model.hpp"
#include "schwinger/optimizer.hpp"

namespace schwinger {

enum class Study { convergence, tension, surface };
enum class SweepMode { variational, exact, both };

struct SweepConfig {
  SchwingerParams model;
  // Exactly one of `beta` and `temperature` is non-empty; T = 1/beta.
  std::vector<double> beta;
  std::vector<double> temperature;
  std::vector<double> epsilon{0.0};
  std::vector<double> mu{0.0};
  std::vector<int> depth{1};
  OptimizerConfig optimizer;
  SweepMode mode = SweepMode::both;
  std::string output_path;
  int workers = 1;
  std::size_t max_points = 10000;

  /// Grids and model bracketing the corresponding figure of each study.
  static SweepConfig defaults(Study study);

  /// Throws ConfigError on any violated precondition of the study.
  void validate(Study study) const;

  /// The inverse-temperature grid, converted from T when T was given.
  std::vector<double> betas() const;
  std::size_t point_count() const;
};

/// Overlays keys present in a config document: "model", "grid", "optimizer",
/// "mode", "output", "workers", "max_points".
void apply_config(SweepConfig& config, const nlohmann::json& doc);
void apply_model_config(SchwingerParams& model, const nlohmann::json& doc);
void apply_optimizer_config(OptimizerConfig& optimizer, const nlohmann::json& doc);
nlohmann::json config_to_json(const SweepConfig& config);

struct SweepRow {
  double temperature = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  double mu = 0.0;
  int depth = 0;
  double f_var = 0.0;
  double e_var = 0.0;
  double s_var = 0.0;
  double f_exact = 0.0;
  double sigma_var = 0.0;
  double sigma_exact = 0.0;
  bool converged = false;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;

  bool has_variational = false;
  bool has_exact = false;
  // Inputs of the tension formula, kept for the audit file.
  double f0_var = 0.0;
  double f0_exact = 0.0;
  double trial_offset = 0.0;
  std::vector<TracePoint> trace;
  AnsatzParams params;
};

struct SweepTable {
  Study study = Study::convergence;
  SweepConfig config;
  std::vector<SweepRow> rows;
};

/// Runs every grid point, ordered epsilon -> mu -> beta -> depth (outermost
/// first). Row order never depends on `workers`.
SweepTable run_sweep(Study study, const SweepConfig& config);
SweepTable run_convergence_study(const SweepConfig& config);
SweepTable run_tension_vs_temperature(const SweepConfig& config);
SweepTable run_tension_surface(const SweepConfig& config);

inline constexpr const char* kCsvColumns[] = {
    "T",       "beta",      "epsilon",     "mu",        "depth", "F_var",       "E_var",
    "S_var",   "F_exact",   "sigma_var",   "sigma_exact", "converged", "seed", "wall_time_ms"};

/// Fixed 14 columns; the tension study appends ln_sigma_var, ln_sigma_exact
/// (nan where sigma <= 0).
std::string to_csv(const SweepTable& table);
/// Full config, seeds, tension inputs and convergence traces.
nlohmann::json to_audit_json(const SweepTable& table);
/// Writes `path` (CSV) and `path + ".json"` (audit).
void write_outputs(const SweepTable& table, const std::string& path);

/// Shortest round-trip decimal for finite values, "nan" otherwise.
std::string format_number(double value);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

const char* to_string(Study study);
const char* to_string(SweepMode mode);
Study parse_study(std::string_view name);
SweepMode parse_sweep_mode(std::string_view name);

}  // namespace schwinger

#include "schwinger/sweep.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>

#include "schwinger/errors.hpp"
#include "schwinger/exact.hpp"

namespace schwinger {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename T>
std::vector<T> read_list(const json& doc, const char* key) {
  try {
    return doc.at(key).get<std::vector<T>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void check_grid(const std::vector<double>& values, const char* name, bool positive) {
  if (values.empty()) throw ConfigError(std::string(name) + " grid is empty");
  for (double v : values) {
    if (!std::isfinite(v) || (positive && !(v > 0.0))) {
      throw ConfigError(std::string(name) + " grid values must be finite" +
                        (positive ? " and positive" : ""));
    }
  }
}

struct GridPoint {
  double epsilon, mu, beta;
  int depth;
};

struct VariationalSolve {
  ThermalResult result;
  double wall_ms = 0.0;
};

VariationalSolve solve(const SchwingerParams& model, double beta, int depth,
                       const OptimizerConfig& base) {
  const auto start = Clock::now();
  OptimizerConfig cfg = base;
  cfg.depth = depth;
  VariationalSolve out{minimize(ObjectiveSpec(build_hamiltonian(model), beta), cfg), 0.0};
  out.wall_ms = elapsed_ms(start);
  return out;
}

}  // namespace

SweepConfig SweepConfig::defaults(Study study) {
  SweepConfig c;
  c.model = SchwingerParams::make(4, 1.0, 1.0, std::nullopt, 1.0);
  switch (study) {
    case Study::convergence:
      c.beta = {0.1, 1.0, 10.0};
      c.epsilon = {0.0};
      c.mu = {0.0};
      c.depth = {1, 2, 3, 4, 5, 6};
      c.optimizer.restarts = 8;
      c.mode = SweepMode::both;
      c.output_path = "convergence.csv";
      break;
    case Study::tension:
      c.model.n_sites = 6;
      c.temperature = {0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      c.epsilon = {0.25, 0.5};
      c.mu = {0.0};
      c.depth = {4};
      c.optimizer.restarts = 4;
      c.mode = SweepMode::both;
      c.output_path = "tension.csv";
      break;
    case Study::surface:
      c.model.n_sites = 6;
      c.temperature = {0.1, 0.25, 0.5, 0.75, 1, 1.5, 2, 3, 5, 7.5, 10};
      c.epsilon = {0.5};
      c.mu = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
      c.depth = {4};
      c.optimizer.restarts = 4;
      c.mode = SweepMode::exact;
      c.output_path = "surface.csv";
      break;
  }
  return c;
}

void SweepConfig::validate(Study study) const {
  model.validate();
  if (!(model.coupling > 0.0)) throw ConfigError("sweeps need g > 0 for the string tension");
  if (beta.empty() == temperature.empty()) {
    throw ConfigError("supply exactly one of the beta and T grids");
  }
  if (!beta.empty()) check_grid(beta, "beta", true);
  if (!temperature.empty()) check_grid(temperature, "T", true);
  check_grid(epsilon, "epsilon", false);
  check_grid(mu, "mu", false);
  if (depth.empty()) throw ConfigError("depth grid is empty");
  for (int p : depth) {
    if (p < 0) throw ConfigError("depth grid values must be >= 0");
  }
  optimizer.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (point_count() > max_points) {
    throw ConfigError("grid has " + std::to_string(point_count()) + " points, budget is " +
                      std::to_string(max_points));
  }
  if (study == Study::tension) {
    for (double m : mu) {
      if (m != 0.0) throw ConfigError("the tension study runs at mu = 0");
    }
  }
  if (study == Study::surface && epsilon.size() != 1) {
    throw ConfigError("the surface study takes a single epsilon");
  }
}

std::vector<double> SweepConfig::betas() const {
  if (!beta.empty()) return beta;
  std::vector<double> out;
  out.reserve(temperature.size());
  for (double t : temperature) out.push_back(1.0 / t);
  return out;
}

std::size_t SweepConfig::point_count() const {
  return std::max(beta.size(), temperature.size()) * epsilon.size() * mu.size() * depth.size();
}

void apply_model_config(SchwingerParams& model, const json& doc) {
  try {
    std::optional<double> a, hopping;
    if (doc.contains("a")) a = doc.at("a").get<double>();
    if (doc.contains("hopping")) hopping = doc.at("hopping").get<double>();
    const bool spacing_given = a || hopping;
    SchwingerParams m = model;
    m.n_sites = doc.value("n", m.n_sites);
    m.mass = doc.value("m", m.mass);
    m.coupling = doc.value("g", m.coupling);
    m.background_field = doc.value("epsilon", m.background_field);
    m.chemical_potential = doc.value("mu", m.chemical_potential);
    if (doc.contains("electric")) {
      m.electric = parse_electric_convention(doc.at("electric").get<std::string>());
    }
    SchwingerParams made = SchwingerParams::make(
        m.n_sites, m.mass, m.coupling, spacing_given ? a : std::optional<double>(m.lattice_spacing),
        hopping, m.background_field, m.chemical_potential);
    made.electric = m.electric;
    model = made;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
}

void apply_optimizer_config(OptimizerConfig& opt, const json& doc) {
  try {
    opt.depth = doc.value("depth", opt.depth);
    opt.restarts = doc.value("restarts", opt.restarts);
    opt.max_iters = doc.value("max_iters", opt.max_iters);
    opt.tol = doc.value("tol", opt.tol);
    opt.step = doc.value("step", opt.step);
    opt.seed = doc.value("seed", opt.seed);
    opt.window = doc.value("window", opt.window);
    if (doc.contains("optimizer")) {
      opt.optimizer = parse_optimizer_kind(doc.at("optimizer").get<std::string>());
    }
    if (doc.contains("gradient")) {
      opt.gradient = parse_gradient_mode(doc.at("gradient").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("optimizer config: ") + e.what());
  }
}

void apply_config(SweepConfig& config, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be an object");
  if (doc.contains("model")) apply_model_config(config.model, doc.at("model"));
  if (doc.contains("optimizer")) apply_optimizer_config(config.optimizer, doc.at("optimizer"));
  if (doc.contains("grid")) {
    const auto& grid = doc.at("grid");
    if (grid.contains("beta") && grid.contains("T")) {
      throw ConfigError("supply exactly one of the beta and T grids");
    }
    if (grid.contains("beta")) {
      config.beta = read_list<double>(grid, "beta");
      config.temperature.clear();
    }
    if (grid.contains("T")) {
      config.temperature = read_list<double>(grid, "T");
      config.beta.clear();
    }
    if (grid.contains("epsilon")) config.epsilon = read_list<double>(grid, "epsilon");
    if (grid.contains("mu")) config.mu = read_list<double>(grid, "mu");
    if (grid.contains("depth")) config.depth = read_list<int>(grid, "depth");
  }
  try {
    if (doc.contains("mode")) config.mode = parse_sweep_mode(doc.at("mode").get<std::string>());
    config.output_path = doc.value("output", config.output_path);
    config.workers = doc.value("workers", config.workers);
    config.max_points = doc.value("max_points", config.max_points);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

json config_to_json(const SweepConfig& c) {
  json grid = {{"epsilon", c.epsilon}, {"mu", c.mu}, {"depth", c.depth}};
  if (!c.beta.empty()) grid["beta"] = c.beta;
  if (!c.temperature.empty()) grid["T"] = c.temperature;
  return {
      {"model",
       {{"n", c.model.n_sites},
        {"m", c.model.mass},
        {"g", c.model.coupling},
        {"a", c.model.lattice_spacing},
        {"hopping", c.model.hopping},
        {"electric", to_string(c.model.electric)}}},
      {"grid", grid},
      {"optimizer",
       {{"restarts", c.optimizer.restarts},
        {"max_iters", c.optimizer.max_iters},
        {"tol", c.optimizer.tol},
        {"step", c.optimizer.step},
        {"window", c.optimizer.window},
        {"optimizer", to_string(c.optimizer.optimizer)},
        {"gradient", to_string(c.optimizer.gradient)},
        {"seed", c.optimizer.seed}}},
      {"mode", to_string(c.mode)},
      {"output", c.output_path},
      {"workers", c.workers},
      {"max_points", c.max_points},
  };
}

SweepTable run_sweep(Study study, const SweepConfig& config) {
  config.validate(study);
  const auto betas = config.betas();
  const bool want_var = config.mode != SweepMode::exact;
  const bool want_exact = config.mode != SweepMode::variational;

  std::vector<GridPoint> points;
  for (double eps : config.epsilon) {
    for (double mu : config.mu) {
      for (double b : betas) {
        for (int p : config.depth) points.push_back({eps, mu, b, p});
      }
    }
  }

  auto model_at = [&](double eps, double mu) {
    return config.model.with_field(eps).with_chemical_potential(mu);
  };

  // Spectra for every (epsilon, mu) and (0, mu), computed before dispatch and
  // only read afterwards.
  std::map<std::pair<double, double>, std::size_t> spectrum_index;
  std::vector<std::pair<double, double>> spectrum_keys;
  if (want_exact) {
    for (const auto& pt : points) {
      for (double eps : {pt.epsilon, 0.0}) {
        if (spectrum_index.emplace(std::pair{eps, pt.mu}, spectrum_keys.size()).second) {
          spectrum_keys.push_back({eps, pt.mu});
        }
      }
    }
  }
  std::vector<Spectrum> spectra(spectrum_keys.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (std::size_t k = 0; k < spectrum_keys.size(); ++k) {
    spectra[k] = compute_spectrum(
        build_hamiltonian(model_at(spectrum_keys[k].first, spectrum_keys[k].second)));
  }

  // Zero-field variational solves shared across epsilon, keyed by
  // (mu, beta, depth); the seed is the same for every solve of the sweep.
  std::map<std::tuple<double, double, int>, std::size_t> zero_index;
  std::vector<std::tuple<double, double, int>> zero_keys;
  if (want_var) {
    for (const auto& pt : points) {
      std::tuple key{pt.mu, pt.beta, pt.depth};
      if (zero_index.emplace(key, zero_keys.size()).second) zero_keys.push_back(key);
    }
  }
  std::vector<VariationalSolve> zero_solves(zero_keys.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (std::size_t k = 0; k < zero_keys.size(); ++k) {
    const auto& [mu, b, p] = zero_keys[k];
    zero_solves[k] = solve(model_at(0.0, mu), b, p, config.optimizer);
  }

  SweepTable table{study, config, std::vector<SweepRow>(points.size())};
  const long n_points = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (long i = 0; i < n_points; ++i) {
    const auto start = Clock::now();
    const GridPoint& pt = points[static_cast<std::size_t>(i)];
    const SchwingerParams model = model_at(pt.epsilon, pt.mu);
    SweepRow row;
    row.beta = pt.beta;
    row.temperature = 1.0 / pt.beta;
    row.epsilon = pt.epsilon;
    row.mu = pt.mu;
    row.depth = pt.depth;
    row.seed = config.optimizer.seed;
    row.trial_offset = trial_charge_offset(model);
    row.f_var = row.e_var = row.s_var = row.sigma_var = row.f0_var = kNaN;
    row.f_exact = row.sigma_exact = row.f0_exact = kNaN;
    double shared_ms = 0.0;

    if (want_var) {
      const auto& zero = zero_solves[zero_index.at({pt.mu, pt.beta, pt.depth})];
      const ThermalResult& r =
          pt.epsilon == 0.0 ? zero.result : solve(model, pt.beta, pt.depth, config.optimizer).result;
      if (pt.epsilon == 0.0) shared_ms = zero.wall_ms;
      row.has_variational = true;
      row.f_var = r.free_energy;
      row.e_var = r.energy;
      row.s_var = r.entropy;
      row.converged = r.converged;
      row.trace = r.trace;
      row.params = r.params;
      row.f0_var = zero.result.free_energy;
      row.sigma_var = pt.epsilon == 0.0 ? 0.0 : string_tension(model, row.f_var, row.f0_var);
    }
    if (want_exact) {
      row.has_exact = true;
      row.f_exact = thermodynamics(spectra[spectrum_index.at({pt.epsilon, pt.mu})], pt.beta)
                        .free_energy;
      row.f0_exact =
          thermodynamics(spectra[spectrum_index.at({0.0, pt.mu})], pt.beta).free_energy;
      row.sigma_exact = pt.epsilon == 0.0 ? 0.0 : string_tension(model, row.f_exact, row.f0_exact);
    }
    row.wall_time_ms = elapsed_ms(start) + shared_ms;
    table.rows[static_cast<std::size_t>(i)] = std::move(row);
  }
  return table;
}

SweepTable run_convergence_study(const SweepConfig& config) {
  return run_sweep(Study::convergence, config);
}

SweepTable run_tension_vs_temperature(const SweepConfig& config) {
  return run_sweep(Study::tension, config);
}

SweepTable run_tension_surface(const SweepConfig& config) {
  return run_sweep(Study::surface, config);
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

std::string format_fixed(double value, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

double log_or_nan(double sigma) { return sigma > 0.0 ? std::log(sigma) : kNaN; }

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t k = 0; k < std::size(kCsvColumns); ++k) {
    if (k) out += ',';
    out += kCsvColumns[k];
  }
  const bool with_logs = table.study == Study::tension;
  if (with_logs) out += ",ln_sigma_var,ln_sigma_exact";
  out += '\n';
  for (const auto& r : table.rows) {
    const std::string fields[] = {
        format_number(r.temperature),
        format_number(r.beta),
        format_number(r.epsilon),
        format_number(r.mu),
        std::to_string(r.depth),
        format_number(r.f_var),
        format_number(r.e_var),
        format_number(r.s_var),
        format_number(r.f_exact),
        format_number(r.sigma_var),
        format_number(r.sigma_exact),
        r.has_variational ? (r.converged ? "true" : "false") : "nan",
        std::to_string(r.seed),
        format_fixed(r.wall_time_ms, 3),
    };
    for (std::size_t k = 0; k < std::size(fields); ++k) {
      if (k) out += ',';
      out += fields[k];
    }
    if (with_logs) {
      out += ',' + format_number(log_or_nan(r.sigma_var));
      out += ',' + format_number(log_or_nan(r.sigma_exact));
    }
    out += '\n';
  }
  return out;
}

json to_audit_json(const SweepTable& table) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json row = {
        {"index", i},
        {"T", r.temperature},
        {"beta", r.beta},
        {"epsilon", r.epsilon},
        {"mu", r.mu},
        {"depth", r.depth},
        {"seed", r.seed},
        {"F_var", num(r.f_var)},
        {"F0_var", num(r.f0_var)},
        {"F_exact", num(r.f_exact)},
        {"F0_exact", num(r.f0_exact)},
        {"f_eps", r.trial_offset},
        {"sigma_var", num(r.sigma_var)},
        {"sigma_exact", num(r.sigma_exact)},
    };
    if (r.has_variational) {
      json trace = json::array();
      for (const auto& t : r.trace) trace.push_back({t.iteration, t.free_energy});
      row["converged"] = r.converged;
      row["trace"] = std::move(trace);
      row["params"] = r.params;
    }
    rows.push_back(std::move(row));
  }
  return {{"study", to_string(table.study)}, {"config", config_to_json(table.config)},
          {"rows", std::move(rows)}};
}

void write_outputs(const SweepTable& table, const std::string& path) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open " + path + " for writing");
  csv << to_csv(table);
  if (!csv) throw std::runtime_error("failed writing " + path);
  std::ofstream audit(path + ".json", std::ios::binary);
  if (!audit) throw std::runtime_error("cannot open " + path + ".json for writing");
  audit << to_audit_json(table).dump(1) << '\n';
  if (!audit) throw std::runtime_error("failed writing " + path + ".json");
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DimensionError("line fit needs two or more paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

const char* to_string(Study study) {
  switch (study) {
    case Study::convergence:
      return "convergence";
    case Study::tension:
      return "tension";
    case Study::surface:
      return "surface";
  }
  return "?";
}

const char* to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::variational:
      return "variational";
    case SweepMode::exact:
      return "exact";
    case SweepMode::both:
      return "both";
  }
  return "?";
}

Study parse_study(std::string_view name) {
  if (name == "convergence") return Study::convergence;
  if (name == "tension") return Study::tension;
  if (name == "surface") return Study::surface;
  throw ConfigError("unknown study '" + std::string(name) + "'");
}

SweepMode parse_sweep_mode(std::string_view name) {
  if (name == "variational") return SweepMode::variational;
  if (name == "exact") return SweepMode::exact;
  if (name == "both") return SweepMode::both;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

}  // namespace schwinger

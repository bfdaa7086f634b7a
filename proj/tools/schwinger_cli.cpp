// Command-line front end: Hamiltonian terms, exact thermodynamics, single
// variational solves and parameter sweeps.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schwinger/errors.hpp"
#include "schwinger/exact.hpp"
#include "schwinger/model.hpp"
#include "schwinger/optimizer.hpp"
#include "schwinger/sweep.hpp"

namespace {

using json = nlohmann::json;
using namespace schwinger;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ModelFlags {
  std::optional<int> n;
  std::optional<double> m, g, a, hopping;
  std::optional<std::string> electric;
};

struct OptimizerFlags {
  std::optional<int> restarts, max_iters, window;
  std::optional<double> tol, step;
  std::optional<std::string> optimizer, gradient;
  std::optional<std::uint64_t> seed;
};

struct Options {
  std::string config_path;
  std::string out;
  ModelFlags model;
  OptimizerFlags optimizer;
  // Single values for terms / exact / optimize, grids for sweep.
  std::vector<double> epsilon, mu, beta, temperature;
  std::vector<int> depth;
  std::optional<std::string> mode;
  std::optional<int> workers;
  std::optional<std::size_t> max_points;
  std::string params_out;
  std::string study;
};

void add_model_flags(CLI::App* app, Options& o) {
  app->add_option("--n", o.model.n, "Number of sites (even)");
  app->add_option("--m", o.model.m, "Fermion mass");
  app->add_option("--g", o.model.g, "Gauge coupling");
  app->add_option("--a", o.model.a, "Lattice spacing");
  app->add_option("--hopping", o.model.hopping, "Hopping strength 1/(2a)");
  app->add_option("--electric", o.model.electric, "Electric term convention: gauss | literal");
  app->add_option("--config", o.config_path, "JSON config file");
}

void add_optimizer_flags(CLI::App* app, Options& o) {
  app->add_option("--restarts", o.optimizer.restarts);
  app->add_option("--max-iters", o.optimizer.max_iters);
  app->add_option("--tol", o.optimizer.tol);
  app->add_option("--step", o.optimizer.step);
  app->add_option("--window", o.optimizer.window);
  app->add_option("--optimizer", o.optimizer.optimizer, "gradient | simplex");
  app->add_option("--gradient", o.optimizer.gradient, "adjoint | finite_difference");
  app->add_option("--seed", o.optimizer.seed, "Master seed");
}

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    json doc = json::parse(in);
    if (!doc.is_object()) throw ConfigError("config document must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

template <typename T>
void put(json& doc, const char* key, const std::optional<T>& value) {
  if (value) doc[key] = *value;
}

// Flags become a config overlay applied after the config file.
json flag_overlay(const Options& o) {
  json model = json::object();
  put(model, "n", o.model.n);
  put(model, "m", o.model.m);
  put(model, "g", o.model.g);
  put(model, "a", o.model.a);
  put(model, "hopping", o.model.hopping);
  put(model, "electric", o.model.electric);

  json opt = json::object();
  put(opt, "restarts", o.optimizer.restarts);
  put(opt, "max_iters", o.optimizer.max_iters);
  put(opt, "window", o.optimizer.window);
  put(opt, "tol", o.optimizer.tol);
  put(opt, "step", o.optimizer.step);
  put(opt, "optimizer", o.optimizer.optimizer);
  put(opt, "gradient", o.optimizer.gradient);
  put(opt, "seed", o.optimizer.seed);

  json grid = json::object();
  if (!o.beta.empty()) grid["beta"] = o.beta;
  if (!o.temperature.empty()) grid["T"] = o.temperature;
  if (!o.epsilon.empty()) grid["epsilon"] = o.epsilon;
  if (!o.mu.empty()) grid["mu"] = o.mu;
  if (!o.depth.empty()) grid["depth"] = o.depth;

  json doc = {{"model", model}, {"optimizer", opt}, {"grid", grid}};
  put(doc, "mode", o.mode);
  put(doc, "workers", o.workers);
  put(doc, "max_points", o.max_points);
  if (!o.out.empty()) doc["output"] = o.out;
  return doc;
}

// Defaults of the single-point subcommands: N=4, m=g=1, a=0.5, beta=1.
SweepConfig single_point_config(const Options& o) {
  SweepConfig c;
  c.model = SchwingerParams::make(4, 1.0, 1.0, std::nullopt, 1.0);
  c.beta = {1.0};
  c.output_path.clear();
  apply_config(c, read_config(o.config_path));
  apply_config(c, flag_overlay(o));
  if (c.epsilon.size() != 1 || c.mu.size() != 1) {
    throw ConfigError("--epsilon and --mu take a single value here");
  }
  c.model = c.model.with_field(c.epsilon.front()).with_chemical_potential(c.mu.front());
  c.model.validate();
  return c;
}

// Writes to the --out path when given, stdout otherwise.
void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

int run_terms(const Options& o) {
  const SweepConfig c = single_point_config(o);
  emit(to_text(build_hamiltonian(c.model)), c.output_path);
  return 0;
}

int run_exact(const Options& o) {
  const SweepConfig c = single_point_config(o);
  const SchwingerParams& model = c.model;
  const Spectrum field = compute_spectrum(build_hamiltonian(model));
  const bool has_tension = model.background_field != 0.0 && model.coupling > 0.0;
  std::optional<Spectrum> zero;
  if (has_tension) zero = compute_spectrum(build_hamiltonian(model.with_field(0.0)));

  std::string csv = "beta,F,E,S,sigma\n";
  for (double beta : c.betas()) {
    const Thermodynamics t = thermodynamics(field, beta);
    double sigma = 0.0;
    if (has_tension) {
      sigma = string_tension(model, t.free_energy, thermodynamics(*zero, beta).free_energy);
    } else if (model.coupling == 0.0) {
      sigma = std::nan("");
    }
    csv += format_number(beta) + ',' + format_number(t.free_energy) + ',' +
           format_number(t.energy) + ',' + format_number(t.entropy) + ',' +
           format_number(sigma) + '\n';
  }
  emit(csv, c.output_path);
  return 0;
}

int run_optimize(const Options& o) {
  SweepConfig c = single_point_config(o);
  if (c.betas().size() != 1) throw ConfigError("optimize takes a single beta or T");
  if (c.depth.size() != 1) throw ConfigError("optimize takes a single depth");
  c.optimizer.depth = c.depth.front();
  c.optimizer.validate();
  const double beta = c.betas().front();
  const ObjectiveSpec spec(build_hamiltonian(c.model), beta);
  const ThermalResult r = minimize(spec, c.optimizer);

  json trace = json::array();
  for (const auto& t : r.trace) trace.push_back({t.iteration, t.free_energy});
  json doc = {
      {"beta", beta},
      {"depth", c.optimizer.depth},
      {"F", r.free_energy},
      {"E", r.energy},
      {"S", r.entropy},
      {"converged", r.converged},
      {"seed", r.seed},
      {"restarts", r.restarts_used},
      {"best_restart", r.best_restart},
      {"params", r.params},
      {"trace", trace},
  };
  if (c.model.n_sites <= kDefaultMaxSites) {
    doc["F_exact"] = exact_free_energy(spec.hamiltonian(), beta).free_energy;
  }
  if (!o.params_out.empty()) emit(json(r.params).dump(1) + "\n", o.params_out);
  emit(doc.dump(1) + "\n", c.output_path);
  return 0;
}

int run_sweep_command(const Options& o) {
  const Study study = parse_study(o.study);
  SweepConfig c = SweepConfig::defaults(study);
  apply_config(c, read_config(o.config_path));
  apply_config(c, flag_overlay(o));
  if (c.output_path.empty()) throw ConfigError("no output path");

  const SweepTable table = run_sweep(study, c);
  write_outputs(table, c.output_path);
  std::fprintf(stderr, "%zu rows -> %s\n", table.rows.size(), c.output_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational thermal states of the lattice Schwinger model"};
  app.require_subcommand(1);
  Options o;

  auto* terms = app.add_subcommand("terms", "Print the Hamiltonian as Pauli terms");
  auto* exact = app.add_subcommand("exact", "Exact F, E, S and string tension as CSV");
  auto* optimize = app.add_subcommand("optimize", "Variational free-energy minimization");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV plus JSON audit");

  for (auto* sub : {terms, exact, optimize, sweep}) {
    add_model_flags(sub, o);
    sub->add_option("--epsilon", o.epsilon, "Background field")->delimiter(',');
    sub->add_option("--mu", o.mu, "Chemical potential")->delimiter(',');
    sub->add_option("--out", o.out, "Output file");
  }
  for (auto* sub : {exact, optimize, sweep}) {
    auto* beta = sub->add_option("--beta", o.beta, "Inverse temperature(s)")->delimiter(',');
    sub->add_option("--T", o.temperature, "Temperature(s)")->delimiter(',')->excludes(beta);
  }
  for (auto* sub : {optimize, sweep}) {
    add_optimizer_flags(sub, o);
    sub->add_option("--depth", o.depth, "Ansatz depth p")->delimiter(',');
  }
  optimize->add_option("--params-out", o.params_out, "Write the optimal AnsatzParams as JSON");
  sweep->add_option("study", o.study, "convergence | tension | surface")
      ->required()
      ->check(CLI::IsMember({"convergence", "tension", "surface"}));
  sweep->add_option("--mode", o.mode, "variational | exact | both");
  sweep->add_option("--workers", o.workers, "Worker threads");
  sweep->add_option("--max-points", o.max_points, "Grid size budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*terms) return run_terms(o);
    if (*exact) return run_exact(o);
    if (*optimize) return run_optimize(o);
    return run_sweep_command(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// Acceptance suite. Prints one PASS/FAIL line per criterion; `acceptance k`
// runs criterion k only. Exit status is non-zero when any selected criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "schwinger/ansatz.hpp"
#include "schwinger/density_matrix.hpp"
#include "schwinger/exact.hpp"
#include "schwinger/model.hpp"
#include "schwinger/optimizer.hpp"
#include "schwinger/sweep.hpp"

using namespace schwinger;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

SchwingerParams unit_model(int n, double eps = 0.0, double mu = 0.0) {
  return SchwingerParams::make(n, 1.0, 1.0, std::nullopt, 1.0, eps, mu);
}

AnsatzParams random_params(int n, int depth, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-pi, pi);
  std::vector<double> flat(AnsatzParams::parameter_count(n, depth));
  for (auto& x : flat) x = u(rng);
  return AnsatzParams::unflatten(n, depth, flat);
}

PauliSum random_hermitian_sum(int n, std::mt19937_64& rng) {
  static constexpr char kOps[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  PauliSum sum(n);
  for (int k = 0; k < 12; ++k) {
    std::string ops;
    for (int s = 0; s < n; ++s) ops += kOps[pick(rng)];
    sum.add(PauliTerm(coeff(rng), ops));
  }
  return sum;
}

Outcome oracle_self_consistency() {
  std::mt19937_64 rng(101);
  std::vector<PauliSum> cases{build_hamiltonian(unit_model(2)),
                              build_hamiltonian(unit_model(2, 0.5, 1.0)),
                              random_hermitian_sum(3, rng), random_hermitian_sum(3, rng)};
  double worst_expm = 0.0;
  for (const auto& h : cases) {
    const Matrix d = to_dense(h);
    for (double beta : {0.1, 1.0, 10.0}) {
      const Matrix w = (-beta * d).exp();
      const double ref = -std::log(w.trace().real()) / beta;
      worst_expm = std::max(worst_expm, std::abs(exact_free_energy(h, beta).free_energy - ref));
    }
  }
  double worst_hot = 0.0, worst_cold = 0.0;
  for (int n : {2, 4}) {
    const Spectrum s = compute_spectrum(build_hamiltonian(unit_model(n)));
    worst_hot = std::max(worst_hot, std::abs(thermodynamics(s, 1e-6).entropy - n * std::log(2.0)));
    worst_cold = std::max(worst_cold, std::abs(thermodynamics(s, 1e3).free_energy - s.eigenvalues[0]));
  }
  const bool pass = worst_expm <= 1e-10 && worst_hot <= 1e-6 && worst_cold <= 1e-8;
  return {pass, fmt("max |F - F_expm| = %.2e (N=2,3), |S - N ln2| = %.2e at beta=1e-6, "
                    "|F - E0| = %.2e at beta=1e3",
                    worst_expm, worst_hot, worst_cold)};
}

Outcome variational_bound() {
  std::mt19937_64 rng(102);
  const PauliSum h = build_hamiltonian(unit_model(4));
  int samples = 0, violations = 0;
  double min_gap = INFINITY;
  for (double beta : {0.1, 1.0, 10.0}) {
    const double exact = exact_free_energy(h, beta).free_energy;
    const ObjectiveSpec spec(h, beta);
    for (int k = 0; k < 200; ++k) {
      const double f = objective(spec, random_params(4, k % 4, rng)).free_energy;
      min_gap = std::min(min_gap, f - exact);
      violations += f < exact - 1e-9;
      ++samples;
    }
  }
  return {violations == 0, fmt("%d samples, %d violations, min F - F_exact = %.3e", samples,
                               violations, min_gap)};
}

Outcome convergence_study() {
  const PauliSum h = build_hamiltonian(unit_model(4));
  struct Case {
    double beta;
    std::vector<int> depths;
    double limit;
  };
  const Case cases[] = {{0.1, {1, 2}, 0.01}, {10.0, {4}, 0.01}, {1.0, {6}, 0.05}};
  bool pass = true;
  std::ostringstream out;
  for (const auto& c : cases) {
    const double exact = exact_free_energy(h, c.beta).free_energy;
    const ObjectiveSpec spec(h, c.beta);
    const auto start = Clock::now();
    for (int p : c.depths) {
      OptimizerConfig cfg;
      cfg.depth = p;
      cfg.restarts = 8;
      const double rel = std::abs(minimize(spec, cfg).free_energy - exact) / std::abs(exact);
      pass &= rel <= c.limit;
      out << fmt("beta=%g p=%d rel=%.2e; ", c.beta, p, rel);
    }
    const double secs = seconds_since(start);
    pass &= secs <= 120.0;
    out << fmt("[%.1fs] ", secs);
  }
  return {pass, out.str()};
}

Outcome spectrum_invariance() {
  std::mt19937_64 rng(104);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4;
    const auto p = random_params(n, 1 + k % 3, rng);
    worst = std::max(worst, std::abs(realize_state(p).von_neumann_entropy() - entropy(p.theta())));
  }
  return {worst <= 1e-9, fmt("100 parameter sets, max |S_vN - S(theta)| = %.2e", worst)};
}

Outcome gradient_correctness() {
  std::mt19937_64 rng(105);
  const ObjectiveSpec spec(build_hamiltonian(unit_model(2)), 1.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    auto p = random_params(2, 1, rng);
    const auto g = gradient(spec, p);
    auto x = p.flatten();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double x0 = x[i];
      x[i] = x0 + h;
      const double up = objective(spec, AnsatzParams::unflatten(2, 1, x)).free_energy;
      x[i] = x0 - h;
      const double dn = objective(spec, AnsatzParams::unflatten(2, 1, x)).free_energy;
      x[i] = x0;
      worst = std::max(worst, std::abs(g[i] - (up - dn) / (2.0 * h)));
    }
  }
  return {worst <= 1e-5, fmt("20 points, max component error = %.2e", worst)};
}

Outcome tension_vs_temperature() {
  const std::vector<double> temps{0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  SweepConfig c = SweepConfig::defaults(Study::tension);
  c.model = unit_model(6);
  c.temperature = temps;
  c.epsilon = {0.5};
  c.depth = {4};
  c.optimizer.restarts = 4;
  c.mode = SweepMode::both;
  const auto start = Clock::now();
  const SweepTable table = run_tension_vs_temperature(c);

  bool decreasing = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& r = table.rows[k];
    if (k) decreasing &= r.sigma_exact < table.rows[k - 1].sigma_exact;
    worst = std::max(worst, std::abs(r.sigma_var - r.sigma_exact));
  }

  // Decay window T in [1, 5], where sigma_exact(eps = 0.25) is positive.
  std::vector<double> x, y;
  for (double t : temps) {
    if (t < 1.0 || t > 5.0) continue;
    x.push_back(t);
    y.push_back(std::log(exact_string_tension(unit_model(6, 0.25), 1.0 / t)));
  }
  const LinearFit fit = fit_line(x, y);
  const bool pass = decreasing && worst <= 0.02 && fit.r_squared >= 0.95;
  return {pass, fmt("sigma_exact strictly decreasing: %s; max |sigma_var - sigma_exact| = %.4f; "
                    "ln sigma fit (eps=0.25, T in [1,5]) R^2 = %.4f [%.0fs]",
                    decreasing ? "yes" : "no", worst, fit.r_squared, seconds_since(start))};
}

Outcome chemical_potential() {
  SweepConfig c = SweepConfig::defaults(Study::surface);
  c.model = unit_model(6);
  c.mode = SweepMode::exact;
  const SweepTable table = run_tension_surface(c);
  int violations = 0, shared = 0, negative = 0;
  double worst = -INFINITY;
  std::ostringstream where;
  for (const auto& r : table.rows) {
    if (r.sigma_exact < 0.0) ++negative;
    if (r.mu != 1.0) continue;
    for (const auto& z : table.rows) {
      if (z.mu != 0.0 || z.beta != r.beta) continue;
      ++shared;
      const double d = r.sigma_exact - z.sigma_exact;
      worst = std::max(worst, d);
      if (d > 0.0) ++violations;
    }
  }
  const bool pass = violations == 0 && negative > 0;
  return {pass, fmt("sigma(mu=1) <= sigma(mu=0) at %d/%d grid T (max excess %.4f); "
                    "%d of %zu (T, mu) points with sigma < 0",
                    shared - violations, shared, worst, negative, table.rows.size())};
}

Outcome zero_cases() {
  double worst_sigma = 0.0;
  for (double mu : {0.0, 0.7, 2.0}) {
    for (double beta : {0.01, 0.5, 3.0, 100.0}) {
      worst_sigma = std::max(worst_sigma, std::abs(exact_string_tension(unit_model(6, 0.0, mu), beta)));
    }
  }
  SweepConfig c;
  c.model = unit_model(4);
  c.beta = {0.3, 3.0};
  c.epsilon = {0.0};
  c.mu = {0.0, 1.5};
  c.optimizer.restarts = 1;
  c.optimizer.max_iters = 100;
  for (const auto& r : run_sweep(Study::convergence, c).rows) {
    worst_sigma = std::max({worst_sigma, std::abs(r.sigma_var), std::abs(r.sigma_exact)});
  }
  double worst_offset = 0.0;
  for (int n : {2, 4, 6}) {
    for (double g : {0.5, 1.0, 2.0}) {
      for (double eps : {0.0, 0.5}) {
        auto p = SchwingerParams::make(n, 1.0, g, 0.3, std::nullopt, eps);
        worst_offset = std::max(worst_offset, std::abs(trial_charge_offset(p)));
      }
    }
  }
  const double s0 = entropy(std::vector<double>(6, 0.0));
  const double smax = entropy(std::vector<double>(6, pi / 4));
  const bool pass = worst_sigma == 0.0 && worst_offset == 0.0 && s0 == 0.0 &&
                    std::abs(smax - 6 * std::log(2.0)) <= 1e-12;
  return {pass, fmt("max |sigma(eps=0)| = %.1e, max |f_eps| at eps in {0,0.5} = %.1e, "
                    "S(0) = %.1e, S(pi/4) - N ln2 = %.1e",
                    worst_sigma, worst_offset, s0, smax - 6 * std::log(2.0))};
}

std::string without_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

Outcome determinism() {
  SweepConfig c;
  c.model = unit_model(4);
  c.beta = {0.2, 1.0, 5.0};
  c.epsilon = {0.0, 0.5};
  c.mu = {0.0, 1.0};
  c.depth = {1, 2};
  c.optimizer.restarts = 3;
  c.optimizer.max_iters = 400;
  const std::string a = without_wall_time(to_csv(run_sweep(Study::convergence, c)));
  const std::string b = without_wall_time(to_csv(run_sweep(Study::convergence, c)));
  c.workers = 4;
  const std::string p = without_wall_time(to_csv(run_sweep(Study::convergence, c)));
  const bool pass = a == b && a == p;
  return {pass, fmt("%zu-byte CSV; repeat identical: %s; workers 1 vs 4 identical: %s", a.size(),
                    a == b ? "yes" : "no", a == p ? "yes" : "no")};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {"oracle self-consistency", oracle_self_consistency},
      {"variational bound", variational_bound},
      {"convergence study", convergence_study},
      {"entropy/spectrum invariance", spectrum_invariance},
      {"gradient correctness", gradient_correctness},
      {"tension vs temperature", tension_vs_temperature},
      {"chemical-potential behaviour", chemical_potential},
      {"exact zero cases", zero_cases},
      {"determinism and parallel equivalence", determinism},
  };
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  if (selected.empty()) {
    for (int k = 1; k <= 9; ++k) selected.push_back(k);
  }

  int failures = 0;
  for (int k : selected) {
    if (k < 1 || k > 9) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 2;
    }
    const auto& c = criteria[k - 1];
    const Outcome o = c.run();
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", k, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}

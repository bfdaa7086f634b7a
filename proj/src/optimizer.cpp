#include "schwinger/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "schwinger/errors.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger {

namespace {

void check_dimensions(const ObjectiveSpec& spec, const AnsatzParams& params) {
  params.validate();
  if (params.n_sites() != spec.n_sites()) {
    throw DimensionError("ansatz acts on " + std::to_string(params.n_sites()) +
                         " sites, Hamiltonian on " + std::to_string(spec.n_sites()));
  }
}

double z_eigenvalue(std::uint64_t basis, int n_sites, int site) {
  return (basis & kernels::site_bit(n_sites, site)) ? -1.0 : 1.0;
}

std::vector<cplx> conjugated(std::vector<cplx> d) {
  for (auto& x : d) x = std::conj(x);
  return d;
}

ObjectiveValue make_value(double energy, double entropy, double beta) {
  return {energy - entropy / beta, energy, entropy};
}

using Evaluation = std::pair<ObjectiveValue, std::vector<double>>;

Evaluation evaluate(const ObjectiveSpec& spec, const AnsatzParams& params, GradientMode mode) {
  if (mode == GradientMode::adjoint) return adjoint_gradient(spec, params);
  return {objective(spec, params), gradient(spec, params)};
}

struct Trajectory {
  ObjectiveValue value{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  std::vector<double> best_x;
  std::vector<TracePoint> trace;
  std::vector<double> history;  // objective at each iterate
  bool converged = false;

  // Keeps the best-so-far point, appends it to the trace, and reports whether
  // the iterates moved by less than tol over the last `window` iterations.
  bool record(int iteration, const ObjectiveValue& v, const std::vector<double>& x, int window,
              double tol) {
    if (v.free_energy < value.free_energy) {
      value = v;
      best_x = x;
    }
    trace.push_back({iteration, value.free_energy});
    history.push_back(v.free_energy);
    const auto n = static_cast<int>(history.size());
    if (n > window && std::abs(history[n - 1] - history[n - 1 - window]) < tol) converged = true;
    return converged;
  }
};

Trajectory run_adam(const ObjectiveSpec& spec, const OptimizerConfig& cfg, int n, int p,
                    std::vector<double> x) {
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  std::vector<double> m(x.size(), 0.0), v(x.size(), 0.0);
  Trajectory traj;
  double b1t = 1.0, b2t = 1.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    auto [value, g] = evaluate(spec, AnsatzParams::unflatten(n, p, x), cfg.gradient);
    if (traj.record(it, value, x, cfg.window, cfg.tol)) break;
    b1t *= kBeta1;
    b2t *= kBeta2;
    for (std::size_t k = 0; k < x.size(); ++k) {
      m[k] = kBeta1 * m[k] + (1.0 - kBeta1) * g[k];
      v[k] = kBeta2 * v[k] + (1.0 - kBeta2) * g[k] * g[k];
      const double mhat = m[k] / (1.0 - b1t);
      const double vhat = v[k] / (1.0 - b2t);
      x[k] -= cfg.step * mhat / (std::sqrt(vhat) + kEps);
    }
  }
  return traj;
}

// Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2).
Trajectory run_simplex(const ObjectiveSpec& spec, const OptimizerConfig& cfg, int n, int p,
                       const std::vector<double>& x0) {
  constexpr double kInitialEdge = 0.25;
  const std::size_t dim = x0.size();
  auto f = [&](const std::vector<double>& x) {
    return objective(spec, AnsatzParams::unflatten(n, p, x));
  };

  std::vector<std::vector<double>> pts{x0};
  for (std::size_t k = 0; k < dim; ++k) {
    auto x = x0;
    x[k] += kInitialEdge;
    pts.push_back(std::move(x));
  }
  std::vector<ObjectiveValue> vals;
  for (const auto& x : pts) vals.push_back(f(x));

  Trajectory traj;
  std::vector<std::size_t> order(pts.size());
  for (int it = 1; it <= cfg.max_iters; ++it) {
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return vals[a].free_energy < vals[b].free_energy;
    });
    if (traj.record(it, vals[order.front()], pts[order.front()], cfg.window, cfg.tol)) break;

    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[order[k]][d];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) x[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      return x;
    };
    const double f_best = vals[order.front()].free_energy;
    const double f_worst = vals[worst].free_energy;
    const double f_second = vals[second].free_energy;

    auto xr = along(-1.0);
    const auto vr = f(xr);
    if (vr.free_energy < f_best) {
      auto xe = along(-2.0);
      const auto ve = f(xe);
      if (ve.free_energy < vr.free_energy) {
        pts[worst] = std::move(xe);
        vals[worst] = ve;
      } else {
        pts[worst] = std::move(xr);
        vals[worst] = vr;
      }
      continue;
    }
    if (vr.free_energy < f_second) {
      pts[worst] = std::move(xr);
      vals[worst] = vr;
      continue;
    }
    const bool outside = vr.free_energy < f_worst;
    auto xc = along(outside ? -0.5 : 0.5);
    const auto vc = f(xc);
    if (vc.free_energy < (outside ? vr.free_energy : f_worst)) {
      pts[worst] = std::move(xc);
      vals[worst] = vc;
      continue;
    }
    const auto& best = pts[order.front()];
    for (std::size_t k = 1; k < order.size(); ++k) {
      auto& x = pts[order[k]];
      for (std::size_t d = 0; d < dim; ++d) x[d] = best[d] + 0.5 * (x[d] - best[d]);
      vals[order[k]] = f(x);
    }
  }
  return traj;
}

}  // namespace

ObjectiveSpec::ObjectiveSpec(PauliSum hamiltonian, double beta)
    : hamiltonian_(std::move(hamiltonian)), beta_(beta) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw ConfigError("beta must be finite and positive");
  dense_ = to_dense(hamiltonian_);
}

ObjectiveValue objective(const ObjectiveSpec& spec, const AnsatzParams& params) {
  check_dimensions(spec, params);
  const DensityMatrix rho = realize_state(params);
  return make_value(expectation(spec.hamiltonian(), rho), entropy(params.theta()), spec.beta());
}

std::vector<double> gradient(const ObjectiveSpec& spec, const AnsatzParams& params, double step) {
  check_dimensions(spec, params);
  const int n = params.n_sites(), p = params.depth();
  const auto x = params.flatten();
  std::vector<double> g(x.size());
  auto energy_at = [&](const std::vector<double>& y) {
    return expectation(spec.hamiltonian(), realize_state(AnsatzParams::unflatten(n, p, y)));
  };
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto plus = x, minus = x;
    plus[k] += step;
    minus[k] -= step;
    g[k] = (energy_at(plus) - energy_at(minus)) / (2.0 * step);
  }
  for (int i = 0; i < n; ++i) g[i] -= entropy_derivative(x[i]) / spec.beta();
  return g;
}

std::pair<ObjectiveValue, std::vector<double>> adjoint_gradient(const ObjectiveSpec& spec,
                                                                const AnsatzParams& params) {
  check_dimensions(spec, params);
  const int n = params.n_sites();
  const auto& blocks = params.blocks();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t block_stride = static_cast<std::size_t>(3 * n - 1);

  std::vector<std::vector<cplx>> z_diag, zz_diag;
  for (const auto& b : blocks) {
    z_diag.push_back(z_layer_diagonal(n, b.zeta));
    zz_diag.push_back(zz_layer_diagonal(n, b.alpha));
  }

  Matrix rho = initial_state(params.theta()).matrix();
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    kernels::conjugate_diagonal(rho, z_diag[l]);
    for (int site = 1; site <= n; ++site) {
      kernels::conjugate_rx(rho, n, site, blocks[l].lambda[site - 1]);
    }
    kernels::conjugate_diagonal(rho, zz_diag[l]);
  }
  const double energy = expectation(spec.hamiltonian(), rho);
  const double s = entropy(params.theta());

  std::vector<double> g(params.size(), 0.0);
  Matrix op = spec.dense_hamiltonian();

  // Walk the layers backwards. At each layer, rho is the state right after it
  // and op the Hamiltonian pulled back through every later layer, so that
  // dE/dphi = 2 Im Tr[op P rho] for a generator P of that layer.
  for (std::size_t l = blocks.size(); l-- > 0;) {
    const std::size_t off = static_cast<std::size_t>(n) + l * block_stride;

    auto w = kernels::column_overlaps(op, rho);
    for (int i = 1; i < n; ++i) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        acc += z_eigenvalue(c, n, i) * z_eigenvalue(c, n, i + 1) * w[c];
      }
      g[off + 2 * n + (i - 1)] = 2.0 * acc.imag();
    }
    const auto zz_inv = conjugated(zz_diag[l]);
    kernels::conjugate_diagonal(rho, zz_inv);
    kernels::conjugate_diagonal(op, zz_inv);

    for (int i = 1; i <= n; ++i) {
      const auto x_mask = PauliTerm::single(n, i, 'X', 1.0).mask();
      g[off + n + (i - 1)] = 2.0 * kernels::pauli_overlap(op, x_mask, rho).imag();
    }
    for (int i = 1; i <= n; ++i) {
      kernels::conjugate_rx(rho, n, i, -blocks[l].lambda[i - 1]);
      kernels::conjugate_rx(op, n, i, -blocks[l].lambda[i - 1]);
    }

    w = kernels::column_overlaps(op, rho);
    for (int i = 1; i <= n; ++i) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += z_eigenvalue(c, n, i) * w[c];
      g[off + (i - 1)] = 2.0 * acc.imag();
    }
    const auto z_inv = conjugated(z_diag[l]);
    kernels::conjugate_diagonal(rho, z_inv);
    kernels::conjugate_diagonal(op, z_inv);
  }

  // E = sum_b p_b(theta) (U^dag H U)_bb
  const auto& theta = params.theta();
  std::vector<double> sin2(n), cos2(n);
  for (int j = 0; j < n; ++j) {
    sin2[j] = std::sin(theta[j]) * std::sin(theta[j]);
    cos2[j] = std::cos(theta[j]) * std::cos(theta[j]);
  }
  for (int i = 1; i <= n; ++i) {
    const double d_sin2 = std::sin(2.0 * theta[i - 1]);
    const auto bit = kernels::site_bit(n, i);
    double acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      double weight = (b & bit) ? -d_sin2 : d_sin2;
      for (int j = 1; j <= n; ++j) {
        if (j != i) weight *= (b & kernels::site_bit(n, j)) ? cos2[j - 1] : sin2[j - 1];
      }
      acc += weight * op(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
    }
    g[i - 1] = acc - entropy_derivative(theta[i - 1]) / spec.beta();
  }
  return {make_value(energy, s, spec.beta()), std::move(g)};
}

void OptimizerConfig::validate() const {
  if (depth < 0) throw ConfigError("depth must be >= 0");
  if (restarts < 1) throw ConfigError("restarts must be >= 1");
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(tol >= 0.0)) throw ConfigError("tol must be >= 0");
  if (!(step > 0.0)) throw ConfigError("step must be positive");
  if (window < 1) throw ConfigError("window must be >= 1");
}

std::uint64_t restart_seed(std::uint64_t master, int restart) {
  // splitmix64 of (master, restart)
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(restart) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

AnsatzParams random_initial_params(int n_sites, int depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mixing(0.05, std::numbers::pi / 2.0 - 0.05);
  std::normal_distribution<double> circuit(0.0, 0.01);
  AnsatzParams params = AnsatzParams::zeros(n_sites, depth);
  for (auto& t : params.theta()) t = mixing(rng);
  for (auto& b : params.blocks()) {
    for (auto& v : b.zeta) v = circuit(rng);
    for (auto& v : b.lambda) v = circuit(rng);
    for (auto& v : b.alpha) v = circuit(rng);
  }
  return params;
}

ThermalResult minimize_from(const ObjectiveSpec& spec, const OptimizerConfig& config,
                            AnsatzParams start) {
  config.validate();
  check_dimensions(spec, start);
  const int n = start.n_sites(), p = start.depth();
  Trajectory traj = config.optimizer == OptimizerKind::gradient
                        ? run_adam(spec, config, n, p, start.flatten())
                        : run_simplex(spec, config, n, p, start.flatten());
  ThermalResult r;
  r.free_energy = traj.value.free_energy;
  r.energy = traj.value.energy;
  r.entropy = traj.value.entropy;
  r.params = AnsatzParams::unflatten(n, p, traj.best_x);
  r.trace = std::move(traj.trace);
  r.seed = config.seed;
  r.restarts_used = 1;
  r.converged = traj.converged;
  return r;
}

ThermalResult minimize(const ObjectiveSpec& spec, const OptimizerConfig& config) {
  config.validate();
  const int n = spec.n_sites();
  std::vector<ThermalResult> runs(static_cast<std::size_t>(config.restarts));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < config.restarts; ++r) {
    runs[r] = minimize_from(spec, config,
                            random_initial_params(n, config.depth, restart_seed(config.seed, r)));
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].free_energy < runs[best].free_energy) best = r;
  }
  ThermalResult result = std::move(runs[best]);
  result.restarts_used = config.restarts;
  result.best_restart = static_cast<int>(best);
  result.seed = config.seed;
  return result;
}

const char* to_string(OptimizerKind kind) {
  return kind == OptimizerKind::gradient ? "gradient" : "simplex";
}

const char* to_string(GradientMode mode) {
  return mode == GradientMode::adjoint ? "adjoint" : "finite_difference";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "gradient") return OptimizerKind::gradient;
  if (name == "simplex") return OptimizerKind::simplex;
  throw ConfigError("unknown optimizer '" + std::string(name) + "'");
}

GradientMode parse_gradient_mode(std::string_view name) {
  if (name == "adjoint") return GradientMode::adjoint;
  if (name == "finite_difference" || name == "fd") return GradientMode::finite_difference;
  throw ConfigError("unknown gradient mode '" + std::string(name) + "'");
}

}  // namespace schwinger

#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "schwinger/ansatz.hpp"
#include "schwinger/pauli.hpp"

namespace schwinger {

/// Hamiltonian plus inverse temperature. Caches the dense Hamiltonian used by
/// the adjoint gradient.
class ObjectiveSpec {
 public:
  ObjectiveSpec(PauliSum hamiltonian, double beta);

  const PauliSum& hamiltonian() const { return hamiltonian_; }
  double beta() const { return beta_; }
  int n_sites() const { return hamiltonian_.n_sites(); }
  const Matrix& dense_hamiltonian() const { return dense_; }

 private:
  PauliSum hamiltonian_;
  double beta_;
  Matrix dense_;
};

struct ObjectiveValue {
  double free_energy = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
};

/// F = Tr[rho(omega) H] - S(theta) / beta.
ObjectiveValue objective(const ObjectiveSpec& spec, const AnsatzParams& params);

inline constexpr double kGradientStep = 1e-4;

/// dF/d(omega) in flattened order. Energy components by central differences
/// with step h; the entropy part of the theta components is analytic.
std::vector<double> gradient(const ObjectiveSpec& spec, const AnsatzParams& params,
                             double step = kGradientStep);

/// Exact dF/d(omega) by a reverse pass over the rotation layers, together with
/// the objective value at params.
std::pair<ObjectiveValue, std::vector<double>> adjoint_gradient(const ObjectiveSpec& spec,
                                                                const AnsatzParams& params);

enum class OptimizerKind { gradient, simplex };
enum class GradientMode { adjoint, finite_difference };

struct OptimizerConfig {
  int depth = 1;
  int restarts = 8;
  int max_iters = 2000;
  double tol = 1e-7;
  double step = 0.05;
  OptimizerKind optimizer = OptimizerKind::gradient;
  GradientMode gradient = GradientMode::adjoint;
  std::uint64_t seed = 20220101;
  int window = 25;

  /// depth >= 0, restarts >= 1, max_iters >= 1, tol >= 0, step > 0, window >= 1.
  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  double free_energy = 0.0;  // best so far in the restart
};

struct ThermalResult {
  double free_energy = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  AnsatzParams params;
  std::vector<TracePoint> trace;  // winning restart
  std::uint64_t seed = 0;
  int restarts_used = 0;
  int best_restart = 0;
  bool converged = false;
};

/// Seed of restart r: a fixed mix of the master seed and the restart counter.
std::uint64_t restart_seed(std::uint64_t master, int restart);

/// theta ~ U(0.05, pi/2 - 0.05), circuit angles ~ N(0, 0.01).
AnsatzParams random_initial_params(int n_sites, int depth, std::uint64_t seed);

/// One optimization trajectory from the given start.
ThermalResult minimize_from(const ObjectiveSpec& spec, const OptimizerConfig& config,
                            AnsatzParams start);

/// Best of `restarts` trajectories; ties go to the lowest restart index.
ThermalResult minimize(const ObjectiveSpec& spec, const OptimizerConfig& config);

const char* to_string(OptimizerKind kind);
const char* to_string(GradientMode mode);
OptimizerKind parse_optimizer_kind(std::string_view name);
GradientMode parse_gradient_mode(std::string_view name);

}  // namespace schwinger

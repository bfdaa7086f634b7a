#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <json.hpp>

#include "schwinger/density_matrix.hpp"

namespace schwinger {

/// One block of the layered unitary: Z rotations, then X rotations, then ZZ
/// rotations on nearest neighbours.
struct RotationBlock {
  std::vector<double> zeta;    // N
  std::vector<double> lambda;  // N
  std::vector<double> alpha;   // N - 1
};

/// Product-spectrum ansatz parameters: N mixing angles plus p rotation blocks.
class AnsatzParams {
 public:
  AnsatzParams() = default;
  AnsatzParams(std::vector<double> theta, std::vector<RotationBlock> blocks);

  /// All angles zero.
  static AnsatzParams zeros(int n_sites, int depth);
  /// Inverse of `flatten()`.
  static AnsatzParams unflatten(int n_sites, int depth, std::span<const double> values);
  static std::size_t parameter_count(int n_sites, int depth);

  int n_sites() const { return static_cast<int>(theta_.size()); }
  int depth() const { return static_cast<int>(blocks_.size()); }
  std::size_t size() const { return parameter_count(n_sites(), depth()); }

  const std::vector<double>& theta() const { return theta_; }
  std::vector<double>& theta() { return theta_; }
  const std::vector<RotationBlock>& blocks() const { return blocks_; }
  std::vector<RotationBlock>& blocks() { return blocks_; }

  /// theta, then per block zeta, lambda, alpha.
  std::vector<double> flatten() const;
  /// Throws DimensionError on ragged blocks, ConfigError on non-finite angles.
  void validate() const;

 private:
  std::vector<double> theta_;
  std::vector<RotationBlock> blocks_;
};

void to_json(nlohmann::json& j, const AnsatzParams& params);
void from_json(const nlohmann::json& j, AnsatzParams& params);

/// Diagonal of the product state, indexed by computational basis state.
std::vector<double> initial_populations(std::span<const double> theta);
DensityMatrix initial_state(std::span<const double> theta);

/// Sum_i [-s_i ln s_i - c_i ln c_i] with s_i = sin^2 theta_i, c_i = cos^2 theta_i.
double entropy(std::span<const double> theta);
/// dS_i/dtheta_i = sin(2 theta) ln(cot^2 theta), sin^2 clamped to [1e-12, 1 - 1e-12].
double entropy_derivative(double theta);

/// exp(-i H_z(zeta)) as a diagonal, etc. Phases of each diagonal layer.
std::vector<cplx> z_layer_diagonal(int n_sites, std::span<const double> zeta);
std::vector<cplx> zz_layer_diagonal(int n_sites, std::span<const double> alpha);

/// U = prod_l exp(-i H_zz(alpha_l)) exp(-i H_x(lambda_l)) exp(-i H_z(zeta_l)),
/// block 1 rightmost.
Matrix build_unitary(int n_sites, std::span<const RotationBlock> blocks);

/// Applies the layered unitary to rho in place, gate by gate.
void evolve(Matrix& rho, int n_sites, std::span<const RotationBlock> blocks);

/// U rho_0(theta) U^dagger.
DensityMatrix realize_state(const AnsatzParams& params);

}  // namespace schwinger

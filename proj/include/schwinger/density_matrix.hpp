#pragma once

#include <Eigen/Dense>

#include "schwinger/pauli.hpp"

namespace schwinger {

inline constexpr double kStateTolerance = 1e-10;

/// Operator on the 2^N system space. Construction does not validate; call
/// `check()` or use `validated()` where the invariants must hold.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix validated(Matrix entries, double tol = kStateTolerance);
  static DensityMatrix maximally_mixed(int n_sites);

  const Matrix& matrix() const { return entries_; }
  Matrix& matrix() { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  int n_sites() const { return n_sites_; }

  cplx trace() const { return entries_.trace(); }
  bool is_valid(double tol = kStateTolerance) const;
  void check(double tol = kStateTolerance) const;

  /// Ascending eigenvalues from a Hermitian eigensolve.
  Eigen::VectorXd eigenvalues() const;
  /// -Tr rho ln rho in nats, with 0 ln 0 = 0.
  double von_neumann_entropy() const;

 private:
  Matrix entries_;
  int n_sites_;
};

/// Tr[rho H], computed term by term on the Pauli structure. Imaginary residue
/// above 1e-9 raises NumericalError.
double expectation(const PauliSum& hamiltonian, const DensityMatrix& rho);
double expectation(const PauliSum& hamiltonian, const Matrix& rho);

}  // namespace schwinger

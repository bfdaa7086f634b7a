#include "schwinger/density_matrix.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "schwinger/errors.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger {

namespace {

int sites_for_dimension(Eigen::Index dim) {
  const auto u = static_cast<std::uint64_t>(dim);
  if (dim < 2 || !std::has_single_bit(u)) {
    throw DimensionError("density matrix dimension must be a power of two >= 2");
  }
  return std::countr_zero(u);
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)), n_sites_(0) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("density matrix must be square");
  n_sites_ = sites_for_dimension(entries_.rows());
}

DensityMatrix DensityMatrix::validated(Matrix entries, double tol) {
  DensityMatrix rho(std::move(entries));
  rho.check(tol);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_sites) {
  const Eigen::Index d = Eigen::Index{1} << n_sites;
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

bool DensityMatrix::is_valid(double tol) const {
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(trace() - cplx{1.0, 0.0}) > tol) return false;
  return eigenvalues().minCoeff() >= -tol;
}

void DensityMatrix::check(double tol) const {
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw NumericalError("density matrix is not Hermitian");
  }
  if (std::abs(trace() - cplx{1.0, 0.0}) > tol) {
    throw NumericalError("density matrix trace differs from 1");
  }
  if (eigenvalues().minCoeff() < -tol) {
    throw NumericalError("density matrix has a negative eigenvalue");
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  return solver.eigenvalues();
}

double DensityMatrix::von_neumann_entropy() const {
  double s = 0.0;
  for (double p : eigenvalues()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double expectation(const PauliSum& hamiltonian, const Matrix& rho) {
  const cplx value = kernels::pauli_expectation(rho, hamiltonian);
  if (std::abs(value.imag()) > 1e-9) {
    throw NumericalError("expectation value has an imaginary part of " +
                         std::to_string(value.imag()));
  }
  return value.real();
}

double expectation(const PauliSum& hamiltonian, const DensityMatrix& rho) {
  return expectation(hamiltonian, rho.matrix());
}

}  // namespace schwinger

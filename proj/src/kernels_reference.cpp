// Serial reference kernels. These favour the most direct formulation of each
// contract over speed and are only used by tests and the benchmark.

#include <cmath>

#include "schwinger/errors.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger::kernels::reference {

using Index = Eigen::Index;

void conjugate_diagonal(Matrix& rho, std::span<const cplx> d) {
  if (static_cast<std::size_t>(rho.rows()) != d.size() || rho.rows() != rho.cols()) {
    throw DimensionError("diagonal length does not match matrix dimension");
  }
  for (Index r = 0; r < rho.rows(); ++r) {
    for (Index c = 0; c < rho.cols(); ++c) rho(r, c) *= d[r] * std::conj(d[c]);
  }
}

void apply_diagonal_left(Matrix& m, std::span<const cplx> d) {
  if (static_cast<std::size_t>(m.rows()) != d.size()) {
    throw DimensionError("diagonal length does not match matrix rows");
  }
  for (Index r = 0; r < m.rows(); ++r) m.row(r) *= d[r];
}

void apply_rx_left(Matrix& mat, int n_sites, int site, double angle) {
  if (site < 1 || site > n_sites || mat.rows() != (Index{1} << n_sites)) {
    throw DimensionError("rotation site or matrix dimension out of range");
  }
  const auto m = static_cast<Index>(site_bit(n_sites, site));
  const double co = std::cos(angle), si = std::sin(angle);
  const Matrix before = mat;
  for (Index r = 0; r < mat.rows(); ++r) {
    // <r| exp(-i a X) = cos a <r| - i sin a <r ^ m|
    mat.row(r) = co * before.row(r) - cplx{0.0, si} * before.row(r ^ m);
  }
}

void conjugate_rx(Matrix& rho, int n_sites, int site, double angle) {
  if (rho.rows() != rho.cols()) throw DimensionError("conjugate_rx needs a square matrix");
  apply_rx_left(rho, n_sites, site, angle);
  // (R rho) R^dagger = (R (R rho)^dagger)^dagger
  Matrix t = rho.adjoint();
  apply_rx_left(t, n_sites, site, angle);
  rho = t.adjoint();
}

cplx pauli_expectation(const Matrix& rho, const PauliSum& hamiltonian) {
  const Index n = rho.rows();
  if (rho.cols() != n || n != (Index{1} << hamiltonian.n_sites())) {
    throw DimensionError("state dimension does not match Hamiltonian");
  }
  cplx total = 0.0;
  for (const auto& t : hamiltonian.terms()) {
    const PauliMask mask = t.mask();
    cplx term = 0.0;
    for (Index b = 0; b < n; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      term += mask.phase(ub) * rho(b, static_cast<Index>(ub ^ mask.flip));
    }
    total += t.coefficient() * term;
  }
  return total;
}

cplx trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product operand shapes differ");
  }
  cplx total = 0.0;
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) total += a(r, c) * b(c, r);
  }
  return total;
}

std::vector<cplx> column_overlaps(const Matrix& op, const Matrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
    throw DimensionError("column_overlaps operand shapes differ");
  }
  std::vector<cplx> w(static_cast<std::size_t>(op.cols()), cplx{0.0});
  for (Index c = 0; c < op.cols(); ++c) {
    for (Index r = 0; r < op.rows(); ++r) w[c] += op(r, c) * std::conj(rho(r, c));
  }
  return w;
}

cplx pauli_overlap(const Matrix& op, const PauliMask& pauli, const Matrix& rho) {
  const Index n = op.rows();
  if (op.cols() != n || rho.rows() != n || rho.cols() != n) {
    throw DimensionError("pauli_overlap operand shapes differ");
  }
  // Build P rho explicitly, then take Tr[O (P rho)].
  Matrix p_rho = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    p_rho.row(static_cast<Index>(uk ^ pauli.flip)) += pauli.phase(uk) * rho.row(k);
  }
  return reference::trace_product(op, p_rho);
}

void fill_dense(const PauliSum& sum, Matrix& out) {
  const Index n = Index{1} << sum.n_sites();
  out.setZero(n, n);
  for (const auto& t : sum.terms()) {
    const PauliMask mask = t.mask();
    for (Index b = 0; b < n; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      out(static_cast<Index>(ub ^ mask.flip), b) += t.coefficient() * mask.phase(ub);
    }
  }
}

}  // namespace schwinger::kernels::reference

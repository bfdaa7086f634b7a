#pragma once

#include <span>
#include <vector>

#include "schwinger/pauli.hpp"

// Dense density-matrix kernels. The functions in `schwinger::kernels` are the
// OpenMP-parallel versions used by the simulator; `schwinger::kernels::reference`
// holds plain serial loops with the same contracts, kept for testing and for
// the benchmark.
//
// All reductions accumulate one partial per column and sum the partials
// serially in column order, so results are bit-identical for any thread count.
// Matrices are Eigen column-major; basis index bit (N - j) belongs to site j.

namespace schwinger::kernels {

/// Parallel loops are skipped below this matrix dimension.
int parallel_threshold();
void set_parallel_threshold(int dim);

/// rho <- D rho D^dagger for D = diag(d).
void conjugate_diagonal(Matrix& rho, std::span<const cplx> d);
/// rho <- R rho R^dagger for R = exp(-i angle X_site).
void conjugate_rx(Matrix& rho, int n_sites, int site, double angle);
/// m <- D m.
void apply_diagonal_left(Matrix& m, std::span<const cplx> d);
/// m <- exp(-i angle X_site) m.
void apply_rx_left(Matrix& m, int n_sites, int site, double angle);

/// Tr[rho H] from the Pauli structure of H (no dense H).
cplx pauli_expectation(const Matrix& rho, const PauliSum& hamiltonian);
/// Tr[A B].
cplx trace_product(const Matrix& a, const Matrix& b);
/// w[c] = sum_r O(r,c) conj(rho(r,c)); for Hermitian rho, sum_c w[c] f(c) = Tr[O F rho]
/// for any diagonal F = diag(f).
std::vector<cplx> column_overlaps(const Matrix& op, const Matrix& rho);
/// Tr[O P rho] for a Pauli string P and Hermitian rho.
cplx pauli_overlap(const Matrix& op, const PauliMask& pauli, const Matrix& rho);
/// out <- sum_k c_k P_k (out is resized and overwritten).
void fill_dense(const PauliSum& sum, Matrix& out);

namespace reference {

void conjugate_diagonal(Matrix& rho, std::span<const cplx> d);
void conjugate_rx(Matrix& rho, int n_sites, int site, double angle);
void apply_diagonal_left(Matrix& m, std::span<const cplx> d);
void apply_rx_left(Matrix& m, int n_sites, int site, double angle);
cplx pauli_expectation(const Matrix& rho, const PauliSum& hamiltonian);
cplx trace_product(const Matrix& a, const Matrix& b);
std::vector<cplx> column_overlaps(const Matrix& op, const Matrix& rho);
cplx pauli_overlap(const Matrix& op, const PauliMask& pauli, const Matrix& rho);
void fill_dense(const PauliSum& sum, Matrix& out);

}  // namespace reference

/// Bit of `site` (1-based) in a basis index of an n_sites register.
constexpr std::uint64_t site_bit(int n_sites, int site) {
  return std::uint64_t{1} << (n_sites - site);
}

}  // namespace schwinger::kernels

#include "schwinger/kernels.hpp"

#include <atomic>
#include <cmath>

#include "schwinger/errors.hpp"

namespace schwinger::kernels {

namespace {

std::atomic<int> g_parallel_threshold{64};

using Index = Eigen::Index;

void check_square(const Matrix& m, std::size_t diag_size) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != diag_size) {
    throw DimensionError("diagonal length does not match matrix dimension");
  }
}

void check_site(const Matrix& m, int n_sites, int site) {
  if (site < 1 || site > n_sites || m.rows() != (Index{1} << n_sites) || m.cols() != m.rows()) {
    throw DimensionError("rotation site or matrix dimension out of range");
  }
}

cplx sum_partials(const std::vector<cplx>& partial) {
  cplx total = 0.0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

int parallel_threshold() { return g_parallel_threshold.load(std::memory_order_relaxed); }

void set_parallel_threshold(int dim) { g_parallel_threshold.store(dim, std::memory_order_relaxed); }

void conjugate_diagonal(Matrix& rho, std::span<const cplx> d) {
  check_square(rho, d.size());
  const Index n = rho.rows();
  const bool par = n >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c = 0; c < n; ++c) {
    const cplx dc = std::conj(d[c]);
    cplx* col = rho.data() + c * n;
    for (Index r = 0; r < n; ++r) col[r] *= d[r] * dc;
  }
}

void conjugate_rx(Matrix& rho, int n_sites, int site, double angle) {
  check_site(rho, n_sites, site);
  const Index n = rho.rows();
  const Index m = static_cast<Index>(site_bit(n_sites, site));
  const cplx co{std::cos(angle), 0.0};
  const cplx ms{0.0, -std::sin(angle)};  // -i sin
  const cplx ps{0.0, std::sin(angle)};   // +i sin
  const bool par = n >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c0 = 0; c0 < n; ++c0) {
    if (c0 & m) continue;
    cplx* col0 = rho.data() + c0 * n;
    cplx* col1 = rho.data() + (c0 | m) * n;
    for (Index r0 = 0; r0 < n; ++r0) {
      if (r0 & m) continue;
      const Index r1 = r0 | m;
      const cplx b00 = col0[r0], b10 = col0[r1], b01 = col1[r0], b11 = col1[r1];
      const cplx l00 = co * b00 + ms * b10;
      const cplx l10 = ms * b00 + co * b10;
      const cplx l01 = co * b01 + ms * b11;
      const cplx l11 = ms * b01 + co * b11;
      col0[r0] = l00 * co + l01 * ps;
      col1[r0] = l00 * ps + l01 * co;
      col0[r1] = l10 * co + l11 * ps;
      col1[r1] = l10 * ps + l11 * co;
    }
  }
}

void apply_diagonal_left(Matrix& m, std::span<const cplx> d) {
  if (static_cast<std::size_t>(m.rows()) != d.size()) {
    throw DimensionError("diagonal length does not match matrix rows");
  }
  const Index rows = m.rows(), cols = m.cols();
  const bool par = rows >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c = 0; c < cols; ++c) {
    cplx* col = m.data() + c * rows;
    for (Index r = 0; r < rows; ++r) col[r] *= d[r];
  }
}

void apply_rx_left(Matrix& mat, int n_sites, int site, double angle) {
  if (site < 1 || site > n_sites || mat.rows() != (Index{1} << n_sites)) {
    throw DimensionError("rotation site or matrix dimension out of range");
  }
  const Index rows = mat.rows(), cols = mat.cols();
  const Index m = static_cast<Index>(site_bit(n_sites, site));
  const cplx co{std::cos(angle), 0.0};
  const cplx ms{0.0, -std::sin(angle)};
  const bool par = rows >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c = 0; c < cols; ++c) {
    cplx* col = mat.data() + c * rows;
    for (Index r0 = 0; r0 < rows; ++r0) {
      if (r0 & m) continue;
      const cplx a = col[r0], b = col[r0 | m];
      col[r0] = co * a + ms * b;
      col[r0 | m] = ms * a + co * b;
    }
  }
}

cplx pauli_expectation(const Matrix& rho, const PauliSum& hamiltonian) {
  const Index n = rho.rows();
  if (rho.cols() != n || n != (Index{1} << hamiltonian.n_sites())) {
    throw DimensionError("state dimension does not match Hamiltonian");
  }
  std::vector<PauliMask> masks;
  std::vector<double> coeffs;
  for (const auto& t : hamiltonian.terms()) {
    masks.push_back(t.mask());
    coeffs.push_back(t.coefficient());
  }
  std::vector<cplx> partial(static_cast<std::size_t>(n));
  const bool par = n >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index b = 0; b < n; ++b) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      const auto col = static_cast<Index>(static_cast<std::uint64_t>(b) ^ masks[k].flip);
      acc += coeffs[k] * masks[k].phase(static_cast<std::uint64_t>(b)) * rho(b, col);
    }
    partial[b] = acc;
  }
  return sum_partials(partial);
}

cplx trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product operand shapes differ");
  }
  const Index rows = a.rows(), cols = a.cols();
  std::vector<cplx> partial(static_cast<std::size_t>(cols));
  const bool par = cols >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c = 0; c < cols; ++c) {
    cplx acc = 0.0;
    for (Index r = 0; r < rows; ++r) acc += a(r, c) * b(c, r);
    partial[c] = acc;
  }
  return sum_partials(partial);
}

std::vector<cplx> column_overlaps(const Matrix& op, const Matrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
    throw DimensionError("column_overlaps operand shapes differ");
  }
  const Index rows = op.rows(), cols = op.cols();
  std::vector<cplx> w(static_cast<std::size_t>(cols));
  const bool par = cols >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c = 0; c < cols; ++c) {
    const cplx* oc = op.data() + c * rows;
    const cplx* rc = rho.data() + c * rows;
    cplx acc = 0.0;
    for (Index r = 0; r < rows; ++r) acc += oc[r] * std::conj(rc[r]);
    w[c] = acc;
  }
  return w;
}

cplx pauli_overlap(const Matrix& op, const PauliMask& pauli, const Matrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols() || op.rows() != op.cols()) {
    throw DimensionError("pauli_overlap operand shapes differ");
  }
  const Index n = op.rows();
  std::vector<cplx> partial(static_cast<std::size_t>(n));
  const bool par = n >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index c = 0; c < n; ++c) {
    const auto cx = static_cast<std::uint64_t>(c) ^ pauli.flip;
    const cplx* oc = op.data() + c * n;
    const cplx* rc = rho.data() + static_cast<Index>(cx) * n;
    cplx acc = 0.0;
    for (Index r = 0; r < n; ++r) acc += oc[r] * std::conj(rc[r]);
    partial[c] = pauli.phase(cx) * acc;
  }
  return sum_partials(partial);
}

void fill_dense(const PauliSum& sum, Matrix& out) {
  const Index n = Index{1} << sum.n_sites();
  out.setZero(n, n);
  std::vector<PauliMask> masks;
  std::vector<double> coeffs;
  for (const auto& t : sum.terms()) {
    masks.push_back(t.mask());
    coeffs.push_back(t.coefficient());
  }
  const bool par = n >= parallel_threshold();
#pragma omp parallel for if (par) schedule(static)
  for (Index b = 0; b < n; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    for (std::size_t k = 0; k < masks.size(); ++k) {
      out(static_cast<Index>(ub ^ masks[k].flip), b) += coeffs[k] * masks[k].phase(ub);
    }
  }
}

}  // namespace schwinger::kernels

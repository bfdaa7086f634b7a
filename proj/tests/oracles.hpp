#pragma once

// Independent reference constructions for tests: Kronecker-product Pauli
// matrices, matrix exponentials and random states. Nothing here calls the
// library's dense builders or kernels.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "schwinger/ansatz.hpp"
#include "schwinger/pauli.hpp"

namespace oracle {

using schwinger::cplx;
using schwinger::Matrix;

inline Matrix pauli(char op) {
  Matrix m(2, 2);
  const cplx i(0.0, 1.0);
  switch (op) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

inline Matrix kron_string(const std::string& ops) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : ops) {
    Matrix next = Eigen::kroneckerProduct(out, pauli(c)).eval();
    out = next;
  }
  return out;
}

inline Matrix dense(const schwinger::PauliSum& sum) {
  const int dim = 1 << sum.n_sites();
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& t : sum.terms()) out += t.coefficient() * kron_string(t.ops());
  return out;
}

inline Matrix expm(const Matrix& m) { return m.exp(); }

/// -ln Tr exp(-beta H) / beta from a dense exponential.
inline double free_energy_expm(const Matrix& h, double beta) {
  return -std::log(expm(-beta * h).trace().real()) / beta;
}

// Layered unitary as a product of dense exponentials of the Pauli generators.
inline Matrix unitary(int n, const std::vector<schwinger::RotationBlock>& blocks) {
  const int dim = 1 << n;
  Matrix u = Matrix::Identity(dim, dim);
  auto at = [n](int site, char op) {
    std::string s(n, 'I');
    s[site - 1] = op;
    return s;
  };
  const cplx minus_i(0.0, -1.0);
  for (const auto& b : blocks) {
    Matrix hz = Matrix::Zero(dim, dim), hx = hz, hzz = hz;
    for (int j = 1; j <= n; ++j) {
      hz += b.zeta[j - 1] * oracle::kron_string(at(j, 'Z'));
      hx += b.lambda[j - 1] * oracle::kron_string(at(j, 'X'));
    }
    for (int j = 1; j < n; ++j) {
      std::string s(n, 'I');
      s[j - 1] = s[j] = 'Z';
      hzz += b.alpha[j - 1] * oracle::kron_string(s);
    }
    Matrix layer = oracle::expm(minus_i * hzz) * oracle::expm(minus_i * hx) *
                   oracle::expm(minus_i * hz);
    u = (layer * u).eval();
  }
  return u;
}

inline Matrix product_state(const std::vector<double>& theta) {
  Matrix out = Matrix::Identity(1, 1);
  for (double t : theta) {
    Matrix site = Matrix::Zero(2, 2);
    site(0, 0) = std::sin(t) * std::sin(t);
    site(1, 1) = std::cos(t) * std::cos(t);
    Matrix next = Eigen::kroneckerProduct(out, site).eval();
    out = next;
  }
  return out;
}

/// F = Tr[rho H] - S(rho) / beta with S from the eigenvalues of rho.
inline double free_energy_of(const Matrix& h, const schwinger::AnsatzParams& p, double beta) {
  const Matrix u = unitary(p.n_sites(), p.blocks());
  const Matrix rho = u * product_state(p.theta()) * u.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double s = 0.0;
  for (double x : es.eigenvalues()) {
    if (x > 1e-300) s -= x * std::log(x);
  }
  return (rho * h).trace().real() - s / beta;
}

inline Matrix random_density(int n_sites, std::mt19937_64& rng) {
  const int dim = 1 << n_sites;
  std::normal_distribution<double> normal;
  Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = cplx(normal(rng), normal(rng));
  }
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

inline schwinger::PauliSum random_sum(int n_sites, int n_terms, std::mt19937_64& rng) {
  static constexpr char kOps[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  schwinger::PauliSum sum(n_sites);
  for (int k = 0; k < n_terms; ++k) {
    std::string ops;
    for (int s = 0; s < n_sites; ++s) ops += kOps[pick(rng)];
    sum.add(schwinger::PauliTerm(coeff(rng), ops));
  }
  return sum;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle

// Serial reference kernels against the OpenMP versions, plus one full
// objective-and-gradient evaluation, over register sizes 4..10.

#include <benchmark/benchmark.h>

#include <random>

#include "schwinger/ansatz.hpp"
#include "schwinger/kernels.hpp"
#include "schwinger/model.hpp"
#include "schwinger/optimizer.hpp"

using namespace schwinger;

namespace {

Matrix random_state(int n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const int dim = 1 << n;
  Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = cplx(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

PauliSum hamiltonian(int n) {
  return build_hamiltonian(SchwingerParams::make(n, 1.0, 1.0, std::nullopt, 1.0, 0.5));
}

template <bool Parallel>
void BM_ConjugateRx(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix rho = random_state(n);
  for (auto _ : state) {
    for (int site = 1; site <= n; ++site) {
      if constexpr (Parallel) {
        kernels::conjugate_rx(rho, n, site, 0.3);
      } else {
        kernels::reference::conjugate_rx(rho, n, site, 0.3);
      }
    }
    benchmark::DoNotOptimize(rho.data());
  }
}

template <bool Parallel>
void BM_ConjugateDiagonal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix rho = random_state(n);
  const auto d = zz_layer_diagonal(n, std::vector<double>(n - 1, 0.2));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::conjugate_diagonal(rho, d);
    } else {
      kernels::reference::conjugate_diagonal(rho, d);
    }
    benchmark::DoNotOptimize(rho.data());
  }
}

template <bool Parallel>
void BM_PauliExpectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix rho = random_state(n);
  const PauliSum h = hamiltonian(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::pauli_expectation(rho, h));
    } else {
      benchmark::DoNotOptimize(kernels::reference::pauli_expectation(rho, h));
    }
  }
}

template <bool Parallel>
void BM_PauliOverlap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix rho = random_state(n);
  const Matrix op = random_state(n);
  const PauliMask mask = PauliTerm::pair(n, 1, 'Z', 2, 'Z', 1.0).mask();
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::pauli_overlap(op, mask, rho));
    } else {
      benchmark::DoNotOptimize(kernels::reference::pauli_overlap(op, mask, rho));
    }
  }
}

void BM_AdjointGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ObjectiveSpec spec(hamiltonian(n), 1.0);
  const AnsatzParams params = random_initial_params(n, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(adjoint_gradient(spec, params));
}

}  // namespace

BENCHMARK(BM_ConjugateRx<false>)->DenseRange(4, 10, 2)->Name("conjugate_rx/serial");
BENCHMARK(BM_ConjugateRx<true>)->DenseRange(4, 10, 2)->Name("conjugate_rx/openmp");
BENCHMARK(BM_ConjugateDiagonal<false>)->DenseRange(4, 10, 2)->Name("conjugate_diagonal/serial");
BENCHMARK(BM_ConjugateDiagonal<true>)->DenseRange(4, 10, 2)->Name("conjugate_diagonal/openmp");
BENCHMARK(BM_PauliExpectation<false>)->DenseRange(4, 10, 2)->Name("pauli_expectation/serial");
BENCHMARK(BM_PauliExpectation<true>)->DenseRange(4, 10, 2)->Name("pauli_expectation/openmp");
BENCHMARK(BM_PauliOverlap<false>)->DenseRange(4, 10, 2)->Name("pauli_overlap/serial");
BENCHMARK(BM_PauliOverlap<true>)->DenseRange(4, 10, 2)->Name("pauli_overlap/openmp");
BENCHMARK(BM_AdjointGradient)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

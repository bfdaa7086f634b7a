#include "schwinger/exact.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "schwinger/errors.hpp"

namespace schwinger {

Spectrum compute_spectrum(const PauliSum& hamiltonian, int max_sites) {
  const Matrix h = to_dense(hamiltonian, max_sites);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hamiltonian eigensolve failed");
  Spectrum s;
  s.n_sites = hamiltonian.n_sites();
  s.eigenvalues.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return s;
}

Thermodynamics thermodynamics(const Spectrum& spectrum, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be finite and positive");
  const auto& e = spectrum.eigenvalues;
  if (e.empty()) throw DimensionError("empty spectrum");
  const double e0 = e.front();

  double z = 0.0;
  double weighted = 0.0;
  for (double en : e) {
    const double w = std::exp(-beta * (en - e0));
    z += w;
    weighted += w * (en - e0);
  }
  Thermodynamics t;
  t.free_energy = e0 - std::log(z) / beta;
  t.energy = e0 + weighted / z;
  t.entropy = beta * (t.energy - t.free_energy);
  return t;
}

Thermodynamics exact_free_energy(const PauliSum& hamiltonian, double beta, int max_sites) {
  return thermodynamics(compute_spectrum(hamiltonian, max_sites), beta);
}

double string_tension(const SchwingerParams& params, double free_energy_field,
                      double free_energy_zero) {
  const double norm = params.n_sites * params.coupling * params.lattice_spacing;
  if (!(norm > 0.0)) throw ConfigError("string tension needs g > 0");
  return (free_energy_field - free_energy_zero - trial_charge_offset(params)) / norm;
}

double exact_string_tension(const SchwingerParams& params, double beta) {
  params.validate();
  if (params.coupling <= 0.0) throw ConfigError("string tension needs g > 0");
  if (params.background_field == 0.0) return 0.0;
  const double f_field = exact_free_energy(build_hamiltonian(params), beta).free_energy;
  const double f_zero = exact_free_energy(build_hamiltonian(params.with_field(0.0)), beta).free_energy;
  return string_tension(params, f_field, f_zero);
}

}  // namespace schwinger

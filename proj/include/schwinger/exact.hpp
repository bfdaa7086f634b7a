#pragma once

#include <vector>

#include "schwinger/model.hpp"
#include "schwinger/pauli.hpp"

namespace schwinger {

/// Ascending eigenvalues of a Hamiltonian.
struct Spectrum {
  int n_sites = 0;
  std::vector<double> eigenvalues;
};

struct Thermodynamics {
  double free_energy = 0.0;
  double energy = 0.0;
  double entropy = 0.0;  // nats
};

/// Hermitian dense eigensolve; throws SizeLimitError above max_sites.
Spectrum compute_spectrum(const PauliSum& hamiltonian, int max_sites = kDefaultMaxSites);

/// Gibbs thermodynamics of a spectrum with the minimum eigenvalue shifted out
/// before exponentiating.
Thermodynamics thermodynamics(const Spectrum& spectrum, double beta);

Thermodynamics exact_free_energy(const PauliSum& hamiltonian, double beta,
                                 int max_sites = kDefaultMaxSites);

/// (F_eps - F_0 - f_eps) / (N g a).
double string_tension(const SchwingerParams& params, double free_energy_field,
                      double free_energy_zero);

/// String tension from exact free energies of the params' field and of eps = 0,
/// both at the params' chemical potential.
double exact_string_tension(const SchwingerParams& params, double beta);

}  // namespace schwinger

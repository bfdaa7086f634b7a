#pragma once

#include <optional>

#include "schwinger/pauli.hpp"

namespace schwinger {

/// How the link electric field is written in terms of site spins.
enum class ElectricConvention {
  /// L_j = eps + (1/2) sum_{l<=j} (Z_l + (-1)^l), from Gauss law with n_l = (Z_l + 1)/2.
  gauss_law,
  /// L_j = eps + sum_{l<=j} (Z_l + (-1)^l), the form without the 1/2.
  literal,
};

/// Staggered-fermion lattice Schwinger model on an open chain of N sites.
struct SchwingerParams {
  int n_sites = 4;
  double mass = 1.0;
  double coupling = 1.0;
  double lattice_spacing = 0.5;
  double hopping = 1.0;  // 1 / (2a)
  double background_field = 0.0;
  double chemical_potential = 0.0;
  ElectricConvention electric = ElectricConvention::gauss_law;

  /// Fills whichever of (a, hopping) is missing from the other; both missing
  /// keeps a = 0.5. Throws ConfigError when both are given and disagree.
  static SchwingerParams make(int n_sites, double mass, double coupling,
                              std::optional<double> lattice_spacing,
                              std::optional<double> hopping, double background_field = 0.0,
                              double chemical_potential = 0.0);

  /// N even and >= 2, g >= 0, a > 0, hopping == 1/(2a) within 1e-12.
  void validate() const;

  SchwingerParams with_field(double epsilon) const;
  SchwingerParams with_chemical_potential(double mu) const;
};

/// G_eps(mu) = H_eps - (mu/2) sum_j Z_j in canonical form. The hopping term is
/// (hopping/2)(X_j X_{j+1} + Y_j Y_{j+1}); the Jordan-Wigner strings cancel for
/// nearest neighbours. The electric term (g^2 a / 2) sum_j L_j^2 is expanded
/// into identity, Z and ZZ terms; the identity term is kept.
PauliSum build_hamiltonian(const SchwingerParams& params);

/// f_eps = (g^2 a (N-1) / 2)(eps^2 - eps/2).
double trial_charge_offset(const SchwingerParams& params);

/// L_j for 1 <= j <= N-1.
PauliSum electric_field_operator(const SchwingerParams& params, int link);

const char* to_string(ElectricConvention convention);
ElectricConvention parse_electric_convention(std::string_view name);

}  // namespace schwinger

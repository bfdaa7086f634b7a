#include "schwinger/model.hpp"

#include <cmath>
#include <string>

#include "schwinger/errors.hpp"

namespace schwinger {

namespace {

constexpr double kHoppingConsistencyTol = 1e-12;

double staggered_sign(int site) { return (site % 2 == 0) ? 1.0 : -1.0; }

double field_scale(ElectricConvention convention) {
  return convention == ElectricConvention::gauss_law ? 0.5 : 1.0;
}

// Constant part of L_j: eps + k sum_{l<=j} (-1)^l.
double field_offset(const SchwingerParams& p, int link) {
  double offset = p.background_field;
  const double k = field_scale(p.electric);
  for (int l = 1; l <= link; ++l) offset += k * staggered_sign(l);
  return offset;
}

}  // namespace

SchwingerParams SchwingerParams::make(int n_sites, double mass, double coupling,
                                      std::optional<double> lattice_spacing,
                                      std::optional<double> hopping, double background_field,
                                      double chemical_potential) {
  SchwingerParams p;
  p.n_sites = n_sites;
  p.mass = mass;
  p.coupling = coupling;
  p.background_field = background_field;
  p.chemical_potential = chemical_potential;
  if (lattice_spacing && hopping) {
    p.lattice_spacing = *lattice_spacing;
    p.hopping = *hopping;
  } else if (lattice_spacing) {
    p.lattice_spacing = *lattice_spacing;
    p.hopping = 1.0 / (2.0 * *lattice_spacing);
  } else if (hopping) {
    if (!(*hopping > 0.0)) throw ConfigError("hopping must be positive");
    p.hopping = *hopping;
    p.lattice_spacing = 1.0 / (2.0 * *hopping);
  }
  p.validate();
  return p;
}

void SchwingerParams::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw ConfigError("n_sites must be even and >= 2, got " + std::to_string(n_sites));
  }
  for (double v : {mass, coupling, lattice_spacing, hopping, background_field, chemical_potential}) {
    if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
  }
  if (coupling < 0.0) throw ConfigError("coupling g must be non-negative");
  if (!(lattice_spacing > 0.0)) throw ConfigError("lattice spacing a must be positive");
  if (std::abs(hopping - 1.0 / (2.0 * lattice_spacing)) > kHoppingConsistencyTol) {
    throw ConfigError("hopping must equal 1/(2a)");
  }
}

SchwingerParams SchwingerParams::with_field(double epsilon) const {
  SchwingerParams p = *this;
  p.background_field = epsilon;
  return p;
}

SchwingerParams SchwingerParams::with_chemical_potential(double mu) const {
  SchwingerParams p = *this;
  p.chemical_potential = mu;
  return p;
}

PauliSum build_hamiltonian(const SchwingerParams& p) {
  p.validate();
  const int n = p.n_sites;
  PauliSum h(n);

  for (int j = 1; j < n; ++j) {
    h.add(PauliTerm::pair(n, j, 'X', j + 1, 'X', 0.5 * p.hopping));
    h.add(PauliTerm::pair(n, j, 'Y', j + 1, 'Y', 0.5 * p.hopping));
  }

  for (int j = 1; j <= n; ++j) {
    h.add(PauliTerm::single(n, j, 'Z', 0.5 * p.mass * staggered_sign(j)));
    h.add(PauliTerm::single(n, j, 'Z', -0.5 * p.chemical_potential));
  }

  // L_j = c_j + k sum_{l<=j} Z_l
  // L_j^2 = (c_j^2 + k^2 j) + 2 c_j k sum_l Z_l + 2 k^2 sum_{l<l'} Z_l Z_l'
  const double prefactor = 0.5 * p.coupling * p.coupling * p.lattice_spacing;
  const double k = field_scale(p.electric);
  for (int j = 1; j < n; ++j) {
    const double c = field_offset(p, j);
    h.add(PauliTerm::identity(n, prefactor * (c * c + k * k * j)));
    for (int l = 1; l <= j; ++l) {
      h.add(PauliTerm::single(n, l, 'Z', prefactor * 2.0 * c * k));
      for (int l2 = l + 1; l2 <= j; ++l2) {
        h.add(PauliTerm::pair(n, l, 'Z', l2, 'Z', prefactor * 2.0 * k * k));
      }
    }
  }
  return canonicalize(h);
}

double trial_charge_offset(const SchwingerParams& p) {
  const double eps = p.background_field;
  return 0.5 * p.coupling * p.coupling * p.lattice_spacing * (p.n_sites - 1) *
         (eps * eps - 0.5 * eps);
}

PauliSum electric_field_operator(const SchwingerParams& p, int link) {
  p.validate();
  if (link < 1 || link > p.n_sites - 1) {
    throw DimensionError("link index " + std::to_string(link) + " outside 1.." +
                         std::to_string(p.n_sites - 1));
  }
  PauliSum l(p.n_sites);
  l.add(PauliTerm::identity(p.n_sites, field_offset(p, link)));
  const double k = field_scale(p.electric);
  for (int site = 1; site <= link; ++site) l.add(PauliTerm::single(p.n_sites, site, 'Z', k));
  return canonicalize(l);
}

const char* to_string(ElectricConvention convention) {
  return convention == ElectricConvention::gauss_law ? "gauss" : "literal";
}

ElectricConvention parse_electric_convention(std::string_view name) {
  if (name == "gauss" || name == "gauss_law") return ElectricConvention::gauss_law;
  if (name == "literal") return ElectricConvention::literal;
  throw ConfigError("unknown electric convention '" + std::string(name) + "'");
}

}  // namespace schwinger

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace schwinger {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kDefaultMaxSites = 12;
inline constexpr double kCanonicalDropTolerance = 1e-12;

/// Bit masks describing how a Pauli string acts on computational basis states:
/// P|b> = phase(b) |b ^ flip>, with phase(b) = i^{y_count} (-1)^{popcount(b & sign)}.
/// Site 1 is the most significant bit of the basis index.
struct PauliMask {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  int y_count = 0;

  cplx phase(std::uint64_t basis) const;
};

/// Real-weighted tensor product of single-site Paulis. Sites are 1-based.
class PauliTerm {
 public:
  PauliTerm(double coefficient, std::string ops);

  static PauliTerm identity(int n_sites, double coefficient);
  static PauliTerm single(int n_sites, int site, char op, double coefficient);
  static PauliTerm pair(int n_sites, int site_a, char op_a, int site_b, char op_b,
                        double coefficient);
  /// Rejects coefficients with a non-zero imaginary part.
  static PauliTerm from_complex(cplx coefficient, std::string ops);

  double coefficient() const { return coefficient_; }
  const std::string& ops() const { return ops_; }
  int n_sites() const { return static_cast<int>(ops_.size()); }
  char at(int site) const;
  bool is_identity() const;
  PauliMask mask() const;

 private:
  double coefficient_;
  std::string ops_;
};

class PauliSum {
 public:
  explicit PauliSum(int n_sites);
  PauliSum(int n_sites, std::vector<PauliTerm> terms);

  void add(PauliTerm term);
  PauliSum& operator+=(const PauliSum& other);

  int n_sites() const { return n_sites_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Sum of coefficients over all terms with the given operator string.
  double coefficient_of(std::string_view ops) const;
  PauliSum scaled(double factor) const;

 private:
  int n_sites_;
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(PauliSum lhs, const PauliSum& rhs);

/// Merges duplicate strings, drops |c| < 1e-12, sorts lexicographically by string.
PauliSum canonicalize(const PauliSum& sum);

/// Dense 2^N x 2^N realization with site 1 as the leftmost tensor factor.
Matrix to_dense(const PauliSum& sum, int max_sites = kDefaultMaxSites);

/// Term-dump format: one `<coefficient> <string>` line per term.
std::string to_text(const PauliSum& sum);
PauliSum parse_terms(std::string_view text);

}  // namespace schwinger

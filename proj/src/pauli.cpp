#include "schwinger/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "schwinger/errors.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger {

namespace {

bool is_pauli_char(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

void check_site(int n_sites, int site) {
  if (site < 1 || site > n_sites) {
    throw DimensionError("site " + std::to_string(site) + " outside 1.." +
                         std::to_string(n_sites));
  }
}

}  // namespace

cplx PauliMask::phase(std::uint64_t basis) const {
  static constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx p = kIPowers[y_count & 3];
  if (std::popcount(basis & sign) & 1) p = -p;
  return p;
}

PauliTerm::PauliTerm(double coefficient, std::string ops)
    : coefficient_(coefficient), ops_(std::move(ops)) {
  if (!std::isfinite(coefficient_)) throw ConfigError("Pauli coefficient must be finite");
  if (ops_.empty() || ops_.size() > 63) throw DimensionError("Pauli string length must be 1..63");
  for (char c : ops_) {
    if (!is_pauli_char(c)) {
      throw ConfigError(std::string("invalid Pauli operator '") + c + "' in " + ops_);
    }
  }
}

PauliTerm PauliTerm::identity(int n_sites, double coefficient) {
  return PauliTerm(coefficient, std::string(n_sites, 'I'));
}

PauliTerm PauliTerm::single(int n_sites, int site, char op, double coefficient) {
  check_site(n_sites, site);
  std::string ops(n_sites, 'I');
  ops[site - 1] = op;
  return PauliTerm(coefficient, std::move(ops));
}

PauliTerm PauliTerm::pair(int n_sites, int site_a, char op_a, int site_b, char op_b,
                          double coefficient) {
  check_site(n_sites, site_a);
  check_site(n_sites, site_b);
  if (site_a == site_b) throw DimensionError("pair term needs two distinct sites");
  std::string ops(n_sites, 'I');
  ops[site_a - 1] = op_a;
  ops[site_b - 1] = op_b;
  return PauliTerm(coefficient, std::move(ops));
}

PauliTerm PauliTerm::from_complex(cplx coefficient, std::string ops) {
  if (std::abs(coefficient.imag()) > kCanonicalDropTolerance) {
    throw ConfigError("Pauli coefficients must be real");
  }
  return PauliTerm(coefficient.real(), std::move(ops));
}

char PauliTerm::at(int site) const {
  check_site(n_sites(), site);
  return ops_[site - 1];
}

bool PauliTerm::is_identity() const {
  return std::all_of(ops_.begin(), ops_.end(), [](char c) { return c == 'I'; });
}

PauliMask PauliTerm::mask() const {
  PauliMask m;
  const int n = n_sites();
  for (int site = 1; site <= n; ++site) {
    const auto bit = kernels::site_bit(n, site);
    switch (ops_[site - 1]) {
      case 'X':
        m.flip |= bit;
        break;
      case 'Y':
        m.flip |= bit;
        m.sign |= bit;
        ++m.y_count;
        break;
      case 'Z':
        m.sign |= bit;
        break;
      default:
        break;
    }
  }
  return m;
}

PauliSum::PauliSum(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1 || n_sites > 63) throw DimensionError("n_sites must be 1..63");
}

PauliSum::PauliSum(int n_sites, std::vector<PauliTerm> terms) : PauliSum(n_sites) {
  terms_.reserve(terms.size());
  for (auto& t : terms) add(std::move(t));
}

void PauliSum::add(PauliTerm term) {
  if (term.n_sites() != n_sites_) {
    throw DimensionError("term " + term.ops() + " does not act on " + std::to_string(n_sites_) +
                         " sites");
  }
  terms_.push_back(std::move(term));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_sites_ != n_sites_) throw DimensionError("adding sums on different site counts");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum operator+(PauliSum lhs, const PauliSum& rhs) {
  lhs += rhs;
  return lhs;
}

double PauliSum::coefficient_of(std::string_view ops) const {
  double c = 0.0;
  for (const auto& t : terms_) {
    if (t.ops() == ops) c += t.coefficient();
  }
  return c;
}

PauliSum PauliSum::scaled(double factor) const {
  PauliSum out(n_sites_);
  for (const auto& t : terms_) out.add(PauliTerm(t.coefficient() * factor, t.ops()));
  return out;
}

PauliSum canonicalize(const PauliSum& sum) {
  std::map<std::string, double> merged;
  for (const auto& t : sum.terms()) merged[t.ops()] += t.coefficient();
  PauliSum out(sum.n_sites());
  for (auto& [ops, c] : merged) {
    if (std::abs(c) >= kCanonicalDropTolerance) out.add(PauliTerm(c, ops));
  }
  return out;
}

Matrix to_dense(const PauliSum& sum, int max_sites) {
  if (sum.n_sites() > max_sites) {
    throw SizeLimitError("dense realization of " + std::to_string(sum.n_sites()) +
                         " sites exceeds the limit of " + std::to_string(max_sites));
  }
  Matrix out;
  kernels::fill_dense(sum, out);
  return out;
}

std::string to_text(const PauliSum& sum) {
  std::string out;
  char buf[64];
  for (const auto& t : sum.terms()) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t.coefficient());
    out.append(buf, end);
    out += ' ';
    out += t.ops();
    out += '\n';
  }
  return out;
}

PauliSum parse_terms(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliTerm> terms;
  int n_sites = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string coeff_text, ops;
    if (!(fields >> coeff_text >> ops)) {
      throw ConfigError("term dump line " + std::to_string(line_no) + " is malformed");
    }
    double c = 0.0;
    auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), c);
    if (ec != std::errc{} || ptr != coeff_text.data() + coeff_text.size()) {
      throw ConfigError("term dump line " + std::to_string(line_no) + ": bad coefficient");
    }
    if (n_sites == 0) n_sites = static_cast<int>(ops.size());
    terms.emplace_back(c, ops);
  }
  if (n_sites == 0) throw ConfigError("term dump is empty");
  return PauliSum(n_sites, std::move(terms));
}

}  // namespace schwinger

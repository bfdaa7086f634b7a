#include "schwinger/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "schwinger/errors.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger {

namespace {

constexpr double kPopulationClamp = 1e-12;

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double z_eigenvalue(std::uint64_t basis, int n_sites, int site) {
  return (basis & kernels::site_bit(n_sites, site)) ? -1.0 : 1.0;
}

void check_length(const std::vector<double>& v, std::size_t expected, const char* what) {
  if (v.size() != expected) {
    throw DimensionError(std::string(what) + " has " + std::to_string(v.size()) +
                         " entries, expected " + std::to_string(expected));
  }
}

}  // namespace

AnsatzParams::AnsatzParams(std::vector<double> theta, std::vector<RotationBlock> blocks)
    : theta_(std::move(theta)), blocks_(std::move(blocks)) {
  validate();
}

AnsatzParams AnsatzParams::zeros(int n_sites, int depth) {
  if (n_sites < 1) throw DimensionError("ansatz needs at least one site");
  RotationBlock block{std::vector<double>(n_sites, 0.0), std::vector<double>(n_sites, 0.0),
                      std::vector<double>(n_sites - 1, 0.0)};
  return AnsatzParams(std::vector<double>(n_sites, 0.0),
                      std::vector<RotationBlock>(static_cast<std::size_t>(depth), block));
}

std::size_t AnsatzParams::parameter_count(int n_sites, int depth) {
  const auto n = static_cast<std::size_t>(n_sites);
  return n + static_cast<std::size_t>(depth) * (3 * n - 1);
}

AnsatzParams AnsatzParams::unflatten(int n_sites, int depth, std::span<const double> values) {
  if (values.size() != parameter_count(n_sites, depth)) {
    throw DimensionError("flattened parameter vector has the wrong length");
  }
  const auto n = static_cast<std::size_t>(n_sites);
  auto it = values.begin();
  auto take = [&it](std::size_t count) {
    std::vector<double> out(it, it + static_cast<std::ptrdiff_t>(count));
    it += static_cast<std::ptrdiff_t>(count);
    return out;
  };
  std::vector<double> theta = take(n);
  std::vector<RotationBlock> blocks;
  for (int l = 0; l < depth; ++l) {
    RotationBlock b;
    b.zeta = take(n);
    b.lambda = take(n);
    b.alpha = take(n - 1);
    blocks.push_back(std::move(b));
  }
  return AnsatzParams(std::move(theta), std::move(blocks));
}

std::vector<double> AnsatzParams::flatten() const {
  std::vector<double> out;
  out.reserve(size());
  out.insert(out.end(), theta_.begin(), theta_.end());
  for (const auto& b : blocks_) {
    out.insert(out.end(), b.zeta.begin(), b.zeta.end());
    out.insert(out.end(), b.lambda.begin(), b.lambda.end());
    out.insert(out.end(), b.alpha.begin(), b.alpha.end());
  }
  return out;
}

void AnsatzParams::validate() const {
  if (theta_.empty()) throw DimensionError("ansatz needs at least one site");
  const std::size_t n = theta_.size();
  for (const auto& b : blocks_) {
    check_length(b.zeta, n, "zeta");
    check_length(b.lambda, n, "lambda");
    check_length(b.alpha, n - 1, "alpha");
  }
  const auto values = flatten();
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw ConfigError("ansatz angles must be finite");
  }
}

void to_json(nlohmann::json& j, const AnsatzParams& params) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : params.blocks()) {
    blocks.push_back({{"zeta", b.zeta}, {"lambda", b.lambda}, {"alpha", b.alpha}});
  }
  j = {{"theta", params.theta()}, {"blocks", blocks}};
}

void from_json(const nlohmann::json& j, AnsatzParams& params) {
  try {
    std::vector<RotationBlock> blocks;
    for (const auto& b : j.value("blocks", nlohmann::json::array())) {
      blocks.push_back({b.at("zeta").get<std::vector<double>>(),
                        b.at("lambda").get<std::vector<double>>(),
                        b.at("alpha").get<std::vector<double>>()});
    }
    params = AnsatzParams(j.at("theta").get<std::vector<double>>(), std::move(blocks));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed ansatz document: ") + e.what());
  }
}

std::vector<double> initial_populations(std::span<const double> theta) {
  const int n = static_cast<int>(theta.size());
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> pops(dim, 1.0);
  for (int site = 1; site <= n; ++site) {
    const double s = std::sin(theta[site - 1]);
    const double c = std::cos(theta[site - 1]);
    const auto bit = kernels::site_bit(n, site);
    for (std::size_t b = 0; b < dim; ++b) pops[b] *= (b & bit) ? c * c : s * s;
  }
  return pops;
}

DensityMatrix initial_state(std::span<const double> theta) {
  if (theta.empty()) throw DimensionError("initial state needs at least one site");
  const auto pops = initial_populations(theta);
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(pops.size()),
                            static_cast<Eigen::Index>(pops.size()));
  for (std::size_t b = 0; b < pops.size(); ++b) {
    rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = pops[b];
  }
  return DensityMatrix(std::move(rho));
}

double entropy(std::span<const double> theta) {
  double s = 0.0;
  for (double t : theta) {
    const double sn = std::sin(t), cs = std::cos(t);
    s -= x_log_x(sn * sn) + x_log_x(cs * cs);
  }
  return s;
}

double entropy_derivative(double theta) {
  const double sn = std::sin(theta);
  const double s = std::clamp(sn * sn, kPopulationClamp, 1.0 - kPopulationClamp);
  return std::sin(2.0 * theta) * std::log((1.0 - s) / s);
}

std::vector<cplx> z_layer_diagonal(int n_sites, std::span<const double> zeta) {
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<cplx> d(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double phase = 0.0;
    for (int i = 1; i <= n_sites; ++i) phase += zeta[i - 1] * z_eigenvalue(b, n_sites, i);
    d[b] = std::polar(1.0, -phase);
  }
  return d;
}

std::vector<cplx> zz_layer_diagonal(int n_sites, std::span<const double> alpha) {
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<cplx> d(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double phase = 0.0;
    for (int i = 1; i < n_sites; ++i) {
      phase += alpha[i - 1] * z_eigenvalue(b, n_sites, i) * z_eigenvalue(b, n_sites, i + 1);
    }
    d[b] = std::polar(1.0, -phase);
  }
  return d;
}

Matrix build_unitary(int n_sites, std::span<const RotationBlock> blocks) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& b : blocks) {
    kernels::apply_diagonal_left(u, z_layer_diagonal(n_sites, b.zeta));
    for (int site = 1; site <= n_sites; ++site) {
      kernels::apply_rx_left(u, n_sites, site, b.lambda[site - 1]);
    }
    kernels::apply_diagonal_left(u, zz_layer_diagonal(n_sites, b.alpha));
  }
  return u;
}

void evolve(Matrix& rho, int n_sites, std::span<const RotationBlock> blocks) {
  for (const auto& b : blocks) {
    kernels::conjugate_diagonal(rho, z_layer_diagonal(n_sites, b.zeta));
    for (int site = 1; site <= n_sites; ++site) {
      kernels::conjugate_rx(rho, n_sites, site, b.lambda[site - 1]);
    }
    kernels::conjugate_diagonal(rho, zz_layer_diagonal(n_sites, b.alpha));
  }
}

DensityMatrix realize_state(const AnsatzParams& params) {
  params.validate();
  DensityMatrix rho = initial_state(params.theta());
  evolve(rho.matrix(), params.n_sites(), params.blocks());
  return rho;
}

}  // namespace schwinger

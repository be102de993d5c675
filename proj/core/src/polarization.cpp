#include "cascade/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cascade/errors.hpp"

namespace cascade {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = -1e-8;

Eigen::Matrix4cd spin_flip_mask() {
  // sigma_y (x) sigma_y
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

}  // namespace

PolDensityMatrix PolDensityMatrix::from_raw(const Eigen::Matrix4cd& raw) {
  const double scale = std::max(raw.cwiseAbs().maxCoeff(), 1e-300);
  const double herm_dev = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermTol * scale * 2.0)
    throw std::invalid_argument("density matrix is not Hermitian within tolerance");

  Eigen::Matrix4cd rho = 0.5 * (raw + raw.adjoint());
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw NumericalError("density matrix has non-positive trace");
  rho /= tr;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kPsdTol)
    throw NumericalError("density matrix has a significantly negative eigenvalue");
  if (min_eig < 0.0) {
    Eigen::Vector4d clipped = es.eigenvalues().cwiseMax(0.0);
    clipped /= clipped.sum();
    rho = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    rho = 0.5 * (rho + rho.adjoint());
  }

  PolDensityMatrix out;
  out.rho_ = rho;
  return out;
}

PolDensityMatrix PolDensityMatrix::from_physical(const Eigen::Matrix4cd& rho) {
  return from_raw(rho);
}

double PolDensityMatrix::concurrence() const { return cascade::concurrence(*this); }

double PolDensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double PolDensityMatrix::fidelity(const Eigen::Vector4cd& target) const {
  return fidelity_purity(*this, target).fidelity;
}

Eigen::Vector4cd psi_plus() {
  Eigen::Vector4cd v;
  v << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  return v;
}

namespace {

// Unnormalized sum_{m,n} w_mn a^(m) a^(n)+ at one grid point.
Eigen::Matrix4cd point_kernel(const CascadeConfig& config, double det_a) {
  const auto amps = segment_amplitudes(config, det_a, -det_a);
  const int n = static_cast<int>(amps.size());
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < n; ++a) {
    Eigen::Vector4cd va;
    va << amps[a].a_hh, amps[a].a_hv, amps[a].a_vh, amps[a].a_vv;
    for (int b = 0; b < n; ++b) {
      Eigen::Vector4cd vb;
      vb << amps[b].a_hh, amps[b].a_hv, amps[b].a_vh, amps[b].a_vv;
      m += pair_weight(config, a, b) * (va * vb.adjoint());
    }
  }
  return m;
}

}  // namespace

PolDensityMatrix density_matrix_full(const CascadeConfig& config) {
  config.validate();
  Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
  const double h = config.grid.step();
  for (int i = 0; i < config.grid.points; ++i) {
    const double w = (i == 0 || i == config.grid.points - 1) ? 0.5 * h : h;
    acc += w * point_kernel(config, config.grid.detuning(i));
  }
  return PolDensityMatrix::from_raw(acc);
}

PolDensityMatrix density_matrix_point(const CascadeConfig& config, double det_a) {
  config.validate();
  return PolDensityMatrix::from_raw(point_kernel(config, det_a));
}

double concurrence(const PolDensityMatrix& rho) {
  static const Eigen::Matrix4cd yy = spin_flip_mask();
  const Eigen::Matrix4cd rho_tilde = yy * rho.matrix().conjugate() * yy;
  const Eigen::Matrix4cd product = rho.matrix() * rho_tilde;

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i)
    lam[i] = std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

FidelityPurity fidelity_purity(const PolDensityMatrix& rho, const Eigen::Vector4cd& target) {
  if (std::abs(target.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("target state must be normalized");
  FidelityPurity out;
  out.fidelity = (target.adjoint() * rho.matrix() * target)(0).real();
  out.purity = (rho.matrix() * rho.matrix()).trace().real();
  return out;
}

std::vector<ConcurrencePoint> concurrence_map(const CascadeConfig& config) {
  config.validate();
  std::vector<ConcurrencePoint> out;
  out.reserve(config.grid.points);
  for (int i = 0; i < config.grid.points; ++i) {
    const double det = config.grid.detuning(i);
    out.push_back({det, concurrence(density_matrix_point(config, det))});
  }
  return out;
}

std::vector<ConcurrenceTheta> concurrence_vs_rotation(const CascadeConfig& config,
                                                      const std::vector<double>& thetas) {
  std::vector<ConcurrenceTheta> out;
  out.reserve(thetas.size());
  CascadeConfig cfg = config;
  for (double theta : thetas) {
    for (MiddleSection& mid : cfg.middles) mid.jones_dc = make_unitary(theta, 0.0, 0.0);
    out.push_back({theta, concurrence(density_matrix_full(cfg))});
  }
  return out;
}

}  // namespace cascade

#ifndef CASCADE_POLARIZATION_HPP
#define CASCADE_POLARIZATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "cascade/biphoton.hpp"

namespace cascade {

/// 4x4 polarization density matrix in the {HH, HV, VH, VV} basis. Always
/// Hermitian with unit trace; eigenvalues in (-1e-8, 0) are treated as
/// rounding and clipped away, anything more negative is an error.
class PolDensityMatrix {
 public:
  /// Normalizes (and, within tolerance, physically projects) a raw matrix.
  static PolDensityMatrix from_raw(const Eigen::Matrix4cd& raw);

  /// Accepts a matrix that is already Hermitian, PSD and unit-trace.
  static PolDensityMatrix from_physical(const Eigen::Matrix4cd& rho);

  const Eigen::Matrix4cd& matrix() const { return rho_; }

  double concurrence() const;
  double purity() const;
  double fidelity(const Eigen::Vector4cd& target) const;

 private:
  PolDensityMatrix() = default;
  Eigen::Matrix4cd rho_;
};

/// |Psi+> = (|HV> + |VH>)/sqrt(2), the ideal type-II output.
Eigen::Vector4cd psi_plus();

/// Ensemble density matrix over the whole configured grid (trapezoid
/// weighted, normalized to unit trace at the end).
PolDensityMatrix density_matrix_full(const CascadeConfig& config);

/// Density matrix at a single signal detuning (no spectral integral).
PolDensityMatrix density_matrix_point(const CascadeConfig& config, double det_a);

/// Wootters concurrence via the eigenvalues of rho * (sy(x)sy) rho^* (sy(x)sy),
/// real parts clipped at zero before the square roots.
double concurrence(const PolDensityMatrix& rho);

/// fidelity = <target|rho|target> (target must be normalized to 1e-9),
/// purity = Tr(rho^2).
struct FidelityPurity {
  double fidelity;
  double purity;
};
FidelityPurity fidelity_purity(const PolDensityMatrix& rho, const Eigen::Vector4cd& target);

struct ConcurrencePoint {
  double det_a;        // rad/s
  double concurrence;
};

/// Wavelength-resolved concurrence over the config grid.
std::vector<ConcurrencePoint> concurrence_map(const CascadeConfig& config);

struct ConcurrenceTheta {
  double theta;        // rad
  double concurrence;
};

/// Full-band concurrence with every middle transform replaced by
/// U(theta, 0, 0), one entry per requested angle.
std::vector<ConcurrenceTheta> concurrence_vs_rotation(const CascadeConfig& config,
                                                      const std::vector<double>& thetas);

}  // namespace cascade

#endif

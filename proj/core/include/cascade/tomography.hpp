#ifndef CASCADE_TOMOGRAPHY_HPP
#define CASCADE_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cascade/polarization.hpp"

namespace cascade {

/// The canonical 16-setting two-qubit tomography basis, labeled by
/// polarization pairs over {H,V,D,A,R,L} with D=(H+V)/sqrt2, A=(H-V)/sqrt2,
/// R=(H-iV)/sqrt2, L=(H+iV)/sqrt2.
struct ProjectorSet {
  std::array<Eigen::Vector4cd, 16> kets;
  std::array<std::string, 16> labels;

  static ProjectorSet standard16();

  Eigen::Matrix4cd projector(int i) const { return kets[i] * kets[i].adjoint(); }

  /// 2-norm condition number of the tomographic inversion map (the square
  /// root of the Gram eigenvalue ratio); finite and small for an
  /// informationally complete set.
  double gram_condition() const;
};

struct CountRecord {
  std::array<double, 16> expected{};        // total_pairs * Tr(rho P_i)
  std::array<std::uint64_t, 16> counts{};   // Poisson samples of the above
  std::uint64_t total_pairs = 0;
  std::uint64_t seed = 0;
};

/// Forward model of the counting experiment: Born-rule expectations plus
/// seeded Poisson noise, one draw per setting in label order.
CountRecord simulate_counts(const PolDensityMatrix& rho, std::uint64_t total_pairs,
                            std::uint64_t seed);

/// Linear-inversion reconstruction from per-setting measured values (counts
/// or noiseless expectations) normalized by the pair total. The result is
/// Hermitized, clipped to the PSD cone and renormalized, so it is always a
/// physical state.
PolDensityMatrix reconstruct(const std::array<double, 16>& measured, double total_pairs,
                             const ProjectorSet& projectors);

/// reconstruct() on the sampled counts of a record.
PolDensityMatrix reconstruct(const CountRecord& record, const ProjectorSet& projectors);

struct Table1Row {
  std::string state;
  double fidelity = 0.0;     // reconstructed, to |Psi+>
  double concurrence = 0.0;
  double purity = 0.0;
  double model_fidelity = 0.0;
  double model_concurrence = 0.0;
  double model_purity = 0.0;
};

struct Table1Result {
  std::vector<Table1Row> rows;
  std::vector<CountRecord> records;  // one per row, same order
};

/// Runs the full measure-and-reconstruct pipeline on a set of labeled model
/// states and reports model-ideal metrics next to the reconstructed ones.
Table1Result table1_pipeline(const std::vector<std::pair<std::string, PolDensityMatrix>>& models,
                             std::uint64_t total_pairs, std::uint64_t seed);

}  // namespace cascade

#endif

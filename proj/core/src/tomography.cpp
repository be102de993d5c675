#include "cascade/tomography.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cascade/errors.hpp"
#include "cascade/rng.hpp"

namespace cascade {

namespace {

Eigen::Vector2cd single_ket(char p) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd v;
  switch (p) {
    case 'H': v << 1.0, 0.0; break;
    case 'V': v << 0.0, 1.0; break;
    case 'D': v << s, s; break;
    case 'A': v << s, -s; break;
    case 'R': v << s, complexd(0.0, -s); break;
    case 'L': v << s, complexd(0.0, s); break;
    default: throw std::invalid_argument("unknown polarization label");
  }
  return v;
}

Eigen::Vector4cd pair_ket(char a, char b) {
  const Eigen::Vector2cd ka = single_ket(a);
  const Eigen::Vector2cd kb = single_ket(b);
  Eigen::Vector4cd v;
  v << ka(0) * kb(0), ka(0) * kb(1), ka(1) * kb(0), ka(1) * kb(1);
  return v;
}

}  // namespace

ProjectorSet ProjectorSet::standard16() {
  static const char* settings[16] = {"HH", "HV", "VH", "VV", "HD", "HL", "VD", "VL",
                                     "DH", "DV", "DD", "DL", "RH", "RV", "RD", "RL"};
  ProjectorSet set;
  for (int i = 0; i < 16; ++i) {
    set.labels[i] = settings[i];
    set.kets[i] = pair_ket(settings[i][0], settings[i][1]);
  }
  return set;
}

double ProjectorSet::gram_condition() const {
  // The Gram Tr(P_i P_j) equals A A+ for the measurement map A that the
  // reconstruction inverts, so the map's 2-norm condition is the square
  // root of the Gram eigenvalue ratio.
  Eigen::Matrix<double, 16, 16> gram;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      gram(i, j) = std::norm((kets[i].adjoint() * kets[j])(0));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 16, 16>> es(gram);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(hi / lo);
}

CountRecord simulate_counts(const PolDensityMatrix& rho, std::uint64_t total_pairs,
                            std::uint64_t seed) {
  if (total_pairs == 0) throw std::invalid_argument("total_pairs must be > 0");
  const ProjectorSet set = ProjectorSet::standard16();
  CountRecord rec;
  rec.total_pairs = total_pairs;
  rec.seed = seed;
  SeededRng rng(seed);
  for (int i = 0; i < 16; ++i) {
    const double p = (set.kets[i].adjoint() * rho.matrix() * set.kets[i])(0).real();
    rec.expected[i] = static_cast<double>(total_pairs) * std::max(p, 0.0);
    rec.counts[i] = rng.poisson(rec.expected[i]);
  }
  return rec;
}

PolDensityMatrix reconstruct(const std::array<double, 16>& measured, double total_pairs,
                             const ProjectorSet& projectors) {
  if (!(total_pairs > 0.0)) throw std::invalid_argument("total_pairs must be > 0");
  double sum = 0.0;
  for (double m : measured) sum += m;
  if (sum == 0.0) throw std::invalid_argument("cannot reconstruct from all-zero counts");

  // Tr(rho P_i) = p_i as a 16x16 linear system in the entries of rho.
  Eigen::Matrix<complexd, 16, 16> a;
  Eigen::Matrix<complexd, 16, 1> p;
  for (int i = 0; i < 16; ++i) {
    const Eigen::Matrix4cd proj = projectors.projector(i);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) a(i, 4 * r + c) = proj(c, r);
    p(i) = measured[i] / total_pairs;
  }
  Eigen::FullPivLU<Eigen::Matrix<complexd, 16, 16>> lu(a);
  if (!lu.isInvertible()) throw NumericalError("projector set is not informationally complete");
  const Eigen::Matrix<complexd, 16, 1> x = lu.solve(p);

  Eigen::Matrix4cd rho;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) rho(r, c) = x(4 * r + c);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  // Project onto the physical cone; Poisson noise routinely pushes linear
  // inversion slightly outside it.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  Eigen::Vector4d eig = es.eigenvalues().cwiseMax(0.0);
  const double tr = eig.sum();
  if (!(tr > 0.0)) throw NumericalError("reconstructed state has no positive weight");
  eig /= tr;
  Eigen::Matrix4cd physical = es.eigenvectors() * eig.asDiagonal() * es.eigenvectors().adjoint();
  physical = 0.5 * (physical + physical.adjoint()).eval();
  return PolDensityMatrix::from_physical(physical);
}

PolDensityMatrix reconstruct(const CountRecord& record, const ProjectorSet& projectors) {
  std::array<double, 16> measured;
  for (int i = 0; i < 16; ++i) measured[i] = static_cast<double>(record.counts[i]);
  return reconstruct(measured, static_cast<double>(record.total_pairs), projectors);
}

Table1Result table1_pipeline(const std::vector<std::pair<std::string, PolDensityMatrix>>& models,
                             std::uint64_t total_pairs, std::uint64_t seed) {
  const ProjectorSet set = ProjectorSet::standard16();
  const Eigen::Vector4cd target = psi_plus();
  Table1Result result;
  std::uint64_t row_seed = seed;
  for (const auto& [label, model] : models) {
    const CountRecord rec = simulate_counts(model, total_pairs, row_seed++);
    const PolDensityMatrix rho = reconstruct(rec, set);

    Table1Row row;
    row.state = label;
    const FidelityPurity fp = fidelity_purity(rho, target);
    row.fidelity = fp.fidelity;
    row.purity = fp.purity;
    row.concurrence = concurrence(rho);
    const FidelityPurity mfp = fidelity_purity(model, target);
    row.model_fidelity = mfp.fidelity;
    row.model_purity = mfp.purity;
    row.model_concurrence = concurrence(model);
    result.rows.push_back(row);
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace cascade

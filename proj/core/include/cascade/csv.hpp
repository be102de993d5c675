#ifndef CASCADE_CSV_HPP
#define CASCADE_CSV_HPP

#include <string>
#include <vector>

#include "cascade/biphoton.hpp"
#include "cascade/polarization.hpp"
#include "cascade/spectrometer.hpp"
#include "cascade/tomography.hpp"

namespace cascade {

/// Scientific notation with 9 significant digits; the one numeric format
/// used by every CSV so reruns are byte-identical.
std::string sci9(double v);

std::string spectrum_csv(const SpectrumTable& table);
std::string histogram_csv(const TimeHistogram& histogram);
std::string concurrence_map_csv(const std::vector<ConcurrencePoint>& map, double omega_bar_p);
std::string concurrence_theta_csv(const std::vector<ConcurrenceTheta>& curve);
std::string counts_csv(const CountRecord& record);
std::string table1_csv(const std::vector<Table1Row>& rows);
std::string scaling_csv(const std::vector<std::pair<std::string, ScalingResult>>& by_mode);
std::string scaling_slopes_csv(const std::vector<std::pair<std::string, ScalingResult>>& by_mode);

/// Density matrix as structured text: 4x4 nested arrays of [re, im] pairs
/// plus a metrics block.
std::string polstate_json(const PolDensityMatrix& rho);

}  // namespace cascade

#endif

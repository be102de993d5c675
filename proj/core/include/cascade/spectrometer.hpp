#ifndef CASCADE_SPECTROMETER_HPP
#define CASCADE_SPECTROMETER_HPP

#include <vector>

#include "cascade/biphoton.hpp"

namespace cascade {

/// Dispersive-fiber single-photon spectrometer: a fixed ps/nm map from
/// wavelength to arrival time, binned at the coincidence window.
struct SpectrometerModel {
  double dispersion_length_ps_per_nm = 0.0;
  double reference_wavelength_nm = 0.0;
  double coincidence_window_ps = 0.0;

  void validate() const;
};

/// Arrival-time histogram with uniform bins of the coincidence-window
/// width. Rows hold counts-density (mass per ps) per polarization channel.
struct TimeHistogram {
  double t0_ps = 0.0;        // left edge of bin 0
  double bin_width_ps = 0.0;
  std::vector<double> hh, hv, vh, vv, total;
  double omega_bar_p = 0.0;  // carried through for the inverse map

  std::size_t bins() const { return total.size(); }
  double bin_center(std::size_t k) const { return t0_ps + (k + 0.5) * bin_width_ps; }
};

/// Integrates the sampled spectrum into arrival-time bins through
/// t = DL * (lambda - lambda_ref). Total spectral mass is preserved.
TimeHistogram map_to_histogram(const SpectrumTable& spectrum, const SpectrometerModel& model);

/// Inverse map: bin centers back to wavelength/detuning samples.
SpectrumTable recover_spectrum(const TimeHistogram& histogram, const SpectrometerModel& model);

/// Wavelength resolution of the recovery, coincidence window / DL.
double resolution_nm(const SpectrometerModel& model);

/// Loss-corrected coincidence rate of a two-segment cascade:
/// eta_signal^2 * r1 + eta_pump * r2.
double expected_cascade_rate(double eta_signal, double eta_pump, double r1, double r2);

}  // namespace cascade

#endif

#include "cascade/spectrometer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cascade {

void SpectrometerModel::validate() const {
  if (!(dispersion_length_ps_per_nm > 0.0))
    throw std::invalid_argument("dispersion-length product must be > 0");
  if (!(reference_wavelength_nm > 0.0))
    throw std::invalid_argument("reference wavelength must be > 0");
  if (!(coincidence_window_ps > 0.0))
    throw std::invalid_argument("coincidence window must be > 0");
}

namespace {

double arrival_time_ps(double detuning, double omega_bar_p, const SpectrometerModel& m) {
  const double lambda = wavelength_nm_from_omega(0.5 * omega_bar_p + detuning);
  return m.dispersion_length_ps_per_nm * (lambda - m.reference_wavelength_nm);
}

double detuning_from_time_ps(double t_ps, double omega_bar_p, const SpectrometerModel& m) {
  const double lambda = m.reference_wavelength_nm + t_ps / m.dispersion_length_ps_per_nm;
  return omega_from_wavelength_nm(lambda) - 0.5 * omega_bar_p;
}

}  // namespace

TimeHistogram map_to_histogram(const SpectrumTable& spectrum, const SpectrometerModel& model) {
  model.validate();
  if (spectrum.size() < 2) throw std::invalid_argument("spectrum needs at least two samples");

  const std::size_t n = spectrum.size();
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = arrival_time_ps(spectrum.detuning[i], spectrum.omega_bar_p, model);

  const double w = model.coincidence_window_ps;
  const double t_min = std::min(t.front(), t.back());
  const double t_max = std::max(t.front(), t.back());
  const double t0 = std::floor(t_min / w) * w;
  const std::size_t nbins = static_cast<std::size_t>(std::floor((t_max - t0) / w)) + 1;

  TimeHistogram h;
  h.t0_ps = t0;
  h.bin_width_ps = w;
  h.omega_bar_p = spectrum.omega_bar_p;
  h.hh.assign(nbins, 0.0);
  h.hv.assign(nbins, 0.0);
  h.vh.assign(nbins, 0.0);
  h.vv.assign(nbins, 0.0);
  h.total.assign(nbins, 0.0);

  const std::vector<double>* rows[4] = {&spectrum.s_hh, &spectrum.s_hv, &spectrum.s_vh,
                                        &spectrum.s_vv};
  std::vector<double>* bins[4] = {&h.hh, &h.hv, &h.vh, &h.vv};

  // Each grid interval maps monotonically onto a time interval; split it at
  // bin edges and add the exact trapezoid mass of every sub-piece. The
  // density is piecewise linear in detuning, so the split is mass-exact.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double om0 = spectrum.detuning[i];
    const double om1 = spectrum.detuning[i + 1];
    const double ta = std::min(t[i], t[i + 1]);
    const double tb = std::max(t[i], t[i + 1]);
    auto interp = [&](const std::vector<double>& row, double om) {
      const double f = (om - om0) / (om1 - om0);
      return row[i] + f * (row[i + 1] - row[i]);
    };

    std::size_t kb = static_cast<std::size_t>(std::max(std::floor((ta - t0) / w), 0.0));
    const std::size_t ke =
        std::min(static_cast<std::size_t>(std::max(std::floor((tb - t0) / w), 0.0)), nbins - 1);
    double t_lo = ta;
    for (; kb <= ke; ++kb) {
      const double t_hi = std::min(tb, t0 + (kb + 1) * w);
      const double om_lo = detuning_from_time_ps(t_lo, spectrum.omega_bar_p, model);
      const double om_hi = detuning_from_time_ps(t_hi, spectrum.omega_bar_p, model);
      for (int c = 0; c < 4; ++c) {
        const double mass =
            0.5 * (interp(*rows[c], om_lo) + interp(*rows[c], om_hi)) * std::abs(om_hi - om_lo);
        (*bins[c])[kb] += mass / w;
      }
      t_lo = t_hi;
      if (t_hi >= tb) break;
    }
  }

  for (std::size_t k = 0; k < nbins; ++k)
    h.total[k] = h.hh[k] + h.hv[k] + h.vh[k] + h.vv[k];
  return h;
}

SpectrumTable recover_spectrum(const TimeHistogram& histogram, const SpectrometerModel& model) {
  model.validate();
  const std::size_t nbins = histogram.bins();
  if (nbins == 0) throw std::invalid_argument("empty histogram");

  SpectrumTable t;
  t.omega_bar_p = histogram.omega_bar_p;
  t.mode_tag = PumpMode::partial;
  t.detuning.resize(nbins);
  t.s_hh.resize(nbins);
  t.s_hv.resize(nbins);
  t.s_vh.resize(nbins);
  t.s_vv.resize(nbins);
  t.s_total.resize(nbins);

  // Ascending arrival time is descending detuning; emit ascending detuning.
  for (std::size_t k = 0; k < nbins; ++k) {
    const std::size_t src = nbins - 1 - k;
    const double tc = histogram.bin_center(src);
    const double det = detuning_from_time_ps(tc, histogram.omega_bar_p, model);
    const double lambda_m =
        (model.reference_wavelength_nm + tc / model.dispersion_length_ps_per_nm) * 1e-9;
    // |dt/d(detuning)| in ps per rad/s converts counts-density back to
    // spectral density.
    const double jacobian = model.dispersion_length_ps_per_nm * 1e9 * lambda_m * lambda_m /
                            (2.0 * kPi * kSpeedOfLight);
    t.detuning[k] = det;
    t.s_hh[k] = histogram.hh[src] * jacobian;
    t.s_hv[k] = histogram.hv[src] * jacobian;
    t.s_vh[k] = histogram.vh[src] * jacobian;
    t.s_vv[k] = histogram.vv[src] * jacobian;
    t.s_total[k] = t.s_hh[k] + t.s_hv[k] + t.s_vh[k] + t.s_vv[k];
  }
  return t;
}

double resolution_nm(const SpectrometerModel& model) {
  model.validate();
  return model.coincidence_window_ps / model.dispersion_length_ps_per_nm;
}

double expected_cascade_rate(double eta_signal, double eta_pump, double r1, double r2) {
  if (eta_signal < 0.0 || eta_signal > 1.0 || eta_pump < 0.0 || eta_pump > 1.0)
    throw std::invalid_argument("transmissions must lie in [0, 1]");
  if (r1 < 0.0 || r2 < 0.0) throw std::invalid_argument("rates must be >= 0");
  return eta_signal * eta_signal * r1 + eta_pump * r2;
}

}  // namespace cascade

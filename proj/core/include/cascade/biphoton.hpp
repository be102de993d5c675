#ifndef CASCADE_BIPHOTON_HPP
#define CASCADE_BIPHOTON_HPP

#include <optional>
#include <vector>

#include "cascade/optics.hpp"

namespace cascade {

/// How pair weights between segment amplitudes are taken:
///  coherent   - every cross weight is 1 (long-coherence limit)
///  incoherent - cross weights are 0 (separate-pumping limit)
///  partial    - exp(-|sum of group-delay mismatches|/tau_c), the general case
enum class PumpMode { coherent, incoherent, partial };

/// Linear section between two nonlinear segments: a dispersive medium, one
/// polarization transform seen by the downconverted band and the pump's
/// transform reduced to the only element that matters for type-II, U4P.
struct MiddleSection {
  Medium medium;          // kind must be linear
  JonesMatrix jones_dc;   // applied identically to signal and idler
  double u4p_mag = 1.0;   // |U4P|
  double phi_p = 0.0;     // arg U4P
};

/// Uniform detuning grid centered on the degeneracy point. span is the full
/// width in rad/s; points must be odd (and >= 17) so zero detuning is on-grid.
struct GridSpec {
  double span = 0.0;
  int points = 0;

  double step() const { return span / (points - 1); }
  double detuning(int i) const { return -0.5 * span + i * step(); }
};

struct CascadeConfig {
  std::vector<Medium> segments;          // nonlinear, in propagation order
  std::vector<double> segment_weights;   // relative pump contribution, same size
  std::vector<MiddleSection> middles;    // size = segments.size() - 1
  PumpModel pump;
  GridSpec grid;
  PumpMode mode = PumpMode::partial;

  void validate() const;
};

/// Complex biphoton amplitude contributed by one nonlinear segment at one
/// (signal, idler) detuning pair, per polarization channel.
struct SegmentAmplitude {
  complexd a_hh, a_hv, a_vh, a_vv;
  int segment_index = 0;

  complexd channel(int c) const {
    switch (c) {
      case 0: return a_hh;
      case 1: return a_hv;
      case 2: return a_vh;
      default: return a_vv;
    }
  }
};

/// Sampled spectral density versus signal detuning, one row per
/// polarization channel plus their sum.
struct SpectrumTable {
  std::vector<double> detuning;  // rad/s, signal detuning from the degeneracy
  std::vector<double> s_hh, s_hv, s_vh, s_vv, s_total;  // 1/(rad/s)
  PumpMode mode_tag = PumpMode::partial;
  double omega_bar_p = 0.0;  // carried along for wavelength output

  std::size_t size() const { return detuning.size(); }
};

struct SpectrumMetrics {
  double fwhm = 0.0;                  // rad/s
  double visibility = 0.0;
  std::optional<double> mode_spacing; // rad/s, set when >= 3 comb teeth exist
};

struct ScalingRow {
  int n = 0;
  double brightness = 0.0;
  double fwhm = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double brightness_slope = 0.0;  // log-log slope vs N
  double fwhm_slope = 0.0;
};

/// Per-segment amplitudes at one grid point. det_a/det_b are signal/idler
/// detunings in the downconversion band. Polarization-transforming middles
/// are supported for two segments only; more segments require identity
/// transforms and reduce to spectral cascading.
std::vector<SegmentAmplitude> segment_amplitudes(const CascadeConfig& config,
                                                 double det_a, double det_b);

/// First-order-coherence weight between the amplitudes of segments m and n:
/// exp(-|sum of group-delay mismatches of the media between their emission
/// points|/tau_c); 1 when m == n. Ignores the mode flag.
double coherence_weight(const CascadeConfig& config, int m, int n);

/// coherence_weight with the config's pump mode applied (forced to 1 or
/// delta_mn for the coherent/incoherent limits).
double pair_weight(const CascadeConfig& config, int m, int n);

/// Joint spectral intensity on the config grid under the cw reduction
/// (idler detuning = -signal detuning).
SpectrumTable joint_spectrum(const CascadeConfig& config);

/// Two-dimensional JSI over (signal, idler) detunings; includes the pump
/// lineshape factor since the pump frequency varies off the diagonal.
struct Jsi2d {
  std::vector<double> det_a, det_b;
  std::vector<std::vector<double>> value;  // [i_a][i_b]
};
Jsi2d joint_spectral_intensity_2d(const CascadeConfig& config);

/// Peak width, fringe visibility near the degeneracy point, and comb mode
/// spacing of the total row. FWHM crossings use linear interpolation;
/// extremum values/positions are refined with a three-point parabola.
SpectrumMetrics spectrum_metrics(const SpectrumTable& table);

/// Total brightness: trapezoid integral of the total row.
double brightness(const SpectrumTable& table);

/// Replicates the template's first segment (and first middle, zero-length
/// identity when absent) N times for each requested N and reports
/// brightness/FWHM together with their fitted log-log slopes.
ScalingResult scaling_study(const CascadeConfig& templ, const std::vector<int>& n_values,
                            PumpMode mode);

}  // namespace cascade

#endif

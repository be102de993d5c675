#ifndef CASCADE_OPTICS_HPP
#define CASCADE_OPTICS_HPP

#include <complex>

namespace cascade {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

using complexd = std::complex<double>;

enum class Pol { H, V };
enum class Band { pump, dc };

/// sin(x)/x, evaluated by series for |x| < 1e-4 so the degenerate point
/// of the spectrum never hits 0/0.
double sinc(double x);

/// Wavelength <-> angular frequency conversion, used only at I/O
/// boundaries; everything internal works in detunings.
double wavelength_nm_from_omega(double omega_rad_s);
double omega_from_wavelength_nm(double wavelength_nm);

/// Second-order Taylor coefficients of k(omega) about a band center.
struct TaylorCoeffs {
  double b0 = 0.0;  // rad/m
  double b1 = 0.0;  // s/m  (group slowness)
  double b2 = 0.0;  // s^2/m (group-velocity dispersion)
};

/// Per-polarization dispersion in the pump band (about the pump center)
/// and the downconversion band (about half the pump frequency).
struct DispersionProfile {
  TaylorCoeffs pump_H, pump_V;
  TaylorCoeffs dc_H, dc_V;

  static DispersionProfile isotropic(const TaylorCoeffs& pump, const TaylorCoeffs& dc);

  const TaylorCoeffs& coeffs(Band band, Pol pol) const;
  bool is_isotropic(double tol = 0.0) const;

  /// Throws std::invalid_argument unless every b1 is strictly positive.
  void validate() const;
};

enum class MediumKind { nonlinear, linear };

struct Medium {
  DispersionProfile profile;
  double length = 0.0;  // m; > 0 for nonlinear, >= 0 for linear sections
  MediumKind kind = MediumKind::linear;
  double k_qpm = 0.0;   // rad/m, quasi-phase-matching; 0 for linear media

  void validate() const;
};

enum class Lineshape { lorentzian };

struct PumpModel {
  double omega_bar_p = 0.0;      // rad/s, packet carrier frequency
  double coherence_time = 0.0;   // s
  double mean_photon_rate = 1.0; // dimensionless |alpha|^2 scale
  Lineshape lineshape = Lineshape::lorentzian;

  void validate() const;
};

/// 2x2 polarization transform, row-major entries
///   [ u1 u2 ]
///   [ u3 u4 ]
struct JonesMatrix {
  complexd u1{1.0, 0.0}, u2{0.0, 0.0}, u3{0.0, 0.0}, u4{1.0, 0.0};

  bool is_identity(double tol = 1e-12) const;
};

/// k at the given band/polarization: b0 + b1*detuning + b2*detuning^2/2.
/// The detuning is relative to the band center (pump center for the pump
/// band, half of it for the downconversion band).
double wavenumber(const Medium& medium, Pol pol, Band band, double detuning);

/// Type-II mismatch k_V(pump band) - k_H(signal) - k_V(idler) - k_qpm for a
/// nonlinear segment. det_a/det_b are signal/idler detunings in the dc band;
/// the pump detuning is their sum. Throws on linear media.
double phase_mismatch_type2(const Medium& segment, double det_a, double det_b);

struct WalkoffPhases {
  double lambda;   // rad, inter-channel walk-off of Eq.-style group birefringence
  double gamma_a;  // rad, single-frequency birefringent phase of the signal
  double gamma_b;  // rad, same for the idler
};

/// Birefringent walk-off phases of one nonlinear segment. Throws on
/// linear media.
WalkoffPhases walkoff_phases(const Medium& segment, double det_a, double det_b);

/// Pump-vs-biphoton group delay difference over the medium,
/// (b1_pump - b1_dc) * length with H/V averaged b1.
double group_delay_mismatch(const Medium& medium);

/// Normalized Lorentzian lineshape with half-width 1/coherence_time,
/// evaluated at an absolute pump frequency. Units 1/(rad/s).
double pump_lineshape(const PumpModel& pump, double omega_p);

/// Unitary polarization transform
///   [  e^{i phi1} cos(theta)  -e^{i phi2} sin(theta) ]
///   [  e^{-i phi2} sin(theta)  e^{-i phi1} cos(theta) ]
JonesMatrix make_unitary(double theta, double phi1, double phi2);

}  // namespace cascade

#endif

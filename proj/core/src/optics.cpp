#include "cascade/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double wavelength_nm_from_omega(double omega_rad_s) {
  return 2.0 * kPi * kSpeedOfLight / omega_rad_s * 1e9;
}

double omega_from_wavelength_nm(double wavelength_nm) {
  return 2.0 * kPi * kSpeedOfLight / (wavelength_nm * 1e-9);
}

DispersionProfile DispersionProfile::isotropic(const TaylorCoeffs& pump, const TaylorCoeffs& dc) {
  DispersionProfile p;
  p.pump_H = p.pump_V = pump;
  p.dc_H = p.dc_V = dc;
  return p;
}

const TaylorCoeffs& DispersionProfile::coeffs(Band band, Pol pol) const {
  if (band == Band::pump) return pol == Pol::H ? pump_H : pump_V;
  return pol == Pol::H ? dc_H : dc_V;
}

bool DispersionProfile::is_isotropic(double tol) const {
  auto same = [tol](const TaylorCoeffs& a, const TaylorCoeffs& b) {
    return std::abs(a.b0 - b.b0) <= tol && std::abs(a.b1 - b.b1) <= tol &&
           std::abs(a.b2 - b.b2) <= tol;
  };
  return same(pump_H, pump_V) && same(dc_H, dc_V);
}

void DispersionProfile::validate() const {
  for (const TaylorCoeffs* c : {&pump_H, &pump_V, &dc_H, &dc_V}) {
    if (!(c->b1 > 0.0)) throw std::invalid_argument("dispersion b1 must be strictly positive");
  }
}

void Medium::validate() const {
  profile.validate();
  if (kind == MediumKind::nonlinear) {
    if (!(length > 0.0)) throw std::invalid_argument("nonlinear medium length must be > 0");
  } else {
    if (length < 0.0) throw std::invalid_argument("linear medium length must be >= 0");
    if (k_qpm != 0.0) throw std::invalid_argument("linear medium must have k_qpm = 0");
  }
}

void PumpModel::validate() const {
  if (!(coherence_time > 0.0)) throw std::invalid_argument("pump coherence_time must be > 0");
  if (!(omega_bar_p > 0.0)) throw std::invalid_argument("pump omega_bar_p must be > 0");
  if (!(mean_photon_rate >= 0.0)) throw std::invalid_argument("pump mean_photon_rate must be >= 0");
}

bool JonesMatrix::is_identity(double tol) const {
  return std::abs(u1 - 1.0) <= tol && std::abs(u4 - 1.0) <= tol &&
         std::abs(u2) <= tol && std::abs(u3) <= tol;
}

double wavenumber(const Medium& medium, Pol pol, Band band, double detuning) {
  const TaylorCoeffs& c = medium.profile.coeffs(band, pol);
  return c.b0 + c.b1 * detuning + 0.5 * c.b2 * detuning * detuning;
}

double phase_mismatch_type2(const Medium& segment, double det_a, double det_b) {
  if (segment.kind != MediumKind::nonlinear)
    throw std::invalid_argument("phase_mismatch_type2 requires a nonlinear medium");
  const double det_p = det_a + det_b;  // energy conservation, exact in detunings
  return wavenumber(segment, Pol::V, Band::pump, det_p) -
         wavenumber(segment, Pol::H, Band::dc, det_a) -
         wavenumber(segment, Pol::V, Band::dc, det_b) - segment.k_qpm;
}

WalkoffPhases walkoff_phases(const Medium& segment, double det_a, double det_b) {
  if (segment.kind != MediumKind::nonlinear)
    throw std::invalid_argument("walkoff_phases requires a nonlinear medium");
  const double dk_a = wavenumber(segment, Pol::V, Band::dc, det_a) -
                      wavenumber(segment, Pol::H, Band::dc, det_a);
  const double dk_b = wavenumber(segment, Pol::V, Band::dc, det_b) -
                      wavenumber(segment, Pol::H, Band::dc, det_b);
  WalkoffPhases w;
  w.lambda = (dk_a - dk_b) * segment.length / 2.0;
  w.gamma_a = dk_a * segment.length;
  w.gamma_b = dk_b * segment.length;
  return w;
}

double group_delay_mismatch(const Medium& medium) {
  const DispersionProfile& p = medium.profile;
  const double b1_pump = 0.5 * (p.pump_H.b1 + p.pump_V.b1);
  const double b1_dc = 0.5 * (p.dc_H.b1 + p.dc_V.b1);
  return (b1_pump - b1_dc) * medium.length;
}

double pump_lineshape(const PumpModel& pump, double omega_p) {
  const double gamma = 1.0 / pump.coherence_time;  // half-width at half maximum
  const double d = omega_p - pump.omega_bar_p;
  return gamma / (kPi * (d * d + gamma * gamma));
}

JonesMatrix make_unitary(double theta, double phi1, double phi2) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  JonesMatrix u;
  u.u1 = std::polar(c, phi1);
  u.u2 = -std::polar(s, phi2);
  u.u3 = std::polar(s, -phi2);
  u.u4 = std::polar(c, -phi1);
  return u;
}

}  // namespace cascade

#include "cascade/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cascade/errors.hpp"

namespace cascade {

namespace {

constexpr complexd kI{0.0, 1.0};

// Wavenumber with H/V-averaged coefficients; the middle sections are treated
// as polarization independent so their contribution to the interference
// phase carries no polarization index.
double wavenumber_avg(const Medium& medium, Band band, double detuning) {
  return 0.5 * (wavenumber(medium, Pol::H, band, detuning) +
                wavenumber(medium, Pol::V, band, detuning));
}

// k_P - k_A - k_B over a linear middle section at the cw-reduced pump point.
double middle_mismatch(const Medium& medium, double det_a, double det_b) {
  return wavenumber_avg(medium, Band::pump, det_a + det_b) -
         wavenumber_avg(medium, Band::dc, det_a) - wavenumber_avg(medium, Band::dc, det_b);
}

double segment_weight(const CascadeConfig& config, std::size_t m) {
  if (config.segment_weights.empty()) return 1.0;
  return config.segment_weights[m];
}

struct EnvelopePhases {
  double env;      // L * sinc(dk_VHV L / 2)
  double dk_vhv_l; // dk_VHV * L, the inter-segment transit phase
  WalkoffPhases walkoff;
};

EnvelopePhases segment_envelope(const Medium& seg, double det_a, double det_b) {
  EnvelopePhases e;
  const double dk = phase_mismatch_type2(seg, det_a, det_b);
  e.env = seg.length * sinc(0.5 * dk * seg.length);
  e.dk_vhv_l = dk * seg.length;
  e.walkoff = walkoff_phases(seg, det_a, det_b);
  return e;
}

}  // namespace

void CascadeConfig::validate() const {
  if (segments.empty()) throw std::invalid_argument("cascade needs at least one segment");
  for (const Medium& s : segments) {
    if (s.kind != MediumKind::nonlinear)
      throw std::invalid_argument("cascade segments must be nonlinear media");
    s.validate();
  }
  if (middles.size() + 1 != segments.size())
    throw std::invalid_argument("middles.count must equal segments.count - 1");
  for (const MiddleSection& m : middles) {
    if (m.medium.kind != MediumKind::linear)
      throw std::invalid_argument("middle sections must be linear media");
    m.medium.validate();
    if (m.u4p_mag < 0.0) throw std::invalid_argument("u4p_mag must be >= 0");
  }
  if (!segment_weights.empty() && segment_weights.size() != segments.size())
    throw std::invalid_argument("segment_weights must match segments");
  for (double w : segment_weights)
    if (!(w >= 0.0)) throw std::invalid_argument("segment weights must be >= 0");
  pump.validate();
  if (grid.points < 16 || grid.points % 2 == 0)
    throw std::invalid_argument("grid points must be odd and >= 16");
  if (!(grid.span > 0.0)) throw std::invalid_argument("grid span must be > 0");
}

std::vector<SegmentAmplitude> segment_amplitudes(const CascadeConfig& config, double det_a,
                                                 double det_b) {
  const std::size_t n = config.segments.size();
  const bool all_identity =
      std::all_of(config.middles.begin(), config.middles.end(),
                  [](const MiddleSection& m) { return m.jones_dc.is_identity(); });
  if (!all_identity && n != 2)
    throw std::invalid_argument(
        "polarization-transforming middle sections are supported for two segments only");

  std::vector<SegmentAmplitude> out(n);
  for (std::size_t m = 0; m < n; ++m) out[m].segment_index = static_cast<int>(m);

  if (n == 1) {
    const EnvelopePhases e = segment_envelope(config.segments[0], det_a, det_b);
    const double w = std::sqrt(segment_weight(config, 0));
    out[0].a_hh = out[0].a_vv = 0.0;
    out[0].a_hv = w * e.env;
    out[0].a_vh = w * e.env * std::exp(kI * e.walkoff.lambda);
    return out;
  }

  if (n == 2) {
    const EnvelopePhases e0 = segment_envelope(config.segments[0], det_a, det_b);
    const EnvelopePhases e1 = segment_envelope(config.segments[1], det_a, det_b);
    const MiddleSection& mid = config.middles[0];
    const JonesMatrix& u = mid.jones_dc;
    const complexd u4p = std::polar(mid.u4p_mag, mid.phi_p);

    const complexd el = std::exp(kI * e0.walkoff.lambda);       // own-segment walk-off
    const complexd el2 = std::exp(2.0 * kI * e1.walkoff.lambda); // transit through segment 2
    const double w0 = std::sqrt(segment_weight(config, 0));
    const double w1 = std::sqrt(segment_weight(config, 1));

    // First segment: generated before the transform, so the amplitudes carry
    // the conjugated Jones products of the signal/idler transforms.
    out[0].a_hh = -std::exp(-kI * e1.walkoff.gamma_b) *
                  (std::conj(u.u4 * u.u3) + el * std::conj(u.u3 * u.u4)) * e0.env * w0;
    out[0].a_hv = (std::conj(u.u4 * u.u1) + el * std::conj(u.u3 * u.u2)) * e0.env * w0;
    out[0].a_vh = el2 * (std::conj(u.u2 * u.u3) + el * std::conj(u.u1 * u.u4)) * e0.env * w0;
    out[0].a_vv = -std::exp(kI * e1.walkoff.gamma_a) *
                  (std::conj(u.u2 * u.u1) + el * std::conj(u.u1 * u.u2)) * e0.env * w0;

    // Second segment: pump transits segment 1 and the middle before
    // downconverting, hence the accumulated interference phase.
    const complexd transit =
        u4p * std::exp(kI * (middle_mismatch(mid.medium, det_a, det_b) * mid.medium.length +
                             e0.dk_vhv_l));
    out[1].a_hh = out[1].a_vv = 0.0;
    out[1].a_hv = transit * e1.env * w1;
    out[1].a_vh = el2 * std::exp(-kI * e1.walkoff.lambda) * transit * e1.env * w1;
    return out;
  }

  // N >= 3, identity transforms: pure spectral cascading. Each segment's
  // amplitude carries the mismatch phase of everything upstream; the VH
  // channel additionally collects walk-off from its own segment and twice
  // that of every downstream segment.
  std::vector<double> lambda_suffix(n + 1, 0.0);
  std::vector<EnvelopePhases> env(n);
  for (std::size_t m = 0; m < n; ++m) env[m] = segment_envelope(config.segments[m], det_a, det_b);
  for (std::size_t m = n; m-- > 0;)
    lambda_suffix[m] = lambda_suffix[m + 1] + env[m].walkoff.lambda;

  complexd prefix{1.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) {
    const double w = std::sqrt(segment_weight(config, m));
    out[m].a_hh = out[m].a_vv = 0.0;
    out[m].a_hv = prefix * env[m].env * w;
    const double vh_walkoff = env[m].walkoff.lambda + 2.0 * lambda_suffix[m + 1];
    out[m].a_vh = out[m].a_hv * std::exp(kI * vh_walkoff);
    if (m + 1 < n) {
      const MiddleSection& mid = config.middles[m];
      prefix *= std::polar(mid.u4p_mag, mid.phi_p) *
                std::exp(kI * (env[m].dk_vhv_l +
                               middle_mismatch(mid.medium, det_a, det_b) * mid.medium.length));
    }
  }
  return out;
}

double coherence_weight(const CascadeConfig& config, int m, int n) {
  const int count = static_cast<int>(config.segments.size());
  if (m < 0 || n < 0 || m >= count || n >= count)
    throw std::invalid_argument("segment index out of range");
  if (m == n) return 1.0;
  const int lo = std::min(m, n);
  const int hi = std::max(m, n);
  // The pump-vs-pair delay builds up over every medium between the two
  // emission points: the full earlier segments and the middles after them.
  double delay = 0.0;
  for (int j = lo; j < hi; ++j) {
    delay += group_delay_mismatch(config.segments[j]);
    delay += group_delay_mismatch(config.middles[j].medium);
  }
  return std::exp(-std::abs(delay) / config.pump.coherence_time);
}

double pair_weight(const CascadeConfig& config, int m, int n) {
  switch (config.mode) {
    case PumpMode::coherent: return 1.0;
    case PumpMode::incoherent: return m == n ? 1.0 : 0.0;
    case PumpMode::partial: return coherence_weight(config, m, n);
  }
  return 1.0;
}

namespace {

std::vector<std::vector<double>> weight_matrix(const CascadeConfig& config) {
  const int n = static_cast<int>(config.segments.size());
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 1.0));
  for (int m = 0; m < n; ++m)
    for (int k = m + 1; k < n; ++k) w[m][k] = w[k][m] = pair_weight(config, m, k);
  return w;
}

// sum_{m,n} a_m a_n^* w_mn, accumulated in explicitly real form.
double pair_sum(const std::vector<SegmentAmplitude>& amps,
                const std::vector<std::vector<double>>& w, int channel) {
  const int n = static_cast<int>(amps.size());
  double diag = 0.0, cross = 0.0;
  for (int m = 0; m < n; ++m) {
    diag += std::norm(amps[m].channel(channel));
    for (int k = m + 1; k < n; ++k)
      cross += 2.0 * w[m][k] * std::real(amps[m].channel(channel) *
                                         std::conj(amps[k].channel(channel)));
  }
  const double s = diag + cross;
  if (s < 0.0) {
    if (s < -1e-12 * std::max(diag, 1e-300))
      throw NumericalError("negative spectral density beyond rounding tolerance");
    return 0.0;
  }
  return s;
}

}  // namespace

SpectrumTable joint_spectrum(const CascadeConfig& config) {
  config.validate();
  const auto w = weight_matrix(config);
  const double scale = config.pump.mean_photon_rate;

  SpectrumTable t;
  t.mode_tag = config.mode;
  t.omega_bar_p = config.pump.omega_bar_p;
  t.detuning.resize(config.grid.points);
  t.s_hh.resize(config.grid.points);
  t.s_hv.resize(config.grid.points);
  t.s_vh.resize(config.grid.points);
  t.s_vv.resize(config.grid.points);
  t.s_total.resize(config.grid.points);

  for (int i = 0; i < config.grid.points; ++i) {
    const double det = config.grid.detuning(i);
    const auto amps = segment_amplitudes(config, det, -det);
    t.detuning[i] = det;
    t.s_hh[i] = scale * pair_sum(amps, w, 0);
    t.s_hv[i] = scale * pair_sum(amps, w, 1);
    t.s_vh[i] = scale * pair_sum(amps, w, 2);
    t.s_vv[i] = scale * pair_sum(amps, w, 3);
    t.s_total[i] = t.s_hh[i] + t.s_hv[i] + t.s_vh[i] + t.s_vv[i];
  }
  return t;
}

Jsi2d joint_spectral_intensity_2d(const CascadeConfig& config) {
  config.validate();
  const auto w = weight_matrix(config);
  const double scale = config.pump.mean_photon_rate;

  Jsi2d jsi;
  jsi.det_a.resize(config.grid.points);
  jsi.det_b.resize(config.grid.points);
  for (int i = 0; i < config.grid.points; ++i)
    jsi.det_a[i] = jsi.det_b[i] = config.grid.detuning(i);
  jsi.value.assign(config.grid.points, std::vector<double>(config.grid.points, 0.0));

  for (int ia = 0; ia < config.grid.points; ++ia) {
    for (int ib = 0; ib < config.grid.points; ++ib) {
      const double da = jsi.det_a[ia];
      const double db = jsi.det_b[ib];
      const auto amps = segment_amplitudes(config, da, db);
      double s = 0.0;
      for (int c = 0; c < 4; ++c) s += pair_sum(amps, w, c);
      const double f = pump_lineshape(config.pump, config.pump.omega_bar_p + da + db);
      jsi.value[ia][ib] = scale * f * s;
    }
  }
  return jsi;
}

double brightness(const SpectrumTable& table) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < table.size(); ++i)
    sum += 0.5 * (table.s_total[i] + table.s_total[i + 1]) *
           (table.detuning[i + 1] - table.detuning[i]);
  return sum;
}

namespace {

struct Extremum {
  double pos;
  double value;
  int index;
};

// Three-point parabolic refinement about a grid extremum.
Extremum refine(const SpectrumTable& t, int i) {
  const double ym = t.s_total[i - 1], y0 = t.s_total[i], yp = t.s_total[i + 1];
  const double denom = ym - 2.0 * y0 + yp;
  Extremum e{t.detuning[i], y0, i};
  if (denom != 0.0) {
    const double h = t.detuning[i + 1] - t.detuning[i];
    const double delta = 0.5 * (ym - yp) / denom;
    e.pos = t.detuning[i] + delta * h;
    e.value = y0 - 0.25 * (ym - yp) * delta;
  }
  return e;
}

int global_peak_index(const SpectrumTable& t) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(t.size()); ++i) {
    if (t.s_total[i] > t.s_total[best] ||
        (t.s_total[i] == t.s_total[best] &&
         std::abs(t.detuning[i]) < std::abs(t.detuning[best])))
      best = i;
  }
  return best;
}

// Innermost half-maximum crossings around the global peak, linearly
// interpolated between grid points.
double peak_fwhm(const SpectrumTable& table) {
  const int n = static_cast<int>(table.size());
  const int peak = global_peak_index(table);
  const double half = 0.5 * table.s_total[peak];

  double left = table.detuning.front();
  bool found_left = false;
  for (int i = peak; i-- > 0;) {
    if (table.s_total[i] < half) {
      const double frac = (half - table.s_total[i]) / (table.s_total[i + 1] - table.s_total[i]);
      left = table.detuning[i] + frac * (table.detuning[i + 1] - table.detuning[i]);
      found_left = true;
      break;
    }
  }
  double right = table.detuning.back();
  bool found_right = false;
  for (int i = peak; i + 1 < n; ++i) {
    if (table.s_total[i + 1] < half) {
      const double frac = (table.s_total[i] - half) / (table.s_total[i] - table.s_total[i + 1]);
      right = table.detuning[i] + frac * (table.detuning[i + 1] - table.detuning[i]);
      found_right = true;
      break;
    }
  }
  if (!found_left || !found_right)
    throw NumericalError("spectrum does not fall to half maximum inside the grid");
  return right - left;
}

}  // namespace

SpectrumMetrics spectrum_metrics(const SpectrumTable& table) {
  const int n = static_cast<int>(table.size());
  if (n < 3) throw std::invalid_argument("spectrum too short for metrics");

  const int peak = global_peak_index(table);
  const double half = 0.5 * table.s_total[peak];

  SpectrumMetrics out;
  out.fwhm = peak_fwhm(table);

  // Interior extrema of the total row.
  std::vector<Extremum> maxima, minima;
  for (int i = 1; i + 1 < n; ++i) {
    if (table.s_total[i] > table.s_total[i - 1] && table.s_total[i] > table.s_total[i + 1])
      maxima.push_back(refine(table, i));
    else if (table.s_total[i] < table.s_total[i - 1] && table.s_total[i] < table.s_total[i + 1])
      minima.push_back(refine(table, i));
  }
  if (maxima.empty() || minima.empty())
    throw NumericalError("visibility undefined: no interference extrema");

  auto nearest = [](const std::vector<Extremum>& v) {
    return *std::min_element(v.begin(), v.end(), [](const Extremum& a, const Extremum& b) {
      return std::abs(a.pos) < std::abs(b.pos);
    });
  };
  const Extremum mx = nearest(maxima);
  const Extremum mn = nearest(minima);
  const double lo = std::max(mn.value, 0.0);
  out.visibility = (mx.value - lo) / (mx.value + lo);

  // Comb teeth: local maxima at least half as tall as the global peak.
  std::vector<double> teeth;
  for (const Extremum& e : maxima)
    if (e.value >= half) teeth.push_back(e.pos);
  if (teeth.size() >= 3) {
    std::sort(teeth.begin(), teeth.end());
    out.mode_spacing = (teeth.back() - teeth.front()) / static_cast<double>(teeth.size() - 1);
  }
  return out;
}

ScalingResult scaling_study(const CascadeConfig& templ, const std::vector<int>& n_values,
                            PumpMode mode) {
  if (n_values.size() < 2) throw std::invalid_argument("scaling study needs at least two N values");
  if (mode == PumpMode::partial)
    throw std::invalid_argument("scaling study mode must be coherent or incoherent");
  templ.validate();
  for (const MiddleSection& m : templ.middles)
    if (!m.jones_dc.is_identity())
      throw std::invalid_argument("scaling study requires identity polarization transforms");

  MiddleSection mid;
  if (!templ.middles.empty()) {
    mid = templ.middles[0];
  } else {
    mid.medium.profile = templ.segments[0].profile;
    mid.medium.length = 0.0;
    mid.medium.kind = MediumKind::linear;
  }

  ScalingResult result;
  for (int n : n_values) {
    if (n < 1) throw std::invalid_argument("N values must be >= 1");
    CascadeConfig cfg = templ;
    cfg.mode = mode;
    cfg.segments.assign(n, templ.segments[0]);
    cfg.segment_weights.clear();
    cfg.middles.assign(n - 1, mid);
    const SpectrumTable t = joint_spectrum(cfg);
    result.rows.push_back({n, brightness(t), peak_fwhm(t)});
  }

  // Least-squares log-log slopes.
  auto slope = [&](auto value) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(result.rows.size());
    for (const ScalingRow& r : result.rows) {
      const double x = std::log(static_cast<double>(r.n));
      const double y = std::log(value(r));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  };
  result.brightness_slope = slope([](const ScalingRow& r) { return r.brightness; });
  result.fwhm_slope = slope([](const ScalingRow& r) { return r.fwhm; });
  return result;
}

}  // namespace cascade

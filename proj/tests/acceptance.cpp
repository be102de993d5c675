// Acceptance suite: one criterion per scenario, one PASS/FAIL line each.
// Every tolerance is pinned here; nothing is calibrated at run time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cascade/polarization.hpp"
#include "cascade/rng.hpp"
#include "cascade/spectrometer.hpp"
#include "cascade/tomography.hpp"
#include "test_helpers.hpp"

using namespace cascade;
using namespace cascade::testing;

namespace {

struct Judge {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << (notes.tellp() > 0 ? "; " : "") << what;
    }
  }
  void note(const std::string& text) {
    notes << (notes.tellp() > 0 ? "; " : "") << text;
  }
};

Eigen::Matrix4cd sqrtm_psd(const Eigen::Matrix4cd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Uhlmann fidelity; reduces to <psi|sigma|psi> for pure rho.
double state_fidelity(const Eigen::Matrix4cd& rho, const Eigen::Matrix4cd& sigma) {
  const Eigen::Matrix4cd r = sqrtm_psd(rho);
  const Eigen::Matrix4cd inner = r * sigma * r;
  const double tr = sqrtm_psd(0.5 * (inner + inner.adjoint())).trace().real();
  return tr * tr;
}

// Independent concurrence route (Hermitian form), duplicated here so the
// acceptance check does not share code with the production path.
double concurrence_oracle(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd rho_tilde = yy * rho.conjugate() * yy;
  const Eigen::Matrix4cd r = sqrtm_psd(rho);
  const Eigen::Matrix4cd m = r * rho_tilde * r;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (m + m.adjoint()));
  Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

Eigen::Matrix4cd random_physical_state(SeededRng& rng) {
  Eigen::Matrix4cd g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = complexd(rng.normal(), rng.normal());
  Eigen::Matrix4cd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---- criterion 1: coherent brightness/bandwidth scaling --------------------

void criterion_1(Judge& j) {
  const auto start = std::chrono::steady_clock::now();

  CascadeConfig templ;
  templ.segments = {test_segment(0.2, 2.4e-26)};
  templ.pump = test_pump();
  templ.grid = {2.3e14, 4097};

  const ScalingResult r = scaling_study(templ, {1, 2, 3, 4, 6, 8}, PumpMode::coherent);
  const double ratio = r.rows[1].brightness / r.rows[0].brightness;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  j.expect(std::abs(r.brightness_slope - 1.5) <= 0.03,
           "brightness slope " + fmt(r.brightness_slope) + " outside 1.5 +- 0.03");
  j.expect(std::abs(r.fwhm_slope + 0.5) <= 0.03,
           "fwhm slope " + fmt(r.fwhm_slope) + " outside -0.5 +- 0.03");
  j.expect(std::abs(ratio - std::pow(2.0, 1.5)) <= 0.01 * std::pow(2.0, 1.5),
           "N=2/N=1 brightness ratio " + fmt(ratio) + " outside 2.828 +- 1%");
  j.expect(seconds < 10.0, "runtime " + fmt(seconds) + " s exceeds 10 s");
  j.note("slopes (" + fmt(r.brightness_slope) + ", " + fmt(r.fwhm_slope) + "), ratio " +
         fmt(ratio) + ", " + fmt(seconds) + " s");
}

// ---- criterion 2: incoherent scaling ---------------------------------------

void criterion_2(Judge& j) {
  // pump walks off the pair inside every segment; tau_c makes each cross
  // weight e^-100 < 1e-15
  CascadeConfig templ;
  templ.segments = {test_segment(0.2, 2.4e-26, 2e-11)};
  templ.pump = test_pump(4e-14);
  templ.grid = {2.3e14, 4097};

  CascadeConfig probe = templ;
  probe.segments.assign(2, templ.segments[0]);
  MiddleSection zero_mid;
  zero_mid.medium.profile = templ.segments[0].profile;
  zero_mid.medium.length = 0.0;
  zero_mid.medium.kind = MediumKind::linear;
  probe.middles = {zero_mid};
  j.expect(coherence_weight(probe, 0, 1) < 1e-15,
           "cross weight " + fmt(coherence_weight(probe, 0, 1)) + " not < 1e-15");

  const ScalingResult r = scaling_study(templ, {1, 2, 3, 4, 6, 8}, PumpMode::incoherent);
  j.expect(std::abs(r.brightness_slope - 1.0) <= 0.01,
           "brightness slope " + fmt(r.brightness_slope) + " outside 1.0 +- 0.01");
  j.expect(std::abs(r.fwhm_slope) <= 0.01,
           "fwhm slope " + fmt(r.fwhm_slope) + " outside 0.0 +- 0.01");

  // the driven-weight route gives the same spectrum as the forced limit
  probe.mode = PumpMode::partial;
  const SpectrumTable auto_mode = joint_spectrum(probe);
  probe.mode = PumpMode::incoherent;
  const SpectrumTable forced = joint_spectrum(probe);
  double max_rel = 0.0;
  for (std::size_t i = 0; i < auto_mode.size(); ++i) {
    if (forced.s_total[i] > 1e-30)
      max_rel = std::max(max_rel,
                         std::abs(auto_mode.s_total[i] - forced.s_total[i]) / forced.s_total[i]);
  }
  j.expect(max_rel < 1e-10, "driven incoherent limit deviates by " + fmt(max_rel));
  j.note("slopes (" + fmt(r.brightness_slope) + ", " + fmt(r.fwhm_slope) + ")");
}

// ---- criterion 3: fringe visibility versus pump coherence ------------------

void criterion_3(Judge& j) {
  const auto start = std::chrono::steady_clock::now();

  // Flat envelope, fast fringes: near the degeneracy point the fringe slope
  // dominates the envelope slope even at weight e^-20, so the innermost
  // extrema stay detectable in every coherence regime.
  const Medium seg = test_segment(0.25, 4e-28);                 // no segment walk-off
  const MiddleSection mid = test_middle(200.0, 2.3e-26, 2e-11);  // delay 4 ns
  const double delay = 4e-9;

  auto visibility_at = [&](double tau_c) {
    CascadeConfig cfg = cascade_of(2, seg, mid, PumpMode::partial, 4e14, 262145);
    cfg.pump.coherence_time = tau_c;
    return spectrum_metrics(joint_spectrum(cfg)).visibility;
  };

  const double v_coherent = visibility_at(delay / 1e-8);   // ratio 1e-8 < 1e-6
  const double v_unit = visibility_at(delay);              // ratio exactly 1
  const double v_washed = visibility_at(delay / 20.4);     // ratio > 20

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  j.expect(std::abs(v_coherent - 1.0) <= 1e-6,
           "coherent visibility " + fmt(v_coherent) + " outside 1 +- 1e-6");
  j.expect(std::abs(v_unit - std::exp(-1.0)) <= 1e-3,
           "unit-ratio visibility " + fmt(v_unit) + " outside 1/e +- 1e-3");
  j.expect(v_washed < 1e-3, "washed-out visibility " + fmt(v_washed) + " not < 1e-3");
  j.expect(seconds < 1.0, "runtime " + fmt(seconds) + " s exceeds 1 s");
  j.note(fmt(v_coherent) + " / " + fmt(v_unit) + " / " + fmt(v_washed) + ", " + fmt(seconds) +
         " s");
}

// ---- criterion 4: fringe minima against the closed-form roots --------------

void criterion_4(Judge& j) {
  const Medium seg = test_segment();
  const MiddleSection mid = test_middle();  // pure-b2 synthetic middle
  CascadeConfig cfg = cascade_of(2, seg, mid, PumpMode::coherent, 2.6e13, 8193);

  const SpectrumTable t = joint_spectrum(cfg);
  const double curvature = section_phase_curvature(seg, mid);
  const double h = cfg.grid.step();

  int checked = 0;
  bool all_close = true;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (!(t.s_total[i] < t.s_total[i - 1] && t.s_total[i] < t.s_total[i + 1])) continue;
    const double pos = t.detuning[i];
    const double k = std::round((curvature * pos * pos / kPi - 1.0) / 2.0);
    if (k < 0.0) {
      all_close = false;
      continue;
    }
    const double root = std::sqrt((2.0 * k + 1.0) * kPi / curvature);
    if (std::abs(std::abs(pos) - root) > h) all_close = false;
    ++checked;
  }
  j.expect(checked >= 6, "only " + std::to_string(checked) + " minima found");
  j.expect(all_close, "a grid minimum strayed more than one step from its root");
  j.note(std::to_string(checked) + " minima within one grid step");
}

// ---- criterion 5: three-segment frequency comb ------------------------------

void criterion_5(Judge& j) {
  const Medium seg = test_segment(0.2);
  const MiddleSection mid = test_middle(6.0);
  CascadeConfig cfg = cascade_of(3, seg, mid, PumpMode::coherent, 3e13, 16385);

  const SpectrumTable t = joint_spectrum(cfg);

  // comb teeth: local maxima at least half the global peak
  double peak = 0.0;
  for (double v : t.s_total) peak = std::max(peak, v);
  std::vector<double> teeth;
  for (std::size_t i = 1; i + 1 < t.size(); ++i)
    if (t.s_total[i] > t.s_total[i - 1] && t.s_total[i] > t.s_total[i + 1] &&
        t.s_total[i] >= 0.5 * peak)
      teeth.push_back(t.detuning[i]);

  j.expect(teeth.size() >= 5, "only " + std::to_string(teeth.size()) + " comb teeth");
  if (teeth.size() >= 5) {
    const double measured = (teeth.back() - teeth.front()) / (teeth.size() - 1);

    // analytic teeth of one middle+segment period: curvature * det^2 = 2 pi k
    const double curvature = section_phase_curvature(seg, mid);
    std::vector<double> analytic;
    for (double pos : teeth) {
      const double k = std::round(curvature * pos * pos / (2.0 * kPi));
      const double mag = std::sqrt(2.0 * kPi * k / curvature);
      analytic.push_back(pos < 0.0 ? -mag : mag);
    }
    const double expected = (analytic.back() - analytic.front()) / (analytic.size() - 1);
    j.expect(std::abs(measured - expected) <= 0.02 * expected,
             "mean spacing " + fmt(measured) + " vs analytic " + fmt(expected));

    const SpectrumMetrics m = spectrum_metrics(t);
    j.expect(m.mode_spacing.has_value() &&
                 std::abs(*m.mode_spacing - expected) <= 0.02 * expected,
             "reported mode spacing disagrees with the analytic period");
    j.note(std::to_string(teeth.size()) + " teeth, spacing " + fmt(measured) + " vs " +
           fmt(expected));
  }
}

// ---- criterion 6: concurrence endpoints and monotone rotation curve --------

void criterion_6(Judge& j) {
  const CascadeConfig cfg = cascade_of(2, test_segment(), test_middle(5.0, 2.3e-26, 2e-11),
                                       PumpMode::incoherent, 2.6e13, 257);
  std::vector<double> thetas(50);
  for (int i = 0; i < 50; ++i) thetas[i] = (kPi / 4.0) * i / 49.0;
  const auto curve = concurrence_vs_rotation(cfg, thetas);

  j.expect(curve.front().concurrence >= 1.0 - 1e-6,
           "C(0) = " + fmt(curve.front().concurrence) + " below 1 - 1e-6");
  j.expect(curve.back().concurrence <= 1e-6,
           "C(pi/4) = " + fmt(curve.back().concurrence) + " above 1e-6");
  bool monotone = true;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].concurrence > curve[i - 1].concurrence + 1e-9) monotone = false;
  j.expect(monotone, "curve is not non-increasing");
  j.note("C(0) = " + fmt(curve.front().concurrence) +
         ", C(pi/4) = " + fmt(curve.back().concurrence));
}

// ---- criterion 7: wavelength-resolved concurrence stripes ------------------

void criterion_7(Judge& j) {
  const Medium seg = test_segment();
  MiddleSection mid = test_middle();
  mid.jones_dc = make_unitary(kPi / 4.0, 0.0, 0.0);
  CascadeConfig cfg = cascade_of(2, seg, mid, PumpMode::coherent, 2.6e13, 8193);

  // phase-matching band: half-maximum width of the bare envelope
  const double curvature = 0.25 * (seg.profile.dc_H.b2 + seg.profile.dc_V.b2) * seg.length;
  const double half_band = std::sqrt(1.39155737825151 / curvature);

  double lo = 1.0, hi = 0.0;
  for (const ConcurrencePoint& p : concurrence_map(cfg)) {
    if (std::abs(p.det_a) > half_band) continue;
    lo = std::min(lo, p.concurrence);
    hi = std::max(hi, p.concurrence);
  }
  j.expect(hi >= 0.99, "map maximum " + fmt(hi) + " below 0.99");
  j.expect(lo <= 0.01, "map minimum " + fmt(lo) + " above 0.01");
  j.note("map spans [" + fmt(lo) + ", " + fmt(hi) + "] inside the band");
}

// ---- criterion 8: tomography pipeline ---------------------------------------

void criterion_8(Judge& j) {
  const auto start = std::chrono::steady_clock::now();

  const Medium seg = test_segment();
  const MiddleSection mid = test_middle(5.0, 2.3e-26, 2e-11);

  CascadeConfig single;
  single.segments = {seg};
  single.pump = test_pump(1e-12);
  single.mode = PumpMode::incoherent;
  single.grid = {2.6e13, 257};

  CascadeConfig identity_cascade = cascade_of(2, seg, mid, PumpMode::incoherent, 2.6e13, 257);
  identity_cascade.pump.coherence_time = 1e-12;
  CascadeConfig rotated = identity_cascade;
  rotated.middles[0].jones_dc = make_unitary(kPi / 4.0, 0.0, 0.0);

  std::vector<std::pair<std::string, PolDensityMatrix>> models;
  models.emplace_back("segment1", density_matrix_full(single));
  models.emplace_back("segment2", density_matrix_full(single));
  models.emplace_back("cascade_theta0", density_matrix_full(identity_cascade));
  models.emplace_back("cascade_theta45", density_matrix_full(rotated));

  const Table1Result result = table1_pipeline(models, 100000, 2024);

  for (int row : {0, 1, 2}) {
    j.expect(std::abs(result.rows[row].model_fidelity - 1.0) <= 1e-9 &&
                 std::abs(result.rows[row].model_concurrence - 1.0) <= 1e-6 &&
                 std::abs(result.rows[row].model_purity - 1.0) <= 1e-9,
             result.rows[row].state + " model metrics differ from (1, 1, 1)");
  }
  j.expect(std::abs(result.rows[3].model_fidelity - 0.5) <= 1e-9 &&
               result.rows[3].model_concurrence <= 1e-6 &&
               std::abs(result.rows[3].model_purity - 0.5) <= 1e-9,
           "rotated cascade model metrics differ from (0.5, 0, 0.5)");

  // noiseless round trip
  const ProjectorSet set = ProjectorSet::standard16();
  for (const auto& [label, model] : models) {
    const CountRecord rec = simulate_counts(model, 100000, 1);
    const PolDensityMatrix back =
        reconstruct(rec.expected, static_cast<double>(rec.total_pairs), set);
    const double f = state_fidelity(model.matrix(), back.matrix());
    j.expect(f >= 1.0 - 1e-9, label + " noiseless round-trip fidelity " + fmt(f));
  }

  // Poisson noise, 100 seeds per row, median fidelity to the model
  for (const auto& [label, model] : models) {
    std::vector<double> fs;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PolDensityMatrix rec = reconstruct(simulate_counts(model, 100000, seed), set);
      fs.push_back(state_fidelity(model.matrix(), rec.matrix()));
    }
    std::sort(fs.begin(), fs.end());
    const double median = 0.5 * (fs[49] + fs[50]);
    j.expect(median >= 0.99, label + " median fidelity " + fmt(median) + " below 0.99");
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  j.expect(seconds < 30.0, "runtime " + fmt(seconds) + " s exceeds 30 s");
  j.note(fmt(seconds) + " s");
}

// ---- criterion 9: concurrence oracle equivalence ----------------------------

void criterion_9(Judge& j) {
  SeededRng rng(424242);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Matrix4cd rho = random_physical_state(rng);
    const double fast = concurrence(PolDensityMatrix::from_physical(rho));
    const double slow = concurrence_oracle(rho);
    worst = std::max(worst, std::abs(fast - slow));
  }
  j.expect(worst <= 1e-9, "worst disagreement " + fmt(worst) + " above 1e-9");
  j.note("worst disagreement " + fmt(worst));
}

// ---- criterion 10: spectrometer resolution ----------------------------------

void criterion_10(Judge& j) {
  SpectrometerModel model;
  model.dispersion_length_ps_per_nm = 340.0;
  model.coincidence_window_ps = 256.0;
  const double omega = 2.4e15;
  const double lambda0 = wavelength_nm_from_omega(0.5 * omega);
  const double half_bin_nm = 128.0 / 340.0;

  model.reference_wavelength_nm = lambda0;
  j.expect(resolution_nm(model) == 256.0 / 340.0,
           "resolution " + fmt(resolution_nm(model)) + " is not exactly 256/340 nm");

  auto lines = [&](double separation_nm) {
    SpectrumTable t;
    t.omega_bar_p = omega;
    const int n = 8001;
    for (int i = 0; i < n; ++i) {
      const double det = -2e12 + 4e12 * i / (n - 1);
      const double wl = wavelength_nm_from_omega(0.5 * omega + det);
      double s = 0.0;
      for (double line : {lambda0 - 0.5 * separation_nm, lambda0 + 0.5 * separation_nm}) {
        const double x = (wl - line) / 0.02;
        s += std::exp(-0.5 * x * x);
      }
      t.detuning.push_back(det);
      t.s_hh.push_back(0.0);
      t.s_vv.push_back(0.0);
      t.s_hv.push_back(0.5 * s);
      t.s_vh.push_back(0.5 * s);
      t.s_total.push_back(s);
    }
    return t;
  };

  auto peak_count = [&](double separation_nm) {
    model.reference_wavelength_nm = lambda0 - 0.5 * separation_nm - half_bin_nm;
    const SpectrumTable rec = recover_spectrum(map_to_histogram(lines(separation_nm), model),
                                               model);
    double peak = 0.0;
    for (double v : rec.s_total) peak = std::max(peak, v);
    int count = 0;
    for (std::size_t i = 1; i + 1 < rec.size(); ++i)
      if (rec.s_total[i] > rec.s_total[i - 1] && rec.s_total[i] >= rec.s_total[i + 1] &&
          rec.s_total[i] > 0.2 * peak)
        ++count;
    return count;
  };

  const int merged = peak_count(0.5);
  const int resolved = peak_count(1.5);
  j.expect(merged == 1, "0.5 nm lines produced " + std::to_string(merged) + " peaks");
  j.expect(resolved == 2, "1.5 nm lines produced " + std::to_string(resolved) + " peaks");
  j.note("0.5 nm -> " + std::to_string(merged) + " peak, 1.5 nm -> " + std::to_string(resolved) +
         " peaks");
}

// ---- criterion 11: loss-corrected cascade rate -------------------------------

void criterion_11(Judge& j) {
  const double r = expected_cascade_rate(0.9, 0.8, 100.0, 50.0);
  j.expect(std::abs(r - 121.0) <= 1e-12 * 121.0, "rate " + fmt(r) + " differs from 121");
  const double lossless = expected_cascade_rate(1.0, 1.0, 100.0, 50.0);
  j.expect(lossless == 150.0, "lossless rate " + fmt(lossless) + " is not additive");
  j.note("rate(0.9, 0.8, 100, 50) = " + fmt(r));
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    std::function<void(Judge&)> run;
  };
  const std::vector<Entry> entries = {
      {1, "coherent scaling: brightness N^1.5, bandwidth N^-0.5", criterion_1},
      {2, "incoherent scaling: brightness N, bandwidth constant", criterion_2},
      {3, "fringe visibility tracks the pump coherence factor", criterion_3},
      {4, "fringe minima match the closed-form quadratic-phase roots", criterion_4},
      {5, "three-segment comb spacing matches the middle-section period", criterion_5},
      {6, "concurrence endpoints and monotone rotation curve", criterion_6},
      {7, "coherent quarter-rotation concurrence stripes reach 1 and 0", criterion_7},
      {8, "tomography pipeline: model metrics, round trip, Poisson medians", criterion_8},
      {9, "concurrence agrees with the independent Hermitian-form oracle", criterion_9},
      {10, "fiber spectrometer resolution and line separation", criterion_10},
      {11, "loss-corrected cascade rate arithmetic", criterion_11},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Judge j;
    try {
      e.run(j);
    } catch (const std::exception& ex) {
      j.ok = false;
      j.note(std::string("exception: ") + ex.what());
    }
    if (!j.ok) ++failures;
    std::printf("[%s] criterion %2d: %s%s%s\n", j.ok ? "PASS" : "FAIL", e.number, e.title,
                j.notes.tellp() > 0 ? " -- " : "", j.notes.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures;
}

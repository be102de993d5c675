#include "cascade/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cascade {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& member(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object())
    throw ConfigError(path.empty() ? "config root must be an object" : path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(join(path, key) + ": missing key");
  return *it;
}

double get_double(const json& j, const std::string& path, const std::string& key) {
  const json& v = member(j, path, key);
  if (!v.is_number()) throw ConfigError(join(path, key) + ": expected a number");
  return v.get<double>();
}

double get_double_or(const json& j, const std::string& path, const std::string& key,
                     double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_double(j, path, key);
}

long long get_int(const json& j, const std::string& path, const std::string& key) {
  const json& v = member(j, path, key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key) + ": expected an integer");
  return v.get<long long>();
}

bool get_bool(const json& j, const std::string& path, const std::string& key) {
  const json& v = member(j, path, key);
  if (!v.is_boolean()) throw ConfigError(join(path, key) + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& path, const std::string& key) {
  const json& v = member(j, path, key);
  if (!v.is_string()) throw ConfigError(join(path, key) + ": expected a string");
  return v.get<std::string>();
}

TaylorCoeffs parse_taylor(const json& j, const std::string& path) {
  TaylorCoeffs c;
  c.b0 = get_double(j, path, "b0");
  c.b1 = get_double(j, path, "b1");
  c.b2 = get_double(j, path, "b2");
  if (!(c.b1 > 0.0)) throw ConfigError(join(path, "b1") + ": group slowness must be > 0");
  return c;
}

DispersionProfile parse_dispersion(const json& j, const std::string& path) {
  DispersionProfile p;
  const json& pump = member(j, path, "pump");
  const json& dc = member(j, path, "dc");
  p.pump_H = parse_taylor(member(pump, join(path, "pump"), "H"), join(path, "pump.H"));
  p.pump_V = parse_taylor(member(pump, join(path, "pump"), "V"), join(path, "pump.V"));
  p.dc_H = parse_taylor(member(dc, join(path, "dc"), "H"), join(path, "dc.H"));
  p.dc_V = parse_taylor(member(dc, join(path, "dc"), "V"), join(path, "dc.V"));
  return p;
}

PumpMode parse_mode(const json& root) {
  if (!root.contains("mode")) return PumpMode::partial;
  const std::string s = get_string(root, "", "mode");
  if (s == "coherent") return PumpMode::coherent;
  if (s == "incoherent") return PumpMode::incoherent;
  if (s == "auto") return PumpMode::partial;
  throw ConfigError("mode: must be \"coherent\", \"incoherent\" or \"auto\"");
}

RunConfig parse_root(const json& root) {
  RunConfig rc;
  CascadeConfig& cc = rc.cascade;

  // pump
  const json& pump = member(root, "", "pump");
  const bool has_omega = pump.contains("omega_bar_p_rad_s");
  const bool has_wl = pump.contains("pump_wavelength_nm");
  if (has_omega == has_wl)
    throw ConfigError("pump: specify exactly one of omega_bar_p_rad_s / pump_wavelength_nm");
  cc.pump.omega_bar_p = has_omega
                            ? get_double(pump, "pump", "omega_bar_p_rad_s")
                            : omega_from_wavelength_nm(get_double(pump, "pump", "pump_wavelength_nm"));
  cc.pump.coherence_time = get_double(pump, "pump", "coherence_time_s");
  cc.pump.mean_photon_rate = get_double_or(pump, "pump", "mean_photon_rate", 1.0);
  const double default_phi_p = get_double_or(pump, "pump", "phi_p_rad", 0.0);
  if (!(cc.pump.omega_bar_p > 0.0)) throw ConfigError("pump: center frequency must be > 0");
  if (!(cc.pump.coherence_time > 0.0)) throw ConfigError("pump.coherence_time_s: must be > 0");

  cc.mode = parse_mode(root);

  // grid
  const json& grid = member(root, "", "grid");
  cc.grid.span = get_double(grid, "grid", "span_rad_s");
  cc.grid.points = static_cast<int>(get_int(grid, "grid", "points"));
  if (!(cc.grid.span > 0.0)) throw ConfigError("grid.span_rad_s: must be > 0");
  if (cc.grid.points < 16 || cc.grid.points % 2 == 0)
    throw ConfigError("grid.points: must be odd and >= 16 so the degeneracy point is on-grid");

  // segments
  const json& segments = member(root, "", "segments");
  if (!segments.is_array() || segments.empty())
    throw ConfigError("segments: expected a non-empty array");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string path = "segments[" + std::to_string(i) + "]";
    const json& s = segments[i];
    Medium m;
    m.kind = MediumKind::nonlinear;
    m.length = get_double(s, path, "length_m");
    if (!(m.length > 0.0)) throw ConfigError(join(path, "length_m") + ": must be > 0");
    m.k_qpm = get_double(s, path, "k_qpm_rad_m");
    m.profile = parse_dispersion(member(s, path, "dispersion"), join(path, "dispersion"));
    if (get_bool(s, path, "phase_matched")) {
      const double lhs = m.profile.pump_V.b0;
      const double rhs = m.profile.dc_H.b0 + m.profile.dc_V.b0 + m.k_qpm;
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs)))
        throw ConfigError(path + ": phase_matched requires b0_pump_V = b0_dc_H + b0_dc_V + k_qpm (got " +
                          std::to_string(lhs) + " vs " + std::to_string(rhs) + ")");
    }
    cc.segments.push_back(m);
    cc.segment_weights.push_back(get_double_or(s, path, "pump_weight", 1.0));
    if (!(cc.segment_weights.back() >= 0.0))
      throw ConfigError(join(path, "pump_weight") + ": must be >= 0");
  }

  // middles
  const json empty_array = json::array();
  const json& middles = root.contains("middles") ? member(root, "", "middles") : empty_array;
  if (!middles.is_array()) throw ConfigError("middles: expected an array");
  if (middles.size() + 1 != segments.size())
    throw ConfigError("middles: count must be segments.count - 1 (got " +
                      std::to_string(middles.size()) + " middles for " +
                      std::to_string(segments.size()) + " segments)");
  for (std::size_t i = 0; i < middles.size(); ++i) {
    const std::string path = "middles[" + std::to_string(i) + "]";
    const json& mj = middles[i];
    MiddleSection mid;
    mid.medium.kind = MediumKind::linear;
    mid.medium.k_qpm = 0.0;
    mid.medium.length = get_double(mj, path, "length_m");
    if (mid.medium.length < 0.0) throw ConfigError(join(path, "length_m") + ": must be >= 0");
    mid.medium.profile = parse_dispersion(member(mj, path, "dispersion"), join(path, "dispersion"));
    if (mj.contains("jones_dc")) {
      const json& jd = mj["jones_dc"];
      const std::string jp = join(path, "jones_dc");
      mid.jones_dc = make_unitary(get_double_or(jd, jp, "theta", 0.0),
                                  get_double_or(jd, jp, "phi1", 0.0),
                                  get_double_or(jd, jp, "phi2", 0.0));
    }
    mid.u4p_mag = 1.0;
    mid.phi_p = default_phi_p;
    if (mj.contains("jones_pump")) {
      const json& jp = mj["jones_pump"];
      const std::string jpp = join(path, "jones_pump");
      mid.u4p_mag = get_double_or(jp, jpp, "u4p_mag", 1.0);
      mid.phi_p = get_double_or(jp, jpp, "phi_p", default_phi_p);
      if (mid.u4p_mag < 0.0 || mid.u4p_mag > 1.0)
        throw ConfigError(join(jpp, "u4p_mag") + ": must lie in [0, 1]");
    }
    cc.middles.push_back(mid);
  }

  // per-command blocks, all optional
  if (root.contains("scaling")) {
    const json& sc = member(root, "", "scaling");
    const json& nv = member(sc, "scaling", "n_values");
    if (!nv.is_array() || nv.size() < 2)
      throw ConfigError("scaling.n_values: expected an array of at least two integers");
    rc.scaling_n_values.clear();
    for (std::size_t i = 0; i < nv.size(); ++i) {
      if (!nv[i].is_number_integer() || nv[i].get<long long>() < 1)
        throw ConfigError("scaling.n_values[" + std::to_string(i) + "]: expected an integer >= 1");
      rc.scaling_n_values.push_back(static_cast<int>(nv[i].get<long long>()));
    }
  }
  if (root.contains("tomography")) {
    const json& t = member(root, "", "tomography");
    const long long pairs = get_int(t, "tomography", "total_pairs");
    if (pairs < 1) throw ConfigError("tomography.total_pairs: must be >= 1");
    rc.tomography_total_pairs = static_cast<std::uint64_t>(pairs);
  }
  rc.spectrometer.dispersion_length_ps_per_nm = 340.0;
  rc.spectrometer.coincidence_window_ps = 256.0;
  rc.spectrometer.reference_wavelength_nm = wavelength_nm_from_omega(0.5 * cc.pump.omega_bar_p);
  if (root.contains("spectrometer")) {
    const json& sp = member(root, "", "spectrometer");
    rc.spectrometer.dispersion_length_ps_per_nm = get_double_or(
        sp, "spectrometer", "dispersion_length_ps_per_nm", rc.spectrometer.dispersion_length_ps_per_nm);
    rc.spectrometer.coincidence_window_ps =
        get_double_or(sp, "spectrometer", "coincidence_window_ps", rc.spectrometer.coincidence_window_ps);
    rc.spectrometer.reference_wavelength_nm = get_double_or(
        sp, "spectrometer", "reference_wavelength_nm", rc.spectrometer.reference_wavelength_nm);
    try {
      rc.spectrometer.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("spectrometer: ") + e.what());
    }
  }
  if (root.contains("theta_grid")) {
    const json& tg = member(root, "", "theta_grid");
    rc.theta_points = static_cast<int>(get_int(tg, "theta_grid", "points"));
    if (rc.theta_points < 2) throw ConfigError("theta_grid.points: must be >= 2");
    rc.theta_max = get_double_or(tg, "theta_grid", "max_rad", rc.theta_max);
    if (!(rc.theta_max > 0.0)) throw ConfigError("theta_grid.max_rad: must be > 0");
  }

  try {
    cc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config invalid: ") + e.what());
  }
  return rc;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_root(root);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_hex(ss.str());
}

}  // namespace cascade

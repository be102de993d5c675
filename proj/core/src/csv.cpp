#include "cascade/csv.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace cascade {

std::string sci9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string spectrum_csv(const SpectrumTable& t) {
  std::ostringstream os;
  os << "detuning_rad_s,wavelength_nm,S_HH,S_HV,S_VH,S_VV,S_total\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double wl = wavelength_nm_from_omega(0.5 * t.omega_bar_p + t.detuning[i]);
    os << sci9(t.detuning[i]) << ',' << sci9(wl) << ',' << sci9(t.s_hh[i]) << ','
       << sci9(t.s_hv[i]) << ',' << sci9(t.s_vh[i]) << ',' << sci9(t.s_vv[i]) << ','
       << sci9(t.s_total[i]) << '\n';
  }
  return os.str();
}

std::string histogram_csv(const TimeHistogram& h) {
  std::ostringstream os;
  os << "t_ps,counts_density\n";
  for (std::size_t k = 0; k < h.bins(); ++k)
    os << sci9(h.bin_center(k)) << ',' << sci9(h.total[k]) << '\n';
  return os.str();
}

std::string concurrence_map_csv(const std::vector<ConcurrencePoint>& map, double omega_bar_p) {
  std::ostringstream os;
  os << "wavelength_nm,concurrence\n";
  for (const ConcurrencePoint& p : map) {
    const double wl = wavelength_nm_from_omega(0.5 * omega_bar_p + p.det_a);
    os << sci9(wl) << ',' << sci9(p.concurrence) << '\n';
  }
  return os.str();
}

std::string concurrence_theta_csv(const std::vector<ConcurrenceTheta>& curve) {
  std::ostringstream os;
  os << "theta_rad,concurrence\n";
  for (const ConcurrenceTheta& p : curve)
    os << sci9(p.theta) << ',' << sci9(p.concurrence) << '\n';
  return os.str();
}

std::string counts_csv(const CountRecord& record) {
  const ProjectorSet set = ProjectorSet::standard16();
  std::ostringstream os;
  os << "setting,expected,count\n";
  for (int i = 0; i < 16; ++i)
    os << set.labels[i] << ',' << sci9(record.expected[i]) << ',' << record.counts[i] << '\n';
  return os.str();
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "state,fidelity,concurrence,purity,model_fidelity,model_concurrence,model_purity\n";
  for (const Table1Row& r : rows) {
    os << r.state << ',' << sci9(r.fidelity) << ',' << sci9(r.concurrence) << ','
       << sci9(r.purity) << ',' << sci9(r.model_fidelity) << ',' << sci9(r.model_concurrence)
       << ',' << sci9(r.model_purity) << '\n';
  }
  return os.str();
}

std::string scaling_csv(const std::vector<std::pair<std::string, ScalingResult>>& by_mode) {
  std::ostringstream os;
  os << "mode,n,brightness,fwhm\n";
  for (const auto& [mode, result] : by_mode)
    for (const ScalingRow& r : result.rows)
      os << mode << ',' << r.n << ',' << sci9(r.brightness) << ',' << sci9(r.fwhm) << '\n';
  return os.str();
}

std::string scaling_slopes_csv(const std::vector<std::pair<std::string, ScalingResult>>& by_mode) {
  std::ostringstream os;
  os << "mode,brightness_slope,fwhm_slope\n";
  for (const auto& [mode, result] : by_mode)
    os << mode << ',' << sci9(result.brightness_slope) << ',' << sci9(result.fwhm_slope) << '\n';
  return os.str();
}

std::string polstate_json(const PolDensityMatrix& rho) {
  nlohmann::json j;
  j["basis"] = {"HH", "HV", "VH", "VV"};
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c)
      row.push_back({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()});
    rows.push_back(row);
  }
  j["rho"] = rows;
  j["metrics"]["concurrence"] = rho.concurrence();
  j["metrics"]["purity"] = rho.purity();
  j["metrics"]["fidelity_to_psi_plus"] = rho.fidelity(psi_plus());
  return j.dump(2) + "\n";
}

}  // namespace cascade

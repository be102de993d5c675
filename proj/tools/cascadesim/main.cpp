// cascadesim: spectral and polarization properties of photon pairs from
// cascaded nonlinear segments, one subcommand per experiment.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/config.hpp"
#include "cascade/csv.hpp"
#include "cascade/errors.hpp"
#include "cascade/polarization.hpp"
#include "cascade/spectrometer.hpp"
#include "cascade/tomography.hpp"

namespace fs = std::filesystem;
using namespace cascade;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int grid_points = 0;  // 0 = keep the config's value
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Config file (JSON)")->required();
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--seed", opts.seed, "Seed for count sampling");
  cmd->add_option("--grid-points", opts.grid_points, "Override grid.points (odd, >= 16)");
  cmd->add_flag("--strict", opts.strict, "Grid-doubling convergence check on brightness");
}

// All file contents are produced before anything touches the disk, so a
// failed run leaves no partial outputs behind.
struct StagedOutputs {
  std::vector<std::pair<std::string, std::string>> files;
  nlohmann::json manifest_extras = nlohmann::json::object();
  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

void write_all(const StagedOutputs& staged, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::vector<fs::path> written;
  for (const auto& [name, content] : staged.files) {
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << content) || !out.flush()) {
      for (const fs::path& q : written) fs::remove(q, ec);
      throw ConfigError("cannot write output file: " + p.string());
    }
    written.push_back(p);
  }
}

void strict_brightness_check(const CascadeConfig& cfg) {
  const double b1 = brightness(joint_spectrum(cfg));
  CascadeConfig doubled = cfg;
  doubled.grid.points = 2 * (cfg.grid.points - 1) + 1;
  const double b2 = brightness(joint_spectrum(doubled));
  const double rel = std::abs(b2 - b1) / std::max(std::abs(b2), 1e-300);
  if (rel >= 1e-4)
    throw NumericalError("brightness not converged: grid doubling changed it by " +
                         std::to_string(rel));
}

const char* mode_name(PumpMode m) {
  switch (m) {
    case PumpMode::coherent: return "coherent";
    case PumpMode::incoherent: return "incoherent";
    default: return "partial";
  }
}

using CommandBody = std::function<void(RunConfig&, const CommonOpts&, StagedOutputs&)>;

int run_command(const std::string& command, const CommonOpts& opts, const CommandBody& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    RunConfig rc = parse_config(opts.config_path);
    if (opts.grid_points > 0) {
      if (opts.grid_points < 16 || opts.grid_points % 2 == 0)
        throw ConfigError("--grid-points must be odd and >= 16");
      rc.cascade.grid.points = opts.grid_points;
    }

    StagedOutputs staged;
    body(rc, opts, staged);
    write_all(staged, opts.out_dir);

    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config_hash"] = config_hash(opts.config_path);
    manifest["seed"] = opts.seed;
    manifest["mode"] = mode_name(rc.cascade.mode);
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [name, content] : staged.files) outs.push_back(name);
    manifest["outputs"] = outs;
    for (auto& [key, value] : staged.manifest_extras.items()) manifest[key] = value;
    manifest["tool_version"] = kVersion;
    manifest["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream mf(fs::path(opts.out_dir) / "run_manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

void cmd_spectrum(RunConfig& rc, const CommonOpts& opts, StagedOutputs& staged) {
  if (opts.strict) strict_brightness_check(rc.cascade);
  const SpectrumTable table = joint_spectrum(rc.cascade);
  staged.add("spectrum.csv", spectrum_csv(table));
  staged.manifest_extras["brightness"] = brightness(table);
  try {
    const SpectrumMetrics m = spectrum_metrics(table);
    staged.manifest_extras["fwhm_rad_s"] = m.fwhm;
    staged.manifest_extras["visibility"] = m.visibility;
    if (m.mode_spacing) staged.manifest_extras["mode_spacing_rad_s"] = *m.mode_spacing;
  } catch (const NumericalError&) {
    // metrics are undefined for featureless spectra; the CSV still stands
  }
}

void cmd_scaling(RunConfig& rc, const CommonOpts& opts, StagedOutputs& staged) {
  if (opts.strict) strict_brightness_check(rc.cascade);
  std::vector<std::pair<std::string, ScalingResult>> by_mode;
  by_mode.emplace_back("coherent",
                       scaling_study(rc.cascade, rc.scaling_n_values, PumpMode::coherent));
  by_mode.emplace_back("incoherent",
                       scaling_study(rc.cascade, rc.scaling_n_values, PumpMode::incoherent));
  staged.add("scaling.csv", scaling_csv(by_mode));
  staged.add("scaling_slopes.csv", scaling_slopes_csv(by_mode));
}

void cmd_polstate(RunConfig& rc, const CommonOpts&, StagedOutputs& staged) {
  staged.add("polstate.json", polstate_json(density_matrix_full(rc.cascade)));
}

void cmd_concurrence_map(RunConfig& rc, const CommonOpts&, StagedOutputs& staged) {
  staged.add("concurrence_map.csv",
             concurrence_map_csv(concurrence_map(rc.cascade), rc.cascade.pump.omega_bar_p));
}

void cmd_concurrence_vs_theta(RunConfig& rc, const CommonOpts&, StagedOutputs& staged) {
  std::vector<double> thetas(rc.theta_points);
  for (int i = 0; i < rc.theta_points; ++i)
    thetas[i] = rc.theta_max * static_cast<double>(i) / (rc.theta_points - 1);
  staged.add("concurrence_vs_theta.csv",
             concurrence_theta_csv(concurrence_vs_rotation(rc.cascade, thetas)));
}

void cmd_tomography(RunConfig& rc, const CommonOpts& opts, StagedOutputs& staged) {
  std::vector<std::pair<std::string, PolDensityMatrix>> models;

  auto single_segment = [&](std::size_t idx) {
    CascadeConfig cfg = rc.cascade;
    cfg.segments = {rc.cascade.segments[idx]};
    cfg.segment_weights = {1.0};
    cfg.middles.clear();
    return density_matrix_full(cfg);
  };
  models.emplace_back("segment1", single_segment(0));
  if (rc.cascade.segments.size() >= 2) {
    models.emplace_back("segment2", single_segment(1));

    CascadeConfig identity_cfg = rc.cascade;
    for (MiddleSection& m : identity_cfg.middles) m.jones_dc = JonesMatrix{};
    models.emplace_back("cascade_theta0", density_matrix_full(identity_cfg));

    CascadeConfig rotated_cfg = rc.cascade;
    for (MiddleSection& m : rotated_cfg.middles) m.jones_dc = make_unitary(kPi / 4.0, 0.0, 0.0);
    models.emplace_back("cascade_theta45", density_matrix_full(rotated_cfg));
  }

  const Table1Result result = table1_pipeline(models, rc.tomography_total_pairs, opts.seed);
  staged.add("tomography_table.csv", table1_csv(result.rows));
  for (std::size_t i = 0; i < result.rows.size(); ++i)
    staged.add("counts_" + result.rows[i].state + ".csv", counts_csv(result.records[i]));
}

void cmd_spectrometer(RunConfig& rc, const CommonOpts&, StagedOutputs& staged) {
  const SpectrumTable spectrum = joint_spectrum(rc.cascade);
  const TimeHistogram histogram = map_to_histogram(spectrum, rc.spectrometer);
  staged.add("histogram.csv", histogram_csv(histogram));
  staged.add("recovered_spectrum.csv", spectrum_csv(recover_spectrum(histogram, rc.spectrometer)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascaded photon-pair source simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Entry {
    const char* name;
    const char* desc;
    CommandBody body;
    CommonOpts opts;
    CLI::App* cmd = nullptr;
  };
  std::vector<Entry> entries;
  entries.push_back({"spectrum", "Joint spectral intensity vs signal detuning", cmd_spectrum, {}});
  entries.push_back({"scaling", "Brightness/bandwidth scaling vs segment count", cmd_scaling, {}});
  entries.push_back({"polstate", "Full-band polarization density matrix", cmd_polstate, {}});
  entries.push_back(
      {"concurrence-map", "Wavelength-resolved concurrence", cmd_concurrence_map, {}});
  entries.push_back({"concurrence-vs-theta", "Concurrence vs middle-section rotation",
                     cmd_concurrence_vs_theta, {}});
  entries.push_back(
      {"tomography", "Simulated quantum state tomography pipeline", cmd_tomography, {}});
  entries.push_back({"spectrometer", "Dispersive-fiber spectrometer forward/inverse model",
                     cmd_spectrometer, {}});
  for (Entry& e : entries) {
    e.cmd = app.add_subcommand(e.name, e.desc);
    add_common(e.cmd, e.opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are config errors
  }

  for (Entry& e : entries)
    if (e.cmd->parsed()) return run_command(e.name, e.opts, e.body);
  return 2;
}

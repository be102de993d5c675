#ifndef CASCADE_CONFIG_HPP
#define CASCADE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cascade/biphoton.hpp"
#include "cascade/errors.hpp"
#include "cascade/spectrometer.hpp"

namespace cascade {

/// Everything a run needs: the cascade itself plus per-command knobs with
/// sensible defaults when their blocks are absent from the file.
struct RunConfig {
  CascadeConfig cascade;
  std::vector<int> scaling_n_values = {1, 2, 3, 4, 6, 8};
  std::uint64_t tomography_total_pairs = 100000;
  SpectrometerModel spectrometer;  // reference wavelength defaults to degeneracy
  int theta_points = 50;
  double theta_max = kPi / 4.0;
};

/// Loads and fully validates a JSON config. Every failure names the
/// offending key path. Throws ConfigError.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory JSON document (used by the tests).
RunConfig parse_config_text(const std::string& text);

/// FNV-1a 64-bit over the raw file bytes, as a fixed-width hex string;
/// stable across platforms for identical files.
std::string config_hash(const std::string& path);
std::string fnv1a_hex(const std::string& bytes);

}  // namespace cascade

#endif

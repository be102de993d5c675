#ifndef CASCADE_RNG_HPP
#define CASCADE_RNG_HPP

#include <cstdint>
#include <random>

namespace cascade {

/// Deterministic random stream on top of std::mt19937_64 with fixed
/// extraction rules, so sampled counts are bit-reproducible across
/// platforms (the std distribution objects are not portable).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; values are produced in pairs.
  double normal();

  /// Poisson sample: sequential inversion for mean < 30, normal
  /// approximation with continuity correction above.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cascade

#endif

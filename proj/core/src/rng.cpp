#include "cascade/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "cascade/optics.hpp"

namespace cascade {

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

std::uint64_t SeededRng::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double u = uniform01();
    double p = std::exp(-mean);
    double cum = p;
    std::uint64_t k = 0;
    while (u > cum) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
      if (k > 2000) break;  // cumulative has saturated in double precision
    }
    return k;
  }
  const double x = std::floor(mean + std::sqrt(mean) * normal() + 0.5);
  return x <= 0.0 ? 0 : static_cast<std::uint64_t>(x);
}

}  // namespace cascade

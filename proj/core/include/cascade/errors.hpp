#ifndef CASCADE_ERRORS_HPP
#define CASCADE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cascade {

/// Bad or inconsistent user input (config files, CLI usage). Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation left its validity envelope (non-physical matrix, failed
/// convergence, degenerate metric). Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cascade

#endif

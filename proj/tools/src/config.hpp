#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkink/continuation.hpp"
#include "hkink/eigenpair.hpp"
#include "hkink/extend.hpp"
#include "hkink/monotone.hpp"

namespace hkink::cli {

/// Bad or unreadable configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FarfieldSettings {
  std::vector<double> a_values{0.0, 0.3, 0.6, 0.9, 1.0};
  double rmax = 60.0;
  double step = 1e-3;
};

struct PlanarSettings {
  int directions = 64;
  int pairs = 512;
  std::uint64_t seed = 12345;
};

struct VerifySettings {
  double residual_tol = 1e-6;  ///< max |L v + f(v)| away from the seam
  int group_samples = 1000;
  std::uint64_t seed = 7;
};

struct RunConfig {
  int n = 1;
  std::string nonlinearity = "cubic";
  EigenGridPolicy eigen_grid{};
  EigenConfig eigen{};
  SolveConfig solver{};
  MonotoneConfig monotone{};
  /// Multiples of R0, strictly increasing, first >= 1.
  std::vector<double> schedule{2.0, 4.0, 8.0};
  bool warm_start = false;
  std::vector<double> probes{0.0, 1.0, 2.0};
  PlanarSettings planar{};
  PotentialQuadrature newton{};
  FarfieldSettings farfield{};
  VerifySettings verify{};
  std::filesystem::path output = "out";
};

/// Parses a JSON config; missing keys keep their defaults, unknown keys and
/// type or range errors throw ConfigError with the offending field or line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace hkink::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gibbs/system.hpp"

namespace gibbs {

/// Run parameters a config file may pin; command-line flags override them.
struct RunDefaults {
  std::size_t N = 64;
  std::uint64_t T = 1'000'000;
  std::uint64_t T0 = 10'000;
  unsigned replicas = 8;
  std::uint64_t seed = 0;
  std::size_t M = 200;
  std::size_t quad_points = 16;
};

/// A parsed system config document.
///
/// JSON with exactly one of
///   "preset":   {"name": "cantor", "alpha": 0.5 | "1/pi", "weights": [w1, w2]}
///               {"name": "cantor", "r": 0.25, ...}
///               {"name": "gauss", "digits": [2, 3], "potential": "neg_geometric"}
///   "branches": [{"map": "x/3 - 2/3", "weight": "log(1/2)", "label": "a"}, ...]
/// plus optional "name" and "defaults" {N, T, T0, replicas, seed, M, quad_points}.
/// Numeric preset parameters may be numbers or constant expressions.
struct SystemConfig {
  IFSSystem system;
  RunDefaults defaults;
  /// Contraction ratio when the system is a two-branch Cantor preset with
  /// equal weights, for which the closed-form Fourier transform exists.
  std::optional<double> cantor_ratio;
  /// Normalised document text; stable key for caching.
  std::string canonical;
};

/// Throws ConfigError (expression syntax errors included).
SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::filesystem::path& path);

}  // namespace gibbs

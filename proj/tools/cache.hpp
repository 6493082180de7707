#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "gibbs/config.hpp"
#include "gibbs/spectral.hpp"

namespace gibbs::cli {

std::uint64_t fnv1a(std::string_view text);

/// $GIBBS_CACHE_DIR, else $XDG_CACHE_HOME/gibbs, else ~/.cache/gibbs.
std::filesystem::path default_cache_dir();

/// JSON sidecar store for spectral data keyed by (config, N).  An empty
/// directory disables caching.  Unreadable or stale entries are recomputed.
class SpectralCache {
 public:
  explicit SpectralCache(std::optional<std::filesystem::path> dir)
      : dir_(std::move(dir)) {}

  SpectralData get(const SystemConfig& config, std::size_t N) const;

  std::filesystem::path entry_path(const SystemConfig& config,
                                   std::size_t N) const;

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace gibbs::cli

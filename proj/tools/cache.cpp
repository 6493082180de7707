#include "cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "gibbs/error.hpp"
#include "gibbs/transfer.hpp"

namespace gibbs::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

fs::path default_cache_dir() {
  if (const char* d = std::getenv("GIBBS_CACHE_DIR"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) {
    return fs::path(d) / "gibbs";
  }
  if (const char* d = std::getenv("HOME"); d && *d) {
    return fs::path(d) / ".cache" / "gibbs";
  }
  return {};
}

fs::path SpectralCache::entry_path(const SystemConfig& config,
                                   std::size_t N) const {
  const auto key = fnv1a(fmt::format("{}\n{}", config.canonical, N));
  return *dir_ / fmt::format("spectral-{:016x}.json", key);
}

namespace {

std::optional<SpectralData> read_entry(const fs::path& path,
                                       const SystemConfig& config,
                                       std::size_t N) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.value("config", std::string()) != config.canonical) return std::nullopt;
    SpectralData data = spectral_from_json(doc.at("spectral"));
    if (data.size() != N) return std::nullopt;
    return data;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_entry(const fs::path& path, const SystemConfig& config,
                 const SpectralData& data) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) return;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    nlohmann::json doc = {{"config", config.canonical},
                          {"spectral", to_json(data)}};
    out << doc.dump();
    if (!out) return;
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace

SpectralData SpectralCache::get(const SystemConfig& config,
                                std::size_t N) const {
  if (dir_ && !dir_->empty()) {
    if (auto hit = read_entry(entry_path(config, N), config, N)) return *hit;
  }
  SpectralData data = leading_eigentriple(assemble(config.system, ChebGrid(N)));
  if (dir_ && !dir_->empty()) write_entry(entry_path(config, N), config, data);
  return data;
}

}  // namespace gibbs::cli

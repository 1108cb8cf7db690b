#pragma once

// Content-addressed store for colength computations.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hk/poly.hpp"

namespace hk {

struct CacheValue {
  std::uint64_t colength = 0;
  std::uint64_t basis_size = 0;
  double seconds = 0.0;
};

// Canonical key text: field spec, variables, sorted generator strings, q.
std::string cache_key(const Ring& ring, const std::vector<Polynomial>& gens,
                      std::uint64_t q);
std::uint64_t fnv1a64(const std::string& s) noexcept;

class ColengthCache {
 public:
  virtual ~ColengthCache() = default;
  virtual std::optional<CacheValue> get(const std::string& key) = 0;
  virtual void put(const std::string& key, const CacheValue& value) = 0;
};

// One file per entry, named by the key hash. Each file stores the full key
// so hash collisions read as misses; unreadable files are ignored.
class DiskCache : public ColengthCache {
 public:
  explicit DiskCache(std::filesystem::path dir);
  // --cache-dir, else $HK_CACHE_DIR, else $XDG_CACHE_HOME/hk, else ~/.cache/hk.
  static std::filesystem::path default_dir(const std::string& flag_value = "");

  std::optional<CacheValue> get(const std::string& key) override;
  void put(const std::string& key, const CacheValue& value) override;
  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }

 private:
  std::filesystem::path entry_path(const std::string& key) const;
  std::filesystem::path dir_;
  std::mutex mu_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace hk

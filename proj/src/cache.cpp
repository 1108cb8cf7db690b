#include "hk/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace hk {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string cache_key(const Ring& ring, const std::vector<Polynomial>& gens, std::uint64_t q) {
  std::vector<std::string> g;
  for (const auto& p : gens)
    if (!p.is_zero()) g.push_back(p.monic().to_string());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::ostringstream os;
  os << "field=" << ring.field()->spec().to_string() << ";vars=";
  for (std::size_t i = 0; i < ring.nvars(); ++i) os << (i ? "," : "") << ring.vars()[i];
  const auto kind = ring.order().kind();
  os << ";order="
     << (kind == MonomialOrder::Kind::lex ? "lex" : kind == MonomialOrder::Kind::degrevlex ? "degrevlex" : "negdegrevlex");
  os << ";q=" << q << ";gens=";
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "|" : "") << g[i];
  return os.str();
}

DiskCache::DiskCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
}

fs::path DiskCache::default_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("HK_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "hk";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "hk";
  return fs::temp_directory_path() / "hk-cache";
}

fs::path DiskCache::entry_path(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.entry",
                static_cast<unsigned long long>(fnv1a64(key)));
  return dir_ / name;
}

std::optional<CacheValue> DiskCache::get(const std::string& key) {
  std::ifstream in(entry_path(key));
  std::string magic, stored, values;
  CacheValue v;
  bool ok = false;
  if (in && std::getline(in, magic) && magic == "hk-cache-v1" && std::getline(in, stored) &&
      stored == key && std::getline(in, values)) {
    std::istringstream vs(values);
    std::string end;
    ok = static_cast<bool>(vs >> v.colength >> v.basis_size >> v.seconds >> end) && end == "end";
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (!ok) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return v;
}

void DiskCache::put(const std::string& key, const CacheValue& value) {
  const fs::path target = entry_path(key);
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << "hk-cache-v1\n" << key << "\n"
        << value.colength << " " << value.basis_size << " " << value.seconds << " end\n";
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace hk

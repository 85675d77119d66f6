#pragma once

// Content-addressed result cache: keys are hashes of the canonicalized
// diagram plus the operation name and parameters, values are JSON documents
// stored one file per key.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "stacklab/canonical.hpp"

namespace stacklab {

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string cache_key(const std::string& op, const VirtualDiagram& d,
                             const std::string& params) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(op + "|" + params, canonical_hash(d))));
  return op + "-" + buf;
}

class Cache {
 public:
  Cache() = default;
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)), enabled_(true) {}

  bool enabled() const { return enabled_; }

  std::optional<nlohmann::json> get(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
      return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;  // corrupt entry: recompute
    }
  }

  void put(const std::string& key, const nlohmann::json& value) const {
    if (!enabled_) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    auto tmp = dir_ / (key + ".tmp");
    {
      std::ofstream out(tmp);
      out << value.dump();
    }
    std::filesystem::rename(tmp, dir_ / (key + ".json"), ec);
  }

 private:
  std::filesystem::path dir_;
  bool enabled_ = false;
};

}  // namespace stacklab

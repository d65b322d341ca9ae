#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hjhom {

/// Flat plain-text configuration: one `key = value` per line, '#' comments,
/// keys namespaced as e.g. env.lambda or solver.h.  Parse -> serialize ->
/// parse is the identity on the key/value map.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  std::string serialize() const;  // canonical: sorted keys, LF endings

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// FNV-1a hash of the canonical serialization, hex encoded; stamped into
  /// every CSV artifact so outputs are traceable to their configuration.
  std::string hash() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace hjhom

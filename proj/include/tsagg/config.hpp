#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsagg {

// Flat key=value configuration: one pair per line, '#' comments, blank lines
// ignored, later keys overwrite earlier ones.  Dotted keys act as section
// prefixes (sampler.n_iter=20000).
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  // Typed getters throw invalid_argument naming the key on absence or
  // malformed values; the _or variants return the fallback when absent.
  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  // Comma-separated values.
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  // Throws if any present key is not in the allowed set (typo protection).
  void require_known_keys(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace tsagg

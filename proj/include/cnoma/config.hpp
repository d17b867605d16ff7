#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cnoma {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Plain-text `key = value` files: one pair per line, '#' starts a comment,
// blank lines ignored. Duplicate keys are rejected so a typo cannot silently
// shadow an earlier setting.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(std::string_view text,
                                   const std::string& origin);

  bool has(const std::string& key) const;

  // Typed getters; all throw ConfigError naming the key on a missing value
  // or a parse failure. Reads are tracked so unknown_keys() can flag typos.
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  template <typename T, typename Getter>
  std::optional<T> maybe(const std::string& key, Getter getter) const {
    if (!has(key)) return std::nullopt;
    return (this->*getter)(key);
  }

  std::optional<double> maybe_double(const std::string& key) const;
  std::optional<std::string> maybe_string(const std::string& key) const;
  std::optional<std::uint64_t> maybe_u64(const std::string& key) const;
  std::optional<bool> maybe_bool(const std::string& key) const;

  // set/overwrite (CLI and environment overrides funnel through here)
  void set(const std::string& key, const std::string& value);

  // Keys present in the file that no getter ever touched.
  std::vector<std::string> unknown_keys() const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace cnoma

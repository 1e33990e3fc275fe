#ifndef MAXTAIL_CONFIG_HPP
#define MAXTAIL_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxtail/copula.hpp"

namespace maxtail {

// Plain-text `key = value` configuration, one key per line, `#` starts a
// comment. Keys are restricted to a fixed vocabulary (see known_keys()).
class Config {
 public:
  static Config parse(std::string_view text);
  // `key=value` pairs separated by ';' or ',' (command-line spec strings).
  static Config parse_inline(std::string_view text);

  // Overwrites any existing value.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;

  double get_double(const std::string& key, double fallback) const;
  std::optional<double> find_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

const std::vector<std::string>& known_keys();

// Builds the copula named by `family` (and `generator`/`theta` for
// archimedean). `survival = true` wraps the result in its survival copula.
// Missing or malformed keys throw ConfigParse; out-of-range values throw
// InvalidParameter.
CopulaSpec copula_from_config(const Config& config);

}  // namespace maxtail

#endif

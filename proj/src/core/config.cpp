#include "maxtail/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "maxtail/error.hpp"

namespace maxtail {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

bool is_known(const std::string& key) {
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void add_pair(std::map<std::string, std::string>& out, std::string_view item,
              const std::string& where) {
  const auto eq = item.find('=');
  if (eq == std::string_view::npos) {
    fail(ErrorCode::ConfigParse, where + ": expected `key = value`");
  }
  const std::string key(trim(item.substr(0, eq)));
  const std::string value(trim(item.substr(eq + 1)));
  if (key.empty()) fail(ErrorCode::ConfigParse, where + ": empty key");
  if (!is_known(key)) {
    fail(ErrorCode::ConfigParse, where + ": unknown key `" + key + "`");
  }
  if (value.empty()) {
    fail(ErrorCode::ConfigParse, where + ": empty value for `" + key + "`");
  }
  if (!out.emplace(key, value).second) {
    fail(ErrorCode::ConfigParse, where + ": duplicate key `" + key + "`");
  }
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    fail(ErrorCode::ConfigParse,
         "key `" + key + "`: `" + text + "` is not a finite number");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "family", "generator", "survival", "a", "b", "alpha", "gamma0",
      "gamma1", "theta", "q", "n", "seed", "umin_exp", "umax_exp",
      "per_decade", "scan_n", "xtol", "tie_tol", "threads", "mu", "sigma",
      "tail_index", "u", "v", "grid_n", "tol", "resolution", "path_points",
      "coupling"};
  return keys;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    add_pair(cfg.values_, line, "line " + std::to_string(line_no));
  }
  return cfg;
}

Config Config::parse_inline(std::string_view text) {
  Config cfg;
  std::size_t item_no = 0;
  while (!text.empty()) {
    const auto sep = text.find_first_of(";,");
    std::string_view item = trim(text.substr(0, sep));
    text = sep == std::string_view::npos ? std::string_view{} : text.substr(sep + 1);
    ++item_no;
    if (item.empty()) continue;
    add_pair(cfg.values_, item, "item " + std::to_string(item_no));
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!is_known(key)) {
    fail(ErrorCode::ConfigParse, "unknown key `" + key + "`");
  }
  values_[key] = std::string(trim(value));
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Config::find_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return parse_double(key, *v);
}

double Config::get_double(const std::string& key, double fallback) const {
  return find_double(key).value_or(fallback);
}

std::int64_t Config::get_int(const std::string& key,
                             std::int64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::int64_t out = 0;
  const char* end = v->data() + v->size();
  const auto res = std::from_chars(v->data(), end, out);
  if (res.ec == std::errc() && res.ptr == end) return out;
  // Accept integral values written in floating notation, e.g. 2e6.
  const double d = parse_double(key, *v);
  if (d != std::floor(d) || std::abs(d) > 9.0e15) {
    fail(ErrorCode::ConfigParse,
         "key `" + key + "`: `" + *v + "` is not an integer");
  }
  return static_cast<std::int64_t>(d);
}

CopulaSpec copula_from_config(const Config& config) {
  const auto family = config.get("family");
  if (!family) fail(ErrorCode::ConfigParse, "missing key `family`");

  auto need = [&](const char* key) {
    const auto v = config.find_double(key);
    if (!v) {
      fail(ErrorCode::ConfigParse,
           "family `" + *family + "` requires key `" + key + "`");
    }
    return *v;
  };

  std::optional<CopulaSpec> spec;
  if (*family == "independence") {
    spec = CopulaSpec::independence();
  } else if (*family == "frechet_upper") {
    spec = CopulaSpec::frechet_upper();
  } else if (*family == "marshall_olkin") {
    spec = CopulaSpec::marshall_olkin(need("a"), need("b"));
  } else if (*family == "mixture_mo") {
    spec = CopulaSpec::mixture_mo(need("a"), need("b"));
  } else if (*family == "fgm") {
    spec = CopulaSpec::fgm(need("alpha"));
  } else if (*family == "generalized_clayton") {
    spec = CopulaSpec::generalized_clayton(need("gamma0"), need("gamma1"));
  } else if (*family == "clayton") {
    spec = CopulaSpec::clayton(need("theta"));
  } else if (*family == "archimedean") {
    const auto gen = config.get("generator");
    if (!gen) fail(ErrorCode::ConfigParse, "archimedean requires `generator`");
    if (*gen != "clayton") {
      fail(ErrorCode::ConfigParse, "unknown generator `" + *gen + "`");
    }
    spec = CopulaSpec::clayton(need("theta"));
  } else {
    fail(ErrorCode::ConfigParse, "unknown family `" + *family + "`");
  }

  if (const auto s = config.get("survival")) {
    if (*s == "true" || *s == "1") return survival_copula(*spec);
    if (*s != "false" && *s != "0") {
      fail(ErrorCode::ConfigParse, "`survival` must be true or false");
    }
  }
  return *spec;
}

}  // namespace maxtail

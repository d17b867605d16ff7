#include "cnoma/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace cnoma {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_text(std::string_view text,
                                          const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": expected 'key = value'";
      throw ConfigError(os.str());
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": empty key";
      throw ConfigError(os.str());
    }
    if (cfg.values_.count(key)) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": duplicate key '" << key << "'";
      throw ConfigError(os.str());
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(origin_ + ": missing key '" + key + "'");
  }
  consumed_.insert(key);
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + key + "' is not a number: '" + s +
                      "'");
  }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key) const {
  const std::string s = get_string(key);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(origin_ + ": key '" + key +
                      "' is not a nonnegative integer: '" + s + "'");
  }
  return v;
}

bool KeyValueConfig::get_bool(const std::string& key) const {
  std::string s = get_string(key);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(origin_ + ": key '" + key + "' is not a boolean: '" +
                    get_string(key) + "'");
}

std::vector<std::string> KeyValueConfig::get_string_list(
    const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string_view item =
        trim(std::string_view(s).substr(pos, comma == std::string::npos
                                                 ? s.size() - pos
                                                 : comma - pos));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) {
    throw ConfigError(origin_ + ": key '" + key + "' holds an empty list");
  }
  return out;
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : get_string_list(key)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": key '" + key +
                        "' holds a non-numeric entry: '" + item + "'");
    }
  }
  return out;
}

std::optional<double> KeyValueConfig::maybe_double(
    const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

std::optional<std::string> KeyValueConfig::maybe_string(
    const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_string(key);
}

std::optional<std::uint64_t> KeyValueConfig::maybe_u64(
    const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_u64(key);
}

std::optional<bool> KeyValueConfig::maybe_bool(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_bool(key);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::vector<std::string> KeyValueConfig::unknown_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (!consumed_.count(key)) out.push_back(key);
  }
  return out;
}

}  // namespace cnoma

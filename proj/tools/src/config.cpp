#include "paps_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "paps/error.hpp"

namespace paps::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

}  // namespace

double parse_number(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ConfigError("empty number");
  if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') {
    const double inner = parse_number(text.substr(5, text.size() - 6));
    if (inner < 0) throw ConfigError("sqrt of a negative number: '" + text + "'");
    return std::sqrt(inner);
  }
  std::string body = text;
  double factor = 1.0;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    body = body.substr(0, body.size() - 2);
    if (body.empty() || body == "+") return factor;
    if (body == "-") return -factor;
    if (body.back() == '*') body.pop_back();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != body.size()) throw ConfigError("not a number: '" + text + "'");
  return v * factor;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw ConfigError("expected a comma-separated list of numbers");
  return out;
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::stringstream in(text);
  std::string raw;
  std::string section;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", static_cast<int>(n));
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section)) throw ConfigError("bad section name '" + section + "'", static_cast<int>(n));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", static_cast<int>(n));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_name(key)) throw ConfigError("bad key '" + key + "'", static_cast<int>(n));
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", static_cast<int>(n));
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full)) {
      throw ConfigError("duplicate key '" + full + "' (first on line " +
                            std::to_string(cfg.entries_.at(full).line) + ")",
                        static_cast<int>(n));
    }
    cfg.entries_[full] = Entry{value, n};
    cfg.order_.push_back(full);
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

const Config::Entry& Config::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  it->second.used = true;
  return it->second;
}

std::string Config::string(const std::string& key) const { return entry(key).value; }

std::string Config::string(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

double Config::number(const std::string& key) const {
  const Entry& e = entry(key);
  try {
    return parse_number(e.value);
  } catch (const ConfigError& err) {
    throw ConfigError(key + ": " + err.what(), static_cast<int>(e.line));
  }
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::optional<double> Config::optional_number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

std::size_t Config::count(const std::string& key, std::size_t fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v < 0 || v != std::floor(v)) {
    throw ConfigError(key + " must be a nonnegative integer", static_cast<int>(line(key)));
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> Config::numbers(const std::string& key) const {
  const Entry& e = entry(key);
  try {
    return parse_numbers(e.value);
  } catch (const ConfigError& err) {
    throw ConfigError(key + ": " + err.what(), static_cast<int>(e.line));
  }
}

std::vector<double> Config::numbers(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? numbers(key) : fallback;
}

std::size_t Config::line(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

std::vector<std::string> Config::keys(const std::string& section) const {
  std::vector<std::string> out;
  const std::string prefix = section + ".";
  for (const auto& k : order_) {
    if (k.rfind(prefix, 0) == 0) out.push_back(k.substr(prefix.size()));
  }
  return out;
}

void Config::finish() const {
  for (const auto& k : order_) {
    const Entry& e = entries_.at(k);
    if (!e.used) throw ConfigError(origin_ + ": unknown key '" + k + "'", static_cast<int>(e.line));
  }
}

}  // namespace paps::cli

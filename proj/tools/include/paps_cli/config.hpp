#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace paps::cli {

/// Plain-text scenario file:
///
///   # comment
///   key = value          (top level)
///   [section]
///   key = value          (looked up as "section.key")
///
/// Every lookup marks the key as used; finish() rejects leftovers so typos
/// surface with their line number.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::optional<double> optional_number(const std::string& key) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  /// Line number of a key, 0 when absent.
  std::size_t line(const std::string& key) const;
  /// Keys of a section in file order, e.g. keys("nonlinearity").
  std::vector<std::string> keys(const std::string& section) const;

  /// Throws ConfigError for the first key never looked up.
  void finish() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    mutable bool used = false;
  };
  const Entry& entry(const std::string& key) const;

  std::string origin_;
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

/// Number with an optional trailing "pi" factor ("2pi", "0.5pi", "pi") or
/// "sqrt(x)". Throws ConfigError.
double parse_number(const std::string& text);
/// Comma-separated numbers.
std::vector<double> parse_numbers(const std::string& text);

}  // namespace paps::cli

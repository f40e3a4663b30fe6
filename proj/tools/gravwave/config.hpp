#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravwave::cli {

/// Error in a configuration file; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat "section.key = value" file. '#' starts a comment; blank lines are
/// ignored. Reals accept a trailing "pi" factor ("4pi", "100 * pi").
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  std::optional<double> real(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  std::optional<long long> integer(const std::string& key) const;
  /// Comma-separated list of reals.
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;

  /// Throws for the first key not in the allowed set.
  void reject_unknown(const std::set<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& key, const std::string& value);

}  // namespace gravwave::cli

#pragma once

#include "radonlp/vfcalc/operator_spec.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace radonlp::cli {

/// Config syntax or content error; `line` and `column` are 1-based, 0 when
/// unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line, column;
};

struct ConfigValue {
  std::string text;
  bool quoted = false;
  std::size_t column = 0;
};

struct ConfigEntry {
  std::string key;
  std::vector<ConfigValue> values;
  std::size_t line = 0;
};

struct ConfigSection {
  std::string name;
  std::size_t line = 0;
  std::vector<ConfigEntry> entries;

  bool has(const std::string& key) const;
  /// Throws ConfigError when missing or given more than once.
  const ConfigEntry& one(const std::string& key) const;
  std::vector<const ConfigEntry*> all(const std::string& key) const;
  /// Single bare or quoted value of a key, or `fallback` when absent.
  std::string scalar(const std::string& key, const std::string& fallback = "") const;
};

/// Line-oriented text:
///   # comment
///   [section]
///   key = value, "quoted value", ...
/// Sections with the same name merge. Throws ConfigError.
struct Config {
  std::vector<ConfigSection> sections;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section) const;
  /// Throws ConfigError when the section is absent.
  const ConfigSection& section(const std::string& name) const;
  ConfigSection& add(const std::string& name);
};

/// Quotes and escapes when the text is not a safe bare token.
std::string config_quote(const std::string& text);
/// Sections in order, keys in order, values joined by ", ".
std::string to_text(const Config& c);

/// [operator] plus optional [parameters] sections. Expressions are checked
/// against the kind's variables here, so errors carry the config position.
OperatorSpec operator_from_config(const Config& c);
void operator_to_config(const OperatorSpec& spec, Config& out);

/// Helpers shared by the command parameter sections.
double parse_real(const ConfigValue& v, std::size_t line);
std::uint64_t parse_unsigned(const ConfigValue& v, std::size_t line);
/// Comma list of reals, or a power-of-two range "2^a..2^b" stepping by one
/// exponent toward b.
std::vector<double> parse_radii(const std::string& text);
std::string format_real(double v);

}  // namespace radonlp::cli

#pragma once

#include "adpasmc/scenario.hpp"
#include "adpasmc/smc_airspeed.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adpasmc {

/// Invalid configuration. The message names the file/line or the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeyValue {
  std::string key;     // "section.name" or "name" for top-level keys
  std::string value;
  std::string origin;  // "file:line" or "--set"
};

/// Parses the key-value format:
///   # comment            (also ';')
///   top_level = value
///   [section]
///   name = value         -> key "section.name"
/// Duplicate keys within one text are an error.
std::vector<KeyValue> parse_kv_text(std::string_view text, const std::string& source);
std::vector<KeyValue> read_kv_file(const std::string& path);
/// "section.name=value" from a command-line override.
KeyValue parse_override(std::string_view assignment);

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

ScenarioConfig build_scenario(const std::vector<KeyValue>& entries);
ScenarioConfig load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});
/// Every key with its effective value, in canonical order.
KeyValueList describe(const ScenarioConfig& cfg);
std::vector<std::string> scenario_keys();

struct SisoDemoConfig {
  std::string name = "siso_demo";
  SisoDemoOptions options;
  int decimate = 1;
  AirspeedSmcParams params = AirspeedSmcParams::siso_demo();

  void validate() const;
};

SisoDemoConfig build_siso_demo(const std::vector<KeyValue>& entries);
/// Empty path means defaults plus overrides.
SisoDemoConfig load_siso_demo(const std::string& path, const std::vector<std::string>& overrides = {});
KeyValueList describe(const SisoDemoConfig& cfg);

}  // namespace adpasmc

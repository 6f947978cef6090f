#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alloy/records.hpp"
#include "alloy/wegner.hpp"

namespace alloy {

// Raised for anything wrong with a config document itself (parse failures,
// missing or malformed fields).  The CLI maps it to exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnergySpec {
  bool median_pilot = true;  // resolve E from a pilot spectrum
  double value = 0.0;        // used when median_pilot is false
};

struct OutputSpec {
  std::optional<std::string> dir;  // default: env ALLOY_OUT_DIR, then ./records
  RecordFormat format = RecordFormat::Jsonl;
};

// One experiment, fully determined: hashing the canonical serialization
// identifies the record file it appends to.
struct ExperimentConfig {
  static constexpr const char* kSchema = "alloy.config.v1";

  std::string experiment;  // bound-check | epsilon-sweep | volume-sweep |
                           // ids | large-disorder | transform-verify
  ModelSpec model;
  std::vector<int> L_list;  // volume-sweep
  Construction construction = Construction::Auto;
  double epsilon = 0.05;
  std::vector<double> epsilon_list;  // epsilon-sweep
  EnergySpec energy;
  std::vector<double> energy_grid;  // ids
  int disorder_exponent = 2;        // large-disorder p
  std::int64_t samples = 2000;
  std::uint64_t seed = 1;
  OutputSpec output;

  void validate() const;  // kind-specific required fields
  std::string canonical_json() const;
  std::uint64_t config_hash() const;  // FNV-1a over canonical_json

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
};

const std::vector<std::string>& experiment_kinds();

}  // namespace alloy

#pragma once

#include <string>
#include <vector>

#include "alloy/config.hpp"
#include "alloy/mc.hpp"
#include "alloy/records.hpp"

namespace alloy {

// Outcome of one experiment run.  exit_code follows the CLI contract:
// 0 all assertions passed, 1 an assertion or computation failed,
// 2 the config itself was unusable.
struct RunReport {
  int exit_code = 0;
  std::string failure;  // one-line JSON when exit_code != 0
  std::vector<std::string> notes;
  std::vector<ExperimentRecord> records;
};

RunReport run_experiment(const ExperimentConfig& config, Mode mode = Mode::OpenMP);

// Appends the records to the file keyed by the config hash inside the
// resolved output directory; returns the path written.
std::string write_records(const ExperimentConfig& config,
                          const std::vector<ExperimentRecord>& records);

std::string resolve_output_dir(const ExperimentConfig& config);

ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace alloy

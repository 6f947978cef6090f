#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace alloy {

// One Monte Carlo measurement with enough provenance to reproduce it.
// Serialized as versioned JSONL or CSV; the schema string changes whenever
// a field is added, renamed, or reinterpreted.
struct ExperimentRecord {
  static constexpr const char* kSchema = "alloy.record.v1";

  std::string experiment;  // operation that produced the record
  int d = 1;
  int L = 0;
  double epsilon = 0.0;
  double energy = 0.0;
  std::string density_id;
  std::string potential_id;
  std::string construction;
  double mc_estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  double theoretical_bound = 0.0;
  std::uint64_t master_seed = 0;
  std::uint64_t sub_seed = 0;

  std::string to_jsonl() const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

enum class RecordFormat { Jsonl, Csv };

std::string render_records(const std::vector<ExperimentRecord>& records,
                           RecordFormat format);

}  // namespace alloy

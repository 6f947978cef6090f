#include "alloy/records.hpp"

#include <sstream>

#include "json.hpp"

namespace alloy {

std::string ExperimentRecord::to_jsonl() const {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["experiment"] = experiment;
  j["d"] = d;
  j["L"] = L;
  j["epsilon"] = epsilon;
  j["energy"] = energy;
  j["density"] = density_id;
  j["potential"] = potential_id;
  j["construction"] = construction;
  j["mc_estimate"] = mc_estimate;
  j["std_error"] = std_error;
  j["n_samples"] = n_samples;
  j["theoretical_bound"] = theoretical_bound;
  j["master_seed"] = master_seed;
  j["sub_seed"] = sub_seed;
  return j.dump();
}

std::string ExperimentRecord::csv_header() {
  return "schema,experiment,d,L,epsilon,energy,density,potential,construction,"
         "mc_estimate,std_error,n_samples,theoretical_bound,master_seed,sub_seed";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string ExperimentRecord::to_csv_row() const {
  std::ostringstream out;
  out.precision(17);
  out << kSchema << ',' << csv_escape(experiment) << ',' << d << ',' << L << ','
      << epsilon << ',' << energy << ',' << csv_escape(density_id) << ','
      << csv_escape(potential_id) << ',' << csv_escape(construction) << ','
      << mc_estimate << ',' << std_error << ',' << n_samples << ','
      << theoretical_bound << ',' << master_seed << ',' << sub_seed;
  return out.str();
}

std::string render_records(const std::vector<ExperimentRecord>& records,
                           RecordFormat format) {
  std::ostringstream out;
  if (format == RecordFormat::Csv) out << ExperimentRecord::csv_header() << '\n';
  for (const auto& r : records)
    out << (format == RecordFormat::Csv ? r.to_csv_row() : r.to_jsonl()) << '\n';
  return out.str();
}

}  // namespace alloy

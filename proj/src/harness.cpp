#include "alloy/harness.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "alloy/spectral.hpp"
#include "alloy/transform.hpp"

namespace alloy {

namespace {

std::string fail_json(const std::string& stage, const std::string& experiment,
                      const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = message;
  j["stage"] = stage;
  if (!experiment.empty()) j["experiment"] = experiment;
  return j.dump();
}

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

double resolve_energy(const ExperimentConfig& cfg, Mode) {
  if (!cfg.energy.median_pilot) return cfg.energy.value;
  return median_pilot_energy(cfg.model, cfg.seed);
}

void run_transform_verify(const ExperimentConfig& cfg, RunReport& rep) {
  CoefficientField field = build_field(cfg.model.u, cfg.model.L, cfg.construction);
  VerifyResult res = verify_positive_combination(field, cfg.model.u, cfg.model.box());
  std::string min_str = res.exact ? rat_to_string(res.min_exact) : fmt(res.min_value);
  std::string delta_str =
      field.delta_exact ? rat_to_string(*field.delta_exact) : fmt(field.delta);
  rep.notes.push_back("min combination = " + min_str + ", delta = " + delta_str);
  rep.notes.push_back("field tag " + CoefficientField::tag_name(field.tag) +
                      ", sites " + std::to_string(field.weights.size()) +
                      ", sum|a| = " + fmt(to_double(field.sum_abs_weights())));

  ExperimentRecord rec;
  rec.experiment = cfg.experiment;
  rec.d = cfg.model.d;
  rec.L = cfg.model.L;
  rec.density_id = cfg.model.density.id();
  rec.potential_id = cfg.model.potential_id();
  rec.construction = CoefficientField::tag_name(field.tag);
  rec.mc_estimate = res.min_value;
  rec.std_error = 0.0;
  rec.n_samples = 0;
  rec.theoretical_bound = field.delta;
  rec.master_seed = cfg.seed;
  rec.sub_seed = cfg.seed;
  rep.records.push_back(std::move(rec));
}

void run_bound_check(const ExperimentConfig& cfg, Mode mode, RunReport& rep) {
  const double E = resolve_energy(cfg, mode);
  CoefficientField field = build_field(cfg.model.u, cfg.model.L, cfg.construction);
  McEstimate est = mc_expected_count(cfg.model, E - cfg.epsilon, E + cfg.epsilon,
                                     cfg.samples, cfg.seed, mode);
  BoundBreakdown bound = abstract_bound(
      {field, cfg.model.density, cfg.model.u, cfg.model.box(), cfg.epsilon, E});

  ExperimentRecord rec;
  rec.experiment = cfg.experiment;
  rec.d = cfg.model.d;
  rec.L = cfg.model.L;
  rec.epsilon = cfg.epsilon;
  rec.energy = E;
  rec.density_id = cfg.model.density.id();
  rec.potential_id = cfg.model.potential_id();
  rec.construction = CoefficientField::tag_name(field.tag);
  rec.mc_estimate = est.estimate;
  rec.std_error = est.std_error;
  rec.n_samples = est.n;
  rec.theoretical_bound = bound.value;
  rec.master_seed = cfg.seed;
  rec.sub_seed = cfg.seed;
  rep.records.push_back(std::move(rec));

  rep.notes.push_back("E = " + fmt(E) + ", estimate " + fmt(est.estimate) +
                      " +- " + fmt(est.std_error) + " (n=" +
                      std::to_string(est.n) + ")");
  rep.notes.push_back("bound " + fmt(bound.value) + " = (4 eps/delta) bv sum|a| rank");
  if (bound.literal_degenerate)
    rep.notes.push_back("literal degenerate form (c_u = 1): " +
                        fmt(*bound.literal_degenerate));
  if (bound.literal_nondegenerate)
    rep.notes.push_back("literal nondegenerate form: " +
                        fmt(*bound.literal_nondegenerate));
  if (bound.literal_lipschitz)
    rep.notes.push_back("literal Lipschitz form: " + fmt(*bound.literal_lipschitz));
  if (est.estimate > bound.value + 3.0 * est.std_error)
    throw std::runtime_error("Wegner bound violated");
}

void run_epsilon_sweep(const ExperimentConfig& cfg, Mode mode, RunReport& rep) {
  const double E = resolve_energy(cfg, mode);
  EpsilonSweep sweep = epsilon_sweep(cfg.model, cfg.construction, E,
                                     cfg.epsilon_list, cfg.samples, cfg.seed, mode);
  rep.records = sweep.records;
  rep.notes.push_back("E = " + fmt(E) + ", slope " + fmt(sweep.fit.slope) +
                      " +- " + fmt(sweep.fit.std_error));
  if (sweep.saturated)
    rep.notes.push_back("saturated: estimates flat across the sweep "
                        "(epsilon beyond the resolvable regime)");
}

void run_volume_sweep(const ExperimentConfig& cfg, Mode mode, RunReport& rep) {
  const double E = resolve_energy(cfg, mode);
  VolumeSweep sweep = volume_sweep(cfg.model, cfg.construction, E, cfg.epsilon,
                                   cfg.L_list, cfg.samples, cfg.seed, mode);
  rep.records = sweep.records;
  rep.notes.push_back("E = " + fmt(E) + ", fitted volume exponent " +
                      fmt(sweep.fit.slope) + " +- " + fmt(sweep.fit.std_error));
  rep.notes.push_back("bound inequality held at every size (3 sigma margin)");
}

void run_ids(const ExperimentConfig& cfg, Mode mode, RunReport& rep) {
  IDSCurve curve = ids_estimate(cfg.model, cfg.construction, cfg.energy_grid,
                                cfg.samples, cfg.seed, mode);
  rep.records = curve.records;
  rep.notes.push_back("Lipschitz slope bound " + fmt(curve.bound_slope));
  for (std::size_t i = 0; i + 1 < curve.values.size(); ++i) {
    const double lo = curve.values[i], hi = curve.values[i + 1];
    const double se = std::sqrt(curve.std_errors[i] * curve.std_errors[i] +
                                curve.std_errors[i + 1] * curve.std_errors[i + 1]);
    if (hi < lo - 2.0 * se - 1e-12)
      throw std::runtime_error("IDS curve is not monotone");
    const double dE = curve.energies[i + 1] - curve.energies[i];
    if (hi - lo > curve.bound_slope * dE + 3.0 * se + 1e-12)
      throw std::runtime_error("IDS increment exceeds the Lipschitz bound");
  }
  rep.notes.push_back("monotone, increments within the slope bound");
}

void run_large_disorder(const ExperimentConfig& cfg, Mode mode, RunReport& rep) {
  const double E = resolve_energy(cfg, mode);
  DisorderProbability res =
      large_disorder_probability(cfg.model, cfg.construction, E,
                                 cfg.disorder_exponent, cfg.samples, cfg.seed, mode);
  rep.records = res.records;
  rep.notes.push_back("E = " + fmt(E) + ", empirical " + fmt(res.empirical) +
                      " (hits " + std::to_string(res.hits) + "), upper95 " +
                      fmt(res.upper95));
  rep.notes.push_back("target max(bound, L^-p) = " + fmt(res.target) +
                      ", bound " + fmt(res.bound));
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, Mode mode) {
  RunReport rep;
  try {
    config.validate();
  } catch (const std::exception& e) {
    rep.exit_code = 2;
    rep.failure = fail_json("config", config.experiment, e.what());
    return rep;
  }
  try {
    if (config.experiment == "transform-verify")
      run_transform_verify(config, rep);
    else if (config.experiment == "bound-check")
      run_bound_check(config, mode, rep);
    else if (config.experiment == "epsilon-sweep")
      run_epsilon_sweep(config, mode, rep);
    else if (config.experiment == "volume-sweep")
      run_volume_sweep(config, mode, rep);
    else if (config.experiment == "ids")
      run_ids(config, mode, rep);
    else if (config.experiment == "large-disorder")
      run_large_disorder(config, mode, rep);
  } catch (const std::logic_error& e) {
    // precondition violations are config problems
    rep.exit_code = 2;
    rep.failure = fail_json("config", config.experiment, e.what());
  } catch (const std::exception& e) {
    rep.exit_code = 1;
    rep.failure = fail_json("run", config.experiment, e.what());
  }
  return rep;
}

std::string resolve_output_dir(const ExperimentConfig& config) {
  if (config.output.dir) return *config.output.dir;
  if (const char* env = std::getenv("ALLOY_OUT_DIR")) return env;
  return "records";
}

std::string write_records(const ExperimentConfig& config,
                          const std::vector<ExperimentRecord>& records) {
  namespace fs = std::filesystem;
  const fs::path dir = resolve_output_dir(config);
  fs::create_directories(dir);
  std::ostringstream name;
  name << config.experiment << '-' << std::hex << std::setw(16)
       << std::setfill('0') << config.config_hash()
       << (config.output.format == RecordFormat::Csv ? ".csv" : ".jsonl");
  const fs::path path = dir / name.str();

  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open record file: " + path.string());
  if (config.output.format == RecordFormat::Csv && fresh)
    out << ExperimentRecord::csv_header() << '\n';
  for (const auto& r : records)
    out << (config.output.format == RecordFormat::Csv ? r.to_csv_row()
                                                      : r.to_jsonl())
        << '\n';
  return path.string();
}

namespace {

ExperimentConfig base_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  return cfg;
}

SingleSitePotential product_dipole_2d() {
  std::map<Point, Rat> values;
  values[{0, 0}] = 1;
  values[{0, -1}] = -1;
  values[{-1, 0}] = -1;
  values[{-1, -1}] = 1;
  return SingleSitePotential::compact(2, std::move(values), "dipole-product");
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"transform-verify-1d", "diag-oracle-1d",     "master-1d-delta",
          "master-1d-dipole",    "master-2d-delta",    "degenerate-2d-product",
          "epsilon-sweep-oracle", "volume-sweep-oracle", "ids-oracle",
          "ids-alloy",           "large-disorder-L3",  "window-geometric",
          "window-dipole"};
}

ExperimentConfig preset(const std::string& name) {
  if (name == "transform-verify-1d") {
    auto cfg = base_config("transform-verify");
    cfg.model.d = 1;
    cfg.model.L = 20;
    cfg.model.u = SingleSitePotential::dipole_1d();
    cfg.construction = Construction::Monomial;
    return cfg;
  }
  if (name == "diag-oracle-1d") {
    auto cfg = base_config("bound-check");
    cfg.model.d = 1;
    cfg.model.L = 9;
    cfg.model.hopping = 0.0;
    cfg.epsilon = 0.15;
    cfg.energy = {false, 0.35};  // interval [0.2, 0.5]
    cfg.samples = 2000;
    return cfg;
  }
  if (name == "master-1d-delta") {
    auto cfg = base_config("bound-check");
    cfg.model.d = 1;
    cfg.model.L = 10;
    cfg.epsilon = 0.05;
    return cfg;
  }
  if (name == "master-1d-dipole") {
    auto cfg = base_config("bound-check");
    cfg.model.d = 1;
    cfg.model.L = 10;
    cfg.model.u = SingleSitePotential::dipole_1d();
    cfg.epsilon = 0.05;
    return cfg;
  }
  if (name == "master-2d-delta") {
    auto cfg = base_config("bound-check");
    cfg.model.d = 2;
    cfg.model.L = 6;
    cfg.model.u = SingleSitePotential::delta(2);
    cfg.epsilon = 0.05;
    return cfg;
  }
  if (name == "degenerate-2d-product") {
    auto cfg = base_config("bound-check");
    cfg.model.d = 2;
    cfg.model.L = 6;
    cfg.model.u = product_dipole_2d();
    cfg.construction = Construction::Monomial;
    cfg.epsilon = 0.05;
    return cfg;
  }
  if (name == "epsilon-sweep-oracle") {
    auto cfg = base_config("epsilon-sweep");
    cfg.model.d = 1;
    cfg.model.L = 9;
    cfg.model.hopping = 0.0;
    cfg.epsilon_list = {0.01, 0.02, 0.05, 0.1, 0.2};
    cfg.energy = {false, 0.35};
    cfg.samples = 5000;
    return cfg;
  }
  if (name == "volume-sweep-oracle") {
    auto cfg = base_config("volume-sweep");
    cfg.model.d = 1;
    cfg.model.hopping = 0.0;
    cfg.L_list = {4, 6, 9, 13};
    cfg.model.L = 4;
    cfg.epsilon = 0.05;
    cfg.energy = {false, 0.35};
    cfg.samples = 2000;
    return cfg;
  }
  if (name == "ids-oracle") {
    auto cfg = base_config("ids");
    cfg.model.d = 1;
    cfg.model.L = 9;
    cfg.model.hopping = 0.0;
    for (int i = 0; i < 21; ++i) cfg.energy_grid.push_back(-0.2 + 1.4 * i / 20.0);
    cfg.samples = 2000;
    return cfg;
  }
  if (name == "ids-alloy") {
    auto cfg = base_config("ids");
    cfg.model.d = 1;
    cfg.model.L = 9;
    for (int i = 0; i < 21; ++i) cfg.energy_grid.push_back(-2.5 + 6.0 * i / 20.0);
    cfg.samples = 2000;
    return cfg;
  }
  if (name == "large-disorder-L3") {
    auto cfg = base_config("large-disorder");
    cfg.model.d = 1;
    cfg.model.L = 3;
    cfg.model.density = CouplingDensity::uniform(0.0, 2e6);
    cfg.energy = {false, 1e6};
    cfg.disorder_exponent = 2;
    cfg.samples = 10000;
    return cfg;
  }
  if (name == "window-geometric") {
    auto cfg = base_config("transform-verify");
    cfg.model.d = 1;
    cfg.model.L = 8;
    cfg.model.u = SingleSitePotential::geometric({}, 1.0, 0.5, "geo-half");
    cfg.construction = Construction::ExpTruncated;
    return cfg;
  }
  if (name == "window-dipole") {
    auto cfg = base_config("transform-verify");
    cfg.model.d = 1;
    cfg.model.L = 8;
    cfg.model.u = SingleSitePotential::geometric({{0, Rat(1)}, {-1, Rat(-1)}},
                                                 0.0, 0.5, "dipole-zero-tail");
    cfg.construction = Construction::ExpTruncated;
    return cfg;
  }
  std::ostringstream msg;
  msg << "unknown preset: " << name << "; available:";
  for (const auto& n : preset_names()) msg << ' ' << n;
  throw ConfigError(msg.str());
}

}  // namespace alloy

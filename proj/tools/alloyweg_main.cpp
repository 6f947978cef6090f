#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "alloy/harness.hpp"

namespace {

struct Overrides {
  std::string format;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::string out;
  CLI::Option* format_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void attach(CLI::App* sub) {
    format_opt = sub->add_option("--format", format, "record format: csv or jsonl")
                     ->check(CLI::IsMember({"csv", "jsonl"}));
    seed_opt = sub->add_option("--seed", seed, "override the master seed");
    samples_opt = sub->add_option("--samples", samples, "override the sample count");
    out_opt = sub->add_option("--out", out, "output directory for records");
  }

  void apply(alloy::ExperimentConfig& cfg) const {
    if (format_opt->count())
      cfg.output.format = format == "csv" ? alloy::RecordFormat::Csv
                                          : alloy::RecordFormat::Jsonl;
    if (seed_opt->count()) cfg.seed = seed;
    if (samples_opt->count()) cfg.samples = samples;
    if (out_opt->count()) cfg.output.dir = out;
  }
};

int run_config(alloy::ExperimentConfig cfg, const Overrides& over, bool emit) {
  over.apply(cfg);
  if (emit) {
    std::cout << cfg.canonical_json() << "\n";
    return 0;
  }
  std::cout << "experiment " << cfg.experiment << " (config "
            << std::hex << cfg.config_hash() << std::dec << ")\n";
  alloy::RunReport rep = alloy::run_experiment(cfg);
  for (const auto& note : rep.notes) std::cout << "  " << note << "\n";
  if (!rep.records.empty()) {
    const std::string path = alloy::write_records(cfg, rep.records);
    std::cout << "  wrote " << rep.records.size() << " record"
              << (rep.records.size() == 1 ? "" : "s") << " to " << path << "\n";
  }
  if (rep.exit_code == 0) {
    std::cout << "  ok\n";
  } else {
    std::cout << rep.failure << "\n";
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-box alloy-type random operators: eigenvalue counting "
               "bounds and Monte Carlo checks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path;
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  Overrides run_over;
  run_over.attach(run);

  auto* pre = app.add_subcommand("preset", "run (or print) a built-in experiment");
  std::string preset_name;
  pre->add_option("name", preset_name, "preset name")->required();
  bool emit = false;
  pre->add_flag("--emit", emit, "print the config as JSON instead of running");
  Overrides pre_over;
  pre_over.attach(pre);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return run_config(alloy::ExperimentConfig::from_file(config_path),
                        run_over, false);
    return run_config(alloy::preset(preset_name), pre_over, emit);
  } catch (const alloy::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

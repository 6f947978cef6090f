#include "alloy/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace alloy {

using nlohmann::ordered_json;

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {
      "bound-check", "epsilon-sweep", "volume-sweep",
      "ids",         "large-disorder", "transform-verify"};
  return kinds;
}

namespace {

bool needs_energy(const std::string& kind) {
  return kind == "bound-check" || kind == "epsilon-sweep" ||
         kind == "volume-sweep" || kind == "large-disorder";
}

std::string point_key(const Point& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out << ' ';
    out << p[i];
  }
  return out.str();
}

Point parse_point_key(const std::string& key, int d) {
  std::istringstream in(key);
  Point p;
  int c;
  while (in >> c) p.push_back(c);
  if (static_cast<int>(p.size()) != d)
    throw ConfigError("potential site '" + key + "' does not have " +
                      std::to_string(d) + " coordinates");
  return p;
}

ordered_json potential_to_json(const SingleSitePotential& u) {
  ordered_json j;
  if (u.compactly_supported()) {
    j["kind"] = "compact";
    ordered_json vals = ordered_json::object();
    for (const auto& [p, v] : u.values()) vals[point_key(p)] = rat_to_string(v);
    j["values"] = vals;
  } else {
    j["kind"] = "geometric";
    ordered_json head = ordered_json::object();
    for (const auto& [k, v] : u.head())
      head[std::to_string(k)] = rat_to_string(v);
    j["head"] = head;
    j["tail_amplitude"] = u.tail_amplitude();
    j["tail_ratio"] = u.tail_ratio();
  }
  if (!u.label().empty()) j["label"] = u.label();
  return j;
}

SingleSitePotential potential_from_json(const ordered_json& j, int d) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("potential needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const std::string label = j.value("label", std::string());
  try {
    if (kind == "delta") return SingleSitePotential::delta(d);
    if (kind == "dipole") {
      if (d != 1) throw ConfigError("dipole potential is one-dimensional");
      return SingleSitePotential::dipole_1d();
    }
    if (kind == "compact") {
      std::map<Point, Rat> values;
      for (const auto& [key, val] : j.at("values").items())
        values[parse_point_key(key, d)] = rat_from_string(val.get<std::string>());
      return SingleSitePotential::compact(d, std::move(values), label);
    }
    if (kind == "geometric") {
      if (d != 1) throw ConfigError("geometric potentials are one-dimensional");
      std::map<int, Rat> head;
      if (j.contains("head"))
        for (const auto& [key, val] : j.at("head").items())
          head[std::stoi(key)] = rat_from_string(val.get<std::string>());
      return SingleSitePotential::geometric(std::move(head),
                                            j.value("tail_amplitude", 0.0),
                                            j.value("tail_ratio", 0.5), label);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad potential: ") + e.what());
  }
  throw ConfigError("unknown potential kind: " + kind);
}

ordered_json density_to_json(const CouplingDensity& f) {
  ordered_json j;
  switch (f.kind()) {
    case CouplingDensity::Kind::Uniform:
      j["kind"] = "uniform";
      j["a"] = f.support().first;
      j["b"] = f.support().second;
      break;
    case CouplingDensity::Kind::Triangular:
      j["kind"] = "triangular";
      j["a"] = f.support().first;
      j["b"] = f.support().second;
      break;
    case CouplingDensity::Kind::PiecewiseLinear: {
      j["kind"] = "piecewise-linear";
      ordered_json knots = ordered_json::array();
      for (const auto& [x, y] : f.knots()) knots.push_back({x, y});
      j["knots"] = knots;
      break;
    }
  }
  return j;
}

CouplingDensity density_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("density needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "uniform")
      return CouplingDensity::uniform(j.at("a").get<double>(),
                                      j.at("b").get<double>());
    if (kind == "triangular")
      return CouplingDensity::triangular(j.at("a").get<double>(),
                                         j.at("b").get<double>());
    if (kind == "piecewise-linear") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& k : j.at("knots"))
        knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
      return CouplingDensity::piecewise_linear(std::move(knots));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad density: ") + e.what());
  }
  throw ConfigError("unknown density kind: " + kind);
}

}  // namespace

void ExperimentConfig::validate() const {
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), experiment) == kinds.end())
    throw ConfigError("unknown experiment kind: " + experiment);
  if (model.d < 1) throw ConfigError("dimension must be at least 1");
  if (model.L < 0) throw ConfigError("box size must be nonnegative");
  if (samples < 1) throw ConfigError("samples must be positive");
  if (experiment == "epsilon-sweep" && epsilon_list.size() < 4)
    throw ConfigError("epsilon-sweep needs epsilon_list with at least 4 values");
  if (experiment == "volume-sweep" && L_list.size() < 4)
    throw ConfigError("volume-sweep needs L_list with at least 4 sizes");
  if (experiment == "ids" && energy_grid.size() < 2)
    throw ConfigError("ids needs an energy_grid with at least 2 points");
  if (experiment == "large-disorder" && disorder_exponent < 1)
    throw ConfigError("large-disorder needs disorder_exponent >= 1");
  if (experiment == "bound-check" && !(epsilon > 0))
    throw ConfigError("bound-check needs epsilon > 0");
  if (experiment == "volume-sweep" && !(epsilon > 0))
    throw ConfigError("volume-sweep needs epsilon > 0");
}

std::string ExperimentConfig::canonical_json() const {
  ordered_json j;
  j["schema"] = kSchema;
  j["experiment"] = experiment;
  ordered_json m;
  m["d"] = model.d;
  m["L"] = model.L;
  if (!L_list.empty()) m["L_list"] = L_list;
  m["hopping"] = model.hopping;
  m["laplacian_diagonal"] = model.laplacian_diagonal;
  m["potential"] = potential_to_json(model.u);
  m["density"] = density_to_json(model.density);
  j["model"] = m;
  j["construction"] = construction_name(construction);
  if (experiment == "bound-check" || experiment == "volume-sweep")
    j["epsilon"] = epsilon;
  if (experiment == "epsilon-sweep") j["epsilon_list"] = epsilon_list;
  if (needs_energy(experiment)) {
    if (energy.median_pilot)
      j["energy"] = ordered_json{{"policy", "median-pilot"}};
    else
      j["energy"] = energy.value;
  }
  if (experiment == "ids") j["energy_grid"] = energy_grid;
  if (experiment == "large-disorder") j["disorder_exponent"] = disorder_exponent;
  j["samples"] = samples;
  j["seed"] = seed;
  ordered_json out;
  if (output.dir) out["dir"] = *output.dir;
  out["format"] = output.format == RecordFormat::Csv ? "csv" : "jsonl";
  j["output"] = out;
  return j.dump(2);
}

std::uint64_t ExperimentConfig::config_hash() const {
  const std::string text = canonical_json();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.experiment = j.at("experiment").get<std::string>();
    const auto& m = j.at("model");
    cfg.model.d = m.at("d").get<int>();
    cfg.model.L = m.value("L", 0);
    if (m.contains("L_list"))
      cfg.L_list = m.at("L_list").get<std::vector<int>>();
    if (!cfg.L_list.empty() && cfg.model.L == 0) cfg.model.L = cfg.L_list.front();
    cfg.model.hopping = m.value("hopping", 1.0);
    cfg.model.laplacian_diagonal = m.value("laplacian_diagonal", false);
    cfg.model.u = potential_from_json(m.at("potential"), cfg.model.d);
    cfg.model.density = density_from_json(m.at("density"));
    if (j.contains("construction"))
      cfg.construction = parse_construction(j.at("construction").get<std::string>());
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("epsilon_list"))
      cfg.epsilon_list = j.at("epsilon_list").get<std::vector<double>>();
    if (j.contains("energy")) {
      const auto& e = j.at("energy");
      if (e.is_object()) {
        const std::string policy = e.value("policy", std::string());
        if (policy != "median-pilot")
          throw ConfigError("unknown energy policy: " + policy);
        cfg.energy.median_pilot = true;
      } else {
        cfg.energy.median_pilot = false;
        cfg.energy.value = e.get<double>();
      }
    }
    if (j.contains("energy_grid")) {
      const auto& g = j.at("energy_grid");
      if (g.is_object()) {
        const double lo = g.at("lo").get<double>();
        const double hi = g.at("hi").get<double>();
        const int points = g.at("points").get<int>();
        if (points < 2 || !(hi > lo))
          throw ConfigError("energy_grid needs lo < hi and points >= 2");
        for (int i = 0; i < points; ++i)
          cfg.energy_grid.push_back(lo + (hi - lo) * i / (points - 1));
      } else {
        cfg.energy_grid = g.get<std::vector<double>>();
      }
    }
    if (j.contains("disorder_exponent"))
      cfg.disorder_exponent = j.at("disorder_exponent").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::int64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.contains("dir")) cfg.output.dir = o.at("dir").get<std::string>();
      const std::string fmt = o.value("format", std::string("jsonl"));
      if (fmt == "csv")
        cfg.output.format = RecordFormat::Csv;
      else if (fmt == "jsonl")
        cfg.output.format = RecordFormat::Jsonl;
      else
        throw ConfigError("unknown output format: " + fmt);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

}  // namespace alloy

#include "alloy/wegner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "alloy/spectral.hpp"

namespace alloy {

ModelSpec ModelSpec::with_L(int side) const {
  ModelSpec m = *this;
  m.L = side;
  return m;
}

std::string ModelSpec::potential_id() const {
  return u.label().empty() ? std::string("u") : u.label();
}

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::Auto: return "auto";
    case Construction::Monomial: return "monomial";
    case Construction::MeanWindow: return "mean-window";
    case Construction::CorollaryWindow: return "corollary-window";
    case Construction::ExpTruncated: return "exp-truncated";
  }
  throw std::logic_error("unknown construction");
}

Construction parse_construction(const std::string& name) {
  for (Construction c : {Construction::Auto, Construction::Monomial,
                         Construction::MeanWindow, Construction::CorollaryWindow,
                         Construction::ExpTruncated}) {
    if (construction_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown construction: " + name);
}

CoefficientField build_field(const SingleSitePotential& u, int L, Construction c) {
  switch (c) {
    case Construction::Monomial:
      return build_monomial_coefficients(u, L);
    case Construction::MeanWindow:
    case Construction::CorollaryWindow:
      return mean_window_coefficients(u, L);
    case Construction::ExpTruncated:
      return truncation_window(u, L, laurent_root_order(u));
    case Construction::Auto:
      break;
  }
  if (u.compactly_supported()) {
    if (u.mean_exact() != 0) return mean_window_coefficients(u, L);
    return build_monomial_coefficients(u, L);
  }
  if (std::abs(u.mean()) > 1e-12) return mean_window_coefficients(u, L);
  return truncation_window(u, L, laurent_root_order(u));
}

BoundBreakdown abstract_bound(const WegnerBoundInput& in) {
  if (in.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  BoundBreakdown out;
  out.epsilon = in.epsilon;
  out.delta = in.field.delta_exact ? to_double(*in.field.delta_exact)
                                   : in.field.delta;
  if (out.delta <= 0) throw std::invalid_argument("delta must be positive");
  out.bv_norm = in.density.bv_norm();
  double wrs = 0.0;
  for (const auto& [k, a] : in.field.weights) {
    if (a == 0) continue;
    wrs += std::abs(to_double(a)) * rank_of_translate(in.u, k, in.box);
  }
  out.weighted_rank_sum = wrs;
  out.value = (4.0 * in.epsilon / out.delta) * out.bv_norm * wrs;

  const int d = in.box.dim();
  const int L = in.box.side();
  using Tag = CoefficientField::Tag;
  if (in.field.tag == Tag::Monomial && in.u.compactly_supported()) {
    const int n = in.u.reach();
    out.literal_degenerate = in.u.rank() * out.bv_norm * in.epsilon *
                             std::pow(L + n, d * (n + 1));
  } else if (in.field.tag == Tag::CorollaryWindow && in.u.compactly_supported()) {
    const int n = in.u.reach();
    const double mean = std::abs(to_double(in.u.mean_exact()));
    out.literal_lipschitz =
        (4.0 / mean) * in.u.rank() * out.bv_norm * in.epsilon * std::pow(L + n, d);
  } else if (in.field.tag == Tag::MeanWindow && !in.field.weights.empty()) {
    const int m = -in.field.weights.begin()->first[0];
    const double mean = std::abs(in.u.mean());
    const double vol = std::pow(L, d);
    double rank = vol;
    if (in.u.tail_amplitude() == 0.0) {
      int r = 0;
      for (const auto& [k, v] : in.u.head())
        if (v != 0) ++r;
      rank = std::min(vol, static_cast<double>(r));
    }
    out.literal_nondegenerate =
        (8.0 / mean) * rank * out.bv_norm * in.epsilon * std::pow(L + m, d);
  }
  return out;
}

Eigen::VectorXd model_spectrum(const ModelSpec& model, const CouplingField& omega) {
  const Box box = model.box();
  Eigen::VectorXd V = build_potential(model.u, omega, box);
  if (model.laplacian_diagonal)
    V.array() -= 2.0 * model.d * model.hopping;
  if (model.hopping == 0.0) {
    std::sort(V.data(), V.data() + V.size());
    return V;
  }
  Eigen::MatrixXd H = model.hopping * laplacian_restriction(box);
  H.diagonal() += V;
  return spectrum_of(H);
}

CouplingField draw_couplings(const ModelSpec& model, std::uint64_t master_seed,
                             std::uint64_t sample_index) {
  return sample_couplings(model.density, coupling_index_set(model.u, model.box()),
                          master_seed, sample_index);
}

McEstimate mc_expected_count(const ModelSpec& model, double lo, double hi,
                             std::int64_t n_samples, std::uint64_t master_seed,
                             Mode mode) {
  if (n_samples < 2) throw std::invalid_argument("need at least 2 samples");
  const auto index_set = coupling_index_set(model.u, model.box());
  auto counts = map_samples<double>(n_samples, mode, [&](std::int64_t i) {
    CouplingField omega = sample_couplings(model.density, index_set, master_seed,
                                           static_cast<std::uint64_t>(i));
    Eigen::VectorXd spec = model_spectrum(model, omega);
    return static_cast<double>(count_in_interval(spec, lo, hi));
  });
  MeanStd ms = reduce_mean_std(counts);
  return {ms.mean, ms.std_error, ms.n};
}

double median_pilot_energy(const ModelSpec& model, std::uint64_t master_seed,
                           int pilot_samples) {
  if (pilot_samples < 1) throw std::invalid_argument("pilot needs samples");
  const std::uint64_t pilot_seed = rng::derive_seed(master_seed, 0x70696c6f74ull);
  const auto index_set = coupling_index_set(model.u, model.box());
  std::vector<double> pool;
  for (int i = 0; i < pilot_samples; ++i) {
    CouplingField omega = sample_couplings(model.density, index_set, pilot_seed,
                                           static_cast<std::uint64_t>(i));
    Eigen::VectorXd spec = model_spectrum(model, omega);
    pool.insert(pool.end(), spec.data(), spec.data() + spec.size());
  }
  std::sort(pool.begin(), pool.end());
  const std::size_t n = pool.size();
  if (n % 2 == 1) return pool[n / 2];
  return 0.5 * (pool[n / 2 - 1] + pool[n / 2]);
}

FitResult fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit needs matched samples, at least 2");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("degenerate abscissa in fit");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (xs.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      rss += r * r;
    }
    fit.std_error = std::sqrt(rss / (n - 2) / sxx);
  }
  return fit;
}

namespace {

ExperimentRecord base_record(const ModelSpec& model, const CoefficientField& field,
                             std::uint64_t master_seed, std::uint64_t sub_seed) {
  ExperimentRecord r;
  r.d = model.d;
  r.L = model.L;
  r.density_id = model.density.id();
  r.potential_id = model.potential_id();
  r.construction = CoefficientField::tag_name(field.tag);
  r.master_seed = master_seed;
  r.sub_seed = sub_seed;
  return r;
}

}  // namespace

EpsilonSweep epsilon_sweep(const ModelSpec& model, Construction construction,
                           double E, const std::vector<double>& eps_list,
                           std::int64_t n_samples, std::uint64_t master_seed,
                           Mode mode) {
  if (eps_list.size() < 4)
    throw std::invalid_argument("epsilon sweep needs at least 4 values");
  double lo = *std::min_element(eps_list.begin(), eps_list.end());
  double hi = *std::max_element(eps_list.begin(), eps_list.end());
  if (!(lo > 0)) throw std::invalid_argument("epsilon values must be positive");
  if (hi / lo < 10.0 * (1 - 1e-9))
    throw std::invalid_argument("epsilon sweep must span at least a decade");

  const CoefficientField field = build_field(model.u, model.L, construction);
  EpsilonSweep sweep;
  std::vector<double> lx, ly, estimates;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const double eps = eps_list[i];
    const std::uint64_t sub = rng::derive_seed(master_seed, 1000 + i);
    McEstimate est = mc_expected_count(model, E - eps, E + eps, n_samples, sub, mode);
    if (est.estimate == 0.0)
      throw std::runtime_error("interval resolution too fine for sample budget");
    BoundBreakdown bound = abstract_bound(
        {field, model.density, model.u, model.box(), eps, E});
    ExperimentRecord rec = base_record(model, field, master_seed, sub);
    rec.experiment = "epsilon-sweep";
    rec.epsilon = eps;
    rec.energy = E;
    rec.mc_estimate = est.estimate;
    rec.std_error = est.std_error;
    rec.n_samples = est.n;
    rec.theoretical_bound = bound.value;
    sweep.records.push_back(std::move(rec));
    lx.push_back(std::log(eps));
    ly.push_back(std::log(est.estimate));
    estimates.push_back(est.estimate);
  }
  sweep.fit = fit_line(lx, ly);
  const double emin = *std::min_element(estimates.begin(), estimates.end());
  const double emax = *std::max_element(estimates.begin(), estimates.end());
  double mean = 0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(estimates.size());
  sweep.saturated = (emax - emin) <= 0.02 * mean;
  return sweep;
}

VolumeSweep volume_sweep(const ModelSpec& model, Construction construction,
                         double E, double epsilon, const std::vector<int>& L_list,
                         std::int64_t n_samples, std::uint64_t master_seed,
                         Mode mode) {
  if (L_list.size() < 4)
    throw std::invalid_argument("volume sweep needs at least 4 sizes");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");

  VolumeSweep sweep;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < L_list.size(); ++i) {
    const ModelSpec m = model.with_L(L_list[i]);
    const CoefficientField field = build_field(m.u, m.L, construction);
    const std::uint64_t sub = rng::derive_seed(master_seed, 2000 + i);
    McEstimate est =
        mc_expected_count(m, E - epsilon, E + epsilon, n_samples, sub, mode);
    BoundBreakdown bound =
        abstract_bound({field, m.density, m.u, m.box(), epsilon, E});
    if (est.estimate > bound.value + 3.0 * est.std_error)
      throw std::runtime_error("Wegner bound violated");
    ExperimentRecord rec = base_record(m, field, master_seed, sub);
    rec.experiment = "volume-sweep";
    rec.epsilon = epsilon;
    rec.energy = E;
    rec.mc_estimate = est.estimate;
    rec.std_error = est.std_error;
    rec.n_samples = est.n;
    rec.theoretical_bound = bound.value;
    sweep.records.push_back(std::move(rec));
    if (est.estimate > 0) {
      lx.push_back(std::log(static_cast<double>(L_list[i])));
      ly.push_back(std::log(est.estimate));
    }
  }
  if (lx.size() >= 2) {
    sweep.fit = fit_line(lx, ly);
  } else {
    sweep.fit.slope = std::numeric_limits<double>::quiet_NaN();
    sweep.fit.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return sweep;
}

IDSCurve ids_estimate(const ModelSpec& model, Construction construction,
                      const std::vector<double>& energy_grid,
                      std::int64_t n_samples, std::uint64_t master_seed,
                      Mode mode) {
  if (energy_grid.empty()) throw std::invalid_argument("empty energy grid");
  if (!std::is_sorted(energy_grid.begin(), energy_grid.end()))
    throw std::invalid_argument("energy grid must be sorted");
  if (n_samples < 2) throw std::invalid_argument("need at least 2 samples");

  const auto index_set = coupling_index_set(model.u, model.box());
  const double norm = static_cast<double>(model.box().size());
  // one spectrum per sample, shared across the whole grid
  auto spectra = map_samples<std::vector<double>>(
      n_samples, mode, [&](std::int64_t i) {
        CouplingField omega = sample_couplings(model.density, index_set,
                                               master_seed,
                                               static_cast<std::uint64_t>(i));
        Eigen::VectorXd spec = model_spectrum(model, omega);
        return std::vector<double>(spec.data(), spec.data() + spec.size());
      });

  const CoefficientField field = build_field(model.u, model.L, construction);
  BoundBreakdown half = abstract_bound(
      {field, model.density, model.u, model.box(), 0.5, energy_grid.front()});

  IDSCurve curve;
  curve.energies = energy_grid;
  curve.bound_slope = half.value / norm;
  for (double E : energy_grid) {
    std::vector<double> fracs(spectra.size());
    for (std::size_t i = 0; i < spectra.size(); ++i) {
      const auto& s = spectra[i];
      auto it = std::upper_bound(s.begin(), s.end(), E);
      fracs[i] = static_cast<double>(it - s.begin()) / norm;
    }
    MeanStd ms = reduce_mean_std(fracs);
    curve.values.push_back(ms.mean);
    curve.std_errors.push_back(ms.std_error);

    ExperimentRecord rec = base_record(model, field, master_seed, master_seed);
    rec.experiment = "ids";
    rec.epsilon = 0.0;
    rec.energy = E;
    rec.mc_estimate = ms.mean;
    rec.std_error = ms.std_error;
    rec.n_samples = ms.n;
    rec.theoretical_bound = curve.bound_slope;
    curve.records.push_back(std::move(rec));
  }
  return curve;
}

DisorderProbability large_disorder_probability(const ModelSpec& model,
                                               Construction construction,
                                               double E, int p,
                                               std::int64_t n_samples,
                                               std::uint64_t master_seed,
                                               Mode mode) {
  if (n_samples < 100)
    throw std::invalid_argument("probability estimates need n_samples >= 100");
  const double bv = model.density.bv_norm();
  if (bv > std::exp(-2.0 * model.L) * (1 + 1e-9))
    throw std::runtime_error("not in large-disorder regime");

  const double threshold = std::exp(-static_cast<double>(model.L));
  const auto index_set = coupling_index_set(model.u, model.box());
  auto hits = map_samples<double>(n_samples, mode, [&](std::int64_t i) {
    CouplingField omega = sample_couplings(model.density, index_set, master_seed,
                                           static_cast<std::uint64_t>(i));
    Eigen::VectorXd spec = model_spectrum(model, omega);
    return spectral_distance(spec, E) < threshold ? 1.0 : 0.0;
  });

  DisorderProbability out;
  for (double h : hits) out.hits += h > 0.5 ? 1 : 0;
  const double n = static_cast<double>(n_samples);
  const double phat = static_cast<double>(out.hits) / n;
  out.empirical = phat;
  const double z = 1.959963984540054;
  const double z2 = z * z;
  out.upper95 = (phat + z2 / (2 * n) +
                 z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n))) /
                (1 + z2 / n);

  const CoefficientField field = build_field(model.u, model.L, construction);
  BoundBreakdown bound = abstract_bound(
      {field, model.density, model.u, model.box(), threshold, E});
  out.bound = std::min(1.0, bound.value);
  out.target = std::max(out.bound, std::pow(static_cast<double>(model.L),
                                            -static_cast<double>(p)));

  ExperimentRecord rec = base_record(model, field, master_seed, master_seed);
  rec.experiment = "large-disorder";
  rec.epsilon = threshold;
  rec.energy = E;
  rec.mc_estimate = phat;
  rec.std_error = std::sqrt(phat * (1 - phat) / n);
  rec.n_samples = n_samples;
  rec.theoretical_bound = out.target;
  out.records.push_back(std::move(rec));

  if (out.upper95 > out.target + 1e-9)
    throw std::runtime_error("large disorder probability exceeds bound");
  return out;
}

}  // namespace alloy

// Acceptance gate: one check per shipped guarantee, one line per check.
// Exits nonzero when any check fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alloy/spectral.hpp"
#include "alloy/transform.hpp"
#include "alloy/wegner.hpp"

using namespace alloy;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double x, int prec = 4) {
  std::ostringstream out;
  out.precision(prec);
  out << x;
  return out.str();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

// Random compact potential: support inside [-3,0]^d, integer values in
// [-5,5], not identically zero.
SingleSitePotential random_potential(std::mt19937& gen, int d) {
  std::uniform_int_distribution<int> val(-5, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    std::map<Point, Rat> values;
    for (const Point& p : cuboid_points(std::vector<int>(d, -3),
                                        std::vector<int>(d, 0))) {
      if (coin(gen)) continue;
      const int v = val(gen);
      if (v != 0) values[p] = v;
    }
    if (!values.empty()) return SingleSitePotential::compact(d, values);
  }
}

// sum_k a(k) u(x-k) by substituting k = x - y over the support of u.
Rat field_combination(const CoefficientField& field, const SingleSitePotential& u,
                      const Point& x) {
  Rat s = 0;
  for (const auto& [y, v] : u.values()) s += field.weight_at(point_sub(x, y)) * v;
  return s;
}

// Same sum with explicit per-coordinate powers (0^0 = 1); every translate
// index x - y lies in [0, L+n]^d, so no window clipping is needed.
Rat exponent_combination(const SingleSitePotential& u, const std::vector<int>& e,
                         const Point& x) {
  Rat s = 0;
  for (const auto& [y, v] : u.values()) {
    Rat w = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) w *= Rat(int_pow(x[i] - y[i], e[i]));
    s += w * v;
  }
  return s;
}

// Difference along the last axis; every line sum along that axis vanishes,
// so the reduction is forced to consume a positive order there.
SingleSitePotential differenced_last_axis(const SingleSitePotential& u) {
  const int d = u.dim();
  std::map<Point, Rat> m;
  for (const auto& [p, v] : u.values()) {
    m[p] += v;
    Point q = p;
    q[d - 1] -= 1;
    m[q] -= v;
  }
  for (auto it = m.begin(); it != m.end();)
    it = it->second == 0 ? m.erase(it) : std::next(it);
  return SingleSitePotential::compact(d, std::move(m));
}

SingleSitePotential product_dipole_2d() {
  std::map<Point, Rat> values;
  values[{0, 0}] = 1;
  values[{0, -1}] = -1;
  values[{-1, 0}] = -1;
  values[{-1, -1}] = 1;
  return SingleSitePotential::compact(2, std::move(values), "dipole-product");
}

struct Corpus {
  std::vector<SingleSitePotential> potentials;
  int L;
};

std::vector<Corpus> build_corpora() {
  std::vector<Corpus> out;
  {
    Corpus c{{}, 12};
    std::mt19937 gen(20240811);
    for (int i = 0; i < 600; ++i) c.potentials.push_back(random_potential(gen, 1));
    out.push_back(std::move(c));
  }
  {
    Corpus c{{}, 6};
    std::mt19937 gen(20240812);
    for (int i = 0; i < 400; ++i) c.potentials.push_back(random_potential(gen, 2));
    out.push_back(std::move(c));
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  long long potentials = 0, site_checks = 0;
  for (const Corpus& corpus : build_corpora()) {
    for (const auto& u : corpus.potentials) {
      const CoefficientField field = build_monomial_coefficients(u, corpus.L);
      if (!field.delta_exact || *field.delta_exact <= 0)
        return {false, "missing or nonpositive exact delta"};
      for (const Point& x : Box(u.dim(), corpus.L).points()) {
        if (field_combination(field, u, x) != *field.delta_exact)
          return {false, "combination drifted from delta at " + point_to_string(x)};
        ++site_checks;
      }
      ++potentials;
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 60.0) return {false, "exceeded the 1 minute budget: " + fmt(dt) + "s"};
  return {true, std::to_string(potentials) + " potentials, " +
                    std::to_string(site_checks) + " site checks, " + fmt(dt, 3) + "s"};
}

// All exponent vectors with the last coordinate lowered below its consumed
// order must produce the zero combination at every site, exactly.
bool suborders_vanish(const SingleSitePotential& u, int L, long long& checks) {
  const CoefficientField field = build_monomial_coefficients(u, L);
  const int d = u.dim();
  const int order = field.exponents[d - 1];
  for (int lower = 0; lower < order; ++lower) {
    std::vector<int> e = field.exponents;
    e[d - 1] = lower;
    for (const Point& x : Box(d, L).points()) {
      if (exponent_combination(u, e, x) != 0) return false;
      ++checks;
    }
  }
  return true;
}

Outcome criterion2() {
  long long natural = 0, forced = 0, checks = 0;
  for (const Corpus& corpus : build_corpora()) {
    for (const auto& u : corpus.potentials) {
      const CoefficientField field = build_monomial_coefficients(u, corpus.L);
      if (field.exponents[u.dim() - 1] > 0) ++natural;
      if (!suborders_vanish(u, corpus.L, checks))
        return {false, "nonzero sub-order combination (corpus)"};
      // differenced variant guarantees a positive consumed order
      const auto v = differenced_last_axis(u);
      if (!suborders_vanish(v, corpus.L, checks))
        return {false, "nonzero sub-order combination (differenced)"};
      ++forced;
    }
  }
  if (natural + forced == 0 || checks == 0) return {false, "no sub-order cases ran"};
  return {true, std::to_string(checks) + " zero checks (" + std::to_string(natural) +
                    " corpus cases with positive order, " + std::to_string(forced) +
                    " differenced)"};
}

Outcome criterion3() {
  ModelSpec m;
  m.d = 1;
  m.L = 9;
  m.hopping = 0.0;
  const McEstimate est = mc_expected_count(m, 0.2, 0.5, 2000, 424242);
  const double dev = std::abs(est.estimate - 3.0);
  const bool ok = dev <= 3.0 * est.std_error;
  return {ok, "estimate " + fmt(est.estimate) + " +- " + fmt(est.std_error) +
                  ", target 3.0, |dev| = " + fmt(dev)};
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> sides = {6, 10, 14};
  const std::vector<double> epsilons = {0.01, 0.05, 0.2};
  const std::int64_t n_samples = 2000;
  int cells = 0;
  double worst_margin = -1e300;  // max of (estimate - bound) / sigma
  std::uint64_t batch = 0;
  for (int d : {1, 2}) {
    std::vector<SingleSitePotential> potentials;
    if (d == 1) {
      potentials = {SingleSitePotential::delta(1), SingleSitePotential::dipole_1d()};
    } else {
      potentials = {SingleSitePotential::delta(2), product_dipole_2d()};
    }
    for (const auto& u : potentials) {
      for (int L : sides) {
        ModelSpec m;
        m.d = d;
        m.L = L;
        m.u = u;
        const std::uint64_t seed = rng::derive_seed(0xACE4ull, batch++);
        const double E = median_pilot_energy(m, seed);
        const auto index_set = coupling_index_set(m.u, m.box());
        std::vector<Eigen::VectorXd> spectra;
        spectra.reserve(static_cast<std::size_t>(n_samples));
        for (std::int64_t i = 0; i < n_samples; ++i) {
          CouplingField omega = sample_couplings(
              m.density, index_set, seed, static_cast<std::uint64_t>(i));
          spectra.push_back(model_spectrum(m, omega));
        }
        const CoefficientField field = build_field(m.u, m.L, Construction::Auto);
        for (double eps : epsilons) {
          std::vector<double> counts;
          counts.reserve(spectra.size());
          for (const auto& s : spectra)
            counts.push_back(
                static_cast<double>(count_in_interval(s, E - eps, E + eps)));
          const MeanStd ms = reduce_mean_std(counts);
          const BoundBreakdown bound =
              abstract_bound({field, m.density, m.u, m.box(), eps, E});
          ++cells;
          const double sigma = ms.std_error > 0 ? ms.std_error : 1e-300;
          worst_margin = std::max(worst_margin, (ms.mean - bound.value) / sigma);
          if (ms.mean > bound.value + 3.0 * ms.std_error)
            return {false, "bound violated at d=" + std::to_string(d) +
                               " L=" + std::to_string(L) + " eps=" + fmt(eps) +
                               " u=" + u.label() + ": estimate " + fmt(ms.mean) +
                               " vs bound " + fmt(bound.value)};
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  if (cells < 24) return {false, "grid too small: " + std::to_string(cells)};
  if (dt >= 600.0)
    return {false, "exceeded the 10 minute budget: " + fmt(dt) + "s"};
  return {true, std::to_string(cells) + " cells, worst (est-bound)/sigma = " +
                    fmt(worst_margin) + ", " + fmt(dt, 3) + "s"};
}

Outcome criterion5() {
  ModelSpec m;
  m.d = 1;
  m.L = 9;
  m.hopping = 0.0;
  const EpsilonSweep sweep = epsilon_sweep(
      m, Construction::Auto, 0.35, {0.01, 0.02, 0.05, 0.1, 0.2}, 5000, 555001);
  const double dev = std::abs(sweep.fit.slope - 1.0);
  return {dev <= 0.1, "fitted slope " + fmt(sweep.fit.slope) + " +- " +
                          fmt(sweep.fit.std_error) + ", |slope - 1| = " + fmt(dev)};
}

Outcome criterion6() {
  ModelSpec m;
  m.d = 1;
  m.L = 8;
  m.u = SingleSitePotential::dipole_1d();
  const Box box = m.box();
  const auto index_set = coupling_index_set(m.u, box);
  const double h = 1e-5;
  const std::uint64_t seed = 31337;
  int accepted = 0;
  double max_rel = 0.0;
  for (std::uint64_t t = 0; accepted < 100; ++t) {
    if (t > 2500) return {false, "instance filter starved"};
    CouplingField omega = sample_couplings(m.density, index_set, seed, t);
    const BoxHamiltonian ham = build_hamiltonian(m.u, omega, box, true);
    const EigenSystem sys = eig_symmetric(ham.matrix);
    const int n = static_cast<int>(sys.values.size());
    const int i = static_cast<int>((7 * t) % static_cast<std::uint64_t>(n));
    double gap = 1e300;
    if (i > 0) gap = std::min(gap, sys.values[i] - sys.values[i - 1]);
    if (i + 1 < n) gap = std::min(gap, sys.values[i + 1] - sys.values[i]);
    if (gap < 0.05) continue;  // non-degenerate instances only
    const Point k = index_set[(3 * t) % index_set.size()];
    const double analytic = eigenvalue_derivative(sys, i, m.u, k, box);
    if (std::abs(analytic) < 0.05) continue;
    CouplingField up = omega, down = omega;
    up.omega[k] += h;
    down.omega[k] -= h;
    const Eigen::VectorXd sp = spectrum_of(build_hamiltonian(m.u, up, box, true).matrix);
    const Eigen::VectorXd sm =
        spectrum_of(build_hamiltonian(m.u, down, box, true).matrix);
    const double fd = (sp[i] - sm[i]) / (2 * h);
    const double rel = std::abs(fd - analytic) / std::abs(analytic);
    max_rel = std::max(max_rel, rel);
    if (rel >= 1e-6)
      return {false, "relative error " + fmt(rel) + " at instance " +
                         std::to_string(t)};
    ++accepted;
  }
  return {true, "100 instances, max relative error " + fmt(max_rel, 3)};
}

Outcome criterion7() {
  ModelSpec m;
  m.d = 1;
  m.L = 8;
  m.u = SingleSitePotential::dipole_1d();  // rank-2 single site potential
  const Box box = m.box();
  const auto index_set = coupling_index_set(m.u, box);
  const double eps_cycle[] = {0.1, 0.5, 1.0};
  const double energy_cycle[] = {-1.0, 0.5, 2.0};
  const std::uint64_t seed = 70707;
  double max_shift = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    CouplingField a = sample_couplings(m.density, index_set, seed, 2 * t);
    CouplingField fresh = sample_couplings(m.density, index_set, seed, 2 * t + 1);
    const Point k = index_set[(5 * t) % index_set.size()];
    CouplingField b = a;
    b.omega[k] = fresh.at(k);  // rank <= 2 perturbation of one coupling
    const Eigen::VectorXd sa = spectrum_of(build_hamiltonian(m.u, a, box, true).matrix);
    const Eigen::VectorXd sb = spectrum_of(build_hamiltonian(m.u, b, box, true).matrix);
    const SwitchFunction rho(eps_cycle[t % 3]);
    const double shift = spectral_shift(sa, sb, rho, energy_cycle[(t / 3) % 3]);
    max_shift = std::max(max_shift, shift);
    if (shift > 2.0 + 1e-9)
      return {false, "shift " + fmt(shift) + " at instance " + std::to_string(t)};
  }
  return {true, "100 instances, max shift " + fmt(max_shift) + " <= 2 + 1e-9"};
}

Outcome criterion8() {
  const auto geo = SingleSitePotential::geometric({}, 1.0, 0.5, "geo-half");
  const auto dip = SingleSitePotential::geometric(
      {{0, Rat(1)}, {-1, Rat(-1)}}, 0.0, 0.5, "dipole-zero-tail");
  std::ostringstream detail;
  for (const auto& u : {geo, dip}) {
    const LaurentRoot root = laurent_root_order(u);
    std::vector<double> xs, sizes;
    for (int L : {4, 8, 16}) {
      const CoefficientField field = truncation_window(u, L, root);
      const VerifyResult vr = verify_positive_combination(field, u, Box(1, L));
      if (vr.min_value < std::abs(root.value) / 2 - 1e-9)
        return {false, u.label() + " L=" + std::to_string(L) +
                           ": minimum " + fmt(vr.min_value) + " below half of " +
                           fmt(root.value)};
      xs.push_back(static_cast<double>(L));
      sizes.push_back(static_cast<double>(field.weights.size()));
    }
    if (!(sizes[0] <= sizes[1] && sizes[1] <= sizes[2]))
      return {false, u.label() + ": window sizes not monotone"};
    const FitResult fit = fit_line(xs, sizes);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double predicted = std::max(1.0, fit.intercept + fit.slope * xs[i]);
      if (sizes[i] > 1.5 * predicted)
        return {false, u.label() + ": window size " + fmt(sizes[i]) +
                           " outside 1.5x of the linear fit"};
    }
    detail << u.label() << " sizes " << sizes[0] << '/' << sizes[1] << '/'
           << sizes[2] << " (slope " << fmt(fit.slope, 3) << ")  ";
  }
  return {true, detail.str()};
}

Outcome criterion9() {
  ModelSpec m;
  m.d = 1;
  m.L = 3;
  m.density = CouplingDensity::uniform(0.0, 2e6);
  const DisorderProbability res = large_disorder_probability(
      m, Construction::Auto, 1e6, 2, 10000, 20240601);
  const bool ok = res.upper95 <= res.target + 1e-9;
  return {ok, "hits " + std::to_string(res.hits) + ", upper95 " + fmt(res.upper95) +
                  " <= max(bound " + fmt(res.bound) + ", 1/9)"};
}

Outcome criterion10() {
  // diagonal model: IDS equals the coupling CDF, clamp(E, 0, 1)
  ModelSpec diag;
  diag.d = 1;
  diag.L = 9;
  diag.hopping = 0.0;
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(-0.2 + 1.4 * i / 20.0);
  const IDSCurve oracle = ids_estimate(diag, Construction::Auto, grid, 2000, 4711);
  double max_dev_sigma = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expect = std::clamp(grid[i], 0.0, 1.0);
    const double dev = std::abs(oracle.values[i] - expect);
    if (dev > 3.0 * oracle.std_errors[i] + 1e-12)
      return {false, "oracle deviates at E=" + fmt(grid[i]) + ": " +
                         fmt(oracle.values[i]) + " vs " + fmt(expect)};
    if (oracle.std_errors[i] > 0)
      max_dev_sigma = std::max(max_dev_sigma, dev / oracle.std_errors[i]);
  }

  // hopping on: monotone, increments within the Lipschitz slope bound
  ModelSpec alloy_model;
  alloy_model.d = 1;
  alloy_model.L = 9;
  std::vector<double> wide;
  for (int i = 0; i <= 20; ++i) wide.push_back(-2.5 + 6.0 * i / 20.0);
  const IDSCurve curve =
      ids_estimate(alloy_model, Construction::Auto, wide, 2000, 90210);
  for (std::size_t i = 0; i + 1 < wide.size(); ++i) {
    const double lo = curve.values[i], hi = curve.values[i + 1];
    const double se = std::sqrt(curve.std_errors[i] * curve.std_errors[i] +
                                curve.std_errors[i + 1] * curve.std_errors[i + 1]);
    if (hi < lo - 1e-12) return {false, "IDS not monotone at E=" + fmt(wide[i])};
    const double dE = wide[i + 1] - wide[i];
    if (hi - lo > curve.bound_slope * dE + 3.0 * se + 1e-12)
      return {false, "IDS increment at E=" + fmt(wide[i]) + " exceeds slope bound " +
                         fmt(curve.bound_slope)};
  }
  return {true, "oracle max |dev|/sigma = " + fmt(max_dev_sigma, 3) +
                    "; increments within slope bound " + fmt(curve.bound_slope)};
}

struct Criterion {
  const char* label;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"monomial combination is exactly delta at every site", criterion1},
      {"below-order coefficients annihilate the combination", criterion2},
      {"diagonal-model expected count matches the closed form", criterion3},
      {"eigenvalue-count bound holds across the model grid", criterion4},
      {"expected count scales linearly in the interval width", criterion5},
      {"analytic eigenvalue derivatives match finite differences", criterion6},
      {"one-coupling spectral shift stays within the rank bound", criterion7},
      {"truncation windows certify delta with linear-size growth", criterion8},
      {"large-disorder proximity probability within target", criterion9},
      {"IDS matches the diagonal oracle and the Lipschitz slope", criterion10},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (out.ok ? "[PASS]" : "[FAIL]") << " criterion " << index << ": "
              << c.label << " (" << out.detail << ")\n";
    std::cout.flush();
    if (!out.ok) ++failed;
  }
  std::cout << (10 - failed) << " of 10 criteria passed\n";
  return failed == 0 ? 0 : 1;
}

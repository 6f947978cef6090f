#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "alloy/wegner.hpp"

using namespace alloy;

namespace {

ModelSpec diagonal_oracle() {
  ModelSpec m;
  m.d = 1;
  m.L = 9;
  m.hopping = 0.0;
  return m;  // u = delta, f = uniform[0,1]
}

}  // namespace

TEST_CASE("abstract bound: displayed-formula example") {
  // u = delta, f = uniform[0,1], L = 10, eps = 0.01, corollary window:
  // (4*0.01/1) * 2 * 11 = 0.88
  ModelSpec m;
  m.L = 10;
  const CoefficientField field = build_field(m.u, m.L, Construction::Auto);
  CHECK(field.tag == CoefficientField::Tag::CorollaryWindow);
  const BoundBreakdown b =
      abstract_bound({field, m.density, m.u, m.box(), 0.01, 0.5});
  CHECK(b.value == doctest::Approx(0.88));
  CHECK(b.weighted_rank_sum == doctest::Approx(11.0));
  CHECK(b.bv_norm == doctest::Approx(2.0));
  REQUIRE(b.literal_lipschitz.has_value());
  // (4/1) * 1 * 2 * 0.01 * (10+0)^1
  CHECK(*b.literal_lipschitz == doctest::Approx(0.8));
}

TEST_CASE("abstract bound scales linearly") {
  ModelSpec m;
  m.L = 10;
  CoefficientField field = build_field(m.u, m.L, Construction::Auto);
  const double base = abstract_bound({field, m.density, m.u, m.box(), 0.01, 0.5}).value;
  // doubling delta halves the bound
  field.delta_exact = Rat(2);
  field.delta = 2.0;
  const double halved =
      abstract_bound({field, m.density, m.u, m.box(), 0.01, 0.5}).value;
  CHECK(halved == doctest::Approx(base / 2));
  // epsilon enters linearly
  field.delta_exact = Rat(1);
  field.delta = 1.0;
  const double doubled =
      abstract_bound({field, m.density, m.u, m.box(), 0.02, 0.5}).value;
  CHECK(doubled == doctest::Approx(2 * base));
}

TEST_CASE("abstract bound is monotone in its inputs") {
  ModelSpec m;
  m.L = 6;
  m.u = SingleSitePotential::dipole_1d();
  const CoefficientField field = build_field(m.u, m.L, Construction::Monomial);
  const double base = abstract_bound({field, m.density, m.u, m.box(), 0.05, 0.0}).value;
  CHECK(abstract_bound({field, m.density, m.u, m.box(), 0.06, 0.0}).value > base);
  // narrower support density has a larger BV norm, hence a larger bound
  ModelSpec sharp = m;
  sharp.density = CouplingDensity::uniform(0, 0.5);
  CHECK(abstract_bound({field, sharp.density, m.u, m.box(), 0.05, 0.0}).value ==
        doctest::Approx(2 * base));
  // growing a weight grows the bound
  CoefficientField bigger = field;
  bigger.weights[{3}] += Rat(100);
  CHECK(abstract_bound({bigger, m.density, m.u, m.box(), 0.05, 0.0}).value > base);
}

TEST_CASE("literal side forms attach to the matching constructions") {
  ModelSpec m;
  m.L = 8;
  m.u = SingleSitePotential::dipole_1d();
  const auto monomial = build_field(m.u, m.L, Construction::Monomial);
  const auto bm = abstract_bound({monomial, m.density, m.u, m.box(), 0.05, 0.0});
  REQUIRE(bm.literal_degenerate.has_value());
  // c_u=1: rank 2 * bv 2 * eps * (L+n)^{d(n+1)} with n=1
  CHECK(*bm.literal_degenerate == doctest::Approx(2 * 2 * 0.05 * std::pow(9, 2)));
  CHECK_FALSE(bm.literal_lipschitz.has_value());

  ModelSpec geo;
  geo.u = SingleSitePotential::geometric({}, 1.0, 0.5);
  geo.L = 5;
  const auto mw = build_field(geo.u, geo.L, Construction::MeanWindow);
  const auto bg = abstract_bound({mw, geo.density, geo.u, geo.box(), 0.05, 0.0});
  REQUIRE(bg.literal_nondegenerate.has_value());
  // (8/3) * min(L^d, rank) * bv * eps * (L+m)^d, infinite rank, m = 2
  CHECK(*bg.literal_nondegenerate ==
        doctest::Approx((8.0 / 3.0) * 5 * 2 * 0.05 * 7));
}

TEST_CASE("diagonal oracle expectation") {
  const ModelSpec m = diagonal_oracle();
  const McEstimate est = mc_expected_count(m, 0.2, 0.5, 2000, 424242);
  CHECK(est.n == 2000);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.estimate - 3.0) <= 3.0 * est.std_error);

  // interval disjoint from the coupling support: identically zero
  const McEstimate zero = mc_expected_count(m, 5.0, 6.0, 50, 1);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.std_error == 0.0);

  const McEstimate six = mc_expected_count(m, 0.2, 0.8, 2000, 99);
  CHECK(std::abs(six.estimate - 6.0) <= 3.0 * six.std_error);
}

TEST_CASE("sampling is bitwise identical across execution modes") {
  ModelSpec m;
  m.d = 1;
  m.L = 12;
  m.u = SingleSitePotential::dipole_1d();
  const McEstimate serial = mc_expected_count(m, -0.3, 0.4, 64, 7, Mode::Serial);
  const McEstimate openmp = mc_expected_count(m, -0.3, 0.4, 64, 7, Mode::OpenMP);
  CHECK(serial.estimate == openmp.estimate);
  CHECK(serial.std_error == openmp.std_error);
}

TEST_CASE("identical seeds give byte-identical record streams") {
  const ModelSpec m = diagonal_oracle();
  const std::vector<double> eps = {0.02, 0.05, 0.1, 0.2};
  const EpsilonSweep a = epsilon_sweep(m, Construction::Auto, 0.35, eps, 300, 5);
  const EpsilonSweep b = epsilon_sweep(m, Construction::Auto, 0.35, eps, 300, 5);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(a.records[i].to_jsonl() == b.records[i].to_jsonl());
}

TEST_CASE("epsilon sweep on the diagonal oracle is linear") {
  const ModelSpec m = diagonal_oracle();
  const std::vector<double> eps = {0.01, 0.02, 0.05, 0.1, 0.2};
  const EpsilonSweep sweep = epsilon_sweep(m, Construction::Auto, 0.35, eps, 3000, 2024);
  CHECK_FALSE(sweep.saturated);
  CHECK(sweep.fit.slope == doctest::Approx(1.0).epsilon(0.1));
  CHECK(sweep.records.size() == 5);
  for (const auto& r : sweep.records) {
    CHECK(r.experiment == "epsilon-sweep");
    CHECK(r.theoretical_bound >= r.mc_estimate - 3 * r.std_error);
  }
}

TEST_CASE("epsilon sweep preconditions") {
  const ModelSpec m = diagonal_oracle();
  CHECK_THROWS_AS(epsilon_sweep(m, Construction::Auto, 0.35, {0.1, 0.2, 0.3}, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      epsilon_sweep(m, Construction::Auto, 0.35, {0.1, 0.2, 0.3, 0.4}, 100, 1),
      std::invalid_argument);
  // interval far outside the spectrum: zero estimates are rejected
  CHECK_THROWS_WITH_AS(
      epsilon_sweep(m, Construction::Auto, 50.0, {0.01, 0.02, 0.1, 0.2}, 100, 1),
      doctest::Contains("interval resolution too fine"), std::runtime_error);
}

TEST_CASE("epsilon sweep flags saturation") {
  const ModelSpec m = diagonal_oracle();
  // every interval already covers the whole spectrum: counts are constant
  const EpsilonSweep sweep =
      epsilon_sweep(m, Construction::Auto, 0.5, {1.0, 2.0, 4.0, 10.0}, 200, 3);
  CHECK(sweep.saturated);
  CHECK(sweep.fit.slope == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("volume sweep on the diagonal oracle") {
  const ModelSpec m = diagonal_oracle();
  const VolumeSweep sweep = volume_sweep(m, Construction::Auto, 0.35, 0.05,
                                         {4, 6, 9, 13}, 2000, 77);
  CHECK(sweep.records.size() == 4);
  // expectation is (L+1)*0.1: exponent of L fitted over these sizes
  CHECK(sweep.fit.slope == doctest::Approx(1.0).epsilon(0.15));
  CHECK_THROWS_AS(
      volume_sweep(m, Construction::Auto, 0.35, 0.05, {4, 6, 9}, 100, 1),
      std::invalid_argument);
}

TEST_CASE("ids estimate matches the uniform clamp on the diagonal oracle") {
  const ModelSpec m = diagonal_oracle();
  std::vector<double> grid;
  for (int i = 0; i < 15; ++i) grid.push_back(-0.2 + 1.4 * i / 14.0);
  const IDSCurve curve = ids_estimate(m, Construction::Auto, grid, 2000, 4711);
  REQUIRE(curve.values.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expect = std::clamp(grid[i], 0.0, 1.0);
    const double tol = 3.0 * curve.std_errors[i] + 1e-12;
    CHECK(std::abs(curve.values[i] - expect) <= tol);
    if (i > 0) CHECK(curve.values[i] >= curve.values[i - 1]);
  }
  CHECK(curve.bound_slope == doctest::Approx((4.0 * 0.5 / 1.0) * 2.0 * 10 / 10));
  std::vector<double> bad = {1.0, 0.0};
  CHECK_THROWS_AS(ids_estimate(m, Construction::Auto, bad, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("large disorder probability experiment") {
  ModelSpec m;
  m.d = 1;
  m.L = 3;
  m.density = CouplingDensity::uniform(0.0, 2e6);
  const DisorderProbability res = large_disorder_probability(
      m, Construction::Auto, 1e6, 2, 10000, 20240601);
  CHECK(res.upper95 <= res.target + 1e-9);
  CHECK(res.empirical <= res.upper95);
  CHECK(res.records.size() == 1);

  CHECK_THROWS_AS(
      large_disorder_probability(m, Construction::Auto, 1e6, 2, 50, 1),
      std::invalid_argument);
  ModelSpec weak = m;
  weak.density = CouplingDensity::uniform(0.0, 1.0);
  CHECK_THROWS_WITH_AS(
      large_disorder_probability(weak, Construction::Auto, 0.5, 2, 200, 1),
      doctest::Contains("not in large-disorder regime"), std::runtime_error);
}

TEST_CASE("master inequality holds for every construction") {
  struct Cell {
    ModelSpec model;
    Construction construction;
    CoefficientField::Tag expect;
  };
  std::vector<Cell> cells;

  ModelSpec delta1;
  delta1.L = 8;
  cells.push_back({delta1, Construction::Auto, CoefficientField::Tag::CorollaryWindow});
  ModelSpec diag = delta1;
  diag.hopping = 0.0;
  cells.push_back({diag, Construction::Auto, CoefficientField::Tag::CorollaryWindow});

  ModelSpec dipole1;
  dipole1.L = 8;
  dipole1.u = SingleSitePotential::dipole_1d();
  cells.push_back({dipole1, Construction::Monomial, CoefficientField::Tag::Monomial});

  ModelSpec delta2;
  delta2.d = 2;
  delta2.L = 5;
  delta2.u = SingleSitePotential::delta(2);
  cells.push_back({delta2, Construction::Auto, CoefficientField::Tag::CorollaryWindow});

  ModelSpec product2;
  product2.d = 2;
  product2.L = 5;
  product2.u = SingleSitePotential::compact(2, {{{0, 0}, Rat(1)},
                                                {{0, -1}, Rat(-1)},
                                                {{-1, 0}, Rat(-1)},
                                                {{-1, -1}, Rat(1)}});
  cells.push_back({product2, Construction::Monomial, CoefficientField::Tag::Monomial});

  ModelSpec geo;
  geo.L = 8;
  geo.u = SingleSitePotential::geometric({}, 1.0, 0.5);
  cells.push_back({geo, Construction::MeanWindow, CoefficientField::Tag::MeanWindow});

  ModelSpec ziptail;
  ziptail.L = 8;
  ziptail.u = SingleSitePotential::geometric({{0, Rat(1)}, {-1, Rat(-1)}}, 0.0, 0.5);
  cells.push_back(
      {ziptail, Construction::ExpTruncated, CoefficientField::Tag::ExpTruncated});

  std::uint64_t seed = 31000;
  for (const Cell& cell : cells) {
    CAPTURE(construction_name(cell.construction));
    CAPTURE(cell.model.d);
    const CoefficientField field =
        build_field(cell.model.u, cell.model.L, cell.construction);
    CHECK(field.tag == cell.expect);
    const double E = median_pilot_energy(cell.model, seed);
    const double eps = 0.1;
    const McEstimate est =
        mc_expected_count(cell.model, E - eps, E + eps, 600, seed++);
    const BoundBreakdown bound = abstract_bound(
        {field, cell.model.density, cell.model.u, cell.model.box(), eps, E});
    CHECK(est.estimate <= bound.value + 3.0 * est.std_error);
  }
}

TEST_CASE("epsilon sweep with hopping stays near linear in the bulk") {
  // box large enough that the empirical DOS is locally flat at the median
  ModelSpec m;
  m.d = 1;
  m.L = 24;
  const double E = median_pilot_energy(m, 606);
  const EpsilonSweep sweep = epsilon_sweep(
      m, Construction::Auto, E, {0.02, 0.05, 0.1, 0.2}, 3000, 606);
  CHECK(sweep.fit.slope > 0.8);
  CHECK(sweep.fit.slope < 1.2);
}

TEST_CASE("median pilot energy sits inside the spectrum and is deterministic") {
  ModelSpec m;
  m.d = 1;
  m.L = 8;
  const double a = median_pilot_energy(m, 11);
  const double b = median_pilot_energy(m, 11);
  CHECK(a == b);
  // hopping-on delta model: spectrum inside [-2, 3]
  CHECK(a > -2.0);
  CHECK(a < 3.0);
}

TEST_CASE("line fit recovers exact coefficients") {
  const std::vector<double> xs = {1, 2, 3, 4, 5};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.0 * x + 1.0);
  const FitResult fit = fit_line(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.std_error == doctest::Approx(0.0));
  CHECK_THROWS_AS(fit_line({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

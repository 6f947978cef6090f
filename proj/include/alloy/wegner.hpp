#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alloy/coupling.hpp"
#include "alloy/density.hpp"
#include "alloy/hamiltonian.hpp"
#include "alloy/mc.hpp"
#include "alloy/potential.hpp"
#include "alloy/records.hpp"
#include "alloy/transform.hpp"

namespace alloy {

// Everything needed to draw one operator sample H_{omega,L}.
struct ModelSpec {
  int d = 1;
  int L = 10;
  double hopping = 1.0;           // 0 turns the kinetic part off (diagonal model)
  bool laplacian_diagonal = false;  // subtract 2d*hopping on the diagonal
  SingleSitePotential u = SingleSitePotential::delta(1);
  CouplingDensity density = CouplingDensity::uniform(0.0, 1.0);

  Box box() const { return Box(d, L); }
  ModelSpec with_L(int side) const;
  std::string potential_id() const;
};

enum class Construction { Auto, Monomial, MeanWindow, CorollaryWindow, ExpTruncated };

std::string construction_name(Construction c);
Construction parse_construction(const std::string& name);

// Auto picks the mean-based window when u-bar is usable and falls back to
// the monomial transform (compact) or the truncated series window (decayed).
CoefficientField build_field(const SingleSitePotential& u, int L, Construction c);

struct WegnerBoundInput {
  CoefficientField field;
  CouplingDensity density = CouplingDensity::uniform(0.0, 1.0);
  SingleSitePotential u = SingleSitePotential::delta(1);
  Box box{1, 1};
  double epsilon = 0.0;
  double energy = 0.0;
};

// The asserted bound is `value`, the computable form
// (4 eps / delta) * ||f||_BV * sum_k |a_L(k)| rank(chi_Lambda u(.-k)).
// The literal closed forms from the headline statements are attached for
// display when the construction matches; the degenerate one carries an
// implicit constant c_u that is reported as 1.
struct BoundBreakdown {
  double value = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double bv_norm = 0.0;
  double weighted_rank_sum = 0.0;  // sum_k |a_L(k)| rank_k
  std::optional<double> literal_degenerate;     // c_u rank(u) bv eps (L+n)^{d(n+1)}, c_u = 1
  std::optional<double> literal_nondegenerate;  // (8/|u-bar|) min(L^d, rank) bv eps (L+m)^d
  std::optional<double> literal_lipschitz;      // (4/|u-bar|) rank(u) bv eps (L+n)^d
};

BoundBreakdown abstract_bound(const WegnerBoundInput& in);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
};

// Spectrum of one sample; diagonal models bypass the dense solver.
Eigen::VectorXd model_spectrum(const ModelSpec& model, const CouplingField& omega);

CouplingField draw_couplings(const ModelSpec& model, std::uint64_t master_seed,
                             std::uint64_t sample_index);

// Mean and standard error of the eigenvalue count in [lo, hi]; bitwise
// deterministic in (model, master_seed) for either execution mode.
McEstimate mc_expected_count(const ModelSpec& model, double lo, double hi,
                             std::int64_t n_samples, std::uint64_t master_seed,
                             Mode mode = Mode::OpenMP);

// Median of the pooled spectrum over a small pilot run; a deterministic
// bulk-energy choice when the caller does not fix E.
double median_pilot_energy(const ModelSpec& model, std::uint64_t master_seed,
                           int pilot_samples = 16);

struct FitResult {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
};

// Least squares line through (x_i, y_i) with the usual residual-based
// standard error on the slope.
FitResult fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct EpsilonSweep {
  FitResult fit;               // slope of log estimate vs log eps
  bool saturated = false;      // estimates flat: eps beyond the resolvable regime
  std::vector<ExperimentRecord> records;
};

EpsilonSweep epsilon_sweep(const ModelSpec& model, Construction construction,
                           double E, const std::vector<double>& eps_list,
                           std::int64_t n_samples, std::uint64_t master_seed,
                           Mode mode = Mode::OpenMP);

struct VolumeSweep {
  FitResult fit;               // exponent of log estimate vs log L
  std::vector<ExperimentRecord> records;
};

// Checks estimate <= bound + 3 sigma at every size before fitting.
VolumeSweep volume_sweep(const ModelSpec& model, Construction construction,
                         double E, double epsilon, const std::vector<int>& L_list,
                         std::int64_t n_samples, std::uint64_t master_seed,
                         Mode mode = Mode::OpenMP);

struct IDSCurve {
  std::vector<double> energies;
  std::vector<double> values;      // N_L(E), normalized by the site count
  std::vector<double> std_errors;
  double bound_slope = 0.0;        // Lipschitz slope from the eps=1/2 bound
  std::vector<ExperimentRecord> records;
};

IDSCurve ids_estimate(const ModelSpec& model, Construction construction,
                      const std::vector<double>& energy_grid,
                      std::int64_t n_samples, std::uint64_t master_seed,
                      Mode mode = Mode::OpenMP);

struct DisorderProbability {
  double empirical = 0.0;
  double upper95 = 0.0;    // Wilson 95% upper confidence limit
  double bound = 0.0;      // min(1, abstract bound at eps = e^{-L})
  double target = 0.0;     // max(bound, L^{-p})
  std::int64_t hits = 0;
  std::vector<ExperimentRecord> records;
};

// P{ dist(spec H, E) < e^{-L} } under strong disorder (bv <= e^{-2L}).
DisorderProbability large_disorder_probability(const ModelSpec& model,
                                               Construction construction,
                                               double E, int p,
                                               std::int64_t n_samples,
                                               std::uint64_t master_seed,
                                               Mode mode = Mode::OpenMP);

}  // namespace alloy

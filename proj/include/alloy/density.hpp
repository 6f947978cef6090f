#pragma once

#include <string>
#include <utility>
#include <vector>

namespace alloy {

// Coupling-constant density f with a closed-form bounded-variation norm.
// ||f||_BV = sum of jump heights + integral of |f'|; its inverse measures
// disorder strength.  Construction validates normalization (integral 1
// within 1e-12), so an unnormalized density cannot exist.
class CouplingDensity {
 public:
  enum class Kind { Uniform, Triangular, PiecewiseLinear };

  static CouplingDensity uniform(double a, double b);
  // Symmetric triangle on [a,b], peak 2/(b-a) at the midpoint.
  static CouplingDensity triangular(double a, double b);
  // Continuous piecewise-linear density through sorted knots (x_i, y_i),
  // zero outside [x_0, x_N]; boundary values y_0, y_N count as jumps.
  static CouplingDensity piecewise_linear(std::vector<std::pair<double, double>> knots);

  Kind kind() const { return kind_; }
  double bv_norm() const { return bv_; }
  std::pair<double, double> support() const { return {lo_, hi_}; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  double inverse_cdf(double u) const;
  double mean() const;
  std::string id() const;

 private:
  CouplingDensity() = default;
  void validate_mass() const;

  Kind kind_ = Kind::Uniform;
  double lo_ = 0.0, hi_ = 1.0;
  double bv_ = 2.0;
  std::vector<std::pair<double, double>> knots_;
  std::vector<double> cum_;  // cumulative mass at each knot (piecewise kind)
};

}  // namespace alloy

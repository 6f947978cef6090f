#pragma once

#include <Eigen/Dense>
#include <vector>

#include "alloy/hamiltonian.hpp"

namespace alloy {

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
};

// Full decomposition, validated against the residual and orthonormality
// contract (1e-10 relative to the Frobenius norm).
EigenSystem eig_symmetric(const Eigen::MatrixXd& H);

// Eigenvalues only; cheaper, used by the sampling loops.
Eigen::VectorXd spectrum_of(const Eigen::MatrixXd& H);

int count_in_interval(const Eigen::VectorXd& values, double lo, double hi);

double spectral_distance(const Eigen::VectorXd& values, double E);

// dE_i/d omega_k for a simple eigenvalue by first-order perturbation:
// <psi_i, chi u(. - k) psi_i>.  Throws when the eigenvalue is degenerate
// at gap <= 1e-8.
double eigenvalue_derivative(const EigenSystem& sys, int i,
                             const SingleSitePotential& u, const Point& k,
                             const Box& box);

// C^2 monotone switch rho with rho = -1 left of -eps, 0 right of +eps,
// quintic smoothstep in between; |rho'| <= 1/eps.
class SwitchFunction {
 public:
  explicit SwitchFunction(double eps);
  double operator()(double t) const;
  double derivative(double t) const;
  double eps() const { return eps_; }
  double derivative_bound() const { return 0.9375 / eps_; }

 private:
  double eps_;
};

// |sum_i rho(E_i - E) - rho(E_i' - E)| for two operator samples; bounded by
// the rank of the perturbation between them.
double spectral_shift(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const SwitchFunction& rho, double E);

}  // namespace alloy

#include "alloy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alloy {

EigenSystem eig_symmetric(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver did not converge");
  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};

  const double scale = 1.0 + H.norm();
  double residual =
      (H * sys.vectors - sys.vectors * sys.values.asDiagonal()).norm();
  if (residual > 1e-10 * scale)
    throw std::runtime_error("eigendecomposition residual out of contract");
  const auto n = H.rows();
  double ortho = (sys.vectors.transpose() * sys.vectors -
                  Eigen::MatrixXd::Identity(n, n))
                     .norm();
  if (ortho > 1e-10 * (1.0 + std::sqrt(static_cast<double>(n))))
    throw std::runtime_error("eigenvector basis is not orthonormal");
  return sys;
}

Eigen::VectorXd spectrum_of(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver did not converge");
  return solver.eigenvalues();
}

int count_in_interval(const Eigen::VectorXd& values, double lo, double hi) {
  int c = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i] >= lo && values[i] <= hi) ++c;
  return c;
}

double spectral_distance(const Eigen::VectorXd& values, double E) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i)
    best = std::min(best, std::abs(values[i] - E));
  return best;
}

double eigenvalue_derivative(const EigenSystem& sys, int i,
                             const SingleSitePotential& u, const Point& k,
                             const Box& box) {
  const Eigen::Index n = sys.values.size();
  if (i < 0 || i >= n) throw std::out_of_range("eigenvalue index");
  double gap = std::numeric_limits<double>::infinity();
  if (i > 0) gap = std::min(gap, sys.values[i] - sys.values[i - 1]);
  if (i + 1 < n) gap = std::min(gap, sys.values[i + 1] - sys.values[i]);
  if (gap <= 1e-8)
    throw std::runtime_error("degenerate eigenvalue; derivative not simple");

  double acc = 0.0;
  for (const Point& x : box.points()) {
    double uval = u.dim() == 1 ? u.value1(x[0] - k[0]) : u.value(point_sub(x, k));
    if (uval == 0.0) continue;
    double psi = sys.vectors(box.index_of(x), i);
    acc += uval * psi * psi;
  }
  return acc;
}

SwitchFunction::SwitchFunction(double eps) : eps_(eps) {
  if (!(eps > 0)) throw std::invalid_argument("switch width must be positive");
}

double SwitchFunction::operator()(double t) const {
  if (t <= -eps_) return -1.0;
  if (t >= eps_) return 0.0;
  double s = (t + eps_) / (2 * eps_);  // in (0,1)
  double smooth = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
  return smooth - 1.0;
}

double SwitchFunction::derivative(double t) const {
  if (t <= -eps_ || t >= eps_) return 0.0;
  double s = (t + eps_) / (2 * eps_);
  double ds = 30.0 * s * s * (1.0 - s) * (1.0 - s);
  return ds / (2 * eps_);
}

double spectral_shift(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const SwitchFunction& rho, double E) {
  if (a.size() != b.size())
    throw std::invalid_argument("spectra have different sizes");
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    s += rho(a[i] - E) - rho(b[i] - E);
  return std::abs(s);
}

}  // namespace alloy

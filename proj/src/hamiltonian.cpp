#include "alloy/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace alloy {

Eigen::MatrixXd laplacian_restriction(const Box& box) {
  const auto n = box.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    Point p = box.point_at(i);
    for (int c = 0; c < box.dim(); ++c) {
      Point q = p;
      q[c] = p[c] + 1;
      if (box.contains(q)) {
        const auto j = box.index_of(q);
        A(i, j) = 1.0;
        A(j, i) = 1.0;
      }
    }
  }
  return A;
}

std::vector<Point> coupling_index_set(const SingleSitePotential& u, const Box& box,
                                      double tail_rel) {
  const int d = box.dim();
  const int L = box.side();
  if (u.compactly_supported()) {
    if (u.dim() != d) throw std::invalid_argument("potential/box dimension mismatch");
    const int n = u.reach();
    return cuboid_points(std::vector<int>(d, 0), std::vector<int>(d, L + n));
  }
  if (d != 1) throw std::invalid_argument("geometric potentials are 1D only");
  // Need k with u(x-k) relevant for some x in [0,L]; truncate the tail at
  // radius T where the discarded mass is below tail_rel (times max|omega|,
  // which scales out of the comparison).
  const int T = u.truncation_radius(tail_rel);
  return cuboid_points({-T}, {L + T});
}

Eigen::VectorXd build_potential(const SingleSitePotential& u,
                                const CouplingField& omega, const Box& box) {
  const auto nsites = box.size();
  Eigen::VectorXd V = Eigen::VectorXd::Zero(nsites);
  if (u.compactly_supported()) {
    if (u.dim() != box.dim())
      throw std::invalid_argument("potential/box dimension mismatch");
    for (std::int64_t i = 0; i < nsites; ++i) {
      const Point x = box.point_at(i);
      double acc = 0.0;
      for (const auto& [p, val] : u.values())
        acc += omega.at(point_sub(x, p)) * to_double(val);
      V(i) = acc;
    }
    return V;
  }
  // Geometric 1D: sum over the truncated stencil; the remainder is bounded
  // by tail_mass < 1e-14 * max|omega|.
  const int T = u.truncation_radius(1e-14);
  for (std::int64_t i = 0; i < nsites; ++i) {
    const long long x = box.point_at(i)[0];
    double acc = 0.0;
    for (int j = -T; j <= T; ++j) {
      const double uv = u.value1(j);
      if (uv == 0.0) continue;
      acc += omega.at(Point{static_cast<int>(x - j)}) * uv;
    }
    V(i) = acc;
  }
  return V;
}

BoxHamiltonian build_hamiltonian(const SingleSitePotential& u,
                                 const CouplingField& omega, const Box& box,
                                 bool hopping, bool laplacian_diagonal) {
  const auto n = box.size();
  Eigen::MatrixXd M =
      hopping ? laplacian_restriction(box) : Eigen::MatrixXd::Zero(n, n);
  const Eigen::VectorXd V = build_potential(u, omega, box);
  M.diagonal() += V;
  if (hopping && laplacian_diagonal)
    M.diagonal().array() -= 2.0 * box.dim();
  return BoxHamiltonian{box, std::move(M), hopping, laplacian_diagonal};
}

int rank_of_translate(const SingleSitePotential& u, const Point& k, const Box& box) {
  if (u.compactly_supported()) {
    int r = 0;
    for (const auto& [p, val] : u.values()) {
      (void)val;
      if (box.contains(point_add(p, k))) ++r;
    }
    return r;
  }
  // Geometric with nonzero tail: nonzero on the whole box apart from
  // explicit zero head overrides.
  if (u.tail_amplitude() != 0.0) {
    int r = static_cast<int>(box.size());
    for (const auto& [j, val] : u.head())
      if (val == 0 && box.contains(Point{j + k.at(0)})) --r;
    return r;
  }
  int r = 0;
  for (const auto& [j, val] : u.head())
    if (val != 0 && box.contains(Point{j + k.at(0)})) ++r;
  return r;
}

}  // namespace alloy

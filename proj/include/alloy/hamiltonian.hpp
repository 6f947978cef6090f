#pragma once

#include <Eigen/Dense>

#include <vector>

#include "alloy/coupling.hpp"
#include "alloy/geometry.hpp"
#include "alloy/potential.hpp"

namespace alloy {

// Finite cube restriction H_{omega,L}, assembled dense.
struct BoxHamiltonian {
  Box box;
  Eigen::MatrixXd matrix;
  bool hopping = true;
  bool laplacian_diagonal = false;
};

// Adjacency matrix of the box graph: 1 at nearest-neighbor pairs, zero
// diagonal.  The combinatorial Laplacian differs by the -2d*I shift, which
// only translates spectra; a flag on build_hamiltonian adds it.
Eigen::MatrixXd laplacian_restriction(const Box& box);

// Lambda^+: every k whose coupling can influence the potential inside the
// box.  Compact u with supp in [-n,0]^d gives {0..L+n}^d exactly.  Geometric
// u is truncated where the tail contributes less than tail_rel (relative to
// max|omega|) to any site.
std::vector<Point> coupling_index_set(const SingleSitePotential& u, const Box& box,
                                      double tail_rel = 1e-14);

// V_omega(x) = sum_k omega_k u(x-k) on the box, in box index order.
Eigen::VectorXd build_potential(const SingleSitePotential& u,
                                const CouplingField& omega, const Box& box);

BoxHamiltonian build_hamiltonian(const SingleSitePotential& u,
                                 const CouplingField& omega, const Box& box,
                                 bool hopping, bool laplacian_diagonal = false);

// rank(chi_Lambda u(.-k)): number of box sites where the translate is nonzero.
int rank_of_translate(const SingleSitePotential& u, const Point& k, const Box& box);

}  // namespace alloy

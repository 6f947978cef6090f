#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alloy/geometry.hpp"
#include "alloy/polynomial.hpp"
#include "alloy/potential.hpp"
#include "alloy/rational.hpp"

namespace alloy {

// Intermediate state of the dimension reduction: a potential on Z^j with
// support in [-n,0]^j, plus the monomial exponents already consumed
// (most recently consumed first, i.e. M_{j+1}, ..., M_d).
struct ReducedPotential {
  int level = 0;
  int reach = 0;
  std::map<Point, Rat> values;  // nonzero entries only
  std::vector<int> consumed_exponents;

  bool is_scalar() const { return level == 0; }
  Rat scalar() const;  // the level-0 value
};

ReducedPotential reduction_start(const SingleSitePotential& u);

struct ReductionStep {
  int exponent;  // M_j for the consumed coordinate
  ReducedPotential reduced;
};

// One step j -> j-1: per prefix slice, the accompanying polynomial in the
// last coordinate; M_j is the minimal root order at t=1 over the family and
// the reduced value is the M_j-th derivative there.
ReductionStep reduce_dimension(const ReducedPotential& w);

// Averaging coefficients a_L with their positivity certificate delta.
struct CoefficientField {
  enum class Tag { Monomial, MeanWindow, CorollaryWindow, ExpTruncated };

  int dim = 1;
  Tag tag = Tag::Monomial;
  std::map<Point, Rat> weights;  // finite domain; zero weights kept (domain matters)
  double delta = 0.0;
  std::optional<Rat> delta_exact;     // present on the exact-arithmetic paths
  std::vector<int> exponents;         // monomial: M_1..M_d; exp-truncated: {D}
  int sign = 1;                       // normalization flip applied

  Rat weight_at(const Point& k) const;  // 0 outside the domain
  Rat sum_abs_weights() const;
  static std::string tag_name(Tag t);

  // Text format: '#'-prefixed header (tag, delta, dim), then one line per
  // site "k1 ... kd : p/q".
  std::string serialize() const;
  static CoefficientField parse(std::istream& in);
};

// a_L(k) = sign * k1^M1 ... kd^Md on Lambda_{L+n} (exponent 0 means weight 1
// for every site of that axis).  The combination sum_k a_L(k) u(x-k) is the
// same nonzero constant delta at every x in Lambda_L, exactly.
CoefficientField build_monomial_coefficients(const SingleSitePotential& u, int L);

// For u-bar != 0.  Compact: +-1 on Lambda_{L+n}, delta = |u-bar|.
// Geometric: +-1 on [-m, L+m] with m minimal such that the tail mass
// outside radius m is at most |u-bar|/2, delta = |u-bar|/2.
CoefficientField mean_window_coefficients(const SingleSitePotential& u, int L);

// Root order of the accompanying Laurent series at z=1, detected at a
// relative tolerance against the absolute-value series.
struct LaurentRoot {
  int order = 0;       // D
  double value = 0.0;  // c_F = F^(D)(1)
  double abs_sum = 0.0;
};

LaurentRoot laurent_root_order(const SingleSitePotential& u, double tol = 1e-10,
                               int j_max = 32);

struct WindowCaps {
  int lo_min;   // most negative window start considered
  int hi_max;   // largest window end considered
};

WindowCaps default_window_caps(int L);

// Minimal window {lo..hi} with sign * sum_{k in W} k^D u(x-k) >= |c_F|/2 for
// every x in Lambda_L; searched by total size, then by start.  Weights are
// the exact integers sign * k^D on the window.
CoefficientField truncation_window(const SingleSitePotential& u, int L,
                                   const LaurentRoot& root,
                                   std::optional<WindowCaps> caps = std::nullopt);

struct VerifyResult {
  bool exact = false;
  Rat min_exact;      // valid when exact
  double min_value = 0.0;
};

// min_x sum_k a_L(k) u(x-k) over the box; exact rational arithmetic for
// compact u.  Throws "positivity certificate failed" when the minimum drops
// below the field's delta.
VerifyResult verify_positive_combination(const CoefficientField& field,
                                         const SingleSitePotential& u,
                                         const Box& box);

}  // namespace alloy

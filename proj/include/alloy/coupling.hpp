#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "alloy/density.hpp"
#include "alloy/geometry.hpp"
#include "alloy/rng.hpp"

namespace alloy {

// Realization of the i.i.d. couplings omega_k on a finite index set, with
// the provenance needed to regenerate it bit-for-bit.
struct CouplingField {
  std::map<Point, double> omega;
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;

  double at(const Point& k) const;
  bool covers(const Point& k) const { return omega.count(k) != 0; }
  double max_abs() const;
};

// Inverse-CDF draws; each site's value is a pure function of
// (master_seed, sample_index, site), so the result does not depend on the
// order sites are listed in or on how work is split across threads.
CouplingField sample_couplings(const CouplingDensity& density,
                               const std::vector<Point>& index_set,
                               std::uint64_t master_seed,
                               std::uint64_t sample_index);

}  // namespace alloy

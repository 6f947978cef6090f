#include "alloy/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace alloy {

double CouplingField::at(const Point& k) const {
  auto it = omega.find(k);
  if (it == omega.end())
    throw std::runtime_error("incomplete coupling field: missing site " +
                             point_to_string(k));
  return it->second;
}

double CouplingField::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : omega) {
    (void)k;
    m = std::max(m, std::abs(v));
  }
  return m;
}

CouplingField sample_couplings(const CouplingDensity& density,
                               const std::vector<Point>& index_set,
                               std::uint64_t master_seed,
                               std::uint64_t sample_index) {
  CouplingField field;
  field.master_seed = master_seed;
  field.sample_index = sample_index;
  for (const Point& k : index_set) {
    const double u = rng::site_uniform(master_seed, sample_index, k);
    field.omega[k] = density.inverse_cdf(u);
  }
  return field;
}

}  // namespace alloy

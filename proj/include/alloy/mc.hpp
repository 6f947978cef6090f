#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alloy {

enum class Mode { Serial, OpenMP };

// Runs body(sample_index) for sample_index in [0, samples) and collects the
// results in index order.  Each sample draws its randomness from counter-based
// streams keyed by (seed, sample_index), so the two modes produce bitwise
// identical vectors.
template <typename T, typename Body>
std::vector<T> map_samples(std::int64_t samples, Mode mode, Body&& body) {
  if (samples < 0) throw std::invalid_argument("negative sample count");
  std::vector<T> out(static_cast<std::size_t>(samples));
  if (mode == Mode::Serial) {
    for (std::int64_t i = 0; i < samples; ++i)
      out[static_cast<std::size_t>(i)] = body(i);
    return out;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < samples; ++i)
    out[static_cast<std::size_t>(i)] = body(i);
#else
  for (std::int64_t i = 0; i < samples; ++i)
    out[static_cast<std::size_t>(i)] = body(i);
#endif
  return out;
}

struct MeanStd {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
};

// Two-pass mean and standard error, always accumulated in index order.
inline MeanStd reduce_mean_std(const std::vector<double>& xs) {
  MeanStd r;
  r.n = static_cast<std::int64_t>(xs.size());
  if (r.n == 0) return r;
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / static_cast<double>(r.n);
  if (r.n < 2) return r;
  double q = 0.0;
  for (double x : xs) q += (x - r.mean) * (x - r.mean);
  double var = q / static_cast<double>(r.n - 1);
  r.std_error = std::sqrt(var / static_cast<double>(r.n));
  return r;
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace alloy

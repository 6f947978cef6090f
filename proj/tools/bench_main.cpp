#include <chrono>
#include <cstdio>

#include "alloy/wegner.hpp"

// Times the sampling engine in both execution modes on a fixed workload and
// checks that the results are bitwise identical.

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  alloy::ModelSpec model;
  model.d = 1;
  model.L = 40;
  model.u = alloy::SingleSitePotential::dipole_1d();

  const std::int64_t samples = 400;
  const std::uint64_t seed = 20240801;

  std::printf("workload: d=%d L=%d, %lld samples, dense spectra (%lld x %lld)\n",
              model.d, model.L, static_cast<long long>(samples),
              static_cast<long long>(model.box().size()),
              static_cast<long long>(model.box().size()));
  std::printf("threads available: %d\n", alloy::thread_count());

  auto t0 = std::chrono::steady_clock::now();
  alloy::McEstimate serial =
      alloy::mc_expected_count(model, -0.1, 0.1, samples, seed, alloy::Mode::Serial);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  alloy::McEstimate parallel =
      alloy::mc_expected_count(model, -0.1, 0.1, samples, seed, alloy::Mode::OpenMP);
  const double t_parallel = seconds_since(t0);

  std::printf("serial:  %.3f s  estimate %.17g +- %.17g\n", t_serial,
              serial.estimate, serial.std_error);
  std::printf("openmp:  %.3f s  estimate %.17g +- %.17g\n", t_parallel,
              parallel.estimate, parallel.std_error);
  std::printf("speedup: %.2fx\n", t_serial / t_parallel);

  if (serial.estimate != parallel.estimate ||
      serial.std_error != parallel.std_error) {
    std::printf("FAIL: modes disagree\n");
    return 1;
  }
  std::printf("modes agree bitwise\n");
  return 0;
}

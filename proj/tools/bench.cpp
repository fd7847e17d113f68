// Compares the OpenMP kernels against their serial reference
// implementations and reports timings plus the largest deviation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mosaic/analysis.hpp"
#include "mosaic/reference.hpp"
#include "mosaic/samplers.hpp"

using namespace mosaic;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& f) {
  const double t0 = now_ms();
  f();
  return now_ms() - t0;
}

double max_rel_dev(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-30});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 2048;
  if (argc > 1) n = std::stoul(argv[1]);
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("n = %zu white-noise points\n\n", n);
  const auto ps = sample_white(n, 42);

  {
    std::vector<double> fast, slow;
    const double t_fast = timed([&] { fast = nearest_neighbor_distances(ps); });
    const double t_slow = timed([&] { slow = reference::nearest_neighbor_distances(ps); });
    std::printf("nn distances    grid %8.1f ms   brute %8.1f ms   speedup %5.1fx   max rel dev %.2e\n",
                t_fast, t_slow, t_slow / t_fast, max_rel_dev(fast, slow));
  }

  {
    PcfParams params;
    PcfCurve fast, slow;
    const double t_fast = timed([&] { fast = pcf(ps, params); });
    const double t_slow = timed([&] { slow = reference::pcf(ps, params); });
    std::printf("pcf             pruned %6.1f ms   direct %7.1f ms   speedup %5.1fx   max rel dev %.2e\n",
                t_fast, t_slow, t_slow / t_fast, max_rel_dev(fast.values, slow.values));
  }

  {
    const int max_freq = 32;
    RadialSpectrum fast, slow;
    const double t_fast = timed([&] { fast = radial_spectrum(ps, max_freq); });
    const double t_slow = timed([&] { slow = reference::radial_spectrum(ps, max_freq); });
    std::printf("radial spectrum tables %6.1f ms   direct %7.1f ms   speedup %5.1fx   max rel dev %.2e\n",
                t_fast, t_slow, t_slow / t_fast, max_rel_dev(fast.power, slow.power));
  }
  return 0;
}

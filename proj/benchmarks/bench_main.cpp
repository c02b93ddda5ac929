// Timing comparison of the OpenMP kernels against their serial references,
// plus the radix-2 transform against the direct O(n^2) sum.
// Build target: strobosim_bench. Not part of the test suite.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "strobosim/analysis.hpp"
#include "strobosim/fft.hpp"
#include "strobosim/kernels.hpp"
#include "strobosim/experiments.hpp"
#include "strobosim/protocol.hpp"
#include "strobosim/states.hpp"
#include "strobosim/transforms.hpp"

using namespace strobosim;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e99;
  for (int r = 0; r < repeats; ++r) best = std::min(best, time_once(fn));
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.4f ms %10.4f ms   speedup %.2fx\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

}  // namespace

int main() {
  const int n = 512;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#endif
  std::printf("%-34s %13s %13s\n", "kernel (n = 512)", "serial", "parallel");

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<fft::cdouble> field(static_cast<size_t>(n) * n);
  for (auto& z : field) z = fft::cdouble(dist(rng), dist(rng));

  {
    auto a = field;
    const double serial =
        best_of(5, [&] { kernels::transform_lines_serial(a.data(), n, 0, false, true); });
    auto b = field;
    const double parallel =
        best_of(5, [&] { kernels::transform_lines(b.data(), n, 0, false, true); });
    row("batched fft, rows", serial, parallel);
  }
  {
    auto a = field;
    const double serial =
        best_of(5, [&] { kernels::transform_lines_serial(a.data(), n, 1, false, true); });
    auto b = field;
    const double parallel =
        best_of(5, [&] { kernels::transform_lines(b.data(), n, 1, false, true); });
    row("batched fft, columns", serial, parallel);
  }
  {
    std::vector<double> values(1 << 22);
    for (auto& v : values) v = dist(rng);
    const double serial = best_of(5, [&] { (void)kernels::pairwise_sum(values); });
    const double parallel = best_of(5, [&] { (void)kernels::pairwise_sum_parallel(values); });
    row("pairwise sum, 4M doubles", serial, parallel);
  }

  // whole transforms, one thread vs all
  const WignerState state = squeezed_thermal(make_grid(n, 10.0), {0.05, 1.6});
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
  auto with_threads = [&](int t, const std::function<void()>& fn) {
    omp_set_num_threads(t);
    const double seconds = best_of(3, fn);
    omp_set_num_threads(max_threads);
    return seconds;
  };
  row("rotate by 1 degree",
      with_threads(1, [&] { (void)rotate(state, std::numbers::pi / 180.0); }),
      with_threads(max_threads, [&] { (void)rotate(state, std::numbers::pi / 180.0); }));
  row("nonlinear kick (split step)",
      with_threads(1, [&] { (void)nonlinear_kick_wigner(state, 0.002); }),
      with_threads(max_threads, [&] { (void)nonlinear_kick_wigner(state, 0.002); }));
  row("thermal damping",
      with_threads(1, [&] { (void)damp(state, {0.03}); }),
      with_threads(max_threads, [&] { (void)damp(state, {0.03}); }));
  row("wigner -> density",
      with_threads(1, [&] { (void)wigner_to_density(state); }),
      with_threads(max_threads, [&] { (void)wigner_to_density(state); }));
  row("moment <x^2>",
      with_threads(1, [&] { (void)moment(state, 2, 0); }),
      with_threads(max_threads, [&] { (void)moment(state, 2, 0); }));

  ProtocolConfig config = figure2_base_config();
  config.periods = 1;
  config.kicks_per_period = 6;
  row("single period (N = 6)",
      with_threads(1, [&] { (void)run_protocol(config); }),
      with_threads(max_threads, [&] { (void)run_protocol(config); }));
#endif

  // radix-2 against the direct sum, one line
  {
    std::vector<fft::cdouble> line(field.begin(), field.begin() + n);
    std::vector<fft::cdouble> out(n);
    const double direct = best_of(3, [&] { fft::naive_dft(line.data(), out.data(), n, false); });
    const double fast = best_of(3, [&] {
      auto copy = line;
      fft::transform(copy.data(), n, false);
    });
    row("single line: direct vs radix-2", direct, fast);
  }
  return 0;
}

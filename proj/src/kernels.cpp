#include "strobosim/kernels.hpp"

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strobosim::kernels {

namespace {

void transform_one_row(fft::cdouble* row, int n, bool inverse, bool centered) {
  if (centered) {
    fft::centered_transform(row, n, inverse);
  } else {
    fft::transform(row, n, inverse);
  }
}

void transform_one_col(fft::cdouble* field, int n, int col, bool inverse,
                       bool centered, std::vector<fft::cdouble>& scratch) {
  for (int i = 0; i < n; ++i) scratch[i] = field[static_cast<size_t>(i) * n + col];
  transform_one_row(scratch.data(), n, inverse, centered);
  for (int i = 0; i < n; ++i) field[static_cast<size_t>(i) * n + col] = scratch[i];
}

}  // namespace

void transform_lines_serial(fft::cdouble* field, int n, int axis, bool inverse,
                            bool centered) {
  if (axis == 0) {
    for (int i = 0; i < n; ++i) {
      transform_one_row(field + static_cast<size_t>(i) * n, n, inverse, centered);
    }
  } else {
    std::vector<fft::cdouble> scratch(n);
    for (int j = 0; j < n; ++j) {
      transform_one_col(field, n, j, inverse, centered, scratch);
    }
  }
}

void transform_lines(fft::cdouble* field, int n, int axis, bool inverse,
                     bool centered) {
  if (axis == 0) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      transform_one_row(field + static_cast<size_t>(i) * n, n, inverse, centered);
    }
  } else {
#pragma omp parallel
    {
      std::vector<fft::cdouble> scratch(n);
#pragma omp for schedule(static)
      for (int j = 0; j < n; ++j) {
        transform_one_col(field, n, j, inverse, centered, scratch);
      }
    }
  }
}

namespace {

double pairwise_block(const double* v, size_t len) {
  if (len <= 32) {
    double acc = 0.0;
    for (size_t i = 0; i < len; ++i) acc += v[i];
    return acc;
  }
  const size_t half = len / 2;
  return pairwise_block(v, half) + pairwise_block(v + half, len - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return pairwise_block(values.data(), values.size());
}

double pairwise_sum_parallel(std::span<const double> values) {
  const size_t len = values.size();
  const size_t chunk = 8192;  // fixed: result independent of thread count
  if (len <= chunk) return pairwise_sum(values);
  const size_t n_chunks = (len + chunk - 1) / chunk;
  std::vector<double> partial(n_chunks);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
    const size_t begin = static_cast<size_t>(c) * chunk;
    const size_t count = std::min(chunk, len - begin);
    partial[static_cast<size_t>(c)] = pairwise_block(values.data() + begin, count);
  }
  return pairwise_sum(partial);
}

void phase_ramp(fft::cdouble* out, int count, double phase0, double dphase) {
  constexpr int refresh = 32;
  fft::cdouble cur(std::cos(phase0), std::sin(phase0));
  const fft::cdouble step(std::cos(dphase), std::sin(dphase));
  for (int i = 0; i < count; ++i) {
    if (i % refresh == 0) {
      const double phi = phase0 + dphase * i;
      cur = fft::cdouble(std::cos(phi), std::sin(phi));
    }
    out[i] = cur;
    cur *= step;
  }
}

}  // namespace strobosim::kernels

#pragma once

#include <span>

#include "strobosim/fft.hpp"

namespace strobosim::kernels {

// Batched FFT over the lines of an n-by-n complex field stored row-major.
// axis 0 transforms each contiguous row, axis 1 each strided column.
// The parallel variants split work per line; results are bitwise identical
// to the serial ones for any thread count.
void transform_lines(fft::cdouble* field, int n, int axis, bool inverse,
                     bool centered);
void transform_lines_serial(fft::cdouble* field, int n, int axis, bool inverse,
                            bool centered);

// Deterministic pairwise summation (fixed reduction tree).
double pairwise_sum(std::span<const double> values);

// Chunked pairwise summation with OpenMP over chunks. Chunk boundaries
// depend only on the length, so the result is independent of thread count
// (and equal to pairwise_sum of the chunk partials).
double pairwise_sum_parallel(std::span<const double> values);

// Fills out[i] = exp(i * (phase0 + i * dphase)) for i in [0, count) using a
// running product with periodic exact refresh. Cheap replacement for a polar
// call per element in shear and kick ramps.
void phase_ramp(fft::cdouble* out, int count, double phase0, double dphase);

}  // namespace strobosim::kernels

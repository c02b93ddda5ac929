#pragma once

#include <complex>
#include <span>
#include <vector>

namespace strobosim::fft {

using cdouble = std::complex<double>;

// In-place radix-2 transform. Forward (inverse=false) is unscaled,
// sum_i f_i exp(-2 pi i k i / n); the inverse flips the kernel sign and
// divides by n. n must be a power of two.
void transform(cdouble* data, int n, bool inverse);

// O(n^2) direct evaluation of the same sums; reference for the radix-2 path.
void naive_dft(const cdouble* in, cdouble* out, int n, bool inverse);

// Transform for samples on a centered grid: index i stands for coordinate
// (i - n/2), index k for frequency (k - n/2). Forward computes, unscaled,
//   H_k = sum_i f_i exp(-2 pi i (k - n/2)(i - n/2) / n)
// and the inverse flips the kernel sign and divides by n.
// Requires n divisible by 4 (true for every grid in this project).
void centered_transform(cdouble* data, int n, bool inverse);

// Band-limited 2x upsample of real samples on a centered grid: output has
// 2n samples at half the spacing over the same extent, exact for fields
// band-limited on the input grid.
std::vector<double> upsample2x_centered(std::span<const double> samples);

}  // namespace strobosim::fft

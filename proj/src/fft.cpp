#include "strobosim/fft.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "strobosim/errors.hpp"
#include "strobosim/grid.hpp"

namespace strobosim::fft {

namespace {

struct Tables {
  std::vector<int> bitrev;        // index permutation
  std::vector<cdouble> twiddle;   // exp(-2 pi i k / n), k < n/2
};

const Tables& tables_for(int n) {
  static std::mutex mutex;
  static std::map<int, Tables> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Tables t;
  t.bitrev.resize(n);
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b) {
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    }
    t.bitrev[i] = r;
  }
  t.twiddle.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double phi = -2.0 * std::numbers::pi * k / n;
    t.twiddle[k] = cdouble(std::cos(phi), std::sin(phi));
  }
  return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

void transform(cdouble* data, int n, bool inverse) {
  if (!is_power_of_two(n)) {
    throw validation_error("fft: length must be a power of two");
  }
  if (n == 1) return;
  const Tables& t = tables_for(n);
  for (int i = 0; i < n; ++i) {
    const int j = t.bitrev[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int base = 0; base < n; base += len) {
      for (int k = 0; k < half; ++k) {
        cdouble w = t.twiddle[k * step];
        if (inverse) w = std::conj(w);
        const cdouble odd = data[base + k + half] * w;
        const cdouble even = data[base + k];
        data[base + k] = even + odd;
        data[base + k + half] = even - odd;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / n;
    for (int i = 0; i < n; ++i) data[i] *= scale;
  }
}

void naive_dft(const cdouble* in, cdouble* out, int n, bool inverse) {
  const double sign = inverse ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    cdouble acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const double phi = sign * 2.0 * std::numbers::pi * k * i / n;
      acc += in[i] * cdouble(std::cos(phi), std::sin(phi));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
}

void centered_transform(cdouble* data, int n, bool inverse) {
  // With n divisible by 4 the centered kernel factors into the plain DFT
  // kernel times (-1)^i and (-1)^k twist factors.
  assert(n % 4 == 0);
  for (int i = 1; i < n; i += 2) data[i] = -data[i];
  transform(data, n, inverse);
  for (int k = 1; k < n; k += 2) data[k] = -data[k];
}

std::vector<double> upsample2x_centered(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<cdouble> spec(n);
  for (int i = 0; i < n; ++i) spec[i] = samples[i];
  centered_transform(spec.data(), n, false);

  // Embed the centered spectrum into the 2n-point centered spectrum. The
  // input bin k carries frequency (k - n/2); it lands at index k + n/2.
  // The lone -Nyquist bin (k = 0) splits evenly between -n/2 and +n/2 to
  // keep the interpolant real.
  std::vector<cdouble> wide(2 * n, cdouble(0.0, 0.0));
  wide[n / 2] = 0.5 * spec[0];
  wide[n / 2 + n] = 0.5 * spec[0];
  for (int k = 1; k < n; ++k) wide[k + n / 2] = spec[k];
  centered_transform(wide.data(), 2 * n, true);

  std::vector<double> out(2 * n);
  for (int i = 0; i < 2 * n; ++i) out[i] = 2.0 * wide[i].real();
  return out;
}

}  // namespace strobosim::fft

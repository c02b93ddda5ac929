#include "strobosim/airy.hpp"

#include <cmath>
#include <numbers>

namespace strobosim {

namespace {

// Ai(0) and -Ai'(0).
constexpr double kC1 = 0.35502805388781723926;
constexpr double kC2 = 0.25881940379280679841;

double ai_series(double x) {
  // Ai(x) = c1 f(x) - c2 g(x) with
  //   f = sum x^{3k} prod 1/((3j-1)(3j)),  g = sum x^{3k+1} prod 1/((3j)(3j+1)).
  const double x3 = x * x * x;
  double f_term = 1.0;
  double g_term = x;
  double f = f_term;
  double g = g_term;
  for (int k = 0; k < 200; ++k) {
    f_term *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    g_term *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += f_term;
    g += g_term;
    if (std::abs(f_term) < 1e-18 && std::abs(g_term) < 1e-18) break;
  }
  return kC1 * f - kC2 * g;
}

// Adds terms of the Poincare expansion until they stop shrinking.
// u_{k+1} = u_k (6k+1)(6k+5) / (72 (k+1)).
double ai_asymptotic_pos(double x) {
  const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
  double u = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 0; k < 60; ++k) {
    u *= (6.0 * k + 1.0) * (6.0 * k + 5.0) / (72.0 * (k + 1.0));
    const double term = u / std::pow(zeta, k + 1.0);
    if (std::abs(term) >= std::abs(prev)) break;
    sum += (k % 2 == 0) ? -term : term;
    prev = term;
  }
  return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25)) * sum;
}

double ai_asymptotic_neg(double t) {
  const double zeta = 2.0 / 3.0 * std::pow(t, 1.5);
  // Even-index u_k feed the cosine sum, odd-index the sine sum.
  double p = 1.0;
  double q = 0.0;
  double u = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0 * (k - 1) + 1.0) * (6.0 * (k - 1) + 5.0) / (72.0 * k);
    const double term = u / std::pow(zeta, k);
    if (std::abs(term) >= std::abs(prev)) break;
    const int quarter = k % 4;
    if (quarter == 1) q += term;
    else if (quarter == 2) p -= term;
    else if (quarter == 3) q -= term;
    else p += term;
    prev = term;
  }
  const double phase = zeta - 0.25 * std::numbers::pi;
  return (std::cos(phase) * p + std::sin(phase) * q) /
         (std::sqrt(std::numbers::pi) * std::pow(t, 0.25));
}

}  // namespace

double airy_ai(double x) {
  if (x != x) return x;
  if (x > 108.0) return 0.0;  // exp(-2/3 x^1.5) underflows
  if (x >= 7.0) return ai_asymptotic_pos(x);
  if (x <= -7.0) return ai_asymptotic_neg(-x);
  return ai_series(x);
}

}  // namespace strobosim

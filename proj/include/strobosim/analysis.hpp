#pragma once

#include <utility>
#include <vector>

#include "strobosim/state.hpp"

namespace strobosim {

// Symmetric-ordered phase-space expectation <x^a p^b>_W, computed as
// sum x^a p^b W spacing^2 over the grid (normalized by the grid mass).
// a + b must not exceed 6; beyond that grid truncation dominates.
double moment(const WignerState& state, int fx_power, int fp_power);

// Variance of the nonlinear quadrature p - lambda x^2.
double nonlinear_variance(const WignerState& state, double lambda);

struct OptimalLambda {
  double lambda_star = 0.0;
  double sigma3_min = 0.0;
};

// Closed-form minimizer of the quadratic lambda -> sigma3(lambda):
// lambda* = Cov(p, x^2) / Var(x^2). Errors when Var(x^2) <= 1e-12.
OptimalLambda optimal_lambda(const WignerState& state);

struct LambdaRange {
  double lo = -0.12;
  double hi = 0.35;
  int count = 200;
};

struct SqueezingReport {
  std::vector<std::pair<double, double>> lambda_samples;  // (lambda, sigma3)
  double lambda_star = 0.0;
  double sigma3_min = 0.0;
  double vacuum_threshold_at_star = 0.0;  // 1 + 2 lambda*^2
  bool beats_vacuum = false;              // sigma3_min < 1 + 2 lambda*^2
  bool beats_shot_noise = false;          // sigma3_min < 1
};

SqueezingReport squeezing_report(const WignerState& state, LambdaRange range = {});

struct NegativityReport {
  double min_value = 0.0;         // global minimum of W
  double negativity_volume = 0.0; // integral of (|W| - W)/2
  std::vector<std::pair<double, double>> cut;  // (p, W(0, p)) on-grid column
};

NegativityReport negativity_report(const WignerState& state);

}  // namespace strobosim

#include "strobosim/transforms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "strobosim/errors.hpp"
#include "strobosim/kernels.hpp"

namespace strobosim {

namespace {

using fft::cdouble;

constexpr double kPi = std::numbers::pi;

double pow_int(double base, int exponent) {
  double acc = 1.0;
  for (int i = 0; i < exponent; ++i) acc *= base;
  return acc;
}

void kick_alias_guard(const GridSpec& grid, double gain, int order) {
  // Phase gradient of the pulse at the grid edge, per sample.
  const double gradient =
      0.5 * std::abs(gain) * order * pow_int(grid.half_extent, order - 1) * grid.spacing;
  if (gradient > kPi / 2.0) {
    std::ostringstream msg;
    msg << "nonlinear_kick: pulse phase under-resolved at the grid edge ("
        << gradient << " rad per sample > pi/2); results may alias";
    emit_warning(msg.str());
  }
}

std::vector<cdouble> to_complex(const std::vector<double>& real_field) {
  std::vector<cdouble> buf(real_field.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(real_field.size()); ++i) {
    buf[static_cast<size_t>(i)] = real_field[static_cast<size_t>(i)];
  }
  return buf;
}

std::vector<double> to_real(const std::vector<cdouble>& buf) {
  std::vector<double> out(buf.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(buf.size()); ++i) {
    out[static_cast<size_t>(i)] = buf[static_cast<size_t>(i)].real();
  }
  return out;
}

// Translation along x by alpha * p (points move x -> x + alpha p). After the
// centered transform along x the field is indexed [k][j]; row k picks up the
// ramp exp(-i w_k alpha p_j), linear in j.
void shear_x(std::vector<cdouble>& buf, const GridSpec& grid, double alpha) {
  const int n = grid.n_points;
  const double dw = 2.0 * kPi / (n * grid.spacing);
  kernels::transform_lines(buf.data(), n, 1, false, true);
#pragma omp parallel
  {
    std::vector<cdouble> ramp(n);
#pragma omp for schedule(static)
    for (int k = 0; k < n; ++k) {
      const double slope = -(k - n / 2) * dw * alpha * grid.spacing;  // per p step
      kernels::phase_ramp(ramp.data(), n, -slope * (n / 2), slope);
      cdouble* row = buf.data() + static_cast<size_t>(k) * n;
      for (int j = 0; j < n; ++j) row[j] *= ramp[j];
    }
  }
  kernels::transform_lines(buf.data(), n, 1, true, true);
}

// Translation along p by beta * x (points move p -> p + beta x).
void shear_p(std::vector<cdouble>& buf, const GridSpec& grid, double beta) {
  const int n = grid.n_points;
  const double dw = 2.0 * kPi / (n * grid.spacing);
  kernels::transform_lines(buf.data(), n, 0, false, true);
#pragma omp parallel
  {
    std::vector<cdouble> ramp(n);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double x = (i - n / 2) * grid.spacing;
      const double slope = -dw * beta * x;  // per frequency step
      kernels::phase_ramp(ramp.data(), n, -slope * (n / 2), slope);
      cdouble* row = buf.data() + static_cast<size_t>(i) * n;
      for (int kk = 0; kk < n; ++kk) row[kk] *= ramp[kk];
    }
  }
  kernels::transform_lines(buf.data(), n, 0, true, true);
}

// 90 degree clockwise rotation is an exact index permutation:
// W'(x_i, p_j) = W(-p_j, x_i), with the single boundary row wrapping
// periodically (consistent with the FFT representation).
std::vector<double> quarter_turn(const std::vector<double>& values, int n) {
  std::vector<double> out(values.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out[static_cast<size_t>(i) * n + j] = values[static_cast<size_t>((n - j) % n) * n + i];
    }
  }
  return out;
}

// Warns when a non-negligible fraction of |W| sits in the outermost frame of
// the grid; shears wrap periodically there.
void boundary_mass_guard(const WignerState& state) {
  const int n = state.grid.n_points;
  double frame = 0.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = std::abs(state.at(i, j));
      total += a;
      if (i < 2 || i >= n - 2 || j < 2 || j >= n - 2) frame += a;
    }
  }
  // 1e-5 of |W| in the frame is an order below where wrapped mass would start
  // to show in the 1e-4-scale negativity observables.
  if (total > 0.0 && frame / total > 1e-5) {
    emit_warning("rotate: state mass reaches the grid boundary; periodic shears will wrap it");
  }
}

}  // namespace

PositionDensityMatrix wigner_to_density(const WignerState& state) {
  const GridSpec& grid = state.grid;
  const int n = grid.n_points;
  const double spacing = grid.spacing;

  // Half-step samples of W along x, per p column (band-limited interpolation).
  std::vector<double> w_half(static_cast<size_t>(2 * n) * n);
#pragma omp parallel
  {
    std::vector<double> column(n);
#pragma omp for schedule(static)
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) column[i] = state.at(i, j);
      const std::vector<double> fine = fft::upsample2x_centered(column);
      for (int s = 0; s < 2 * n; ++s) w_half[static_cast<size_t>(s) * n + j] = fine[s];
    }
  }

  // Phase table over the anti-diagonal offset d = a - b:
  // T[d][j] = exp(+i p_j (a - b) spacing / 2).
  std::vector<cdouble> table(static_cast<size_t>(2 * n - 1) * n);
#pragma omp parallel for schedule(static)
  for (int d = 0; d < 2 * n - 1; ++d) {
    const int off = d - (n - 1);
    const double slope = off * spacing * spacing / 2.0;  // d(phase)/dj
    kernels::phase_ramp(table.data() + static_cast<size_t>(d) * n, n, -slope * (n / 2), slope);
  }

  PositionDensityMatrix rho;
  rho.grid = grid;
  rho.values.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(dynamic, 8)
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double* w_row = w_half.data() + static_cast<size_t>(a + b) * n;
      const cdouble* t_row = table.data() + static_cast<size_t>(a - b + n - 1) * n;
      double re = 0.0;
      double im = 0.0;
      for (int j = 0; j < n; ++j) {
        re += w_row[j] * t_row[j].real();
        im += w_row[j] * t_row[j].imag();
      }
      rho.at(a, b) = cdouble(re * spacing, im * spacing);
      rho.at(b, a) = std::conj(rho.at(a, b));
    }
  }
  rho.metadata = state.metadata;
  return rho;
}

WignerState density_to_wigner(const PositionDensityMatrix& rho) {
  const double defect = hermiticity_defect(rho);
  if (defect > 1e-8) {
    std::ostringstream msg;
    msg << "density_to_wigner: input is not hermitian (defect " << defect
        << " > 1e-8); upstream data is corrupt";
    throw numeric_error(msg.str());
  }

  const GridSpec& grid = rho.grid;
  const int n = grid.n_points;
  const double spacing = grid.spacing;

  // Kernel over the coherence offset: M[j][m] = exp(-i p_j y_m), y_m = (m - n/2) spacing.
  std::vector<cdouble> kernel(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    const double slope = -(j - n / 2) * spacing * spacing;  // d(phase)/dm
    kernels::phase_ramp(kernel.data() + static_cast<size_t>(j) * n, n, -slope * (n / 2), slope);
  }

  WignerState state;
  state.grid = grid;
  state.values.resize(static_cast<size_t>(n) * n);
  const double scale = spacing / (2.0 * kPi);
  double worst_imag = 0.0;

#pragma omp parallel reduction(max : worst_imag)
  {
    std::vector<cdouble> antidiag(n);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      // Coherences whose anti-diagonal leaves the matrix involve points
      // beyond the grid; they are not represented and enter as zero.
      const int reach = std::min(i, n - 1 - i);
      for (int m = 0; m < n; ++m) {
        const int off = m - n / 2;
        antidiag[m] = (off >= -reach && off <= reach) ? rho.at(i + off, i - off)
                                                      : cdouble(0.0, 0.0);
      }
      for (int j = 0; j < n; ++j) {
        const cdouble* k_row = kernel.data() + static_cast<size_t>(j) * n;
        double re = 0.0;
        double im = 0.0;
        for (int m = n / 2 - reach; m <= n / 2 + reach; ++m) {
          re += antidiag[m].real() * k_row[m].real() - antidiag[m].imag() * k_row[m].imag();
          im += antidiag[m].real() * k_row[m].imag() + antidiag[m].imag() * k_row[m].real();
        }
        state.at(i, j) = re * scale;
        const double resid = std::abs(im * scale);
        if (resid > worst_imag) worst_imag = resid;
      }
    }
  }
  if (worst_imag > 1e-10) {
    std::ostringstream msg;
    msg << "density_to_wigner: imaginary residue " << worst_imag
        << " exceeds 1e-10; input inconsistent with a real Wigner function";
    throw numeric_error(msg.str());
  }
  state.metadata = rho.metadata;
  return state;
}

PositionDensityMatrix nonlinear_kick(const PositionDensityMatrix& rho, double pulse_gain,
                                     int order) {
  if (order < 3) throw validation_error("nonlinear_kick: order must be >= 3");
  if (!std::isfinite(pulse_gain)) throw validation_error("nonlinear_kick: gain must be finite");
  kick_alias_guard(rho.grid, pulse_gain, order);

  const int n = rho.grid.n_points;
  const auto axis = coordinate_axis(rho.grid);
  std::vector<double> half_phase(n);
  for (int i = 0; i < n; ++i) half_phase[i] = 0.5 * pulse_gain * pow_int(axis[i], order);

  PositionDensityMatrix out;
  out.grid = rho.grid;
  out.metadata = rho.metadata;
  out.values.resize(rho.values.size());
#pragma omp parallel for schedule(static)
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double phi = half_phase[a] - half_phase[b];
      out.at(a, b) = rho.at(a, b) * cdouble(std::cos(phi), std::sin(phi));
    }
  }
  return out;
}

WignerState nonlinear_kick_wigner(const WignerState& state, double pulse_gain, int order) {
  if (order < 3) throw validation_error("nonlinear_kick: order must be >= 3");
  if (!std::isfinite(pulse_gain)) throw validation_error("nonlinear_kick: gain must be finite");
  kick_alias_guard(state.grid, pulse_gain, order);

  const int n = state.grid.n_points;
  const double dy = 2.0 * kPi / (n * state.grid.spacing);
  const auto axis = coordinate_axis(state.grid);

  std::vector<cdouble> buf = to_complex(state.values);
  // Rows hold W(x_i, .); the inverse centered transform maps the p axis to
  // the coherence coordinate y with step dy.
  kernels::transform_lines(buf.data(), n, 0, true, true);

  if (order == 3) {
    // Phase (g/2)[(x+y)^3 - (x-y)^3] = 3 g x^2 y + g y^3: a per-row ramp in y
    // times a shared cubic chirp.
    std::vector<cdouble> chirp(n);
    for (int m = 0; m < n; ++m) {
      const double y = (m - n / 2) * dy;
      const double phi = pulse_gain * y * y * y;
      chirp[m] = cdouble(std::cos(phi), std::sin(phi));
    }
#pragma omp parallel
    {
      std::vector<cdouble> ramp(n);
#pragma omp for schedule(static)
      for (int i = 0; i < n; ++i) {
        const double slope = 3.0 * pulse_gain * axis[i] * axis[i] * dy;
        kernels::phase_ramp(ramp.data(), n, -slope * (n / 2), slope);
        cdouble* row = buf.data() + static_cast<size_t>(i) * n;
        for (int m = 0; m < n; ++m) row[m] *= ramp[m] * chirp[m];
      }
    }
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      cdouble* row = buf.data() + static_cast<size_t>(i) * n;
      for (int m = 0; m < n; ++m) {
        const double y = (m - n / 2) * dy;
        const double phi =
            0.5 * pulse_gain * (pow_int(axis[i] + y, order) - pow_int(axis[i] - y, order));
        row[m] *= cdouble(std::cos(phi), std::sin(phi));
      }
    }
  }

  kernels::transform_lines(buf.data(), n, 0, false, true);

  WignerState out;
  out.grid = state.grid;
  out.metadata = state.metadata;
  out.values = to_real(buf);
  return out;
}

WignerState rotate(const WignerState& state, double angle) {
  const int n = state.grid.n_points;
  double reduced = std::fmod(angle, 2.0 * kPi);
  if (reduced < 0.0) reduced += 2.0 * kPi;

  WignerState out;
  out.grid = state.grid;
  out.metadata = state.metadata;

  int quarters = static_cast<int>(std::llround(reduced / (kPi / 2.0)));
  const double residual = reduced - quarters * (kPi / 2.0);
  quarters %= 4;

  if (quarters == 0 && std::abs(residual) < 1e-15) {
    out.values = state.values;
    return out;
  }

  boundary_mass_guard(state);

  std::vector<double> field = state.values;
  for (int q = 0; q < quarters; ++q) field = quarter_turn(field, n);

  if (std::abs(residual) >= 1e-15) {
    // Clockwise rotation by t decomposes into shears
    // Sx(tan(t/2)) . Sp(-sin t) . Sx(tan(t/2)).
    const double alpha = std::tan(residual / 2.0);
    const double beta = -std::sin(residual);
    std::vector<cdouble> buf = to_complex(field);
    shear_x(buf, state.grid, alpha);
    shear_p(buf, state.grid, beta);
    shear_x(buf, state.grid, alpha);
    out.values = to_real(buf);
  } else {
    out.values = std::move(field);
  }
  return out;
}

WignerState damp(const WignerState& state, const ThermalKernelParams& kernel) {
  kernel.validate();
  const int n = state.grid.n_points;

  WignerState out;
  out.grid = state.grid;
  out.metadata = state.metadata;
  if (kernel.kernel_variance == 0.0) {
    out.values = state.values;
    return out;
  }

  const auto freq = frequency_axis(state.grid);
  std::vector<double> gauss(n);
  for (int k = 0; k < n; ++k) {
    gauss[k] = std::exp(-0.5 * kernel.kernel_variance * freq[k] * freq[k]);
  }

  std::vector<cdouble> buf = to_complex(state.values);
  kernels::transform_lines(buf.data(), n, 0, false, true);
  kernels::transform_lines(buf.data(), n, 1, false, true);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    cdouble* row = buf.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) row[j] *= gauss[i] * gauss[j];
  }
  kernels::transform_lines(buf.data(), n, 1, true, true);
  kernels::transform_lines(buf.data(), n, 0, true, true);
  out.values = to_real(buf);
  return out;
}

}  // namespace strobosim

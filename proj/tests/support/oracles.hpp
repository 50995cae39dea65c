#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "ips/conditioning.hpp"
#include "ips/quasiprob.hpp"

// Test-side oracles, independent of the closed-form implementation paths
// they check.

namespace ips::testing {

/// Wigner transform by direct Fourier quadrature of the characteristic
/// function: W(alpha) = (1/pi^2) Int d^2lambda chi(lambda) e^{l* a - a* l},
/// trapezoidal rule over [-L, L]^2 with n points per axis.
inline double fourier_wigner(const std::function<std::complex<double>(std::complex<double>)>& chi,
                             std::complex<double> alpha, double half_width = 10.0, int n = 401) {
  const double h = 2.0 * half_width / (n - 1);
  const double p = alpha.real();
  const double q = alpha.imag();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = -half_width + i * h;
    const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    for (int j = 0; j < n; ++j) {
      const double v = -half_width + j * h;
      const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      // e^{lambda* alpha - alpha* lambda} = e^{2i(u q - v p)}
      const double phase = 2.0 * (u * q - v * p);
      const std::complex<double> kernel(std::cos(phase), std::sin(phase));
      acc += wi * wj * (chi({u, v}) * kernel).real();
    }
  }
  return acc * h * h / (std::numbers::pi * std::numbers::pi);
}

/// Finds the sign change of s -> W_s(0) by bisection; the numerical
/// counterpart of the closed-form s_bar.
inline double bisect_s_bar(const ips::ConditionalState<double>& state, double s_lo = -3.0,
                           double tol = 1e-10) {
  double s_max = std::numeric_limits<double>::infinity();
  for (const auto& comp : state.components) {
    s_max = std::min(s_max, ips::normalizability_bound(comp.params));
  }
  const auto origin_value = [&](double s) { return ips::quasiprob_s(state, {0.0, 0.0}, s); };

  if (!(origin_value(s_lo) > 0)) {
    throw std::runtime_error("bisect_s_bar: lower bracket not positive");
  }
  double delta = 1e-6 * std::max(1.0, std::abs(s_max));
  double hi = s_max - delta;
  int guard = 0;
  while (origin_value(hi) >= 0) {
    delta /= 2;
    hi = s_max - delta;
    if (++guard > 80) throw std::runtime_error("bisect_s_bar: no sign change before s_max");
  }
  double lo = s_lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (origin_value(mid) >= 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ips::testing

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ips/conditioning.hpp"
#include "ips/errors.hpp"

// Characteristic functions, Wigner functions and s-ordered quasi-probability
// functions, pointwise and on phase-space grids.
//
// Point mapping (fixed project-wide, see CONVENTIONS.md): lambda and alpha
// relate to the Cartesian plot coordinates through lambda = alpha =
// (x + i y)/sqrt(2). Pointwise values are the complex-notation ones
// (vacuum Wigner value 2/pi at the origin); grid quadratures therefore carry
// the Jacobian d^2alpha = dx dy / 2.

namespace ips {

/// Characteristic-function constants of the squeezed Fock state S(z)|1>:
/// A0 = cosh(2z)/2, B0 = -sinh(2z)/4 (B0 < 0 squeezes the y quadrature).
template <typename Scalar>
struct SqueezedFockParams {
  Scalar z{0};
  Scalar A0{Scalar(0.5)};
  Scalar B0{0};
};

template <typename Scalar>
SqueezedFockParams<Scalar> squeezed_fock_params(Scalar z) {
  if (!std::isfinite(z)) throw ValidationError("squeezing parameter z must be finite");
  return {z, std::cosh(Scalar(2) * z) / Scalar(2), -std::sinh(Scalar(2) * z) / Scalar(4)};
}

/// chi_out(lambda) of the conditional state: weighted sum of Gaussians.
template <typename Scalar>
std::complex<Scalar> char_ips(const ConditionalState<Scalar>& state, std::complex<Scalar> lambda) {
  std::complex<Scalar> acc{0, 0};
  for (const auto& comp : state.components) {
    acc += comp.weight * gauss_chi(comp.params, lambda);
  }
  return acc;
}

/// chi of S(z)|1>: [1 - 2(A0|l|^2 + B0 l^2 + B0 l*^2)] exp(-A0|l|^2 - B0 l^2 - B0 l*^2).
/// At z = 0 this is the Fock |1> characteristic function (1 - |l|^2) e^{-|l|^2/2}.
template <typename Scalar>
std::complex<Scalar> char_squeezed_fock(const SqueezedFockParams<Scalar>& sqf,
                                        std::complex<Scalar> lambda) {
  const Scalar u = sqf.A0 * std::norm(lambda) + Scalar(2) * sqf.B0 * (lambda * lambda).real();
  return {(Scalar(1) - Scalar(2) * u) * std::exp(-u), Scalar(0)};
}

template <typename Scalar>
std::complex<Scalar> char_squeezed_fock(Scalar z, std::complex<Scalar> lambda) {
  return char_squeezed_fock(squeezed_fock_params(z), lambda);
}

/// Largest s for which a single Gaussian component stays normalizable:
/// s < 2A - 4|B| (= twice the smallest eigenvalue of the covariance).
template <typename Scalar>
Scalar normalizability_bound(const ComplexGaussParams<Scalar>& p) {
  return Scalar(2) * p.A - Scalar(4) * std::abs(p.B);
}

/// s-ordered Gaussian transform of one component,
///   G(alpha) = 2 exp{-[2(2A-s)|a|^2 + 8 Re(B a^2)] / [(2A-s)^2 - 16|B|^2]}
///              / (pi sqrt((2A-s)^2 - 16|B|^2)).
template <typename Scalar>
Scalar gauss_quasiprob_s(const ComplexGaussParams<Scalar>& p, std::complex<Scalar> alpha,
                         Scalar s) {
  const Scalar q = Scalar(2) * p.A - s;
  const Scalar absB4 = Scalar(4) * std::abs(p.B);
  if (!(q > absB4)) {
    throw NormalizabilityError("s = " + std::to_string(double(s)) +
                                   " leaves the Gaussian component non-normalizable",
                               0);
  }
  const Scalar disc = (q - absB4) * (q + absB4);
  const Scalar expo =
      -(Scalar(2) * q * std::norm(alpha) + Scalar(8) * (p.B * alpha * alpha).real()) / disc;
  return Scalar(2) / (std::numbers::pi_v<Scalar> * std::sqrt(disc)) * std::exp(expo);
}

/// W_s(alpha) = sum_k w_k G_k(alpha). s = 0 is the Wigner function.
/// Throws NormalizabilityError (naming the component) when s is too large.
template <typename Scalar>
Scalar quasiprob_s(const ConditionalState<Scalar>& state, std::complex<Scalar> alpha, Scalar s) {
  for (int k = 0; k < int(state.components.size()); ++k) {
    const auto& p = state.components[k].params;
    if (!(s < normalizability_bound(p))) {
      throw NormalizabilityError(
          "s = " + std::to_string(double(s)) + " >= 2A - 4|B| = " +
              std::to_string(double(normalizability_bound(p))) + " for component " +
              std::to_string(k + 1),
          k + 1);
    }
  }
  Scalar acc{0};
  for (const auto& comp : state.components) {
    acc += comp.weight * gauss_quasiprob_s(comp.params, alpha, s);
  }
  return acc;
}

template <typename Scalar>
Scalar wigner(const ConditionalState<Scalar>& state, std::complex<Scalar> alpha) {
  return quasiprob_s(state, alpha, Scalar(0));
}

/// Wigner function of S(z)|1>: the Fock |1> Wigner surface with the x axis
/// stretched by e^z and the y axis compressed by e^-z.
template <typename Scalar>
Scalar wigner_squeezed_fock(Scalar z, std::complex<Scalar> alpha) {
  const Scalar x = std::numbers::sqrt2_v<Scalar> * alpha.real() * std::exp(-z);
  const Scalar y = std::numbers::sqrt2_v<Scalar> * alpha.imag() * std::exp(z);
  const Scalar t = x * x + y * y;
  return Scalar(2) / std::numbers::pi_v<Scalar> * (Scalar(2) * t - Scalar(1)) * std::exp(-t);
}

/// Rectangular evaluation grid over the Cartesian plot coordinates (x, y).
template <typename Scalar>
struct PhaseSpaceGrid {
  Scalar x_min, x_max, y_min, y_max;
  int nx, ny;

  Eigen::Vector<Scalar, Eigen::Dynamic> xs() const {
    return Eigen::Vector<Scalar, Eigen::Dynamic>::LinSpaced(nx, x_min, x_max);
  }
  Eigen::Vector<Scalar, Eigen::Dynamic> ys() const {
    return Eigen::Vector<Scalar, Eigen::Dynamic>::LinSpaced(ny, y_min, y_max);
  }
  Scalar dx() const { return (x_max - x_min) / Scalar(nx - 1); }
  Scalar dy() const { return (y_max - y_min) / Scalar(ny - 1); }
};

template <typename Scalar>
void validate(const PhaseSpaceGrid<Scalar>& g) {
  if (!(g.x_max > g.x_min) || !(g.y_max > g.y_min)) {
    throw ValidationError("grid bounds must satisfy max > min");
  }
  if (g.nx < 2 || g.ny < 2) throw ValidationError("grid needs nx, ny >= 2");
}

/// Symmetric default grid: [-5 sigma_max, 5 sigma_max] per axis, where
/// sigma_max is the largest standard deviation of the leading component.
template <typename Scalar>
PhaseSpaceGrid<Scalar> default_grid(const ConditionalState<Scalar>& state, int n = 201) {
  const auto& p1 = state.components.front().params;
  const Scalar half = Scalar(5) * std::sqrt(p1.A + Scalar(2) * std::abs(p1.B));
  return {-half, half, -half, half, n, n};
}

/// Evaluates f(alpha(x, y)) over the grid; entry (i, j) holds the point
/// (x_i, y_j). Every point is independent, so the result does not depend on
/// evaluation order.
template <typename Scalar, typename F>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> evaluate_grid(const PhaseSpaceGrid<Scalar>& g,
                                                                    F&& f) {
  validate(g);
  const auto xs = g.xs();
  const auto ys = g.ys();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(g.nx, g.ny);
  const Scalar inv_sqrt2 = Scalar(1) / std::numbers::sqrt2_v<Scalar>;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      out(i, j) = f(std::complex<Scalar>(xs[i] * inv_sqrt2, ys[j] * inv_sqrt2));
    }
  }
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> wigner_grid(
    const ConditionalState<Scalar>& state, const PhaseSpaceGrid<Scalar>& g) {
  return evaluate_grid(g, [&](std::complex<Scalar> a) { return wigner(state, a); });
}

/// Trapezoidal quadrature of grid values against d^2alpha = dx dy / 2.
/// Fixed (row-major) summation order for bit-reproducible results.
template <typename Scalar>
Scalar grid_integral(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& values,
                     const PhaseSpaceGrid<Scalar>& g) {
  validate(g);
  Scalar acc{0};
  for (int i = 0; i < g.nx; ++i) {
    const Scalar wi = (i == 0 || i == g.nx - 1) ? Scalar(0.5) : Scalar(1);
    for (int j = 0; j < g.ny; ++j) {
      const Scalar wj = (j == 0 || j == g.ny - 1) ? Scalar(0.5) : Scalar(1);
      acc += wi * wj * values(i, j);
    }
  }
  return acc * g.dx() * g.dy() / Scalar(2);
}

}  // namespace ips

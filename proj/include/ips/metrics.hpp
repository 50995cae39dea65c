#pragma once

#include <cmath>
#include <vector>

#include "ips/conditioning.hpp"
#include "ips/errors.hpp"
#include "ips/quasiprob.hpp"

// Closed-form scalar figures of merit of the conditional state: fidelity to
// the squeezed Fock target S(z)|1>, purity, and the nonclassicality measures
// s_bar / nonclassical depth / Wigner-positivity threshold.
//
// The Gaussian-overlap sums below cancel from O(1) terms down to O(p_on^2)
// as tau -> 1, so they are accumulated in extended precision.

namespace ips {

namespace detail {

using Wide = long double;

/// F_k = [A_k^2 - A0^2 - 4(B_k^2 - B0^2)] / [((A0+A_k)^2 - 4(B0+B_k)^2)^{3/2}]
/// for real B; the overlap of one Gaussian component with chi_SqF.
inline Wide fidelity_term(Wide a0, Wide b0, Wide ak, Wide bk) {
  const Wide num = (ak - a0) * (ak + a0) - 4.0L * (bk - b0) * (bk + b0);
  const Wide den = (a0 + ak) * (a0 + ak) - 4.0L * (b0 + bk) * (b0 + bk);
  return num / (den * std::sqrt(den));
}

template <typename Scalar>
Scalar real_b(const ComplexGaussParams<Scalar>& p) {
  if (std::abs(p.B.imag()) > Scalar(1e-12) * (Scalar(1) + std::abs(p.B))) {
    throw ValidationError("rotated (complex-B) components are not supported by the metrics");
  }
  return p.B.real();
}

}  // namespace detail

/// Fidelity Tr[rho_SqF rho_out] broken into its two component contributions:
/// value = (F1 - F2 / [eta sqrt(Det(B + sigma_M))]) / p_on.
template <typename Scalar>
struct FidelityReport {
  Scalar value{0};
  Scalar F1{0};
  Scalar F2{0};
  Scalar p_on{0};
};

template <typename Scalar>
FidelityReport<Scalar> fidelity(const IPSParams<Scalar>& params, Scalar z) {
  const auto state = conditional_state(params);  // throws NoClickError when degenerate
  const auto sqf = squeezed_fock_params(z);

  FidelityReport<Scalar> report;
  report.p_on = state.p_on;
  detail::Wide acc = 0.0L;
  std::vector<Scalar> terms;
  for (const auto& comp : state.components) {
    const detail::Wide fk = detail::fidelity_term(sqf.A0, sqf.B0, comp.params.A,
                                                  detail::real_b(comp.params));
    terms.push_back(Scalar(fk));
    acc += detail::Wide(comp.weight) * fk;
  }
  report.value = Scalar(acc);
  report.F1 = terms[0];
  report.F2 = terms[1];
  return report;
}

/// First-order expansion of the fidelity in (1 - tau) at eta = 1:
/// 1/cosh^3(r-z) - [(9 cosh(r+z) - 3 cosh(3r-z)) / (8 cosh(r-z)) - 1/4] (1-tau).
template <typename Scalar>
Scalar fidelity_first_order(Scalar z, Scalar r, Scalar tau) {
  const Scalar ch = std::cosh(r - z);
  const Scalar lead = Scalar(1) / (ch * ch * ch);
  const Scalar bracket =
      (Scalar(9) * std::cosh(r + z) - Scalar(3) * std::cosh(Scalar(3) * r - z)) /
          (Scalar(8) * ch) -
      Scalar(0.25);
  return lead - bracket * (Scalar(1) - tau);
}

/// Purity mu = Tr[rho_out^2] = pi Integral W^2 d^2alpha, evaluated in closed
/// form as the double sum of pairwise Gaussian overlaps:
///   mu = sum_{j,k} w_j w_k / sqrt((A_j+A_k)^2 - 4 (B_j+B_k)^2).
template <typename Scalar>
Scalar purity(const IPSParams<Scalar>& params) {
  const auto state = conditional_state(params);
  detail::Wide acc = 0.0L;
  for (const auto& cj : state.components) {
    for (const auto& ck : state.components) {
      const detail::Wide a = detail::Wide(cj.params.A) + detail::Wide(ck.params.A);
      const detail::Wide b =
          detail::Wide(detail::real_b(cj.params)) + detail::Wide(detail::real_b(ck.params));
      const detail::Wide den = (a - 2.0L * b) * (a + 2.0L * b);
      acc += detail::Wide(cj.weight) * detail::Wide(ck.weight) / std::sqrt(den);
    }
  }
  return Scalar(acc);
}

/// Maximum ordering parameter for which W_s stays a probability distribution:
/// s_bar = (2 - eta - (4 - eta) tau) / (2 - (1 - tau) eta).
template <typename Scalar>
Scalar s_bar(Scalar tau, Scalar eta) {
  if (!(tau >= 0 && tau <= 1)) throw ValidationError("tau must lie in [0, 1]");
  if (!(eta >= 0 && eta <= 1)) throw ValidationError("eta must lie in [0, 1]");
  const Scalar den = Scalar(2) - (Scalar(1) - tau) * eta;
  return (Scalar(2) - eta - (Scalar(4) - eta) * tau) / den;
}

/// Nonclassical depth T = (1 - s_bar)/2 = 2 tau / (2 - (1 - tau) eta) and the
/// transmissivity tau_star at which the Wigner function turns semi-positive.
template <typename Scalar>
struct NonclassicalityReport {
  Scalar s_bar{0};
  Scalar depth{0};
  Scalar tau_star{0};
};

/// tau_star = (2 - eta) / (4 - eta); the depth at tau_star is exactly 1/2.
template <typename Scalar>
Scalar wigner_positivity_threshold(Scalar eta) {
  if (!(eta >= 0 && eta <= 1)) throw ValidationError("eta must lie in [0, 1]");
  return (Scalar(2) - eta) / (Scalar(4) - eta);
}

template <typename Scalar>
NonclassicalityReport<Scalar> nonclassical_depth(Scalar tau, Scalar eta) {
  NonclassicalityReport<Scalar> report;
  report.s_bar = s_bar(tau, eta);
  report.depth = Scalar(2) * tau / (Scalar(2) - (Scalar(1) - tau) * eta);
  report.tau_star = wigner_positivity_threshold(eta);
  return report;
}

}  // namespace ips

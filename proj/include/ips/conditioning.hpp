#pragma once

#include <cmath>
#include <vector>

#include "ips/covariance.hpp"
#include "ips/errors.hpp"

// Conditioning of the beam-splitter output on a click of an on/off detector
// with quantum efficiency eta. The "on" POVM element in characteristic-
// function form is 2*pi*delta^2(Lambda) - chi_off(Lambda); the delta term is
// integrated analytically, so the conditional state comes out as a weighted
// difference of two Gaussian characteristic functions with covariances
// Sigma_1 = A and Sigma_2 = A - C (B + sigma_M)^-1 C^T.

namespace ips {

/// Input squeezing r, beam-splitter transmissivity tau, detector efficiency eta.
template <typename Scalar>
struct IPSParams {
  Scalar r{0};
  Scalar tau{1};
  Scalar eta{1};
};

template <typename Scalar>
void validate(const IPSParams<Scalar>& p) {
  if (!std::isfinite(p.r)) throw ValidationError("r must be finite");
  if (!(p.tau >= 0 && p.tau <= 1)) throw ValidationError("tau must lie in [0, 1]");
  if (!(p.eta >= 0 && p.eta <= 1)) throw ValidationError("eta must lie in [0, 1]");
}

/// True when no click can ever occur and the conditional state is undefined.
template <typename Scalar>
bool is_no_click(const IPSParams<Scalar>& p) {
  return p.r == Scalar(0) || p.tau == Scalar(1) || p.eta == Scalar(0);
}

/// Measurement matrix of the no-click POVM element: (2 - eta)/(2 eta) * I.
template <typename Scalar>
CovMat2<Scalar> sigma_m(Scalar eta) {
  if (!(eta > 0 && eta <= 1)) {
    throw ValidationError("sigma_m requires 0 < eta <= 1 (eta = 0 detector never fires)");
  }
  const Scalar m = (Scalar(2) - eta) / (Scalar(2) * eta);
  return {m, m, Scalar(0), CovKind::Measurement};
}

/// Effective transmissivity tau_eff = 1 - eta (1 - tau).
template <typename Scalar>
Scalar tau_eff(Scalar tau, Scalar eta) {
  return Scalar(1) - eta * (Scalar(1) - tau);
}

/// Click probability p_on = 1 - [1 + (1 - tau_eff^2) sinh^2 r]^(-1/2).
/// Uses log1p/expm1 so the tau_eff -> 1 tail keeps full relative accuracy.
template <typename Scalar>
Scalar click_probability(const IPSParams<Scalar>& p) {
  validate(p);
  const Scalar te = tau_eff(p.tau, p.eta);
  const Scalar sh = std::sinh(p.r);
  const Scalar x = (Scalar(1) - te * te) * sh * sh;
  return -std::expm1(Scalar(-0.5) * std::log1p(x));
}

/// Same probability via the block route 1 - [eta sqrt(Det(B + sigma_M))]^-1.
/// Kept separate from the closed form so the two can be checked against each
/// other; requires eta > 0.
template <typename Scalar>
Scalar click_probability_from_blocks(const IPSParams<Scalar>& p) {
  validate(p);
  const auto blocks = apply_bs(squeezed_vacuum_cov(p.r), vacuum_cov<Scalar>(), p.tau);
  const CovMat2<Scalar> m = sigma_m(p.eta);
  const CovMat2<Scalar> bm{blocks.B.a + m.a, blocks.B.b + m.b, blocks.B.c + m.c,
                           CovKind::Measurement};
  return Scalar(1) - Scalar(1) / (p.eta * std::sqrt(bm.det()));
}

/// Leading order of p_on in (1 - tau_eff): (1 - tau_eff) sinh^2 r.
template <typename Scalar>
Scalar click_probability_first_order(const IPSParams<Scalar>& p) {
  validate(p);
  const Scalar sh = std::sinh(p.r);
  return (Scalar(1) - tau_eff(p.tau, p.eta)) * sh * sh;
}

/// The conditional (de-Gaussified) state: a weighted list of Gaussian
/// characteristic-function components,
///   chi_out(lambda) = sum_k w_k exp(-A_k |lambda|^2 - B_k lambda^2 - B_k* lambda*^2),
/// with w_1 = 1/p_on and w_2 = -[p_on eta sqrt(Det(B + sigma_M))]^-1.
template <typename Scalar>
struct ConditionalState {
  struct Component {
    Scalar weight;
    ComplexGaussParams<Scalar> params;
  };

  Scalar p_on{0};
  std::vector<Component> components;
};

template <typename Scalar>
ConditionalState<Scalar> conditional_state(const IPSParams<Scalar>& p) {
  validate(p);
  if (is_no_click(p)) {
    throw NoClickError("no click possible (r = 0, tau = 1 or eta = 0): conditional state undefined");
  }

  const auto blocks = apply_bs(squeezed_vacuum_cov(p.r), vacuum_cov<Scalar>(), p.tau);
  const CovMat2<Scalar> m = sigma_m(p.eta);
  const Mat2<Scalar> bm = blocks.B.matrix() + m.matrix();
  const Scalar det_bm = bm(0, 0) * bm(1, 1) - bm(0, 1) * bm(1, 0);
  if (!(det_bm > Scalar(1e-300))) {
    throw ValidationError("Det(B + sigma_M) below determinant floor");
  }
  // Closed-form 2x2 inverse; the matrix is symmetric positive definite here.
  Mat2<Scalar> bm_inv;
  bm_inv << bm(1, 1), -bm(0, 1), -bm(1, 0), bm(0, 0);
  bm_inv /= det_bm;

  const Mat2<Scalar> s2 = blocks.A.matrix() - blocks.C * bm_inv * blocks.C.transpose();
  const CovMat2<Scalar> sigma2{s2(0, 0), s2(1, 1), s2(0, 1), CovKind::Measurement};
  if (!(sigma2.a > 0 && sigma2.b > 0 && sigma2.det() > 0)) {
    throw ValidationError("conditioned covariance Sigma_2 is not positive definite");
  }

  ConditionalState<Scalar> state;
  state.p_on = click_probability(p);
  const Scalar w1 = Scalar(1) / state.p_on;
  // w2 = -[p_on eta sqrt(det_bm)]^-1 = 1 - w1 exactly; the complement form
  // makes chi_out(0) = w1 + w2 == 1 bit-exact.
  const Scalar w2 = Scalar(1) - w1;
  state.components.push_back({w1, cartesian_to_complex(blocks.A)});
  state.components.push_back({w2, cartesian_to_complex(sigma2)});
  return state;
}

}  // namespace ips

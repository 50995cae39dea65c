#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "ips/errors.hpp"

// Covariance-matrix calculus for single- and two-mode zero-mean Gaussian
// states in dimensionless quadrature units (vacuum variance 1/2), plus the
// conversion between the Cartesian covariance representation and the complex
// characteristic-function parameters (A, B) with
//
//   chi(lambda) = exp(-A |lambda|^2 - B lambda^2 - B* lambda*^2),
//   lambda = (x + i y) / sqrt(2).

namespace ips {

template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

/// Distinguishes physical state covariances (Det >= 1/4) from detector
/// measurement matrices, which obey no uncertainty bound.
enum class CovKind { State, Measurement };

/// Symmetric 2x2 covariance matrix [[a, c], [c, b]].
template <typename Scalar>
struct CovMat2 {
  static_assert(std::is_floating_point_v<Scalar>);

  Scalar a{0};
  Scalar b{0};
  Scalar c{0};
  CovKind kind{CovKind::State};

  Scalar det() const { return a * b - c * c; }

  Mat2<Scalar> matrix() const {
    Mat2<Scalar> m;
    m << a, c, c, b;
    return m;
  }
};

/// Positive definiteness for every CovMat2; the Det >= 1/4 uncertainty bound
/// only for state covariances.
template <typename Scalar>
void validate(const CovMat2<Scalar>& sigma) {
  if (!std::isfinite(sigma.a) || !std::isfinite(sigma.b) || !std::isfinite(sigma.c)) {
    throw ValidationError("covariance entries must be finite");
  }
  if (!(sigma.a > 0 && sigma.b > 0 && sigma.det() > 0)) {
    throw ValidationError("covariance matrix must be positive definite");
  }
  if (sigma.kind == CovKind::State) {
    const Scalar slack = Scalar(1e3) * std::numeric_limits<Scalar>::epsilon();
    if (sigma.det() < Scalar(0.25) - slack) {
      throw ValidationError("state covariance violates Det >= 1/4");
    }
  }
}

/// Vacuum covariance (1/2) * Identity.
template <typename Scalar>
CovMat2<Scalar> vacuum_cov() {
  return {Scalar(0.5), Scalar(0.5), Scalar(0)};
}

/// Covariance of the squeezed vacuum S(r)|0>: diag(e^{2r}, e^{-2r}) / 2.
/// The x quadrature is anti-squeezed for r > 0. Det = 1/4 for every r.
template <typename Scalar>
CovMat2<Scalar> squeezed_vacuum_cov(Scalar r) {
  if (!std::isfinite(r)) {
    throw ValidationError("squeezing parameter r must be finite");
  }
  return {std::exp(Scalar(2) * r) / Scalar(2), std::exp(Scalar(-2) * r) / Scalar(2), Scalar(0)};
}

/// Symplectic (and orthogonal) beam-splitter matrix with transmissivity tau:
/// [[sqrt(tau) I, sqrt(1-tau) I], [-sqrt(1-tau) I, sqrt(tau) I]].
template <typename Scalar>
Mat4<Scalar> bs_symplectic(Scalar tau) {
  if (!(tau >= 0 && tau <= 1)) {
    throw ValidationError("transmissivity tau must lie in [0, 1]");
  }
  const Scalar t = std::sqrt(tau);
  const Scalar s = std::sqrt(Scalar(1) - tau);
  Mat4<Scalar> m = Mat4<Scalar>::Zero();
  m(0, 0) = t;
  m(1, 1) = t;
  m(2, 2) = t;
  m(3, 3) = t;
  m(0, 2) = s;
  m(1, 3) = s;
  m(2, 0) = -s;
  m(3, 1) = -s;
  return m;
}

/// Block form of a two-mode covariance matrix [[A, C], [C^T, B]].
template <typename Scalar>
struct TwoModeCov {
  CovMat2<Scalar> A;
  CovMat2<Scalar> B;
  Mat2<Scalar> C;

  Mat4<Scalar> matrix() const {
    Mat4<Scalar> m;
    m.template block<2, 2>(0, 0) = A.matrix();
    m.template block<2, 2>(0, 2) = C;
    m.template block<2, 2>(2, 0) = C.transpose();
    m.template block<2, 2>(2, 2) = B.matrix();
    return m;
  }
};

/// Beam-splitter action sigma' = S_BS^T diag(sigma_a, sigma_b) S_BS.
/// Written out blockwise: A = tau sigma_a + (1-tau) sigma_b,
/// B = (1-tau) sigma_a + tau sigma_b, C = sqrt(tau(1-tau)) (sigma_a - sigma_b).
template <typename Scalar>
TwoModeCov<Scalar> apply_bs(const CovMat2<Scalar>& sigma_a, const CovMat2<Scalar>& sigma_b,
                            Scalar tau) {
  validate(sigma_a);
  validate(sigma_b);
  if (!(tau >= 0 && tau <= 1)) {
    throw ValidationError("transmissivity tau must lie in [0, 1]");
  }
  const Scalar u = Scalar(1) - tau;
  const Scalar ts = std::sqrt(tau * u);
  TwoModeCov<Scalar> out;
  out.A = {tau * sigma_a.a + u * sigma_b.a, tau * sigma_a.b + u * sigma_b.b,
           tau * sigma_a.c + u * sigma_b.c};
  out.B = {u * sigma_a.a + tau * sigma_b.a, u * sigma_a.b + tau * sigma_b.b,
           u * sigma_a.c + tau * sigma_b.c};
  out.C = ts * (sigma_a.matrix() - sigma_b.matrix());
  return out;
}

/// Parameters of a Gaussian characteristic function in complex notation.
/// A multiplies |lambda|^2, B multiplies lambda^2 (B* multiplies lambda*^2).
template <typename Scalar>
struct ComplexGaussParams {
  Scalar A{0};
  std::complex<Scalar> B{0, 0};

  /// A^2 - 4|B|^2; equals Det of the Cartesian covariance. Positive iff the
  /// characteristic function decays in every phase-space direction.
  Scalar discriminant() const { return A * A - Scalar(4) * std::norm(B); }
};

/// Exact algebraic map: A = (a + b)/2, B = (b - a + 2ic)/4.
template <typename Scalar>
ComplexGaussParams<Scalar> cartesian_to_complex(const CovMat2<Scalar>& sigma) {
  return {(sigma.a + sigma.b) / Scalar(2),
          {(sigma.b - sigma.a) / Scalar(4), sigma.c / Scalar(2)}};
}

/// Inverse of cartesian_to_complex.
template <typename Scalar>
CovMat2<Scalar> complex_to_cartesian(const ComplexGaussParams<Scalar>& p) {
  return {p.A - Scalar(2) * p.B.real(), p.A + Scalar(2) * p.B.real(), Scalar(2) * p.B.imag()};
}

/// chi(lambda) = exp(-A|lambda|^2 - B lambda^2 - B* lambda*^2) for a single
/// Gaussian component.
template <typename Scalar>
std::complex<Scalar> gauss_chi(const ComplexGaussParams<Scalar>& p, std::complex<Scalar> lambda) {
  const std::complex<Scalar> l2 = lambda * lambda;
  return std::exp(-p.A * std::norm(lambda) - p.B * l2 - std::conj(p.B * l2));
}

}  // namespace ips

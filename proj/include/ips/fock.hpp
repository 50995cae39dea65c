#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ips/errors.hpp"

// Brute-force verification engine in a truncated number basis. States and
// unitaries are built by dense matrix exponentiation of the exact generators
// (eigendecomposition of the anti-Hermitian generator), the on/off POVM is
// applied as a diagonal weight, and all figures of merit are computed
// numerically. Deliberately shares no code with the covariance-matrix
// pipeline beyond primitive arithmetic.

namespace ips::fock {

template <typename Scalar>
using FockOperator = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using FockVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;

/// Number-basis ket with cutoff N (vector length N + 1).
template <typename Scalar>
struct FockKet {
  FockVector<Scalar> amplitudes;

  int cutoff() const { return int(amplitudes.size()) - 1; }

  /// Probability mass on the two topmost levels; the truncation indicator
  /// reported alongside every constructed ket.
  Scalar tail_mass() const {
    const int n = int(amplitudes.size());
    Scalar t = std::norm(amplitudes[n - 1]);
    if (n >= 2) t += std::norm(amplitudes[n - 2]);
    return t;
  }
};

/// Number-basis density matrix with cutoff N.
template <typename Scalar>
struct FockDensity {
  FockOperator<Scalar> matrix;

  int cutoff() const { return int(matrix.rows()) - 1; }
};

struct OracleConfig {
  int cutoff = 40;
  double convergence_tol = 1e-8;
  int max_cutoff = 320;
};

inline void validate(const OracleConfig& cfg) {
  if (cfg.cutoff < 2) throw ValidationError("oracle cutoff must be >= 2");
  if (cfg.cutoff > cfg.max_cutoff) throw ValidationError("cutoff exceeds max_cutoff");
  if (!(cfg.convergence_tol > 0)) throw ValidationError("convergence_tol must be positive");
}

template <typename Scalar>
FockKet<Scalar> fock_basis(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw ValidationError("basis index outside cutoff");
  FockVector<Scalar> v = FockVector<Scalar>::Zero(cutoff + 1);
  v[n] = Scalar(1);
  return {v};
}

template <typename Scalar>
FockKet<Scalar> fock_vacuum(int cutoff) {
  return fock_basis<Scalar>(0, cutoff);
}

/// Annihilation operator: a[n-1, n] = sqrt(n).
template <typename Scalar>
FockOperator<Scalar> annihilation_matrix(int cutoff) {
  if (cutoff < 1) throw ValidationError("annihilation_matrix needs cutoff >= 1");
  FockOperator<Scalar> a = FockOperator<Scalar>::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) {
    a(n - 1, n) = std::sqrt(Scalar(n));
  }
  return a;
}

/// exp(G) for anti-Hermitian G, via eigendecomposition of H = -iG.
template <typename Scalar>
FockOperator<Scalar> matrix_exp_antihermitian(const FockOperator<Scalar>& g) {
  using C = std::complex<Scalar>;
  const FockOperator<Scalar> h = C(0, -1) * g;
  Eigen::SelfAdjointEigenSolver<FockOperator<Scalar>> es(h);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigendecomposition of generator failed");
  }
  FockVector<Scalar> phases(h.rows());
  for (int i = 0; i < h.rows(); ++i) {
    phases[i] = std::exp(C(0, es.eigenvalues()[i]));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Squeezing operator S(xi) = exp(xi (a'^2 - a^2) / 2) at the given cutoff.
template <typename Scalar>
FockOperator<Scalar> squeeze_operator(Scalar xi, int cutoff) {
  const FockOperator<Scalar> a = annihilation_matrix<Scalar>(cutoff);
  const FockOperator<Scalar> g =
      (xi / Scalar(2)) * (a.adjoint() * a.adjoint() - a * a);
  return matrix_exp_antihermitian(g);
}

/// S(xi)|base>, renormalized; truncation is reported through tail_mass().
template <typename Scalar>
FockKet<Scalar> squeeze_ket(Scalar xi, const FockKet<Scalar>& base) {
  FockVector<Scalar> v = squeeze_operator(xi, base.cutoff()) * base.amplitudes;
  v /= v.norm();
  return {v};
}

/// Displacement operator D(alpha) = exp(alpha a' - alpha* a).
template <typename Scalar>
FockOperator<Scalar> displacement_operator(std::complex<Scalar> alpha, int cutoff) {
  const FockOperator<Scalar> a = annihilation_matrix<Scalar>(cutoff);
  const FockOperator<Scalar> g = alpha * a.adjoint() - std::conj(alpha) * a;
  return matrix_exp_antihermitian(g);
}

/// Photon-number parity (-1)^n.
template <typename Scalar>
FockOperator<Scalar> parity_matrix(int cutoff) {
  FockOperator<Scalar> p = FockOperator<Scalar>::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    p(n, n) = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
  }
  return p;
}

namespace detail {

/// Generator block of theta (a'b - ab') restricted to total photon number n.
/// Basis index j = photons in mode b (j in [max(0, n - cutoff), min(n, cutoff)]).
template <typename Scalar>
FockOperator<Scalar> bs_block_generator(int n, int cutoff) {
  const int j_min = std::max(0, n - cutoff);
  const int j_max = std::min(n, cutoff);
  const int dim = j_max - j_min + 1;
  FockOperator<Scalar> k = FockOperator<Scalar>::Zero(dim, dim);
  for (int j = j_min; j <= j_max; ++j) {
    if (j - 1 >= j_min) {
      k(j - 1 - j_min, j - j_min) = std::sqrt(Scalar(j) * Scalar(n - j + 1));
    }
    if (j + 1 <= j_max) {
      k(j + 1 - j_min, j - j_min) = -std::sqrt(Scalar(n - j) * Scalar(j + 1));
    }
  }
  return k;
}

template <typename Scalar>
Scalar bs_theta(Scalar tau) {
  if (!(tau >= 0 && tau <= 1)) throw ValidationError("transmissivity tau must lie in [0, 1]");
  return std::acos(std::min(Scalar(1), std::sqrt(tau)));
}

}  // namespace detail

/// Two-mode beam-splitter unitary exp(theta (a'b - ab')), cos(theta) = sqrt(tau),
/// on the (cutoff+1)^2-dimensional space, basis index m_a (cutoff+1) + m_b.
/// The generator conserves total photon number, so the exponential is taken
/// block by block.
template <typename Scalar>
FockOperator<Scalar> bs_unitary(Scalar tau, int cutoff) {
  const Scalar theta = detail::bs_theta(tau);
  const int d = cutoff + 1;
  FockOperator<Scalar> u = FockOperator<Scalar>::Zero(d * d, d * d);
  for (int n = 0; n <= 2 * cutoff; ++n) {
    const int j_min = std::max(0, n - cutoff);
    const FockOperator<Scalar> block =
        matrix_exp_antihermitian<Scalar>(theta * detail::bs_block_generator<Scalar>(n, cutoff));
    for (int col = 0; col < block.cols(); ++col) {
      const int j = j_min + col;
      for (int row = 0; row < block.rows(); ++row) {
        const int jp = j_min + row;
        u((n - jp) * d + jp, (n - j) * d + j) = block(row, col);
      }
    }
  }
  return u;
}

/// Mixes |ket>_a with vacuum in mode b. Returns the joint amplitudes as a
/// matrix Phi with Phi(m, k) = <m, k | U_BS | ket, 0>. Only the
/// total-number blocks n <= cutoff carry amplitude, so the blocks are
/// exponentiated and applied directly. generator_sign flips the sign of the
/// beam-splitter generator (the conditional output must not depend on it).
template <typename Scalar>
FockOperator<Scalar> apply_bs_to_vacuum_b(const FockKet<Scalar>& ket, Scalar tau,
                                          int generator_sign = +1) {
  const Scalar theta = detail::bs_theta(tau) * Scalar(generator_sign);
  const int d = ket.cutoff() + 1;
  FockOperator<Scalar> phi = FockOperator<Scalar>::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    if (std::abs(ket.amplitudes[n]) == Scalar(0)) continue;
    const FockOperator<Scalar> block = matrix_exp_antihermitian<Scalar>(
        theta * detail::bs_block_generator<Scalar>(n, ket.cutoff()));
    for (int j = 0; j <= n; ++j) {
      phi(n - j, j) += ket.amplitudes[n] * block(j, 0);
    }
  }
  return phi;
}

template <typename Scalar>
struct ConditionalResult {
  Scalar p_on{0};
  FockDensity<Scalar> rho;
  int cutoff_used{0};
  /// |p_on(N) - p_on(N/2)| at the accepted cutoff.
  Scalar p_delta{0};
  /// Truncation indicator: input-ket tail mass plus mode-b top-level mass.
  Scalar tail{0};
};

/// Single-cutoff evaluation of the conditional state
/// rho_out = Tr_b[U (rho_in x |0><0|) U' (I x Pi_on)] / p_on with
/// Pi_on = I - sum_k (1-eta)^k |k><k|.
template <typename Scalar>
ConditionalResult<Scalar> ips_conditional_density_at(Scalar r, Scalar tau, Scalar eta, int cutoff,
                                                     int generator_sign = +1) {
  if (!(tau >= 0 && tau <= 1)) throw ValidationError("tau must lie in [0, 1]");
  if (!(eta >= 0 && eta <= 1)) throw ValidationError("eta must lie in [0, 1]");
  if (!std::isfinite(r)) throw ValidationError("r must be finite");
  if (r == Scalar(0) || tau == Scalar(1) || eta == Scalar(0)) {
    throw NoClickError("no click possible (r = 0, tau = 1 or eta = 0)");
  }

  const FockKet<Scalar> ket = squeeze_ket(r, fock_vacuum<Scalar>(cutoff));
  const FockOperator<Scalar> phi = apply_bs_to_vacuum_b(ket, tau, generator_sign);
  const int d = cutoff + 1;

  // Pi_on weights per mode-b photon number.
  Eigen::Vector<Scalar, Eigen::Dynamic> w(d);
  for (int k = 0; k < d; ++k) {
    w[k] = Scalar(1) - std::pow(Scalar(1) - eta, Scalar(k));
  }

  const FockOperator<Scalar> unnormalized =
      phi * w.template cast<std::complex<Scalar>>().asDiagonal() * phi.adjoint();
  const Scalar p_on = unnormalized.trace().real();
  if (!(p_on > 0)) throw NoClickError("click probability vanished at this cutoff");

  ConditionalResult<Scalar> out;
  out.p_on = p_on;
  out.rho = {unnormalized / std::complex<Scalar>(p_on, 0)};
  out.cutoff_used = cutoff;
  out.tail = ket.tail_mass() + phi.col(d - 1).squaredNorm() + phi.col(d - 2).squaredNorm();
  return out;
}

/// Convergence wrapper: doubles the cutoff until p_on moves by less than
/// cfg.convergence_tol, then returns the finer result. Squeezing beyond
/// r = 1 starts one doubling higher (the photon-number tail ~ tanh^{2n} r
/// needs it).
template <typename Scalar>
ConditionalResult<Scalar> ips_conditional_density(Scalar r, Scalar tau, Scalar eta,
                                                  const OracleConfig& cfg = {}) {
  validate(cfg);
  int n = cfg.cutoff;
  if (std::abs(r) > Scalar(1) && 2 * n <= cfg.max_cutoff) n *= 2;
  ConditionalResult<Scalar> coarse = ips_conditional_density_at<Scalar>(r, tau, eta, n);
  while (true) {
    if (2 * n > cfg.max_cutoff) {
      throw ConvergenceError("p_on not converged at max_cutoff = " +
                             std::to_string(cfg.max_cutoff));
    }
    n *= 2;
    ConditionalResult<Scalar> fine = ips_conditional_density_at<Scalar>(r, tau, eta, n);
    fine.p_delta = std::abs(fine.p_on - coarse.p_on);
    if (fine.p_delta < Scalar(cfg.convergence_tol)) {
      return fine;
    }
    coarse = fine;
  }
}

/// <ket| rho |ket>.
template <typename Scalar>
Scalar oracle_fidelity(const FockDensity<Scalar>& rho, const FockKet<Scalar>& ket) {
  if (rho.cutoff() != ket.cutoff()) throw ValidationError("cutoff mismatch");
  return (ket.amplitudes.adjoint() * rho.matrix * ket.amplitudes)(0).real();
}

/// Tr[rho^2] (= squared Frobenius norm for Hermitian rho).
template <typename Scalar>
Scalar oracle_purity(const FockDensity<Scalar>& rho) {
  return rho.matrix.squaredNorm();
}

/// Wigner value by displaced parity: (2/pi) Tr[rho D(alpha) P D'(alpha)].
template <typename Scalar>
Scalar oracle_wigner(const FockDensity<Scalar>& rho, std::complex<Scalar> alpha) {
  const int n = rho.cutoff();
  const FockOperator<Scalar> d = displacement_operator(alpha, n);
  const FockOperator<Scalar> displaced_parity = d * parity_matrix<Scalar>(n) * d.adjoint();
  return Scalar(2) / std::numbers::pi_v<Scalar> * (rho.matrix * displaced_parity).trace().real();
}

/// Characteristic function chi(lambda) = Tr[rho D(lambda)].
template <typename Scalar>
std::complex<Scalar> oracle_char(const FockDensity<Scalar>& rho, std::complex<Scalar> lambda) {
  return (rho.matrix * displacement_operator(lambda, rho.cutoff())).trace();
}

}  // namespace ips::fock

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ips/fock.hpp"
#include "ips/quasiprob.hpp"
#include "support/oracles.hpp"

using namespace ips;

TEST_CASE("char_ips basics and oracle point") {
  const auto state = conditional_state<double>({0.5, 0.9, 0.8});

  CHECK(char_ips(state, {0.0, 0.0}) == std::complex<double>(1.0, 0.0));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ul(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const std::complex<double> lambda(ul(rng), ul(rng));
    const auto plus = char_ips(state, lambda);
    const auto minus = char_ips(state, -lambda);
    CHECK(std::abs(plus - minus) < 1e-14);
    // Real-valued for the real-B components of this artifact.
    CHECK(std::abs(plus.imag()) <= 1e-12);
  }

  const auto oracle = fock::ips_conditional_density<double>(0.5, 0.9, 0.8);
  const std::complex<double> lambda(0.3, 0.2);
  CHECK(std::abs(char_ips(state, lambda) - fock::oracle_char(oracle.rho, lambda)) < 1e-6);
}

TEST_CASE("char_squeezed_fock") {
  CHECK(char_squeezed_fock(0.0, {0.0, 0.0}) == std::complex<double>(1.0, 0.0));
  CHECK(char_squeezed_fock(0.5, {0.0, 0.0}) == std::complex<double>(1.0, 0.0));

  // z = 0 is the Fock |1> characteristic function (1 - |l|^2) e^{-|l|^2 / 2}.
  for (double x : {0.2, 0.9, 1.4}) {
    const double expected = (1.0 - x * x) * std::exp(-x * x / 2.0);
    CHECK(char_squeezed_fock(0.0, {x, 0.0}).real() == doctest::Approx(expected).epsilon(1e-14));
  }

  // Against the Fock oracle for S(0.5)|1>.
  const int cutoff = 40;
  const auto ket = fock::squeeze_ket(0.5, fock::fock_basis<double>(1, cutoff));
  const fock::FockDensity<double> rho{ket.amplitudes * ket.amplitudes.adjoint()};
  for (std::complex<double> lambda : {std::complex<double>(0.4, 0.0),
                                      std::complex<double>(0.2, -0.6),
                                      std::complex<double>(-0.8, 0.3)}) {
    CHECK(std::abs(char_squeezed_fock(0.5, lambda) - fock::oracle_char(rho, lambda)) < 1e-8);
  }

  // Invariant of the derived constants: A0^2 - 4 B0^2 = 1/4.
  for (double z : {0.0, 0.3, 0.8, 1.5}) {
    const auto sqf = squeezed_fock_params(z);
    CHECK(sqf.A0 * sqf.A0 - 4.0 * sqf.B0 * sqf.B0 == doctest::Approx(0.25).epsilon(1e-13));
  }
}

TEST_CASE("single-Gaussian quasiprobability") {
  const auto vac = cartesian_to_complex(vacuum_cov<double>());

  // Vacuum Wigner value at the origin.
  CHECK(gauss_quasiprob_s(vac, {0.0, 0.0}, 0.0) ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));

  // Normalizability edge: s must stay below 2A - 4|B| = 1.
  CHECK(normalizability_bound(vac) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_quasiprob_s(vac, {0.0, 0.0}, 1.0), NormalizabilityError);
}

TEST_CASE("gauss components match independent Fourier quadrature") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ua(-1.2, 1.2);

  const auto state = conditional_state<double>({0.5, 0.9, 0.8});
  for (int i = 0; i < 5; ++i) {
    const std::complex<double> alpha(ua(rng), ua(rng));
    for (const auto& comp : state.components) {
      const double direct = gauss_quasiprob_s(comp.params, alpha, 0.0);
      const double quad = testing::fourier_wigner(
          [&](std::complex<double> l) { return gauss_chi(comp.params, l); }, alpha);
      CHECK(std::abs(direct - quad) < 1e-6);
    }
  }

  // Rotated covariance (c != 0) to exercise the complex-B branch.
  const CovMat2<double> rotated{0.9, 0.6, 0.25};
  const auto p = cartesian_to_complex(rotated);
  CHECK(std::abs(p.B.imag()) > 0.0);
  for (int i = 0; i < 5; ++i) {
    const std::complex<double> alpha(ua(rng), ua(rng));
    const double direct = gauss_quasiprob_s(p, alpha, 0.0);
    const double quad = testing::fourier_wigner(
        [&](std::complex<double> l) { return gauss_chi(p, l); }, alpha);
    CHECK(std::abs(direct - quad) < 1e-6);
  }
}

TEST_CASE("quasiprob_s equals wigner at s = 0 and is positive at s = -1") {
  const auto state = conditional_state<double>({0.5, 0.9, 0.8});

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  for (int i = 0; i < 25; ++i) {
    const std::complex<double> alpha(ua(rng), ua(rng));
    CHECK(quasiprob_s(state, alpha, 0.0) == wigner(state, alpha));
  }

  for (const IPSParams<double> p :
       {IPSParams<double>{0.5, 0.9, 0.8}, IPSParams<double>{1.0, 0.6, 0.5},
        IPSParams<double>{0.3, 0.3, 1.0}}) {
    const auto st = conditional_state(p);
    const auto grid = default_grid(st, 101);
    const auto values =
        evaluate_grid(grid, [&](std::complex<double> a) { return quasiprob_s(st, a, -1.0); });
    CHECK(values.minCoeff() >= -1e-12);
  }
}

TEST_CASE("quasiprob_s names the violating component") {
  const auto state = conditional_state<double>({0.5, 0.9, 0.8});
  const double bound1 = normalizability_bound(state.components[0].params);
  const double bound2 = normalizability_bound(state.components[1].params);
  REQUIRE(bound2 < bound1);  // conditioning shrinks the second component
  try {
    quasiprob_s(state, {0.0, 0.0}, 0.5 * (bound1 + bound2));
    FAIL("expected NormalizabilityError");
  } catch (const NormalizabilityError& e) {
    CHECK(e.component == 2);
  }
  CHECK_THROWS_AS(quasiprob_s(state, {0.0, 0.0}, bound1 + 1.0), NormalizabilityError);
}

TEST_CASE("wigner symmetry, negativity, and normalization") {
  const auto state = conditional_state<double>({0.5, 0.9, 0.8});

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ua(-2.5, 2.5);
  for (int i = 0; i < 30; ++i) {
    const std::complex<double> alpha(ua(rng), ua(rng));
    CHECK(std::abs(wigner(state, alpha) - wigner(state, -alpha)) < 1e-12);
  }

  // tau = 0.9 is far above the positivity threshold 0.375 at eta = 0.8.
  CHECK(wigner(state, {0.0, 0.0}) < 0.0);

  const PhaseSpaceGrid<double> grid{-5.0, 5.0, -5.0, 5.0, 201, 201};
  const auto values = wigner_grid(state, grid);
  CHECK(grid_integral(values, grid) == doctest::Approx(1.0).epsilon(1e-3));

  // W_s stays normalized for the more regular orderings too.
  for (double s : {-0.5, -1.0}) {
    const auto vs =
        evaluate_grid(grid, [&](std::complex<double> a) { return quasiprob_s(state, a, s); });
    CHECK(grid_integral(vs, grid) == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("wigner origin sign flips at the positivity threshold") {
  const double eta = 0.8, r = 0.5;
  const double tau_star = (2.0 - eta) / (4.0 - eta);
  const double step = 1e-3;
  double flip = std::nan("");
  double prev = wigner(conditional_state<double>({r, tau_star - 0.05, eta}), {0.0, 0.0});
  for (double tau = tau_star - 0.05 + step; tau < tau_star + 0.05; tau += step) {
    const double cur = wigner(conditional_state<double>({r, tau, eta}), {0.0, 0.0});
    if (prev > 0.0 && cur <= 0.0) {
      flip = tau;
      break;
    }
    prev = cur;
  }
  REQUIRE(std::isfinite(flip));
  CHECK(std::abs(flip - tau_star) <= 2.0 * step);
}

TEST_CASE("wigner grid: symmetry, target overlap, speed") {
  // tau = 0 passes nothing: the conditional output is exactly the vacuum.
  const auto vac_state = conditional_state<double>({0.5, 0.0, 0.8});
  const PhaseSpaceGrid<double> sym{-3.0, 3.0, -3.0, 3.0, 41, 41};
  const auto vac_values = wigner_grid(vac_state, sym);
  for (int i = 0; i < sym.nx; ++i) {
    for (int j = 0; j < sym.ny; ++j) {
      CHECK(std::abs(vac_values(i, j) - vac_values(sym.nx - 1 - i, sym.ny - 1 - j)) < 1e-12);
    }
  }

  // Near-unit transmissivity reproduces the S(z)|1> profile along x = 0.
  const double z = 0.5;
  const auto state99 = conditional_state<double>({0.5, 0.99, 0.8});
  double sup = 0.0;
  for (int j = 0; j <= 160; ++j) {
    const double y = -4.0 + 0.05 * j;
    const std::complex<double> alpha(0.0, y / std::numbers::sqrt2);
    sup = std::max(sup, std::abs(wigner(state99, alpha) - wigner_squeezed_fock(z, alpha)));
  }
  CHECK(sup <= 0.02);

  const auto state = conditional_state<double>({0.5, 0.9, 0.8});
  const auto grid = default_grid(state);
  const auto t0 = std::chrono::steady_clock::now();
  const auto values = wigner_grid(state, grid);
  const auto t1 = std::chrono::steady_clock::now();
  CHECK(values.rows() == 201);
  CHECK(std::chrono::duration<double>(t1 - t0).count() < 1.0);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(validate(PhaseSpaceGrid<double>{1.0, -1.0, -1.0, 1.0, 10, 10}),
                  ValidationError);
  CHECK_THROWS_AS(validate(PhaseSpaceGrid<double>{-1.0, 1.0, -1.0, 1.0, 1, 10}),
                  ValidationError);
}

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ips/conditioning.hpp"
#include "ips/dataset.hpp"
#include "ips/fock.hpp"
#include "ips/metrics.hpp"
#include "ips/quasiprob.hpp"

// Builders for the exported figure datasets. Shared by the CLI and the
// acceptance suite; every builder is deterministic for fixed inputs.

namespace ips::figures {

inline std::string short_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// Wigner surface of the conditional state: columns x, y, w (x outer loop).
inline Dataset wigner_grid_dataset(const IPSParams<double>& params,
                                   const PhaseSpaceGrid<double>& grid) {
  const auto state = conditional_state(params);
  const auto values = wigner_grid(state, grid);
  const auto xs = grid.xs();
  const auto ys = grid.ys();
  Dataset d;
  d.columns = {"x", "y", "w"};
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      d.rows.push_back({xs[i], ys[j], values(i, j)});
    }
  }
  return d;
}

/// Wigner surface of the target state S(z)|1>: columns x, y, w.
inline Dataset sqfock_grid_dataset(double z, const PhaseSpaceGrid<double>& grid) {
  const auto values =
      evaluate_grid(grid, [&](std::complex<double> a) { return wigner_squeezed_fock(z, a); });
  const auto xs = grid.xs();
  const auto ys = grid.ys();
  Dataset d;
  d.columns = {"x", "y", "w"};
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      d.rows.push_back({xs[i], ys[j], values(i, j)});
    }
  }
  return d;
}

/// Sections W_out(0, y) for each tau, next to the target W_SqF(0, y).
/// Columns: y, w_tau_<tau>..., w_target.
inline Dataset wigner_profiles_dataset(double r, double eta, double z,
                                       const std::vector<double>& tau_list, double y_half,
                                       int ny) {
  if (tau_list.empty()) throw ValidationError("tau list must not be empty");
  std::vector<ConditionalState<double>> states;
  for (double tau : tau_list) {
    states.push_back(conditional_state<double>({r, tau, eta}));
  }
  Dataset d;
  d.columns = {"y"};
  for (double tau : tau_list) d.columns.push_back("w_tau_" + short_value(tau));
  d.columns.push_back("w_target");
  const auto ys = Eigen::VectorXd::LinSpaced(ny, -y_half, y_half);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int j = 0; j < ny; ++j) {
    const std::complex<double> alpha(0.0, ys[j] * inv_sqrt2);
    std::vector<double> row{ys[j]};
    for (const auto& state : states) row.push_back(wigner(state, alpha));
    row.push_back(wigner_squeezed_fock(z, alpha));
    d.rows.push_back(row);
  }
  return d;
}

/// W_out(0, 0) as a function of tau, one column per eta.
/// Columns: tau, w_eta_<eta>...
inline Dataset origin_sweep_dataset(double r, const std::vector<double>& eta_list,
                                    const SweepSpec& tau_sweep) {
  if (eta_list.empty()) throw ValidationError("eta list must not be empty");
  validate(tau_sweep);
  Dataset d;
  d.columns = {"tau"};
  for (double eta : eta_list) d.columns.push_back("w_eta_" + short_value(eta));
  for (double tau : tau_sweep.values()) {
    std::vector<double> row{tau};
    for (double eta : eta_list) {
      row.push_back(wigner(conditional_state<double>({r, tau, eta}), {0.0, 0.0}));
    }
    d.rows.push_back(row);
  }
  return d;
}

/// Fidelity to S(r)|1> (z = r) as a function of tau, one column per r.
/// Columns: tau, F_r_<r>...
inline Dataset fidelity_sweep_dataset(double eta, const std::vector<double>& r_list,
                                      const SweepSpec& tau_sweep) {
  if (r_list.empty()) throw ValidationError("r list must not be empty");
  validate(tau_sweep);
  Dataset d;
  d.columns = {"tau"};
  for (double r : r_list) d.columns.push_back("F_r_" + short_value(r));
  for (double tau : tau_sweep.values()) {
    std::vector<double> row{tau};
    for (double r : r_list) {
      row.push_back(fidelity<double>({r, tau, eta}, r).value);
    }
    d.rows.push_back(row);
  }
  return d;
}

/// Purity surface over (r, tau) at fixed eta. Columns: r, tau, mu.
inline Dataset purity_surface_dataset(double eta, const SweepSpec& r_sweep,
                                      const SweepSpec& tau_sweep) {
  validate(r_sweep);
  validate(tau_sweep);
  Dataset d;
  d.columns = {"r", "tau", "mu"};
  for (double r : r_sweep.values()) {
    for (double tau : tau_sweep.values()) {
      d.rows.push_back({r, tau, purity<double>({r, tau, eta})});
    }
  }
  return d;
}

/// Nonclassical depth surface over (tau, eta); no r input by construction.
/// Columns: tau, eta, depth.
inline Dataset depth_surface_dataset(const SweepSpec& tau_sweep, const SweepSpec& eta_sweep) {
  validate(tau_sweep);
  validate(eta_sweep);
  Dataset d;
  d.columns = {"tau", "eta", "depth"};
  for (double tau : tau_sweep.values()) {
    for (double eta : eta_sweep.values()) {
      d.rows.push_back({tau, eta, nonclassical_depth(tau, eta).depth});
    }
  }
  return d;
}

struct OracleCompareResult {
  Dataset data;
  int mismatches{0};
  int skipped{0};
};

/// Closed form vs truncated-Fock oracle for p_on, F(z = r) and mu on a
/// parameter grid. Degenerate no-click points are reported with ok = 0 and
/// NaN values. Any absolute difference above tol counts as a mismatch.
inline OracleCompareResult oracle_compare_dataset(const std::vector<double>& r_list,
                                                  const std::vector<double>& tau_list,
                                                  const std::vector<double>& eta_list,
                                                  const fock::OracleConfig& cfg, double tol) {
  OracleCompareResult out;
  out.data.columns = {"r",        "tau",      "eta", "ok",        "cutoff",
                      "p_closed", "p_oracle", "dp",  "f_closed",  "f_oracle",
                      "df",       "mu_closed", "mu_oracle", "dmu"};
  const double nan = std::nan("");
  for (double r : r_list) {
    for (double tau : tau_list) {
      for (double eta : eta_list) {
        const IPSParams<double> params{r, tau, eta};
        validate(params);
        if (is_no_click(params)) {
          out.skipped += 1;
          out.data.rows.push_back({r, tau, eta, 0.0, 0.0, nan, nan, nan, nan, nan, nan, nan,
                                   nan, nan});
          continue;
        }
        const auto oracle = fock::ips_conditional_density<double>(r, tau, eta, cfg);
        const auto target = fock::squeeze_ket(r, fock::fock_basis<double>(1, oracle.cutoff_used));
        const double p_closed = click_probability(params);
        const double f_closed = fidelity(params, r).value;
        const double mu_closed = purity(params);
        const double f_oracle = fock::oracle_fidelity(oracle.rho, target);
        const double mu_oracle = fock::oracle_purity(oracle.rho);
        const double dp = std::abs(p_closed - oracle.p_on);
        const double df = std::abs(f_closed - f_oracle);
        const double dmu = std::abs(mu_closed - mu_oracle);
        if (dp > tol || df > tol || dmu > tol) out.mismatches += 1;
        out.data.rows.push_back({r, tau, eta, 1.0, double(oracle.cutoff_used), p_closed,
                                 oracle.p_on, dp, f_closed, f_oracle, df, mu_closed, mu_oracle,
                                 dmu});
      }
    }
  }
  return out;
}

}  // namespace ips::figures

// Command-line front end: parameter sweeps and phase-space surfaces exported
// as CSV (one header row, 17 significant digits) with a JSON metadata
// sidecar, plus the closed-form vs Fock-oracle comparison report.
//
// Exit codes: 0 success, 2 validation error, 3 no-click degenerate input,
// 4 oracle mismatch, 1 I/O or internal failure.

#include <cmath>
#include <complex>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ips/ips.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ips::ValidationError("cannot parse list entry '" + item + "'");
    }
    if (used != item.size()) throw ips::ValidationError("cannot parse list entry '" + item + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

struct Cli {
  std::string command_echo;

  void emit(const std::string& out_path, const std::string& subcommand,
            const nlohmann::ordered_json& parameters, const ips::Dataset& data) const {
    ips::write_csv(out_path, data);
    ips::write_envelope(out_path, {subcommand + ": " + command_echo, parameters}, data);
  }
};

ips::PhaseSpaceGrid<double> make_grid(double half, int n) { return {-half, half, -half, half, n, n}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional photon subtraction on a squeezed vacuum: figure datasets and checks"};
  app.require_subcommand(1);

  Cli cli;
  cli.command_echo = join_args(argc, argv);

  int exit_code = 0;

  // wigner-grid
  double g_r = 0.5, g_tau = 0.9, g_eta = 0.8, g_target_z = 0.0;
  double g_xmin = 0, g_xmax = 0, g_ymin = 0, g_ymax = 0;
  int g_nx = 201, g_ny = 201;
  std::string g_out;
  auto* grid_cmd = app.add_subcommand("wigner-grid", "Wigner surface W(x, y) as CSV");
  grid_cmd->add_option("--r", g_r, "input squeezing r");
  grid_cmd->add_option("--tau", g_tau, "IPS transmissivity");
  grid_cmd->add_option("--eta", g_eta, "detector quantum efficiency");
  auto* otarget =
      grid_cmd->add_option("--target-sqfock", g_target_z, "emit the target S(z)|1> surface instead");
  auto* oxmin = grid_cmd->add_option("--xmin", g_xmin);
  auto* oxmax = grid_cmd->add_option("--xmax", g_xmax);
  auto* oymin = grid_cmd->add_option("--ymin", g_ymin);
  auto* oymax = grid_cmd->add_option("--ymax", g_ymax);
  grid_cmd->add_option("--nx", g_nx);
  grid_cmd->add_option("--ny", g_ny);
  grid_cmd->add_option("--out", g_out, "output CSV path")->required();
  grid_cmd->callback([&] {
    ips::PhaseSpaceGrid<double> grid{g_xmin, g_xmax, g_ymin, g_ymax, g_nx, g_ny};
    const bool custom = *oxmin || *oxmax || *oymin || *oymax;
    nlohmann::ordered_json params;
    ips::Dataset data;
    if (*otarget) {
      if (!custom) {
        grid = make_grid(5.0 * std::sqrt(1.5) * std::exp(g_target_z), g_nx);
      }
      data = ips::figures::sqfock_grid_dataset(g_target_z, grid);
      params["z"] = g_target_z;
    } else {
      const ips::IPSParams<double> p{g_r, g_tau, g_eta};
      if (!custom) {
        grid = ips::default_grid(ips::conditional_state(p), g_nx);
      }
      data = ips::figures::wigner_grid_dataset(p, grid);
      params["r"] = g_r;
      params["tau"] = g_tau;
      params["eta"] = g_eta;
    }
    params["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"y_min", grid.y_min},
                      {"y_max", grid.y_max}, {"nx", grid.nx},       {"ny", grid.ny}};
    cli.emit(g_out, "wigner-grid", params, data);
  });

  // wigner-profiles
  double p_r = 0.5, p_eta = 0.8, p_z = std::nan("");
  std::string p_tau_list = "0.99,0.9,0.75,0.5";
  double p_yhalf = 0;
  int p_ny = 201;
  std::string p_out;
  auto* prof_cmd =
      app.add_subcommand("wigner-profiles", "Sections W(0, y) per tau beside the target profile");
  prof_cmd->add_option("--r", p_r);
  prof_cmd->add_option("--eta", p_eta);
  prof_cmd->add_option("--z", p_z, "target squeezing (default: z = r)");
  prof_cmd->add_option("--tau-list", p_tau_list, "comma-separated transmissivities");
  prof_cmd->add_option("--y-half", p_yhalf, "profile half-width (default: from the states)");
  prof_cmd->add_option("--ny", p_ny);
  prof_cmd->add_option("--out", p_out)->required();
  prof_cmd->callback([&] {
    const double z = std::isnan(p_z) ? p_r : p_z;
    const auto taus = parse_list(p_tau_list);
    double half = p_yhalf;
    if (!(half > 0)) {
      // The profile runs along y, so size it from the y variances
      // (Var(y) = A + 2 Re(B); 3 e^{-2z}/2 for the target S(z)|1>).
      half = 5.0 * std::sqrt(1.5) * std::exp(-z);
      for (double tau : taus) {
        const auto st = ips::conditional_state<double>({p_r, tau, p_eta});
        const auto& c1 = st.components.front().params;
        half = std::max(half, 5.0 * std::sqrt(c1.A + 2.0 * c1.B.real()));
      }
    }
    const auto data = ips::figures::wigner_profiles_dataset(p_r, p_eta, z, taus, half, p_ny);
    nlohmann::ordered_json params{{"r", p_r}, {"eta", p_eta},    {"z", z},
                                  {"tau_list", taus}, {"y_half", half}, {"ny", p_ny}};
    cli.emit(p_out, "wigner-profiles", params, data);
  });

  // origin-sweep
  double o_r = 0.5;
  std::string o_eta_list = "1.0,0.75,0.5,0.25";
  std::string o_tau_range = "0:0.999999:201";
  std::string o_out;
  auto* origin_cmd = app.add_subcommand("origin-sweep", "W(0, 0) vs tau, one column per eta");
  origin_cmd->add_option("--r", o_r);
  origin_cmd->add_option("--eta-list", o_eta_list);
  origin_cmd->add_option("--tau-range", o_tau_range, "start:stop:count");
  origin_cmd->add_option("--out", o_out)->required();
  origin_cmd->callback([&] {
    const auto etas = parse_list(o_eta_list);
    const auto sweep = ips::parse_sweep("tau", o_tau_range);
    const auto data = ips::figures::origin_sweep_dataset(o_r, etas, sweep);
    nlohmann::ordered_json params{{"r", o_r},
                                  {"eta_list", etas},
                                  {"tau_range", {{"start", sweep.start}, {"stop", sweep.stop}, {"count", sweep.count}}}};
    cli.emit(o_out, "origin-sweep", params, data);
  });

  // fidelity-sweep
  double f_eta = 0.8;
  std::string f_r_list = "0.1,0.3,0.5,0.7,1.0,2.0";
  std::string f_tau_range = "0:0.999999:201";
  std::string f_out;
  auto* fid_cmd = app.add_subcommand("fidelity-sweep", "F(z = r) vs tau, one column per r");
  fid_cmd->add_option("--eta", f_eta);
  fid_cmd->add_option("--r-list", f_r_list);
  fid_cmd->add_option("--tau-range", f_tau_range, "start:stop:count");
  fid_cmd->add_option("--out", f_out)->required();
  fid_cmd->callback([&] {
    const auto rs = parse_list(f_r_list);
    const auto sweep = ips::parse_sweep("tau", f_tau_range);
    const auto data = ips::figures::fidelity_sweep_dataset(f_eta, rs, sweep);
    nlohmann::ordered_json params{{"eta", f_eta},
                                  {"r_list", rs},
                                  {"tau_range", {{"start", sweep.start}, {"stop", sweep.stop}, {"count", sweep.count}}}};
    cli.emit(f_out, "fidelity-sweep", params, data);
  });

  // purity-surface
  double u_eta = 0.8;
  std::string u_r_range = "0.1:2.0:40";
  std::string u_tau_range = "0.5:0.9999:40";
  std::string u_out;
  auto* pur_cmd = app.add_subcommand("purity-surface", "purity mu over (r, tau) at fixed eta");
  pur_cmd->add_option("--eta", u_eta);
  pur_cmd->add_option("--r-range", u_r_range, "start:stop:count");
  pur_cmd->add_option("--tau-range", u_tau_range, "start:stop:count");
  pur_cmd->add_option("--out", u_out)->required();
  pur_cmd->callback([&] {
    const auto r_sweep = ips::parse_sweep("r", u_r_range);
    const auto tau_sweep = ips::parse_sweep("tau", u_tau_range);
    const auto data = ips::figures::purity_surface_dataset(u_eta, r_sweep, tau_sweep);
    nlohmann::ordered_json params{{"eta", u_eta},
                                  {"r_range", {{"start", r_sweep.start}, {"stop", r_sweep.stop}, {"count", r_sweep.count}}},
                                  {"tau_range", {{"start", tau_sweep.start}, {"stop", tau_sweep.stop}, {"count", tau_sweep.count}}}};
    cli.emit(u_out, "purity-surface", params, data);
  });

  // depth-surface
  std::string d_tau_range = "0:1:51";
  std::string d_eta_range = "0:1:51";
  std::string d_out;
  auto* dep_cmd = app.add_subcommand("depth-surface", "nonclassical depth over (tau, eta)");
  dep_cmd->add_option("--tau-range", d_tau_range, "start:stop:count");
  dep_cmd->add_option("--eta-range", d_eta_range, "start:stop:count");
  dep_cmd->add_option("--out", d_out)->required();
  dep_cmd->callback([&] {
    const auto tau_sweep = ips::parse_sweep("tau", d_tau_range);
    const auto eta_sweep = ips::parse_sweep("eta", d_eta_range);
    const auto data = ips::figures::depth_surface_dataset(tau_sweep, eta_sweep);
    nlohmann::ordered_json params{{"tau_range", {{"start", tau_sweep.start}, {"stop", tau_sweep.stop}, {"count", tau_sweep.count}}},
                                  {"eta_range", {{"start", eta_sweep.start}, {"stop", eta_sweep.stop}, {"count", eta_sweep.count}}}};
    cli.emit(d_out, "depth-surface", params, data);
  });

  // oracle-compare
  std::string c_r_list = "0.3,0.5,1.0";
  std::string c_tau_list = "0.5,0.75,0.9,0.99";
  std::string c_eta_list = "0.25,0.5,0.8,1.0";
  double c_tol = 1e-6;
  int c_cutoff = 40, c_max_cutoff = 320;
  std::string c_out;
  auto* cmp_cmd =
      app.add_subcommand("oracle-compare", "closed form vs truncated-Fock oracle per grid point");
  cmp_cmd->add_option("--r-list", c_r_list);
  cmp_cmd->add_option("--tau-list", c_tau_list);
  cmp_cmd->add_option("--eta-list", c_eta_list);
  cmp_cmd->add_option("--tol", c_tol, "mismatch threshold (absolute)");
  cmp_cmd->add_option("--cutoff", c_cutoff, "initial Fock cutoff");
  cmp_cmd->add_option("--max-cutoff", c_max_cutoff);
  cmp_cmd->add_option("--out", c_out)->required();
  cmp_cmd->callback([&] {
    const auto rs = parse_list(c_r_list);
    const auto taus = parse_list(c_tau_list);
    const auto etas = parse_list(c_eta_list);
    ips::fock::OracleConfig cfg;
    cfg.cutoff = c_cutoff;
    cfg.max_cutoff = c_max_cutoff;
    const auto result = ips::figures::oracle_compare_dataset(rs, taus, etas, cfg, c_tol);
    nlohmann::ordered_json params{{"r_list", rs},     {"tau_list", taus},
                                  {"eta_list", etas}, {"tol", c_tol},
                                  {"cutoff", cfg.cutoff}, {"max_cutoff", cfg.max_cutoff},
                                  {"mismatches", result.mismatches}, {"skipped", result.skipped}};
    cli.emit(c_out, "oracle-compare", params, result.data);
    if (result.mismatches > 0) {
      std::cerr << result.mismatches << " grid point(s) exceed tol = " << c_tol << "\n";
      exit_code = 4;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ips::NoClickError& e) {
    std::cerr << "no-click degenerate input: " << e.what() << "\n";
    return 3;
  } catch (const ips::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ips::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

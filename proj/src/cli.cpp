// Command-line front end: run configuration, dispatch, and deterministic
// serialization of every result to CSV/JSON. Identical invocations (same
// flags and seed) produce byte-identical payloads; only the metadata
// timestamp varies.

#include "chiral/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "chiral/anyon.hpp"
#include "chiral/disorder.hpp"
#include "chiral/dynamics.hpp"
#include "chiral/floquet.hpp"
#include "chiral/io.hpp"
#include "chiral/ring.hpp"

namespace chiral::cli {

namespace {

using io::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative output paths may be redirected with CHIRAL_OUT_DIR.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("CHIRAL_OUT_DIR")) {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open output file: " + path.string());
  }
  return os;
}

void finish_output(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) {
    throw IoError("write failed: " + path.string());
  }
}

// Sweep axes: either "start:stop:step" with inclusive endpoints or a
// comma-separated list.
std::vector<double> parse_range(const std::string& text) {
  std::vector<double> values;
  const auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw std::invalid_argument("malformed number in range: '" + s + "'");
    }
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    std::vector<double> abc;
    while (std::getline(ss, part, ':')) abc.push_back(to_double(part));
    if (abc.size() != 3 || !(abc[2] > 0.0)) {
      throw std::invalid_argument("range must be start:stop:step with step > 0");
    }
    for (double v = abc[0]; v <= abc[1] + 1e-9 * abc[2]; v += abc[2]) {
      values.push_back(v);
    }
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) values.push_back(to_double(part));
  }
  if (values.empty()) {
    throw std::invalid_argument("empty sweep range");
  }
  return values;
}

PhaseConvention parse_convention(const std::string& name) {
  return io::convention_from_name(name);
}

void write_json_doc(const std::string& command, const json& params,
                    std::uint64_t seed, json payload, const std::string& out) {
  const auto path = resolve_output(out);
  auto os = open_output(path);
  os << io::envelope(command, params, seed, std::move(payload)).dump(2) << "\n";
  finish_output(os, path);
}

// --- command implementations -------------------------------------------------

void cmd_build(int n, double j, const std::string& convention,
               const std::string& out) {
  const auto ring = build_ideal(n, j, parse_convention(convention));
  write_json_doc("build",
                 {{"n", n}, {"j", j}, {"convention", convention}}, 0,
                 io::ring_to_json(ring), out);
}

void cmd_spectrum(int n, double j, const std::string& convention,
                  const std::string& out) {
  const auto ring = build_ideal(n, j, parse_convention(convention));
  const EigenSystem es = hermitian_eig(ring.matrix);
  const auto report = equidistance_report(es);
  json eigenvalues = json::array();
  for (int k = 0; k < es.dim(); ++k) eigenvalues.push_back(es.eigenvalues[k]);
  json spacings = json::array();
  for (Eigen::Index i = 0; i < report.spacings.size(); ++i) {
    spacings.push_back(report.spacings[i]);
  }
  write_json_doc("spectrum",
                 {{"n", n}, {"j", j}, {"convention", convention}}, 0,
                 json{{"eigenvalues", std::move(eigenvalues)},
                      {"spacings", std::move(spacings)},
                      {"max_spacing_deviation", report.max_deviation},
                      {"expected_spacing", ring.spec.spacing}},
                 out);
}

void cmd_evolve(int n, double j, const std::string& convention, bool reversed,
                double t_end, int samples, int source, const std::string& out) {
  auto ring = build_ideal(n, j, parse_convention(convention));
  if (reversed) ring = reverse(ring);
  const Trajectory traj = evolve_static(ring.matrix, basis_state(n, source),
                                        linspace(0.0, t_end, samples));
  const auto path = resolve_output(out);
  auto os = open_output(path);
  io::write_metadata_comment(
      os, io::metadata("evolve",
                       {{"n", n},
                        {"j", j},
                        {"convention", convention},
                        {"reverse", reversed},
                        {"t_end", t_end},
                        {"samples", samples},
                        {"source", source}},
                       0));
  io::write_trajectory_csv(os, traj);
  finish_output(os, path);
}

void cmd_fidelity(int n, double j, const std::string& out) {
  const auto ring = build_ideal(n, j);
  json steps = json::array();
  for (int k = 1; k <= n; ++k) {
    steps.push_back(step_fidelity(ring.matrix, ring.spec.step_time, k));
  }
  write_json_doc("fidelity", {{"n", n}, {"j", j}}, 0,
                 json{{"step_fidelities", std::move(steps)},
                      {"average", average_fidelity(ring.matrix, ring.spec)},
                      {"step_time", ring.spec.step_time}},
                 out);
}

void cmd_disorder(int n, double j, const std::string& mode,
                  const std::string& strengths, int realizations,
                  std::uint64_t seed, const std::string& out,
                  const std::string& matrix_out) {
  DisorderMode m;
  if (mode == "onsite") {
    m = DisorderMode::OnSite;
  } else if (mode == "hopping") {
    m = DisorderMode::Hopping;
  } else {
    throw std::invalid_argument("mode must be 'onsite' or 'hopping'");
  }
  const std::vector<double> axis = parse_range(strengths);
  DisorderConfig cfg;
  cfg.realizations = realizations;
  cfg.seed = seed;
  const RingSpec spec(n, j);
  const SweepResult sweep = disorder_sweep(spec, axis, m, cfg);

  const json params{{"n", n},           {"j", j},
                    {"mode", mode},     {"strengths", strengths},
                    {"realizations", realizations}};
  const auto path = resolve_output(out);
  auto os = open_output(path);
  io::write_metadata_comment(os, io::metadata("disorder", params, seed));
  io::write_sweep_csv(os, sweep);
  finish_output(os, path);

  if (!matrix_out.empty()) {
    write_json_doc("disorder.matrix", params, seed, io::sweep_matrix_to_json(sweep),
                   matrix_out);
  }
}

json matching_report(double omega_over_j, double phi, double lo, double hi,
                     int m_max) {
  const double x = solve_matching(omega_over_j, phi, lo, hi, m_max);
  const EffectiveCouplings ec =
      effective_couplings({1.0, x * omega_over_j, omega_over_j, phi}, m_max);
  return json{{"omegaOverJ", omega_over_j},
              {"phi", phi},
              {"AoverOmega", x},
              {"Jeff", ec.j_eff},
              {"ImJtilde", ec.j_nnn.imag()},
              {"residual", std::abs(std::abs(ec.j_eff) - std::abs(ec.j_nnn))}};
}

void cmd_floquet_match(double omega_over_j, double phi, double lo, double hi,
                       int m_max, const std::string& out) {
  write_json_doc("floquet-match",
                 {{"omega_over_j", omega_over_j},
                  {"phi", phi},
                  {"bracket_lo", lo},
                  {"bracket_hi", hi},
                  {"m_max", m_max}},
                 0, matching_report(omega_over_j, phi, lo, hi, m_max), out);
}

void cmd_floquet_compare(double omega_over_j, double phi, double a_over_omega,
                         double t_end, int steps_per_period,
                         const std::string& out) {
  if (a_over_omega <= 0.0) {
    a_over_omega = solve_matching(omega_over_j, phi > 0 ? phi : -phi);
  }
  const DriveParams p{1.0, a_over_omega * omega_over_j, omega_over_j, phi};
  if (!high_frequency(p)) {
    std::cerr << "warning: omega/J < 10, outside the high-frequency regime the "
                 "effective model describes\n";
  }
  if (t_end <= 0.0) {
    t_end = effective_circulation_period(effective_couplings(p));
  }
  const DrivenComparison cmp =
      compare_driven_vs_effective(p, t_end, steps_per_period);
  const auto path = resolve_output(out);
  auto os = open_output(path);
  json meta = io::metadata("floquet-compare",
                           {{"omega_over_j", omega_over_j},
                            {"phi", phi},
                            {"a_over_omega", a_over_omega},
                            {"t_end", t_end},
                            {"steps_per_period", steps_per_period}},
                           0);
  meta["max_stroboscopic_deviation"] = cmp.max_deviation;
  meta["sampling"] = "populations at integer multiples of the drive period";
  io::write_metadata_comment(os, meta);
  io::write_paired_trajectory_csv(os, cmp.exact, cmp.effective, "p", "p_eff");
  finish_output(os, path);
}

void cmd_anyon_evolve(double j, double u_over_j, double theta, double t_end,
                      int samples, const std::string& out) {
  const Trajectory traj =
      doublon_dynamics({j, u_over_j * j, theta}, t_end, samples);
  const auto path = resolve_output(out);
  auto os = open_output(path);
  io::write_metadata_comment(os, io::metadata("anyon-evolve",
                                              {{"j", j},
                                               {"u_over_j", u_over_j},
                                               {"theta", theta},
                                               {"t_end", t_end},
                                               {"samples", samples}},
                                              0));
  io::write_trajectory_csv(os, traj, "n");
  finish_output(os, path);
}

void cmd_anyon_spectrum(double j, double u_over_j, const std::string& thetas,
                        const std::string& out) {
  const std::vector<double> grid = parse_range(thetas);
  const Eigen::MatrixXd bands = spectrum_vs_theta(j, u_over_j * j, grid);
  const auto path = resolve_output(out);
  auto os = open_output(path);
  io::write_metadata_comment(
      os, io::metadata("anyon-spectrum",
                       {{"j", j}, {"u_over_j", u_over_j}, {"thetas", thetas}}, 0));
  os << "theta,E1,E2,E3,E4,E5,E6\n";
  for (Eigen::Index i = 0; i < bands.rows(); ++i) {
    os << io::fmt17(grid[static_cast<std::size_t>(i)]);
    for (int k = 0; k < 6; ++k) os << "," << io::fmt17(bands(i, k));
    os << "\n";
  }
  finish_output(os, path);
}

void cmd_anyon_thetaeq(double u_over_j, int branch, double lo, double hi,
                       const std::string& u_grid, const std::string& out) {
  if (!u_grid.empty()) {
    // Sweep all three branches over the given U/J grid.
    const std::vector<double> us = parse_range(u_grid);
    const auto path = resolve_output(out);
    auto os = open_output(path);
    io::write_metadata_comment(
        os, io::metadata("anyon-thetaeq", {{"u_grid", u_grid}}, 0));
    os << "UoverJ,theta_eq_branch1,theta_eq_branch2,theta_eq_branch3\n";
    for (double u : us) {
      os << io::fmt17(u);
      for (const auto& [blo, bhi] : theta_eq_brackets()) {
        double root = std::numeric_limits<double>::quiet_NaN();
        try {
          root = find_theta_eq(1.0, u, blo, bhi);
        } catch (const std::domain_error&) {
          // branch leaves its bracket at small U/J; emit nan
        }
        os << "," << io::fmt17(root);
      }
      os << "\n";
    }
    finish_output(os, path);
    return;
  }
  if (branch >= 1 && branch <= 3) {
    const auto bracket = theta_eq_brackets()[branch - 1];
    lo = bracket.first;
    hi = bracket.second;
  } else if (!(lo < hi)) {
    throw std::invalid_argument("give either --branch 1..3 or a --bracket-lo/--bracket-hi pair");
  }
  const double root = find_theta_eq(1.0, u_over_j, lo, hi);
  write_json_doc("anyon-thetaeq",
                 {{"u_over_j", u_over_j},
                  {"branch", branch},
                  {"bracket_lo", lo},
                  {"bracket_hi", hi}},
                 0,
                 json{{"UoverJ", u_over_j},
                      {"theta_eq", root},
                      {"effective_flux", principal_angle(-3.0 * root)},
                      {"band_asymmetry", doublon_band_asymmetry(1.0, u_over_j, root)}},
                 out);
}

// --- figure recipes -----------------------------------------------------------

struct Recipe {
  std::string name;
  std::string description;
  std::string files;
  std::string check;
  std::function<void(const std::string& dir)> emit;
};

std::string in_dir(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void emit_flux_scan(const std::string& out) {
  const auto path = resolve_output(out);
  auto os = open_output(path);
  io::write_metadata_comment(
      os, io::metadata("recipe:fig2c", {{"n", 3}, {"j", 1.0}, {"flux", "-pi:pi"}}, 0));
  os << "flux,E1,E2,E3\n";
  for (int i = 0; i <= 200; ++i) {
    const double flux = -kPi + 2.0 * kPi * i / 200.0;
    const EigenSystem es = hermitian_eig(triangle_ring_with_flux(1.0, flux));
    os << io::fmt17(flux);
    for (int k = 0; k < 3; ++k) os << "," << io::fmt17(es.eigenvalues[k]);
    os << "\n";
  }
  finish_output(os, path);
}

void emit_ring_trajectory(const std::string& name, int n, bool reversed,
                          const std::string& out) {
  const auto ring = build_ideal(n, 1.0);
  const double t_end = n * ring.spec.step_time;
  cmd_evolve(n, 1.0, "as-derived", reversed, t_end, 200 * n + 1, 1, out);
  (void)name;
}

void emit_disorder_panel(const std::string& mode, const std::string& axis,
                         const std::string& dir, const std::string& stem) {
  for (int n : {3, 5, 10}) {
    cmd_disorder(n, 1.0, mode, axis, 300, 7,
                 in_dir(dir, stem + "_n" + std::to_string(n) + ".csv"), "");
  }
}

const std::vector<Recipe>& figure_recipes() {
  static const std::vector<Recipe> recipes = {
      {"fig2a", "three-site ring, clockwise circulation trajectory",
       "fig2a.csv", "unit step fidelity (acceptance 1)",
       [](const std::string& d) {
         emit_ring_trajectory("fig2a", 3, false, in_dir(d, "fig2a.csv"));
       }},
      {"fig2b", "three-site ring, counterclockwise (conjugated) trajectory",
       "fig2b.csv", "reversal circulation (acceptance 4)",
       [](const std::string& d) {
         emit_ring_trajectory("fig2b", 3, true, in_dir(d, "fig2b.csv"));
       }},
      {"fig2c", "triangle spectrum versus total flux",
       "fig2c.csv", "equidistance at flux +-pi/2 (acceptance 2)",
       [](const std::string& d) { emit_flux_scan(in_dir(d, "fig2c.csv")); }},
      {"fig3b", "four-site ring, clockwise trajectory", "fig3b.csv",
       "unit step fidelity (acceptance 1)",
       [](const std::string& d) {
         emit_ring_trajectory("fig3b", 4, false, in_dir(d, "fig3b.csv"));
       }},
      {"fig3c", "five-site ring, clockwise trajectory", "fig3c.csv",
       "unit step fidelity (acceptance 1)",
       [](const std::string& d) {
         emit_ring_trajectory("fig3c", 5, false, in_dir(d, "fig3c.csv"));
       }},
      {"fig3d", "four-site ring, counterclockwise trajectory", "fig3d.csv",
       "reversal circulation (acceptance 4)",
       [](const std::string& d) {
         emit_ring_trajectory("fig3d", 4, true, in_dir(d, "fig3d.csv"));
       }},
      {"fig3e", "five-site ring, counterclockwise trajectory", "fig3e.csv",
       "reversal circulation (acceptance 4)",
       [](const std::string& d) {
         emit_ring_trajectory("fig3e", 5, true, in_dir(d, "fig3e.csv"));
       }},
      {"fig4a", "ten-site ring, clockwise trajectory", "fig4a.csv",
       "unit step fidelity at N = 10 (acceptance 1)",
       [](const std::string& d) {
         emit_ring_trajectory("fig4a", 10, false, in_dir(d, "fig4a.csv"));
       }},
      {"fig4b", "mean fidelity versus on-site disorder, N = 3/5/10",
       "fig4b_n3.csv fig4b_n5.csv fig4b_n10.csv",
       "on-site robustness thresholds (acceptance 5a, 5c)",
       [](const std::string& d) {
         emit_disorder_panel("onsite", "0:1:0.05", d, "fig4b");
       }},
      {"fig4c", "mean fidelity versus hopping disorder, N = 3/5/10",
       "fig4c_n3.csv fig4c_n5.csv fig4c_n10.csv",
       "hopping robustness thresholds (acceptance 5b, 5d)",
       [](const std::string& d) {
         emit_disorder_panel("hopping", "0:0.5:0.025", d, "fig4c");
       }},
      {"fig5b", "driven chain versus effective model, phi = +pi/3",
       "fig5b.csv", "stroboscopic agreement and direction (acceptance 6)",
       [](const std::string& d) {
         cmd_floquet_compare(40.0, kPi / 3.0, 0.0, 0.0, 256,
                             in_dir(d, "fig5b.csv"));
       }},
      {"fig5c", "driven chain versus effective model, phi = -pi/3",
       "fig5c.csv", "circulation reversal under phi -> -phi (acceptance 6)",
       [](const std::string& d) {
         cmd_floquet_compare(40.0, -kPi / 3.0, 0.0, 0.0, 256,
                             in_dir(d, "fig5c.csv"));
       }},
      {"fig6a", "doublon occupations, theta = +pi/6, U/J = 30", "fig6a.csv",
       "clockwise doublon circulation (acceptance 8)",
       [](const std::string& d) {
         cmd_anyon_evolve(1.0, 30.0, kPi / 6.0, 55.0, 1101,
                          in_dir(d, "fig6a.csv"));
       }},
      {"fig6b", "doublon occupations, theta = -pi/6, U/J = 30", "fig6b.csv",
       "counterclockwise doublon circulation (acceptance 8)",
       [](const std::string& d) {
         cmd_anyon_evolve(1.0, 30.0, -kPi / 6.0, 55.0, 1101,
                          in_dir(d, "fig6b.csv"));
       }},
      {"fig6c", "two-particle spectrum versus theta, U/J = 30", "fig6c.csv",
       "band structure feeding theta_eq search (acceptance 9)",
       [](const std::string& d) {
         cmd_anyon_spectrum(1.0, 30.0, "0:6.2832:0.0209",
                            in_dir(d, "fig6c.csv"));
       }},
      {"fig6d", "equidistance angle branches versus U/J", "fig6d.csv",
       "theta_eq convergence (acceptance 9)",
       [](const std::string& d) {
         cmd_anyon_thetaeq(0.0, 0, 0.0, 0.0, "5:100:2.5",
                           in_dir(d, "fig6d.csv"));
       }},
  };
  return recipes;
}

void cmd_recipe(const std::string& name, bool list, const std::string& out_dir) {
  if (list) {
    for (const auto& r : figure_recipes()) {
      std::cout << r.name << "\t" << r.description << "\t[" << r.files
                << "]\tfeeds: " << r.check << "\n";
    }
    return;
  }
  for (const auto& r : figure_recipes()) {
    if (r.name == name) {
      r.emit(out_dir);
      return;
    }
  }
  throw std::invalid_argument("unknown recipe '" + name + "'; use --list");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "chiral: numerical laboratory for perfect chiral-circulation ring "
      "Hamiltonians (closed-form rings, disorder robustness, Floquet "
      "synthesis, anyon-Hubbard doublon dynamics). Times are in units of "
      "1/J; energies in units of J unless a flag says otherwise."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // build
  int n = 3;
  double j = 1.0;
  std::string convention = "as-derived";
  std::string out = "out.json";
  auto* build = app.add_subcommand(
      "build", "Construct the closed-form ring Hamiltonian and write it as JSON");
  build->add_option("--n", n, "ring size N >= 2")->required();
  build->add_option("--j", j, "nearest-neighbor hopping amplitude J > 0")
      ->capture_default_str();
  build->add_option("--convention", convention,
                    "bond-phase gauge: as-derived | uniform-half-pi")
      ->capture_default_str();
  build->add_option("--out", out, "output path (JSON envelope)")->required();
  build->callback([&] { cmd_build(n, j, convention, out); });

  // spectrum
  int sn = 3;
  double sj = 1.0;
  std::string sconv = "as-derived";
  std::string sout = "spectrum.json";
  auto* spectrum = app.add_subcommand(
      "spectrum", "Eigenvalues and equidistance report of the ideal ring");
  spectrum->add_option("--n", sn, "ring size N >= 2")->required();
  spectrum->add_option("--j", sj, "hopping amplitude J > 0")->capture_default_str();
  spectrum->add_option("--convention", sconv, "as-derived | uniform-half-pi")
      ->capture_default_str();
  spectrum->add_option("--out", sout, "output path (JSON envelope)")->required();
  spectrum->callback([&] { cmd_spectrum(sn, sj, sconv, sout); });

  // evolve
  int en = 3, esamples = 601, esource = 1;
  double ej = 1.0, et_end = 0.0;
  std::string econv = "as-derived", eout = "trajectory.csv";
  bool ereverse = false;
  auto* evolve = app.add_subcommand(
      "evolve", "Site populations of the ideal ring from a basis state (CSV)");
  evolve->add_option("--n", en, "ring size N >= 2")->required();
  evolve->add_option("--j", ej, "hopping amplitude J > 0")->capture_default_str();
  evolve->add_option("--convention", econv, "as-derived | uniform-half-pi")
      ->capture_default_str();
  evolve->add_flag("--reverse", ereverse,
                   "conjugate the Hamiltonian (counterclockwise circulation)");
  evolve->add_option("--t-end", et_end, "final time in units of 1/J")->required();
  evolve->add_option("--samples", esamples, "number of time samples (>= 2)")
      ->capture_default_str();
  evolve->add_option("--source", esource, "initial site (1-based)")
      ->capture_default_str();
  evolve->add_option("--out", eout, "output path (CSV)")->required();
  evolve->callback([&] {
    cmd_evolve(en, ej, econv, ereverse, et_end, esamples, esource, eout);
  });

  // fidelity
  int fn = 3;
  double fj = 1.0;
  std::string fout = "fidelity.json";
  auto* fidelity = app.add_subcommand(
      "fidelity", "Per-step transfer fidelities and their mean for the ideal ring");
  fidelity->add_option("--n", fn, "ring size N >= 2")->required();
  fidelity->add_option("--j", fj, "hopping amplitude J > 0")->capture_default_str();
  fidelity->add_option("--out", fout, "output path (JSON envelope)")->required();
  fidelity->callback([&] { cmd_fidelity(fn, fj, fout); });

  // disorder
  int dn = 3, dreal = 300;
  double dj = 1.0;
  std::string dmode = "onsite", dstrengths = "0:1:0.1", dout = "disorder.csv";
  std::string dmatrix;
  std::uint64_t dseed = 0;
  auto* disorder = app.add_subcommand(
      "disorder",
      "Monte Carlo fidelity sweep over disorder strength (CSV; strengths in "
      "units of the mean hopping)");
  disorder->add_option("--n", dn, "ring size N >= 2")->required();
  disorder->add_option("--j", dj, "hopping amplitude J > 0")->capture_default_str();
  disorder->add_option("--mode", dmode, "onsite | hopping")->required();
  disorder->add_option("--strengths", dstrengths,
                       "sweep axis, start:stop:step or comma list")
      ->required();
  disorder->add_option("--realizations", dreal, "realizations per axis point")
      ->capture_default_str();
  disorder->add_option("--seed", dseed, "master seed of the counter-based RNG")
      ->capture_default_str();
  disorder->add_option("--out", dout, "output path (CSV)")->required();
  disorder->add_option("--matrix-out", dmatrix,
                       "optional JSON path for the per-realization fidelity matrix");
  disorder->callback([&] {
    cmd_disorder(dn, dj, dmode, dstrengths, dreal, dseed, dout, dmatrix);
  });

  // floquet-match
  double momega = 40.0, mphi = kPi / 3.0, mlo = 2.0, mhi = 2.4048;
  int mmax = 40;
  std::string mout = "matching.json";
  auto* match = app.add_subcommand(
      "floquet-match",
      "Solve |J_eff| = |J_nnn| for the drive strength A/omega (JSON report)");
  match->add_option("--omega-over-j", momega, "drive frequency in units of J")
      ->capture_default_str();
  match->add_option("--phi", mphi, "drive phase in radians")->capture_default_str();
  match->add_option("--bracket-lo", mlo, "lower bracket for A/omega")
      ->capture_default_str();
  match->add_option("--bracket-hi", mhi, "upper bracket for A/omega")
      ->capture_default_str();
  match->add_option("--m-max", mmax, "Bessel series truncation order")
      ->capture_default_str();
  match->add_option("--out", mout, "output path (JSON envelope)")->required();
  match->callback([&] { cmd_floquet_match(momega, mphi, mlo, mhi, mmax, mout); });

  // floquet-compare
  double comega = 40.0, cphi = kPi / 3.0, caoo = 0.0, ct_end = 0.0;
  int cspp = 256;
  std::string cout_path = "compare.csv";
  auto* compare = app.add_subcommand(
      "floquet-compare",
      "Stroboscopic populations: exact driven chain vs effective model (CSV)");
  compare->add_option("--omega-over-j", comega, "drive frequency in units of J")
      ->capture_default_str();
  compare->add_option("--phi", cphi, "drive phase in radians")->capture_default_str();
  compare->add_option("--a-over-omega", caoo,
                      "drive strength; <= 0 solves the matching condition first")
      ->capture_default_str();
  compare->add_option("--t-end", ct_end,
                      "total time in 1/J; <= 0 uses one circulation period")
      ->capture_default_str();
  compare->add_option("--steps-per-period", cspp, "integrator substeps per period (>= 64)")
      ->capture_default_str();
  compare->add_option("--out", cout_path, "output path (CSV)")->required();
  compare->callback(
      [&] { cmd_floquet_compare(comega, cphi, caoo, ct_end, cspp, cout_path); });

  // anyon-evolve
  double aj = 1.0, auj = 30.0, atheta = kPi / 6.0, at_end = 55.0;
  int asamples = 1101;
  std::string aout = "anyon.csv";
  auto* anyon_evolve = app.add_subcommand(
      "anyon-evolve",
      "Occupation expectations of two interacting anyons from a site-1 doublon (CSV)");
  anyon_evolve->add_option("--j", aj, "hopping amplitude J > 0")->capture_default_str();
  anyon_evolve->add_option("--u-over-j", auj, "interaction strength in units of J")
      ->capture_default_str();
  anyon_evolve->add_option("--theta", atheta, "statistical angle in radians")
      ->capture_default_str();
  anyon_evolve->add_option("--t-end", at_end, "final time in units of 1/J")
      ->capture_default_str();
  anyon_evolve->add_option("--samples", asamples, "number of time samples (>= 2)")
      ->capture_default_str();
  anyon_evolve->add_option("--out", aout, "output path (CSV)")->required();
  anyon_evolve->callback(
      [&] { cmd_anyon_evolve(aj, auj, atheta, at_end, asamples, aout); });

  // anyon-spectrum
  double spj = 1.0, spu = 30.0;
  std::string spthetas = "0:6.2832:0.0209", spout = "anyon_spectrum.csv";
  auto* anyon_spectrum = app.add_subcommand(
      "anyon-spectrum", "Six-level two-particle spectrum versus theta (CSV)");
  anyon_spectrum->add_option("--j", spj, "hopping amplitude J > 0")
      ->capture_default_str();
  anyon_spectrum->add_option("--u-over-j", spu, "interaction strength in units of J")
      ->capture_default_str();
  anyon_spectrum->add_option("--thetas", spthetas,
                             "theta grid, start:stop:step or comma list")
      ->capture_default_str();
  anyon_spectrum->add_option("--out", spout, "output path (CSV)")->required();
  anyon_spectrum->callback([&] { cmd_anyon_spectrum(spj, spu, spthetas, spout); });

  // anyon-thetaeq
  double tu = 30.0, tlo = 0.0, thi = 0.0;
  int tbranch = 0;
  std::string tugrid, tout = "thetaeq.json";
  auto* thetaeq = app.add_subcommand(
      "anyon-thetaeq",
      "Statistical angle making the doublon band equidistant (JSON, or CSV sweep "
      "with --u-grid)");
  thetaeq->add_option("--u-over-j", tu, "interaction strength in units of J")
      ->capture_default_str();
  thetaeq->add_option("--branch", tbranch,
                      "branch 1..3 (asymptotes pi/6, pi/2, 5pi/6)");
  thetaeq->add_option("--bracket-lo", tlo, "custom bracket lower end (radians)");
  thetaeq->add_option("--bracket-hi", thi, "custom bracket upper end (radians)");
  thetaeq->add_option("--u-grid", tugrid,
                      "sweep all branches over this U/J range (CSV output)");
  thetaeq->add_option("--out", tout, "output path")->required();
  thetaeq->callback(
      [&] { cmd_anyon_thetaeq(tu, tbranch, tlo, thi, tugrid, tout); });

  // recipe
  std::string rname, rdir = ".";
  bool rlist = false;
  auto* recipe = app.add_subcommand(
      "recipe", "Emit the data file(s) for one figure panel, or list all recipes");
  recipe->add_option("--name", rname, "recipe name, e.g. fig2a");
  recipe->add_flag("--list", rlist, "list available recipes");
  recipe->add_option("--out-dir", rdir, "directory for the emitted files")
      ->capture_default_str();
  recipe->callback([&] {
    if (!rlist && rname.empty()) {
      throw std::invalid_argument("recipe: give --name or --list");
    }
    cmd_recipe(rname, rlist, rdir);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace chiral::cli

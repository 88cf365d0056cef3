// Command-line front end: time propagation, potential solves, solitary-wave
// construction, and the randomized verification suites.  Every run emits a
// manifest (config + version + seed) sufficient to reproduce its outputs.

#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "photoref/photoref.hpp"

using namespace photoref;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GridSpec parse_grid_flag(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  try {
    if (parts.size() == 2) {
      return make_grid(1, {static_cast<std::size_t>(std::stoull(parts[0]))},
                       {std::stod(parts[1])});
    }
    if (parts.size() == 4) {
      return make_grid(2,
                       {static_cast<std::size_t>(std::stoull(parts[0])),
                        static_cast<std::size_t>(std::stoull(parts[2]))},
                       {std::stod(parts[1]), std::stod(parts[3])});
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  } catch (const std::out_of_range&) {
    throw UsageError("--grid: value out of range");
  }
  throw UsageError("--grid expects N,L (1D) or N0,L0,N1,L1 (2D), got '" + s +
                   "'");
}

// --init forms: file:PATH | gaussian:amp,width | bright:um | stripe:um
ComplexField build_init(const std::string& spec, const GridSpec& g) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "file") {
    if (arg.empty()) throw UsageError("--init file: needs a path");
    return read_prf1_complex(arg);
  }
  if (kind == "gaussian") {
    auto comma = arg.find(',');
    if (comma == std::string::npos)
      throw UsageError("--init gaussian:amp,width");
    double amp = 0.0, width = 0.0;
    try {
      amp = std::stod(arg.substr(0, comma));
      width = std::stod(arg.substr(comma + 1));
    } catch (const std::exception&) {
      throw UsageError("--init gaussian: bad numbers in '" + arg + "'");
    }
    if (!(width > 0.0)) throw UsageError("--init gaussian: width must be > 0");
    return make_complex_field(g, [&](double x, double y) {
      return std::complex<double>(
          amp * std::exp(-(x * x + y * y) / (2.0 * width * width)), 0.0);
    });
  }
  if (kind == "bright" || kind == "stripe") {
    double um = 0.0;
    try {
      um = std::stod(arg);
    } catch (const std::exception&) {
      throw UsageError("--init " + kind + ": bad peak value '" + arg + "'");
    }
    if (kind == "bright" && g.dim != 1)
      throw UsageError("--init bright: needs a 1D grid (use stripe: in 2D)");
    if (kind == "stripe" && g.dim != 2)
      throw UsageError("--init stripe: needs a 2D grid");
    BrightProfile p =
        bright_profile(um, g.lengths[0] / 2.0, g.points[0], 1e-6);
    ComplexField f{g, std::vector<std::complex<double>>(g.size())};
    for (std::size_t i0 = 0; i0 < g.points[0]; ++i0)
      for (std::size_t i1 = 0; i1 < g.points[1]; ++i1)
        f.values[g.index(i0, i1)] = {p.u[i0], 0.0};
    return f;
  }
  throw UsageError("--init expects file:PATH, gaussian:amp,width, bright:um "
                   "or stripe:um, got '" + spec + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string manifest_path(const std::string& out, const std::string& report,
                          const std::string& fallback) {
  if (!out.empty()) return out + ".manifest.json";
  if (!report.empty()) return report + ".manifest.json";
  return fallback + ".manifest.json";
}

// True when the user passed `name` on this subcommand (false if the flag is
// not registered there at all).
bool passed(CLI::App* cmd, const std::string& name) {
  const CLI::Option* o = cmd->get_option_no_throw(name);
  return o != nullptr && o->count() > 0;
}

// Shared flag bundle for the propagation / solve commands, merged with an
// optional config file (explicit flags win over file values).
struct CommonFlags {
  std::string config_file;
  std::string grid_flag;
  int a = 1;
  double eps = 1.0;
  double binf = 0.0;
  double C = 0.0;
  double dt = 1e-3;
  double T = 1.0;
  double tol = 1e-10;
  std::uint64_t max_iter = 0;
  double eps_reg = 0.0;
  std::uint64_t report_every = 0;
  std::string init = "gaussian:1,2";
  std::string in_path, out_path, report_path;
  std::uint64_t seed = 0;

  void add_model_flags(CLI::App* cmd) {
    cmd->add_option("--a", a, "nonlinearity sign (+1 focusing, -1 defocusing)");
    cmd->add_option("--eps", eps, "saturation parameter");
    cmd->add_option("--binf", binf, "background intensity");
    cmd->add_option("--C", C, "boundary constant of the 1D reduction");
  }

  RunConfig merged(CLI::App* cmd, const std::string& command) {
    RunConfig base;
    if (!config_file.empty()) base = load_config_file(config_file);
    RunConfig c = base;
    c.command = command;
    if (passed(cmd, "--grid")) c.grid = parse_grid_flag(grid_flag);
    if (passed(cmd, "--a")) c.model.a = a;
    if (passed(cmd, "--eps")) c.model.saturation = eps;
    if (passed(cmd, "--binf")) c.model.background_intensity = binf;
    if (passed(cmd, "--C")) c.model.boundary_constant = C;
    if (passed(cmd, "--dt")) c.numerics.dt = dt;
    if (passed(cmd, "--T")) c.numerics.T = T;
    if (passed(cmd, "--tol")) c.numerics.tol = tol;
    if (passed(cmd, "--max-iter")) c.numerics.max_iter = max_iter;
    if (passed(cmd, "--eps-reg")) c.numerics.eps_reg = eps_reg;
    if (passed(cmd, "--report-every")) c.io.report_every = report_every;
    if (passed(cmd, "--init")) c.io.input = init;
    if (passed(cmd, "--in")) c.io.input = in_path;
    if (passed(cmd, "--out")) c.io.output = out_path;
    if (passed(cmd, "--report")) c.io.report = report_path;
    if (passed(cmd, "--seed")) c.seed = seed;
    if (c.io.input.empty()) c.io.input = init;
    // re-validate the merged document through the strict parser
    return parse_config(serialize_config(c));
  }
};

int cmd_propagate_nls(CLI::App* cmd, CommonFlags& f) {
  RunConfig c = f.merged(cmd, "propagate-nls");
  ComplexField A0 = build_init(c.io.input, c.grid);
  if (passed(cmd, "--grid") && !(A0.grid == c.grid))
    throw UsageError("--grid conflicts with the grid stored in the init file");
  c.grid = A0.grid;
  ModelParams p = c.model;
  auto run = propagate_nls(A0, p, c.numerics.T, c.numerics.dt,
                           c.io.report_every);
  if (!c.io.output.empty()) write_prf1(c.io.output, run.state);
  if (!c.io.report.empty()) {
    std::ostringstream os;
    os << "time,mass,energy,grad_sq,h1_ok\n";
    for (const auto& r : run.reports)
      os << fmt(r.time) << ',' << fmt(r.mass) << ',' << fmt(r.energy) << ','
         << fmt(r.grad_sq) << ',' << (r.h1_bound_ok ? 1 : 0) << "\n";
    write_text(c.io.report, os.str());
  }
  write_manifest(manifest_path(c.io.output, c.io.report, "propagate-nls"), c);
  std::cout << "final time " << run.reports.back().time << ", mass "
            << fmt(run.reports.back().mass) << "\n";
  return 0;
}

int cmd_propagate_za(CLI::App* cmd, CommonFlags& f) {
  RunConfig c = f.merged(cmd, "propagate-za");
  ComplexField A0 = build_init(c.io.input, c.grid);
  if (passed(cmd, "--grid") && !(A0.grid == c.grid))
    throw UsageError("--grid conflicts with the grid stored in the init file");
  c.grid = A0.grid;
  ZaSolverConfig cfg;
  cfg.tol = c.numerics.tol;
  cfg.max_iter = c.numerics.max_iter;
  cfg.eps_reg = c.numerics.eps_reg;
  auto run = propagate_za(A0, c.model.a, c.numerics.T, c.numerics.dt, cfg,
                          c.io.report_every);
  if (!c.io.output.empty()) write_prf1(c.io.output, run.state.A);
  if (!c.io.report.empty()) {
    std::ostringstream os;
    os << "time,mass,bound_lhs,bound_rhs,solver_iters,residual\n";
    for (const auto& r : run.reports)
      os << fmt(r.time) << ',' << fmt(r.mass) << ',' << fmt(r.bound_lhs) << ','
         << fmt(r.bound_rhs) << ',' << r.solver_iterations << ','
         << fmt(r.residual) << "\n";
    write_text(c.io.report, os.str());
  }
  write_manifest(manifest_path(c.io.output, c.io.report, "propagate-za"), c);
  std::cout << "final time " << run.reports.back().time << ", mass "
            << fmt(run.reports.back().mass) << "\n";
  return 0;
}

int cmd_solve_potential(CLI::App* cmd, CommonFlags& f) {
  RunConfig c = f.merged(cmd, "solve-potential");
  if (c.io.input.empty() || c.io.input.find(':') != std::string::npos)
    throw UsageError("solve-potential needs --in PATH (a PRF1 field)");
  ComplexField A = read_prf1_complex(c.io.input);
  c.grid = A.grid;
  RealField phi{A.grid, {}};
  EllipticSolveReport rep;
  if (c.numerics.eps_reg > 0.0) {
    auto [p, r] = regularized_solve_potential(A, c.numerics.eps_reg,
                                              c.numerics.tol,
                                              c.numerics.max_iter);
    phi = std::move(p);
    rep = r;
  } else {
    PotentialSolveOptions opt;
    opt.tol = c.numerics.tol;
    opt.max_iter = c.numerics.max_iter;
    auto [p, r] = solve_potential(A, opt);
    phi = std::move(p);
    rep = r;
  }
  if (!c.io.output.empty()) write_prf1(c.io.output, phi);
  if (!c.io.report.empty()) {
    json j;
    j["bound_lhs"] = rep.bound_lhs;
    j["bound_ok"] = rep.bound_ok;
    j["bound_rhs"] = rep.bound_rhs;
    j["iterations"] = rep.iterations;
    j["residual"] = rep.residual;
    write_text(c.io.report, j.dump(2) + "\n");
  }
  write_manifest(manifest_path(c.io.output, c.io.report, "solve-potential"),
                 c);
  std::cout << "iterations " << rep.iterations << ", residual "
            << fmt(rep.residual) << ", bound "
            << (rep.bound_ok ? "ok" : "VIOLATED") << "\n";
  return 0;
}

void write_soliton_manifest(const std::string& out, const std::string& report,
                            const std::string& sub, const json& params) {
  json j;
  j["config"] = {{"command", "soliton"}, {"parameters", params},
                 {"subcommand", sub}};
  j["seed"] = 0;
  j["version"] = kVersion;
  write_text(manifest_path(out, report, "soliton-" + sub), j.dump(2) + "\n");
}

void write_profile_csv(const std::string& path, const char* abscissa,
                       const std::vector<double>& x,
                       const std::vector<double>& u,
                       const std::vector<double>* du = nullptr) {
  std::ostringstream os;
  os << abscissa << ",u";
  if (du) os << ",du";
  os << "\n";
  for (std::size_t j = 0; j < x.size(); ++j) {
    os << fmt(x[j]) << ',' << fmt(u[j]);
    if (du) os << ',' << fmt((*du)[j]);
    os << "\n";
  }
  write_text(path, os.str());
}

int cmd_soliton_bright(double um, double x_max, std::uint64_t n,
                       double tail_tol, const std::string& out,
                       const std::string& report) {
  if (x_max <= 0.0) x_max = bright_suggested_half_width(um);
  BrightProfile p = bright_profile(um, x_max, n, tail_tol);
  DecayCheck dc = decay_check(p);
  if (!out.empty()) write_profile_csv(out, "x", p.x, p.u);
  json j;
  j["decay_delta"] = dc.delta_fit;
  j["kind"] = "bright";
  j["ode_residual"] = p.ode_residual;
  j["omega"] = p.omega;
  j["tail"] = p.tail;
  j["u_m"] = p.u_m;
  j["weighted_tail_bounded"] = dc.weighted_tail_bounded;
  if (!report.empty()) write_text(report, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  write_soliton_manifest(out, report, "bright",
                         {{"n", n},
                          {"tail_tol", tail_tol},
                          {"u_m", um},
                          {"x_max", x_max}});
  return 0;
}

int cmd_soliton_dark(double uinf, double x_max, std::uint64_t n,
                     double tail_tol, const std::string& out,
                     const std::string& report) {
  if (x_max <= 0.0) x_max = dark_suggested_half_width(uinf);
  DarkProfile p = dark_profile(uinf, x_max, n, tail_tol);
  if (!out.empty()) write_profile_csv(out, "x", p.x, p.u);
  json j;
  j["kind"] = "dark";
  j["ode_residual"] = p.ode_residual;
  j["tail_gap"] = p.tail_gap;
  j["u_inf"] = p.u_inf;
  if (!report.empty()) write_text(report, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  write_soliton_manifest(out, report, "dark",
                         {{"n", n},
                          {"tail_tol", tail_tol},
                          {"u_inf", uinf},
                          {"x_max", x_max}});
  return 0;
}

int cmd_soliton_radial(int dim, double omega, double eps, double r_max,
                       std::uint64_t samples, double rtol,
                       const std::string& out, const std::string& report) {
  ShootingConfig cfg;
  if (r_max > 0.0) cfg.r_max = r_max;
  cfg.samples = samples;
  cfg.rtol = rtol;
  auto sol = eps == 1.0 ? shoot_radial(dim, omega, cfg)
                        : shoot_radial_eps(dim, omega, eps, cfg);
  json j;
  auto wc = existence_window_eps(1, omega, eps, dim);
  j["window"] = {{"clause", wc.clause},
                 {"kind", wc.kind == WindowKind::possible ? "possible"
                          : wc.kind == WindowKind::excluded
                              ? "excluded"
                              : "excluded-conditional"}};
  j["dim"] = dim;
  j["found"] = sol.has_value();
  j["kind"] = "radial";
  j["omega"] = omega;
  j["saturation"] = eps;
  if (sol) {
    auto cert = certify_ground_state(*sol, cfg);
    auto res = identity_residuals(*sol);
    j["bracket_hi"] = sol->bracket_hi;
    j["bracket_lo"] = sol->bracket_lo;
    j["certificate"] = {{"crossing_above", cert.crossing_above},
                        {"delta", cert.delta},
                        {"rebound_below", cert.rebound_below}};
    j["decay_delta"] = sol->decay_delta;
    j["energy_residual"] = res.energy;
    j["ode_residual"] = sol->ode_residual;
    j["pohozaev_residual"] = res.pohozaev;
    j["zeta"] = sol->zeta;
    if (!out.empty()) write_profile_csv(out, "r", sol->r, sol->u, &sol->du);
  }
  if (!report.empty()) write_text(report, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  write_soliton_manifest(out, report, "radial",
                         {{"dim", dim},
                          {"omega", omega},
                          {"r_max", r_max},
                          {"rtol", rtol},
                          {"samples", samples},
                          {"saturation", eps}});
  return 0;
}

int cmd_soliton_window(int a, double omega, double eps, int dim,
                       const std::string& report) {
  auto wc = existence_window_eps(a, omega, eps, dim);
  json j;
  j["a"] = a;
  j["clause"] = wc.clause;
  j["dim"] = dim;
  j["kind"] = wc.kind == WindowKind::possible ? "possible"
              : wc.kind == WindowKind::excluded ? "excluded"
                                                : "excluded-conditional";
  j["omega"] = omega;
  j["saturation"] = eps;
  if (!report.empty()) write_text(report, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  write_soliton_manifest("", report, "window",
                         {{"a", a}, {"dim", dim}, {"omega", omega},
                          {"saturation", eps}});
  return 0;
}

int cmd_soliton_blp(double omega, const std::string& report) {
  BlpReport b = blp_check(omega);
  json j;
  j["alpha"] = b.alpha;
  j["hypotheses_ok"] = b.hypotheses_ok;
  j["kind"] = "blp";
  j["omega"] = b.omega;
  j["slope_at_alpha"] = b.slope_at_alpha;
  j["zeta0"] = b.zeta0;
  if (!report.empty()) write_text(report, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  write_soliton_manifest("", report, "blp", {{"omega", omega}});
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out) {
  VerifyReport rep = run_verify(suite, seed);
  std::cout << verify_table(rep);
  if (!out.empty()) write_text(out, verify_to_json(rep).dump(2) + "\n");
  RunConfig c;
  c.command = "verify";
  c.io.output = out;
  c.io.input = suite;
  c.seed = seed;
  write_manifest(manifest_path(out, "", "verify-" + suite), c);
  return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral tools for saturated beam propagation, the coupled "
               "drift potential system, and solitary-wave analysis"};
  app.require_subcommand(1);
  std::function<int()> action;

  CommonFlags nf, zf, pf;

  auto* nls = app.add_subcommand("propagate-nls",
                                 "split-step run of the saturated equation");
  nls->add_option("--config", nf.config_file, "JSON config file");
  nls->add_option("--grid", nf.grid_flag, "N,L (1D) or N0,L0,N1,L1 (2D)");
  nf.add_model_flags(nls);
  nls->add_option("--dt", nf.dt, "time step");
  nls->add_option("--T", nf.T, "final time");
  nls->add_option("--report-every", nf.report_every,
                  "steps between conserved-quantity reports (0: ends only)");
  nls->add_option("--init", nf.init,
                  "file:PATH | gaussian:amp,width | bright:um");
  nls->add_option("--out", nf.out_path, "final state (PRF1)");
  nls->add_option("--report", nf.report_path, "conserved-quantity CSV");
  nls->add_option("--seed", nf.seed, "seed recorded in the manifest");
  nls->callback([&]() { action = [&]() { return cmd_propagate_nls(nls, nf); }; });

  auto* za = app.add_subcommand("propagate-za",
                                "coupled envelope/potential propagation");
  za->add_option("--config", zf.config_file, "JSON config file");
  za->add_option("--grid", zf.grid_flag, "N,L (1D) or N0,L0,N1,L1 (2D)");
  za->add_option("--a", zf.a, "nonlinearity sign");
  za->add_option("--dt", zf.dt, "time step");
  za->add_option("--T", zf.T, "final time");
  za->add_option("--eps-reg", zf.eps_reg, "potential regularizer strength");
  za->add_option("--tol", zf.tol, "potential solver tolerance");
  za->add_option("--max-iter", zf.max_iter, "potential solver iteration cap");
  za->add_option("--report-every", zf.report_every,
                 "steps between reports (0: ends only)");
  za->add_option("--init", zf.init,
                 "file:PATH | gaussian:amp,width | stripe:um");
  za->add_option("--out", zf.out_path, "final state (PRF1)");
  za->add_option("--report", zf.report_path, "per-report CSV");
  za->add_option("--seed", zf.seed, "seed recorded in the manifest");
  za->callback([&]() { action = [&]() { return cmd_propagate_za(za, zf); }; });

  auto* sp = app.add_subcommand("solve-potential",
                                "divergence-form potential solve for a field");
  sp->add_option("--config", pf.config_file, "JSON config file");
  sp->add_option("--in", pf.in_path, "input field (PRF1)")->required();
  sp->add_option("--eps-reg", pf.eps_reg, "regularizer strength");
  sp->add_option("--tol", pf.tol, "relative residual target");
  sp->add_option("--max-iter", pf.max_iter, "iteration cap (0: default)");
  sp->add_option("--out", pf.out_path, "potential (PRF1)");
  sp->add_option("--report", pf.report_path, "JSON solve report");
  sp->callback(
      [&]() { action = [&]() { return cmd_solve_potential(sp, pf); }; });

  auto* sol = app.add_subcommand("soliton", "solitary-wave toolkit");
  sol->require_subcommand(1);

  double um = 1.0, uinf = 1.0, somega = 0.5, x_max = 0.0, tail_tol = 1e-12;
  double seps = 1.0, r_max = 0.0, rtol = 1e-12;
  std::uint64_t n = 4096, samples = 4096;
  int sdim = 2, sa = 1;
  std::string s_out, s_report;

  auto* br = sol->add_subcommand("bright", "bright profile by quadrature");
  br->add_option("--um", um, "peak amplitude")->required();
  br->add_option("--x-max", x_max, "half width (0: auto)");
  br->add_option("--n", n, "sample count (even)");
  br->add_option("--tail-tol", tail_tol, "required relative tail at x-max");
  br->add_option("--out", s_out, "profile CSV");
  br->add_option("--report", s_report, "JSON report");
  br->callback([&]() {
    action = [&]() {
      return cmd_soliton_bright(um, x_max, n, tail_tol, s_out, s_report);
    };
  });

  auto* dk = sol->add_subcommand("dark", "dark profile by quadrature");
  dk->add_option("--uinf", uinf, "background amplitude")->required();
  dk->add_option("--x-max", x_max, "half width (0: auto)");
  dk->add_option("--n", n, "sample count (even)");
  dk->add_option("--tail-tol", tail_tol, "required relative tail gap");
  dk->add_option("--out", s_out, "profile CSV");
  dk->add_option("--report", s_report, "JSON report");
  dk->callback([&]() {
    action = [&]() {
      return cmd_soliton_dark(uinf, x_max, n, tail_tol, s_out, s_report);
    };
  });

  auto* rd = sol->add_subcommand("radial", "radial ground state by shooting");
  rd->add_option("--dim", sdim, "spatial dimension (>= 1)");
  rd->add_option("--omega", somega, "frequency")->required();
  rd->add_option("--eps", seps, "saturation parameter");
  rd->add_option("--r-max", r_max, "integration radius (0: auto)");
  rd->add_option("--samples", samples, "recorded sample count");
  rd->add_option("--rtol", rtol, "integrator relative tolerance");
  rd->add_option("--out", s_out, "profile CSV (r,u,du)");
  rd->add_option("--report", s_report, "JSON report");
  rd->callback([&]() {
    action = [&]() {
      return cmd_soliton_radial(sdim, somega, seps, r_max, samples, rtol,
                                s_out, s_report);
    };
  });

  auto* wd = sol->add_subcommand("window", "frequency-window classification");
  wd->add_option("--a", sa, "nonlinearity sign");
  wd->add_option("--omega", somega, "frequency")->required();
  wd->add_option("--eps", seps, "saturation parameter");
  wd->add_option("--dim", sdim, "spatial dimension");
  wd->add_option("--report", s_report, "JSON report");
  wd->callback([&]() {
    action = [&]() {
      return cmd_soliton_window(sa, somega, seps, sdim, s_report);
    };
  });

  auto* bl = sol->add_subcommand("blp", "shooting-hypothesis report");
  bl->add_option("--omega", somega, "frequency")->required();
  bl->add_option("--report", s_report, "JSON report");
  bl->callback(
      [&]() { action = [&]() { return cmd_soliton_blp(somega, s_report); }; });

  auto* vf = app.add_subcommand("verify", "randomized property suites");
  std::string suite = "spectral-exactness", v_out;
  std::uint64_t vseed = 0;
  vf->add_option("--suite", suite,
                 "spectral-exactness | nls-conservation | za-bound | "
                 "soliton-identities | nonexistence-window | appendix-F")
      ->required();
  vf->add_option("--seed", vseed, "suite seed");
  vf->add_option("--out", v_out, "JSON report path");
  vf->callback(
      [&]() { action = [&]() { return cmd_verify(suite, vseed, v_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // 0 covers --help/--version
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DivergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const PotentialSolveError& e) {
    std::cerr << "numerical failure: " << e.what() << " (residual "
              << e.report.residual << " after " << e.report.iterations
              << " iterations)\n";
    return 2;
  } catch (const ProfileTailError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

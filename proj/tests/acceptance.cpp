// Acceptance gate: one self-contained check per release criterion, each
// printed as a single [PASS]/[FAIL] line with its worst measured value and
// elapsed time.  Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "photoref/photoref.hpp"

using namespace photoref;

namespace {

constexpr double pi = std::numbers::pi;
int g_failures = 0;

struct Criterion {
  int id;
  std::string summary;
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(const Criterion& c, double secs) {
  std::printf("[%s] criterion %2d: %s [%.2fs]\n", c.ok ? "PASS" : "FAIL", c.id,
              c.summary.c_str(), secs);
  for (const auto& n : c.notes) std::printf("           - %s\n", n.c_str());
  if (!c.ok) ++g_failures;
}

ComplexField gaussian(const GridSpec& g, double amp, double width) {
  return make_complex_field(g, [&](double x, double y) {
    return std::complex<double>(
        amp * std::exp(-(x * x + y * y) / (2.0 * width * width)), 0.0);
  });
}

double max_mod_dev(const ComplexField& A, const std::vector<double>& u) {
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    worst = std::max(worst, std::abs(std::abs(A.values[j]) - u[j]));
  return worst;
}

// --- 1: spectral exactness ------------------------------------------------

void criterion_1() {
  Timer t;
  Criterion c{1, ""};

  GridSpec g1 = make_grid(1, {64}, {5.0});
  double k1 = 2.0 * pi / 5.0;
  auto f = make_complex_field(g1, [&](double x, double) {
    return std::complex<double>(std::sin(3.0 * k1 * x),
                                0.5 * std::cos(9.0 * k1 * x));
  });
  auto fw = make_complex_field(g1, [&](double x, double) {
    return std::complex<double>(3.0 * k1 * std::cos(3.0 * k1 * x),
                                -4.5 * k1 * std::sin(9.0 * k1 * x));
  });
  ComplexField df = gradient_x(f);
  double scale = 0.0, err_d = 0.0;
  for (std::size_t i = 0; i < df.values.size(); ++i) {
    scale = std::max(scale, std::abs(fw.values[i]));
    err_d = std::max(err_d, std::abs(df.values[i] - fw.values[i]));
  }
  err_d /= scale;

  GridSpec g2 = make_grid(2, {32, 32}, {7.0, 4.0});
  double kx = 2.0 * pi * 5.0 / 7.0, ky = 2.0 * pi * 3.0 / 4.0;
  auto pw = make_complex_field(g2, [&](double x, double y) {
    return std::exp(std::complex<double>(0.0, kx * x + ky * y));
  });
  ComplexField lap = laplacian(pw);
  double ksq = kx * kx + ky * ky, err_l = 0.0;
  for (std::size_t i = 0; i < pw.values.size(); ++i)
    err_l = std::max(err_l, std::abs(lap.values[i] + ksq * pw.values[i]) / ksq);

  GridSpec g3 = make_grid(1, {128}, {9.0});
  auto h = make_complex_field(g3, [](double x, double) {
    return std::complex<double>(std::exp(-x * x), 0.2 * x);
  });
  auto hat = forward_fft(h);
  double sum = 0.0;
  for (const auto& z : hat) sum += std::norm(z);
  sum *= g3.cell_volume() / static_cast<double>(g3.size());
  double err_p = std::abs(sum - l2_sq(h)) / l2_sq(h);

  double worst = std::max({err_d, err_l, err_p});
  c.check(worst <= 1e-12, "relative error " + num(worst) + " > 1e-12");
  c.summary = "spectral derivative/Laplacian/Parseval exact to " + num(worst) +
              " (limit 1e-12)";
  report(c, t.seconds());
}

// --- 2: mass conservation -------------------------------------------------

void criterion_2() {
  Timer t;
  Criterion c{2, ""};
  GridSpec g = make_grid(1, {512}, {40.0});
  ComplexField A0 = gaussian(g, 1.2, 2.0);
  double worst = 0.0;
  for (int a : {+1, -1}) {
    ModelParams p;
    p.a = a;
    auto run = propagate_nls(A0, p, 1.0, 1e-3, 100);
    double m0 = run.reports.front().mass;
    for (const auto& r : run.reports)
      worst = std::max(worst, std::abs(r.mass - m0) / m0);
  }
  c.check(worst <= 1e-10, "mass drift " + num(worst) + " > 1e-10");
  c.summary = "1000-step relative mass drift " + num(worst) +
              " for both signs (limit 1e-10)";
  report(c, t.seconds());
}

// --- 3: energy conservation and splitting order ---------------------------

void criterion_3() {
  Timer t;
  Criterion c{3, ""};
  GridSpec g = make_grid(1, {512}, {40.0});
  ComplexField A0 = gaussian(g, 1.2, 2.0);
  double worst_drift = 0.0, worst_ratio_lo = 10.0, worst_ratio_hi = 0.0;
  for (int a : {+1, -1}) {
    ModelParams p;
    p.a = a;
    double scale = grad_sq_integral(A0) + l2_sq(A0);
    double e0 = nls_energy(A0, p);
    auto drift = [&](double dt) {
      auto run = propagate_nls(A0, p, 1.0, dt);
      return std::abs(run.reports.back().energy - e0) / scale;
    };
    double d1 = drift(1e-3), d2 = drift(5e-4);
    worst_drift = std::max(worst_drift, d1);
    double ratio = d1 / d2;
    worst_ratio_lo = std::min(worst_ratio_lo, ratio);
    worst_ratio_hi = std::max(worst_ratio_hi, ratio);
  }
  c.check(worst_drift <= 1e-6,
          "energy drift " + num(worst_drift) + " > 1e-6");
  c.check(worst_ratio_lo >= 3.5 && worst_ratio_hi <= 4.5,
          "halving ratio in [" + num(worst_ratio_lo) + ", " +
              num(worst_ratio_hi) + "] outside [3.5, 4.5]");
  c.summary = "energy drift " + num(worst_drift) +
              " (limit 1e-6), halving ratio " + num(worst_ratio_lo) + ".." +
              num(worst_ratio_hi) + " (pinned [3.5, 4.5])";
  report(c, t.seconds());
}

// --- 4: gradient bound at every report ------------------------------------

void criterion_4() {
  Timer t;
  Criterion c{4, ""};
  GridSpec g = make_grid(1, {512}, {40.0});
  bool all_ok = true;
  double worst_excess = -1e300;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed * 7919 + 1);
    ComplexField A0 = detail::random_smooth_field(g, rng, 1.1, 20.0);
    double budget = l2_sq(A0) + grad_sq_integral(A0);
    for (int a : {+1, -1}) {
      ModelParams p;
      p.a = a;
      auto run = propagate_nls(A0, p, 0.5, 1e-3, 50);
      for (const auto& r : run.reports) {
        all_ok = all_ok && r.h1_bound_ok;
        worst_excess = std::max(worst_excess, r.grad_sq - budget);
      }
    }
  }
  c.check(all_ok, "a report violated the gradient bound");
  c.check(worst_excess <= 1e-8 * 10.0,
          "bound excess " + num(worst_excess) + " above slack");
  c.summary = "gradient bound held at every report, 10 seeds x both signs "
              "(worst excess " + num(worst_excess) + ")";
  report(c, t.seconds());
}

// --- 5: bright soliton stationarity ---------------------------------------

void criterion_5() {
  Timer t;
  Criterion c{5, ""};
  BrightProfile prof = bright_profile(1.0, 40.0, 1024, 1e-8);
  GridSpec g = make_grid(1, {1024}, {80.0});
  ComplexField A0(g);
  for (std::size_t j = 0; j < 1024; ++j) A0.values[j] = {prof.u[j], 0.0};
  ModelParams p;  // focusing, saturation 1

  auto dev = [&](double dt) {
    auto run = propagate_nls(A0, p, 1.0, dt);
    return max_mod_dev(run.state, prof.u);
  };
  double d1 = dev(1e-3), d2 = dev(5e-4);
  double ratio = d1 / d2;
  c.check(d1 <= 1e-4, "modulus deviation " + num(d1) + " > 1e-4");
  c.check(ratio >= 3.0 && ratio <= 5.0,
          "halving ratio " + num(ratio) + " outside [3, 5]");
  c.summary = "peak-1 profile deviation " + num(d1) +
              " at dt=1e-3 (limit 1e-4), halving ratio " + num(ratio) +
              " (pinned [3, 5])";
  report(c, t.seconds());
}

// --- 6: first integral and ODE defect of the 1d profiles ------------------

void criterion_6() {
  Timer t;
  Criterion c{6, ""};
  double worst_fi = 0.0, worst_ode = 0.0;
  auto scan_first_integral = [&](const std::vector<double>& x,
                                 const std::vector<double>& u, auto&& q) {
    double h = x[1] - x[0];
    double worst = 0.0;
    for (std::size_t j = 4; j + 4 < u.size(); ++j) {
      double du = fd8_first(u, j, h);
      worst = std::max(worst, std::abs(du * du - q(u[j])));
    }
    return worst;
  };
  for (double um : {0.5, 1.0, 2.0}) {
    BrightProfile p = bright_profile(um, bright_suggested_half_width(um), 2048);
    worst_ode = std::max(worst_ode, p.ode_residual);
    worst_fi = std::max(worst_fi,
                        scan_first_integral(p.x, p.u, [&](double u) {
                          return bright_first_integral_sq(u, um);
                        }));
  }
  for (double ui : {0.5, 1.0}) {
    DarkProfile p = dark_profile(ui, dark_suggested_half_width(ui), 2048);
    worst_ode = std::max(worst_ode, p.ode_residual);
    worst_fi = std::max(worst_fi,
                        scan_first_integral(p.x, p.u, [&](double u) {
                          return dark_first_integral_sq(u, ui);
                        }));
  }
  c.check(worst_fi <= 1e-10, "first-integral defect " + num(worst_fi));
  c.check(worst_ode <= 1e-8, "ODE defect " + num(worst_ode));
  c.summary = "bright {0.5,1,2} and dark {0.5,1}: first integral to " +
              num(worst_fi) + " (limit 1e-10), ODE defect " + num(worst_ode) +
              " (limit 1e-8)";
  report(c, t.seconds());
}

// --- 7: elliptic solver ---------------------------------------------------

void criterion_7() {
  Timer t;
  Criterion c{7, ""};
  GridSpec g = make_grid(2, {128, 128}, {2.0 * pi, 2.0 * pi});

  ComplexField A = gaussian(g, 1.2, 1.0);
  auto phi_star = make_real_field(g, [](double x, double y) {
    return std::sin(x) * std::cos(y);
  });
  RealField gx = gradient_axis(phi_star, 0), gy = gradient_axis(phi_star, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double cc = 1.0 + std::norm(A.values[i]);
    gx.values[i] *= cc;
    gy.values[i] *= cc;
  }
  RealField rho = gradient_axis(gx, 0), divy = gradient_axis(gy, 1);
  for (std::size_t i = 0; i < g.size(); ++i) rho.values[i] += divy.values[i];
  PotentialSolveOptions opt;
  opt.tol = 1e-10;
  opt.rhs_override = &rho;
  auto [phi, rep] = solve_potential(A, opt);
  double num_l2 = 0.0, den_l2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    num_l2 += sq(phi.values[i] - phi_star.values[i]);
    den_l2 += sq(phi_star.values[i]);
  }
  double rel = std::sqrt(num_l2 / den_l2);
  c.check(rel <= 1e-8, "manufactured error " + num(rel) + " > 1e-8");

  std::mt19937_64 rng(424242);
  double worst_margin = 1e300;
  for (int trial = 0; trial < 50; ++trial) {
    double amp = 0.3 + 1.5 * detail::unit_double(rng);
    double band = 10.0 + 30.0 * detail::unit_double(rng);
    ComplexField B = detail::random_smooth_field(g, rng, amp, band);
    auto [pb, rb] = solve_potential(B, 1e-10);
    worst_margin = std::min(worst_margin, rb.bound_rhs - rb.bound_lhs);
  }
  c.check(worst_margin >= -1e-8,
          "bound margin " + num(worst_margin) + " < -1e-8");

  ComplexField U = detail::random_smooth_field(g, rng, 1.2, 15.0);
  PotentialSolveOptions ga;
  ga.tol = 1e-11;
  auto [pa, ra] = solve_potential(U, ga);
  RealField guess = detail::random_smooth_real(g, rng, 1.0, 12.0);
  ga.initial_guess = &guess;
  auto [pb2, rb2] = solve_potential(U, ga);
  double udiff = 0.0, unorm = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    udiff += sq(pa.values[i] - pb2.values[i]);
    unorm += sq(pa.values[i]);
  }
  double uniq = std::sqrt(udiff / std::max(unorm, 1e-300));
  c.check(uniq <= 1e-9, "guess sensitivity " + num(uniq) + " > 1e-9");

  c.summary = "manufactured solve to " + num(rel) +
              " (limit 1e-8); 50-field bound margin " + num(worst_margin) +
              "; uniqueness " + num(uniq) + " (limit 1e-9)";
  report(c, t.seconds());
}

// --- 8: coupled propagation -----------------------------------------------

void criterion_8() {
  Timer t;
  Criterion c{8, ""};
  GridSpec g2 = make_grid(2, {128, 128}, {40.0, 40.0});
  ZaSolverConfig cfg;
  cfg.tol = 1e-10;

  auto run = propagate_za(gaussian(g2, 1.0, 2.0), 1, 1.0, 2e-3, cfg, 50);
  double m0 = run.reports.front().mass, worst_mass = 0.0;
  bool bounds = true;
  for (const auto& r : run.reports) {
    worst_mass = std::max(worst_mass, std::abs(r.mass - m0) / m0);
    bounds = bounds && r.bound_ok;
  }
  c.check(worst_mass <= 1e-9, "mass drift " + num(worst_mass) + " > 1e-9");
  c.check(bounds, "potential bound violated at a report");

  // y-independent stripe against the closed-form 1d reduction
  GridSpec g1 = make_grid(1, {128}, {40.0});
  ComplexField A1 = gaussian(g1, 1.0, 2.0);
  ComplexField A2(g2);
  for (std::size_t i0 = 0; i0 < 128; ++i0)
    for (std::size_t i1 = 0; i1 < 128; ++i1)
      A2.values[g2.index(i0, i1)] = A1.values[i0];
  auto r2 = propagate_za(A2, 1, 1.0, 2e-3, cfg);
  auto r1 = propagate_za(A1, 1, 1.0, 2e-3, cfg);
  double worst_stripe = 0.0;
  for (std::size_t i0 = 0; i0 < 128; ++i0)
    for (std::size_t i1 = 0; i1 < 128; ++i1)
      worst_stripe = std::max(
          worst_stripe, std::abs(std::abs(r2.state.A.values[g2.index(i0, i1)]) -
                                 std::abs(r1.state.A.values[i0])));
  c.check(worst_stripe <= 1e-5,
          "stripe deviation " + num(worst_stripe) + " > 1e-5");

  c.summary = "500-step 128^2 run: mass drift " + num(worst_mass) +
              " (limit 1e-9), bound held, stripe matches 1d reduction to " +
              num(worst_stripe) + " (limit 1e-5)";
  report(c, t.seconds());
}

// --- 9: radial ground states ----------------------------------------------

void criterion_9() {
  Timer t;
  Criterion c{9, ""};
  double worst_res = 0.0;
  bool all = true;
  for (double w : {0.25, 0.5, 0.75}) {
    ShootingConfig cfg;
    auto sol = shoot_radial(2, w, cfg);
    if (!sol) {
      c.check(false, "no ground state at omega " + num(w));
      continue;
    }
    auto cert = certify_ground_state(*sol, cfg);
    all = all && cert.ok();
    all = all && (sol->zeta > blp_zeta0(w));
    auto res = identity_residuals(*sol);
    double rmax = std::max(std::abs(res.energy), std::abs(res.pohozaev));
    worst_res = std::max(worst_res, rmax);
    all = all && (rmax <= 1e-4);

    ShootingConfig coarse;
    coarse.rtol = 1e-6;
    coarse.samples = 512;
    auto sc = shoot_radial(2, w, coarse);
    if (sc) {
      auto rc = identity_residuals(*sc);
      double rc_max = std::max(std::abs(rc.energy), std::abs(rc.pohozaev));
      all = all && (rmax <= rc_max);
    } else {
      all = false;
    }
    all = all && radial_decay_check(*sol, 0.49 * w).weighted_tail_bounded;
  }
  c.check(all, "a certificate, residual, refinement, or tail check failed");
  c.summary = "d=2 ground states at omega {0.25,0.5,0.75}: certified, "
              "residuals to " + num(worst_res) +
              " (limit 1e-4, decreasing), weighted tails bounded";
  report(c, t.seconds());
}

// --- 10: frequency-window classification ----------------------------------

void criterion_10() {
  Timer t;
  Criterion c{10, ""};
  std::size_t mismatches = 0;
  for (int a : {+1, -1})
    for (int d = 1; d <= 6; ++d)
      for (int i = -40; i <= 40; ++i) {
        double w = 0.05 * static_cast<double>(i);
        auto wc = existence_window(a, w, d);
        WindowKind want;
        if (a == 1) {
          if (w > 0.0 && w < 1.0)
            want = WindowKind::possible;
          else if (w >= 1.0 || d <= 4 || w <= -0.25 * static_cast<double>(d - 4))
            want = WindowKind::excluded;
          else
            want = WindowKind::excluded_conditional;
        } else {
          want = (w >= 0.0 || w <= -1.0) ? WindowKind::excluded
                                         : WindowKind::excluded_conditional;
        }
        if (wc.kind != want) ++mismatches;
      }
  c.check(mismatches == 0,
          std::to_string(mismatches) + " sweep classifications disagree");

  bool no_bracket = !shoot_radial(2, 1.0).has_value() &&
                    !shoot_radial(2, 1.2).has_value();
  c.check(no_bracket, "shooting found a bracket at omega >= 1");

  bool fprime = true;
  for (int d = 1; d <= 6; ++d)
    for (double w : {-1.0, -1.25, -2.0})
      fprime = fprime && appendix_Fprime_negative(w, -1, d);
  for (int d : {3, 4})
    for (double w : {0.0, -0.5, -2.0})
      fprime = fprime && appendix_Fprime_negative(w, 1, d);
  for (double w : {-0.25, -1.0})
    fprime = fprime && appendix_Fprime_negative(w, 1, 5);
  for (double w : {-0.5, -1.5})
    fprime = fprime && appendix_Fprime_negative(w, 1, 6);
  c.check(fprime, "a monotonicity range failed");

  c.summary = "972-point window sweep matches (0 mismatches); no bracket at "
              "omega {1.0, 1.2}; monotone combination on all excluded ranges";
  report(c, t.seconds());
}

// --- 11: weak-coupling limit ----------------------------------------------

void criterion_11() {
  Timer t;
  Criterion c{11, ""};
  GridSpec g = make_grid(2, {64, 64}, {20.0, 20.0});
  ComplexField A0 = gaussian(g, 0.01, 1.5);
  ZaSolverConfig full;
  full.tol = 1e-10;
  ZaSolverConfig weak = full;
  weak.weak_limit = true;
  auto rf = propagate_za(A0, 1, 1.0, 2e-3, full);
  auto rw = propagate_za(A0, 1, 1.0, 2e-3, weak);
  double diff = 0.0, norm0 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    diff += std::norm(rf.state.A.values[i] - rw.state.A.values[i]);
    norm0 += std::norm(A0.values[i]);
  }
  double rel = std::sqrt(diff / norm0);
  c.check(rel <= 1e-3, "trajectory difference " + num(rel) + " > 1e-3");
  c.summary = "amplitude-0.01 coupled flow vs weak-limit potential: relative "
              "L2 difference " + num(rel) + " at T=1 (limit 1e-3)";
  report(c, t.seconds());
}

}  // namespace

int main() {
  Timer total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%d of 11 criteria passed [total %.1fs]\n", 11 - g_failures,
              total.seconds());
  return g_failures;
}

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "photoref/nls.hpp"
#include "photoref/potential.hpp"

// Coupled envelope/potential propagation,
//
//   i A_t + Lap A = -a A d/dx phi,   div((1 + |A|^2) grad phi) = d/dx |A|^2.
//
// Strang step: solve the potential for the current intensity, half phase
// step, full linear step, re-solve the potential, half phase step.  Potential
// solves are warm-started from the previous solution.  In 1D the potential
// equation is integrated in closed form with the periodic-compatible boundary
// constant, which makes the flow the reduced saturable Schroedinger equation.

namespace photoref {

struct ZaSolverConfig {
  double tol = 1e-10;
  std::size_t max_iter = 0;  // 0 -> solver default
  double eps_reg = 0.0;
  bool weak_limit = false;   // true: use the Lap phi = d/dx |A|^2 potential
};

struct ZaReport {
  double time = 0.0;
  double mass = 0.0;
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;  // measured against the *initial* mass
  std::size_t solver_iterations = 0;  // total over the step's two solves
  double residual = 0.0;              // worst of the step's two solves
  bool bound_ok = true;
};

struct ZaState {
  double time = 0.0;
  ComplexField A;
  RealField phi;
  EllipticSolveReport last_solve;
};

// Exact flow of i A_t = -a A d/dx phi at frozen phi (phase only).
inline ComplexField za_nonlinear_step(const ComplexField& A,
                                      const RealField& phi, double dt, int a) {
  if (!(A.grid == phi.grid))
    throw std::invalid_argument("za_nonlinear_step: grid mismatch");
  RealField slope = gradient_axis(phi, 0);
  ComplexField out(A.grid);
  for (std::size_t i = 0; i < A.values.size(); ++i)
    out.values[i] =
        A.values[i] * std::polar(1.0, static_cast<double>(a) * dt * slope.values[i]);
  return out;
}

struct ZaRunResult {
  ZaState state;
  std::vector<ZaReport> reports;
};

namespace detail {

inline std::pair<RealField, EllipticSolveReport> za_solve(
    const ComplexField& A, const ZaSolverConfig& cfg, const RealField* warm) {
  if (cfg.weak_limit) {
    RealField phi = ds_potential(A);
    EllipticSolveReport rep;
    potential_bound(A, phi, 0.0, rep.bound_lhs, rep.bound_rhs);
    rep.bound_ok = true;  // the energy bound is a property of the full model
    return {std::move(phi), rep};
  }
  PotentialSolveOptions opt;
  opt.tol = cfg.tol;
  opt.max_iter = cfg.max_iter;
  opt.eps_reg = cfg.eps_reg;
  // Warm starts only help the iterative path; keep 1D on the closed form.
  opt.initial_guess = (A.grid.dim == 1) ? nullptr : warm;
  return solve_potential(A, opt);
}

}  // namespace detail

inline ZaRunResult propagate_za(const ComplexField& A0, int a, double T,
                                double dt, const ZaSolverConfig& cfg = {},
                                std::size_t report_every = 0) {
  if (a != 1 && a != -1)
    throw std::invalid_argument("propagate_za: a must be +1 or -1");
  if (!(dt > 0.0) || !(T >= 0.0) || !std::isfinite(T) || !std::isfinite(dt))
    throw std::invalid_argument("propagate_za: need dt > 0 and T >= 0");

  ZaRunResult run;
  run.state.A = A0;
  double mass0 = l2_sq(A0);
  auto [phi0, rep0] = detail::za_solve(A0, cfg, nullptr);
  run.state.phi = std::move(phi0);
  run.state.last_solve = rep0;

  auto push_report = [&](double t, std::size_t iters, double residual) {
    ZaReport r;
    r.time = t;
    r.mass = l2_sq(run.state.A);
    r.bound_lhs = run.state.last_solve.bound_lhs;
    r.bound_rhs = 0.5 * mass0;
    r.solver_iterations = iters;
    r.residual = residual;
    r.bound_ok = cfg.weak_limit || r.bound_lhs <= r.bound_rhs + 1e-8;
    run.reports.push_back(r);
  };
  push_report(0.0, rep0.iterations, rep0.residual);
  if (T == 0.0) return run;

  std::size_t n_steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  double t = 0.0;
  for (std::size_t step = 0; step < n_steps; ++step) {
    double h = std::min(dt, T - t);
    // Refresh for the current intensity (warm-started; converges immediately
    // when the carried potential is still valid).
    auto [phiA, repA] = detail::za_solve(run.state.A, cfg, &run.state.phi);
    run.state.phi = std::move(phiA);
    run.state.A = za_nonlinear_step(run.state.A, run.state.phi, 0.5 * h, a);
    run.state.A = linear_step(run.state.A, h);
    auto [phiB, repB] = detail::za_solve(run.state.A, cfg, &run.state.phi);
    run.state.phi = std::move(phiB);
    run.state.A = za_nonlinear_step(run.state.A, run.state.phi, 0.5 * h, a);
    run.state.last_solve = repB;
    t = (step + 1 == n_steps) ? T : t + h;
    run.state.time = t;
    if (!run.state.A.all_finite())
      throw DivergenceError("propagate_za: non-finite state at step " +
                                std::to_string(step + 1),
                            step + 1);
    bool last = (step + 1 == n_steps);
    if (last || (report_every > 0 && (step + 1) % report_every == 0))
      push_report(t, repA.iterations + repB.iterations,
                  std::max(repA.residual, repB.residual));
  }
  return run;
}

// Residuals of the three stationary integral identities for a solitary-wave
// candidate (U, phi) at frequency omega:
//   r1 = integral |grad U|^2 + omega integral |U|^2 - a integral |U|^2 phi_x
//   r2 = integral (1+|U|^2)|grad phi|^2 - integral |U|^2 phi_x
//   r3 = integral |grad U|^2 + omega integral |U|^2
//        - a integral (1+|U|^2)|grad phi|^2
// r2 is the potential equation tested against phi (vanishes to solver
// tolerance) and r3 = r1 - a*r2 identically.
inline std::array<double, 3> za_sw_residuals(const ComplexField& U,
                                             const RealField& phi,
                                             double omega, int a) {
  if (!(U.grid == phi.grid))
    throw std::invalid_argument("za_sw_residuals: grid mismatch");
  double gU = grad_sq_integral(U);
  double mU = l2_sq(U);
  RealField px = gradient_axis(phi, 0);
  KahanSum t1, gphi;
  if (U.grid.dim == 2) {
    RealField py = gradient_axis(phi, 1);
    for (std::size_t i = 0; i < U.values.size(); ++i) {
      double s = std::norm(U.values[i]);
      t1.add(s * px.values[i]);
      gphi.add((1.0 + s) * (sq(px.values[i]) + sq(py.values[i])));
    }
  } else {
    for (std::size_t i = 0; i < U.values.size(); ++i) {
      double s = std::norm(U.values[i]);
      t1.add(s * px.values[i]);
      gphi.add((1.0 + s) * sq(px.values[i]));
    }
  }
  double cell = U.grid.cell_volume();
  double i1 = t1.value() * cell;
  double i2 = gphi.value() * cell;
  double da = static_cast<double>(a);
  return {gU + omega * mU - da * i1, i2 - i1, gU + omega * mU - da * i2};
}

}  // namespace photoref

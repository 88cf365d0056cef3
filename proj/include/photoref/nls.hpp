#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "photoref/spectral.hpp"

// Saturable focusing/defocusing Schroedinger propagation,
//
//   i A_t + Lap A = -a (|A|^2 - b_inf) A / (1 + eps |A|^2),
//
// with a = +-1, saturation eps > 0 and background intensity b_inf >= 0
// (b_inf > 0 is the dark-wave convention).  Time stepping is Strang
// splitting: the phase sub-flow and the linear sub-flow are both exact, so
// mass is conserved to round-off and the energy drift is O(dt^2).

namespace photoref {

struct ModelParams {
  int a = 1;                         // +1 focusing, -1 defocusing
  double saturation = 1.0;           // eps
  double background_intensity = 0.0; // b_inf = |A_inf|^2
  double boundary_constant = 0.0;    // C in the reduced potential equation

  bool operator==(const ModelParams&) const = default;

  void validate() const {
    if (a != 1 && a != -1)
      throw std::invalid_argument("ModelParams: a must be +1 or -1");
    if (!(saturation > 0.0) || !std::isfinite(saturation))
      throw std::invalid_argument("ModelParams: saturation must be positive");
    if (!(background_intensity >= 0.0) || !std::isfinite(background_intensity))
      throw std::invalid_argument(
          "ModelParams: background intensity must be nonnegative");
  }
};

struct ConservedReport {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double grad_sq = 0.0;
  bool h1_bound_ok = true;
};

// Pointwise nonlinearity a (|A|^2 - b_inf) A / (1 + eps |A|^2).
inline ComplexField nls_nonlinearity(const ComplexField& A,
                                     const ModelParams& p) {
  p.validate();
  ComplexField out(A.grid);
  for (std::size_t i = 0; i < A.values.size(); ++i) {
    double s = std::norm(A.values[i]);
    out.values[i] = static_cast<double>(p.a) *
                    (s - p.background_intensity) / (1.0 + p.saturation * s) *
                    A.values[i];
  }
  return out;
}

// Exact flow of i A_t = -a (|A|^2 - b_inf) A / (1 + eps |A|^2): |A| is
// invariant, so the rate is constant along the sub-flow.
inline ComplexField nonlinear_phase_step(const ComplexField& A, double dt,
                                         const ModelParams& p) {
  p.validate();
  ComplexField out(A.grid);
  for (std::size_t i = 0; i < A.values.size(); ++i) {
    double s = std::norm(A.values[i]);
    double rate =
        static_cast<double>(p.a) * (s - p.background_intensity) /
        (1.0 + p.saturation * s);
    out.values[i] = A.values[i] * std::polar(1.0, rate * dt);
  }
  return out;
}

// Exact flow of i A_t + Lap A = 0: multiply mode k by exp(-i |k|^2 dt).
inline ComplexField linear_step(const ComplexField& A, double dt) {
  auto spec = forward_fft(A);
  for_each_mode(A.grid, [&](std::size_t i, double k0, double k1, double, double) {
    spec[i] *= std::polar(1.0, -(k0 * k0 + k1 * k1) * dt);
  });
  return inverse_fft(A.grid, std::move(spec));
}

// Conserved energy of the flow (up to a conserved multiple of the mass):
//   integral |grad A|^2 + a (1 + eps b_inf)/eps^2 * ln(1 + eps |A|^2).
// For eps = 1, b_inf = 0 this is integral |grad A|^2 + a ln(1 + |A|^2).
inline double nls_energy(const ComplexField& A, const ModelParams& p) {
  p.validate();
  KahanSum s;
  for (const auto& z : A.values)
    s.add(std::log1p(p.saturation * std::norm(z)));
  double logterm = s.value() * A.grid.cell_volume();
  double coeff = static_cast<double>(p.a) *
                 (1.0 + p.saturation * p.background_intensity) /
                 (p.saturation * p.saturation);
  return grad_sq_integral(A) + coeff * logterm;
}

inline ConservedReport conserved_report(const ComplexField& A, double t,
                                        const ModelParams& p, double h1_budget) {
  ConservedReport r;
  r.time = t;
  r.mass = l2_sq(A);
  r.grad_sq = grad_sq_integral(A);
  r.energy = nls_energy(A, p);
  r.h1_bound_ok = r.grad_sq <= h1_budget;
  return r;
}

// Gradient budget from the initial state: integral |grad A|^2 stays below
// (1/eps) * mass0 + grad_sq0 for all time.  The tolerance absorbs the O(dt^2)
// energy drift of the splitting.
inline double h1_budget(double mass0, double grad_sq0, const ModelParams& p) {
  double b = mass0 / p.saturation + grad_sq0;
  return b + 1e-8 * std::max(b, 1.0);
}

struct NlsRunResult {
  ComplexField state;
  std::vector<ConservedReport> reports;
};

// Strang-split propagation over [0, T]; the last step is shortened so the run
// lands on T exactly.  Reports are emitted at t = 0, every `report_every`
// steps, and at the final time.  Throws DivergenceError (with the step index)
// if the state stops being finite.
inline NlsRunResult propagate_nls(const ComplexField& A0, const ModelParams& p,
                                  double T, double dt,
                                  std::size_t report_every = 0) {
  p.validate();
  if (!(dt > 0.0) || !(T >= 0.0) || !std::isfinite(T) || !std::isfinite(dt))
    throw std::invalid_argument("propagate_nls: need dt > 0 and T >= 0");

  NlsRunResult run;
  run.state = A0;
  double mass0 = l2_sq(A0);
  double budget = h1_budget(mass0, grad_sq_integral(A0), p);
  run.reports.push_back(conserved_report(A0, 0.0, p, budget));
  if (T == 0.0) return run;

  std::size_t n_steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  double t = 0.0;
  for (std::size_t step = 0; step < n_steps; ++step) {
    double h = std::min(dt, T - t);
    run.state = nonlinear_phase_step(run.state, 0.5 * h, p);
    run.state = linear_step(run.state, h);
    run.state = nonlinear_phase_step(run.state, 0.5 * h, p);
    t = (step + 1 == n_steps) ? T : t + h;
    if (!run.state.all_finite())
      throw DivergenceError("propagate_nls: non-finite state at step " +
                                std::to_string(step + 1),
                            step + 1);
    bool last = (step + 1 == n_steps);
    if (last || (report_every > 0 && (step + 1) % report_every == 0))
      run.reports.push_back(conserved_report(run.state, t, p, budget));
  }
  return run;
}

}  // namespace photoref

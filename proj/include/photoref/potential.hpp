#pragma once

#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "photoref/spectral.hpp"

// Photorefractive potential equation
//
//   div((1 + |A|^2) grad phi) = d/dx |A|^2,
//
// solved on the zero-mean subspace of the periodic grid by conjugate
// gradients preconditioned with the constant-coefficient spectral inverse
// Laplacian.  An optional eps * Lap^2 term inside the divergence regularizes
// the coefficient (the preconditioner then divides by |k|^2 (1 + eps |k|^4)).
//
// The solved potential obeys the energy bound
//   integral (1 + |A|^2/2) |grad phi|^2  <=  1/2 integral |A|^2
// (plus eps * integral |Lap grad phi|^2 on the left in the regularized case),
// which every solve checks and reports.

namespace photoref {

struct EllipticSolveReport {
  std::size_t iterations = 0;
  double residual = 0.0;   // relative L2 residual of the divergence form
  double bound_lhs = 0.0;  // integral (1 + |A|^2/2)|grad phi|^2 (+ eps term)
  double bound_rhs = 0.0;  // 1/2 integral |A|^2
  bool bound_ok = true;
};

struct PotentialSolveError : std::runtime_error {
  EllipticSolveReport report;
  RealField best;  // best iterate at abort
  PotentialSolveError(const std::string& what, EllipticSolveReport r,
                      RealField phi)
      : std::runtime_error(what), report(r), best(std::move(phi)) {}
};

struct PotentialSolveOptions {
  double tol = 1e-10;        // relative residual target
  std::size_t max_iter = 0;  // 0 -> 10 * max axis points
  double eps_reg = 0.0;      // biharmonic regularization strength
  const RealField* rhs_override = nullptr;   // replace d/dx |A|^2
  const RealField* initial_guess = nullptr;  // warm start
};

// d/dx |A|^2, the source term of the potential equation.
inline RealField za_rhs(const ComplexField& A) {
  return gradient_x(intensity(A));
}

namespace detail {

// Applies L = -div(c grad .) + eps * (-Lap^3) and the spectral
// preconditioner, sharing scratch buffers across calls.
class PotentialOperator {
 public:
  PotentialOperator(const GridSpec& g, std::vector<double> c, double eps_reg)
      : g_(g), c_(std::move(c)), eps_(eps_reg),
        spec_(g.size()), gx_(g.size()), gy_(g.size()), tmp_(g.size()) {}

  // out = L phi  (dense, symmetric positive semidefinite)
  void apply(const std::vector<double>& phi, std::vector<double>& out) {
    const std::size_t n = g_.size();
    for (std::size_t i = 0; i < n; ++i) spec_[i] = phi[i];
    fft_all_axes(spec_.data(), g_, false);
    const std::complex<double> im(0.0, 1.0);
    for_each_mode(g_, [&](std::size_t i, double, double, double kd0, double kd1) {
      gx_[i] = im * kd0 * spec_[i];
      if (g_.dim == 2) gy_[i] = im * kd1 * spec_[i];
    });
    fft_all_axes(gx_.data(), g_, true);
    if (g_.dim == 2) fft_all_axes(gy_.data(), g_, true);
    for (std::size_t i = 0; i < n; ++i) {
      gx_[i] *= c_[i];
      if (g_.dim == 2) gy_[i] *= c_[i];
    }
    fft_all_axes(gx_.data(), g_, false);
    if (g_.dim == 2) fft_all_axes(gy_.data(), g_, false);
    for_each_mode(g_, [&](std::size_t i, double, double, double kd0, double kd1) {
      double m = kd0 * kd0 + kd1 * kd1;
      tmp_[i] = -im * (kd0 * gx_[i] + (g_.dim == 2 ? kd1 * gy_[i] : 0.0));
      if (eps_ > 0.0) tmp_[i] += eps_ * m * m * m * spec_[i];
    });
    fft_all_axes(tmp_.data(), g_, true);
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = tmp_[i].real();
  }

  // out = M^{-1} r with M = -Lap (1 + eps Lap^2); kernel modes are dropped.
  void precondition(const std::vector<double>& r, std::vector<double>& out) {
    const std::size_t n = g_.size();
    for (std::size_t i = 0; i < n; ++i) spec_[i] = r[i];
    fft_all_axes(spec_.data(), g_, false);
    for_each_mode(g_, [&](std::size_t i, double, double, double kd0, double kd1) {
      double m = kd0 * kd0 + kd1 * kd1;
      spec_[i] = (m > 0.0) ? spec_[i] / (m * (1.0 + eps_ * m * m)) : 0.0;
    });
    fft_all_axes(spec_.data(), g_, true);
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = spec_[i].real();
  }

  // Zero the modes invisible to the divergence-form operator (k = 0 and the
  // pure-Nyquist corners); fixes the gauge and the minimal-norm representative.
  void project(std::vector<double>& phi) {
    const std::size_t n = g_.size();
    for (std::size_t i = 0; i < n; ++i) spec_[i] = phi[i];
    fft_all_axes(spec_.data(), g_, false);
    for_each_mode(g_, [&](std::size_t i, double, double, double kd0, double kd1) {
      if (kd0 * kd0 + kd1 * kd1 == 0.0) spec_[i] = 0.0;
    });
    fft_all_axes(spec_.data(), g_, true);
    for (std::size_t i = 0; i < n; ++i) phi[i] = spec_[i].real();
  }

 private:
  GridSpec g_;
  std::vector<double> c_;
  double eps_;
  std::vector<std::complex<double>> spec_, gx_, gy_, tmp_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  KahanSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

inline double norm2(const std::vector<double>& a) {
  return std::sqrt(dot(a, a));
}

}  // namespace detail

// Energy-bound sides for a candidate potential.
inline void potential_bound(const ComplexField& A, const RealField& phi,
                            double eps_reg, double& lhs, double& rhs) {
  RealField gx = gradient_axis(phi, 0);
  KahanSum sl, sr;
  if (A.grid.dim == 2) {
    RealField gy = gradient_axis(phi, 1);
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
      double s = std::norm(A.values[i]);
      sl.add((1.0 + 0.5 * s) * (sq(gx.values[i]) + sq(gy.values[i])));
      sr.add(s);
    }
  } else {
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
      double s = std::norm(A.values[i]);
      sl.add((1.0 + 0.5 * s) * sq(gx.values[i]));
      sr.add(s);
    }
  }
  lhs = sl.value() * A.grid.cell_volume();
  rhs = 0.5 * sr.value() * A.grid.cell_volume();
  if (eps_reg > 0.0) {
    // eps * integral |Lap grad phi|^2, spectrally.
    auto spec = forward_fft(complexify(phi));
    KahanSum se;
    for_each_mode(phi.grid,
                  [&](std::size_t i, double, double, double kd0, double kd1) {
                    double m = kd0 * kd0 + kd1 * kd1;
                    se.add(m * m * m * std::norm(spec[i]));
                  });
    lhs += eps_reg * se.value() * phi.grid.cell_volume() /
           static_cast<double>(phi.grid.size());
  }
}

// Ratio integral |A|^2/(1+|A|^2) / integral 1/(1+|A|^2): the unique constant
// C for which (|A|^2 - C)/(1 + |A|^2) has zero mean, i.e. for which the 1D
// reduced equation has a periodic solution.
inline double periodic_boundary_constant(const ComplexField& A) {
  KahanSum num, den;
  for (const auto& z : A.values) {
    double s = std::norm(z);
    num.add(s / (1.0 + s));
    den.add(1.0 / (1.0 + s));
  }
  return num.value() / den.value();
}

// Pointwise slope of the reduced 1D equation: d/dx phi = (|A|^2 - C)/(1+|A|^2).
inline RealField potential_slope_1d(const ComplexField& A, double C) {
  if (A.grid.dim != 1)
    throw std::invalid_argument("potential_slope_1d: field must be 1D");
  RealField out(A.grid);
  for (std::size_t i = 0; i < A.values.size(); ++i) {
    double s = std::norm(A.values[i]);
    out.values[i] = (s - C) / (1.0 + s);
  }
  return out;
}

// Closed-form 1D solve: antiderivative of the slope.  The slope must be mean
// free (periodic compatibility); otherwise C is inconsistent with the data.
inline RealField solve_potential_1d(const ComplexField& A, double C,
                                    double compat_tol = 1e-8) {
  RealField slope = potential_slope_1d(A, C);
  double mu = std::abs(mean(slope));
  if (mu > compat_tol * std::max(max_abs(slope), 1e-300))
    throw std::invalid_argument(
        "solve_potential_1d: slope has mean " + std::to_string(mu) +
        "; C is inconsistent with periodic data");
  auto spec = forward_fft(complexify(slope));
  const std::complex<double> im(0.0, 1.0);
  for_each_mode(slope.grid,
                [&](std::size_t i, double, double, double kd0, double) {
                  spec[i] = (kd0 != 0.0) ? spec[i] / (im * kd0) : 0.0;
                });
  return real_part(inverse_fft(slope.grid, std::move(spec)));
}

inline std::pair<RealField, double> solve_potential_1d_auto(
    const ComplexField& A) {
  double C = periodic_boundary_constant(A);
  return {solve_potential_1d(A, C, 1e-6), C};
}

namespace detail {

inline std::pair<RealField, EllipticSolveReport> solve_potential_1d_closed(
    const ComplexField& A) {
  auto [phi, C] = solve_potential_1d_auto(A);
  (void)C;
  EllipticSolveReport rep;
  rep.iterations = 0;
  std::vector<double> c(A.grid.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = 1.0 + std::norm(A.values[i]);
  PotentialOperator op(A.grid, std::move(c), 0.0);
  RealField rhs = za_rhs(A);
  std::vector<double> b(rhs.values);
  for (auto& x : b) x = -x;
  std::vector<double> lphi;
  op.apply(phi.values, lphi);
  double bn = norm2(b);
  if (bn > 0.0) {
    KahanSum rs;
    for (std::size_t i = 0; i < b.size(); ++i) rs.add(sq(b[i] - lphi[i]));
    rep.residual = std::sqrt(rs.value()) / bn;
  }
  potential_bound(A, phi, 0.0, rep.bound_lhs, rep.bound_rhs);
  rep.bound_ok = rep.bound_lhs <= rep.bound_rhs + 1e-8;
  return {std::move(phi), rep};
}

}  // namespace detail

inline std::pair<RealField, EllipticSolveReport> solve_potential(
    const ComplexField& A, const PotentialSolveOptions& opt = {}) {
  if (!(opt.tol > 0.0))
    throw std::invalid_argument("solve_potential: tol must be positive");
  if (opt.eps_reg < 0.0 || !std::isfinite(opt.eps_reg))
    throw std::invalid_argument("solve_potential: eps_reg must be >= 0");

  if (A.grid.dim == 1 && opt.eps_reg == 0.0 && opt.rhs_override == nullptr &&
      opt.initial_guess == nullptr)
    return detail::solve_potential_1d_closed(A);

  const GridSpec& g = A.grid;
  const std::size_t n = g.size();
  std::size_t max_iter = opt.max_iter;
  if (max_iter == 0) max_iter = 10 * std::max(g.points[0], g.points[1]);

  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = 1.0 + std::norm(A.values[i]);
  detail::PotentialOperator op(g, std::move(c), opt.eps_reg);

  // Right-hand side of L phi = b with L = -div(c grad) (+ eps term).
  RealField rho = opt.rhs_override ? *opt.rhs_override : za_rhs(A);
  if (opt.rhs_override && !(rho.grid == g))
    throw std::invalid_argument("solve_potential: rhs grid mismatch");
  std::vector<double> b(rho.values);
  for (auto& x : b) x = -x;

  RealField phi(g);
  if (opt.initial_guess) {
    if (!(opt.initial_guess->grid == g))
      throw std::invalid_argument("solve_potential: guess grid mismatch");
    phi.values = opt.initial_guess->values;
    op.project(phi.values);
  }

  EllipticSolveReport rep;
  double bn = detail::norm2(b);
  if (bn == 0.0) {
    phi = RealField(g);
    potential_bound(A, phi, opt.eps_reg, rep.bound_lhs, rep.bound_rhs);
    rep.bound_ok = rep.bound_lhs <= rep.bound_rhs + 1e-8;
    return {std::move(phi), rep};
  }

  // PCG with true-residual restarts: the recurrence residual can drift from
  // the true one near the round-off floor, so convergence is only accepted
  // against ||b - L phi|| recomputed from scratch.
  std::vector<double> r(n), z(n), p(n), q(n);
  std::size_t it = 0;
  double true_res = 0.0;
  double inner_tol = opt.tol;
  for (int round = 0; round < 4; ++round) {
    op.apply(phi.values, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
    op.precondition(r, z);
    p = z;
    double rz = detail::dot(r, z);
    double res = detail::norm2(r) / bn;
    while (res > inner_tol && it < max_iter) {
      op.apply(p, q);
      double pq = detail::dot(p, q);
      if (!(pq > 0.0) || !std::isfinite(pq)) break;  // lost positivity
      double alpha = rz / pq;
      for (std::size_t i = 0; i < n; ++i) {
        phi.values[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      ++it;
      if (it % 64 == 0) {  // periodic true-residual refresh
        op.apply(phi.values, q);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
      }
      op.precondition(r, z);
      double rz_new = detail::dot(r, z);
      double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
      res = detail::norm2(r) / bn;
    }
    op.apply(phi.values, q);
    KahanSum rs;
    for (std::size_t i = 0; i < n; ++i) rs.add(sq(b[i] - q[i]));
    true_res = std::sqrt(rs.value()) / bn;
    if (true_res <= opt.tol || it >= max_iter) break;
    inner_tol *= 0.25;  // push the recurrence below the requested target
  }

  op.project(phi.values);
  rep.iterations = it;
  rep.residual = true_res;
  potential_bound(A, phi, opt.eps_reg, rep.bound_lhs, rep.bound_rhs);
  rep.bound_ok = rep.bound_lhs <= rep.bound_rhs + 1e-8;
  if (rep.residual > opt.tol) {
    std::ostringstream msg;
    msg << "solve_potential: no convergence after " << it
        << " iterations (relative residual " << std::scientific
        << std::setprecision(3) << rep.residual << ", target " << opt.tol
        << ")";
    throw PotentialSolveError(msg.str(), rep, std::move(phi));
  }
  return {std::move(phi), rep};
}

inline std::pair<RealField, EllipticSolveReport> solve_potential(
    const ComplexField& A, double tol, std::size_t max_iter = 0) {
  PotentialSolveOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_potential(A, opt);
}

inline std::pair<RealField, EllipticSolveReport> regularized_solve_potential(
    const ComplexField& A, double eps_reg, double tol = 1e-10,
    std::size_t max_iter = 0) {
  if (!(eps_reg > 0.0))
    throw std::invalid_argument(
        "regularized_solve_potential: eps_reg must be positive");
  PotentialSolveOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  opt.eps_reg = eps_reg;
  return solve_potential(A, opt);
}

// Weak-interaction (Davey-Stewartson type) limit: Lap phi = d/dx |A|^2.
inline RealField ds_potential(const ComplexField& A) {
  return inverse_laplacian_zero_mean(za_rhs(A), 1e-6);
}

}  // namespace photoref

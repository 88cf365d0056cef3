#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "photoref/decay.hpp"
#include "photoref/finite_diff.hpp"
#include "photoref/ode.hpp"

// Bright and dark solitary-wave profiles of the 1D saturable equation,
// constructed from their first integrals.
//
// Bright (focusing), peak u_m at x = 0, frequency omega(u_m):
//   [u']^2 = Q(u) = ln(1+u^2) - (u^2/u_m^2) ln(1+u_m^2)
// Dark (defocusing), u(0) = 0, u -> +-u_inf:
//   [u']^2 = R(u) = u^2 - u_inf^2 - (1+u_inf^2) ln((1+u^2)/(1+u_inf^2))
//
// Q has a simple zero at the peak, so x(u) has an integrable 1/sqrt
// singularity there; the march substitutes u = u_m (1 - s^2) near the peak,
// which turns the first integral into a regular ODE for s(x).  R has a double
// zero at u_inf (the asymptote is approached exponentially); marching the gap
// v = u_inf - u keeps that approach fully resolved.

namespace photoref {

struct ProfileTailError : std::runtime_error {
  double tail;  // measured tail value at x_max
  ProfileTailError(const std::string& what, double tail_value)
      : std::runtime_error(what), tail(tail_value) {}
};

// omega(u_m) = 1 - ln(1+u_m^2)/u_m^2, strictly increasing from 0 to 1.
inline double bright_frequency(double u_m) {
  if (!(u_m != 0.0) || !std::isfinite(u_m))
    throw std::invalid_argument("bright_frequency: u_m must be nonzero");
  double s = u_m * u_m;
  if (s < 1e-4) {
    // 1 - ln(1+s)/s = s/2 - s^2/3 + s^3/4 - ...
    return s * (0.5 - s * (1.0 / 3 - s * (0.25 - s / 5)));
  }
  return 1.0 - std::log1p(s) / s;
}

// Inverse of bright_frequency on u_m > 0.
inline double bright_peak_for_frequency(double omega) {
  if (!(omega > 0.0) || !(omega < 1.0))
    throw std::invalid_argument(
        "bright_peak_for_frequency: omega must lie in (0, 1)");
  double lo = 1e-8, hi = 1.0;
  while (bright_frequency(hi) < omega) {
    hi *= 2.0;
    if (hi > 1e9)
      throw std::runtime_error("bright_peak_for_frequency: bracket failed");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (bright_frequency(mid) < omega ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

// -log1p(-z)/z on [0, 1), stable at z = 0.
inline double lam(double z) {
  if (z < 1e-2)
    return 1.0 + z * (1.0 / 2 + z * (1.0 / 3 + z * (1.0 / 4 + z * (1.0 / 5 +
                      z * (1.0 / 6 + z * (1.0 / 7 + z / 8))))));
  return -std::log1p(-z) / z;
}

// lam(z) - 1, computed without cancellation for small z.
inline double lam_minus_one(double z) {
  if (z < 1e-2)
    return z * (1.0 / 2 + z * (1.0 / 3 + z * (1.0 / 4 + z * (1.0 / 5 +
                z * (1.0 / 6 + z * (1.0 / 7 + z * (1.0 / 8 + z / 9)))))));
  return -std::log1p(-z) / z - 1.0;
}

}  // namespace detail

// First integral Q(u) of the bright wave, cancellation-free both near u = 0
// and near the peak.
inline double bright_first_integral_sq(double u, double u_m) {
  double um = std::abs(u_m);
  double au = std::abs(u);
  double K = std::log1p(um * um);
  if (au * au <= 0.5 * um * um)
    return std::log1p(au * au) - (au * au) / (um * um) * K;
  double D = (um - au) * (um + au);  // u_m^2 - u^2 >= 0
  return std::log1p(-D / (1.0 + um * um)) + K * D / (um * um);
}

// First integral R(u) of the dark wave (nonnegative for |u| <= |u_inf|),
// evaluated through the gap v = |u_inf| - |u| to stay stable near the
// asymptote.
inline double dark_first_integral_sq(double u, double u_inf) {
  double ui = std::abs(u_inf);
  double v = ui - std::abs(u);
  double D = v * (2.0 * ui - v);  // u_inf^2 - u^2
  double z = D / (1.0 + ui * ui);
  return D * detail::lam_minus_one(z);
}

struct BrightProfile {
  double u_m = 0.0;
  double omega = 0.0;
  std::vector<double> x;  // n samples on [-x_max, x_max), x = 0 included
  std::vector<double> u;
  double ode_residual = 0.0;  // max defect of -u'' + omega u = u^3/(1+u^2)
  double tail = 0.0;          // u(x_max)
};

struct DarkProfile {
  double u_inf = 0.0;
  std::vector<double> x;
  std::vector<double> u;
  double ode_residual = 0.0;  // max defect of u'' = u (u^2-u_inf^2)/(1+u^2)
  double tail_gap = 0.0;      // |u_inf| - |u(x_max)|
};

// Half-width at which the bright tail reaches ~1e-13 of the peak.
inline double bright_suggested_half_width(double u_m) {
  return 32.0 / std::sqrt(bright_frequency(std::abs(u_m)));
}

inline double dark_suggested_half_width(double u_inf) {
  double ui = std::abs(u_inf);
  double kappa = ui * std::sqrt(2.0 / (1.0 + ui * ui));
  return 32.0 / kappa;
}

namespace detail {

inline void check_profile_args(double x_max, std::size_t n) {
  if (!(x_max > 0.0) || !std::isfinite(x_max))
    throw std::invalid_argument("profile: x_max must be positive");
  if (n < 32 || n % 2 != 0)
    throw std::invalid_argument("profile: need an even sample count >= 32");
}

}  // namespace detail

inline BrightProfile bright_profile(double u_m, double x_max, std::size_t n,
                                    double tail_tol = 1e-12) {
  if (!(u_m != 0.0) || !std::isfinite(u_m))
    throw std::invalid_argument("bright_profile: u_m must be nonzero");
  detail::check_profile_args(x_max, n);
  const double sign = (u_m > 0.0) ? 1.0 : -1.0;
  const double um = std::abs(u_m);
  const double omega = bright_frequency(um);
  const double K = std::log1p(um * um);
  const double sqw = std::sqrt(omega);

  // Peak substitution u = um (1 - s^2):
  // Q(u)/s^2 = (2 - s^2) [K - um^2 lam(z)/(1+um^2)],
  // z = um^2 s^2 (2-s^2)/(1+um^2); regular and positive up to the phase
  // switch at s^2 = 0.5.
  auto P = [&](double s) {
    double s2 = s * s;
    double z = um * um * s2 * (2.0 - s2) / (1.0 + um * um);
    return (2.0 - s2) * (K - um * um * detail::lam(z) / (1.0 + um * um));
  };
  auto rhs_peak = [&](double, const std::array<double, 1>& y,
                      std::array<double, 1>& dy) {
    dy[0] = std::sqrt(std::max(P(y[0]), 0.0)) / (2.0 * um);
  };
  auto rhs_tail = [&](double, const std::array<double, 1>& y,
                      std::array<double, 1>& dy) {
    if (y[0] < 1e-150) {
      dy[0] = -sqw * y[0];
      return;
    }
    dy[0] = -std::sqrt(std::max(bright_first_integral_sq(y[0], um), 0.0));
  };

  BrightProfile p;
  p.u_m = u_m;
  p.omega = omega;
  p.x.resize(n);
  p.u.resize(n);
  const double h = 2.0 * x_max / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    p.x[j] = -x_max + static_cast<double>(j) * h;

  const std::size_t j0 = n / 2;
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-20 * um;
  opt.h_init = std::min(0.5 * h, 1e-3);
  p.u[j0] = um;
  bool peak_phase = true;
  std::array<double, 1> y{0.0};  // s in the peak phase, u in the tail phase
  double tail_value = 0.0;
  for (std::size_t j = j0; j < n; ++j) {
    double xa = static_cast<double>(j - j0) * h;
    double xb = xa + h;
    if (peak_phase) {
      integrate_ode<1>(rhs_peak, xa, xb, y, opt);
      double uval = um * (1.0 - y[0] * y[0]);
      if (y[0] * y[0] >= 0.5) {  // switch once past the peak region
        peak_phase = false;
        y[0] = uval;
      }
      if (j + 1 < n) p.u[j + 1] = uval; else tail_value = uval;
    } else {
      integrate_ode<1>(rhs_tail, xa, xb, y, opt);
      if (j + 1 < n) p.u[j + 1] = y[0]; else tail_value = y[0];
    }
  }
  p.tail = tail_value;
  if (!(tail_value < tail_tol * um))
    throw ProfileTailError(
        "bright_profile: u(x_max) = " + std::to_string(tail_value) +
            " exceeds " + std::to_string(tail_tol) + " * u_m; enlarge x_max",
        tail_value);

  // Mirror the even profile onto x < 0; the slot at -x_max carries u(x_max).
  for (std::size_t j = 1; j < j0; ++j) p.u[j] = p.u[n - j];
  p.u[0] = tail_value;

  double worst = 0.0;
  for (std::size_t j = 4; j + 4 < n; ++j) {
    double uj = p.u[j];
    double defect = -fd8_second(p.u, j, h) + omega * uj -
                    uj * uj * uj / (1.0 + uj * uj);
    worst = std::max(worst, std::abs(defect));
  }
  p.ode_residual = worst;

  if (sign < 0.0)
    for (auto& v : p.u) v = -v;
  return p;
}

inline DarkProfile dark_profile(double u_inf, double x_max, std::size_t n,
                                double tail_tol = 1e-12) {
  if (!(u_inf != 0.0) || !std::isfinite(u_inf))
    throw std::invalid_argument("dark_profile: u_inf must be nonzero");
  detail::check_profile_args(x_max, n);
  const double sign = (u_inf > 0.0) ? 1.0 : -1.0;
  const double ui = std::abs(u_inf);
  const double kappa = ui * std::sqrt(2.0 / (1.0 + ui * ui));

  // March the gap v = ui - u; R(v) = D (lam(z)-1), D = v (2 ui - v).
  auto rhs = [&](double, const std::array<double, 1>& y,
                 std::array<double, 1>& dy) {
    double v = y[0];
    if (v < 1e-150) {
      dy[0] = -kappa * v;
      return;
    }
    double D = v * (2.0 * ui - v);
    double z = D / (1.0 + ui * ui);
    dy[0] = -std::sqrt(std::max(D * detail::lam_minus_one(z), 0.0));
  };

  DarkProfile p;
  p.u_inf = u_inf;
  p.x.resize(n);
  p.u.resize(n);
  const double h = 2.0 * x_max / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    p.x[j] = -x_max + static_cast<double>(j) * h;

  const std::size_t j0 = n / 2;
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-20 * ui;
  opt.h_init = std::min(0.5 * h, 1e-3);
  std::array<double, 1> y{ui};  // v(0) = ui, i.e. u(0) = 0
  p.u[j0] = 0.0;
  double tail_gap = 0.0;
  for (std::size_t j = j0; j < n; ++j) {
    double xa = static_cast<double>(j - j0) * h;
    integrate_ode<1>(rhs, xa, xa + h, y, opt);
    if (j + 1 < n) p.u[j + 1] = ui - y[0]; else tail_gap = y[0];
  }
  p.tail_gap = tail_gap;
  if (!(tail_gap < tail_tol * ui))
    throw ProfileTailError(
        "dark_profile: |u_inf| - u(x_max) = " + std::to_string(tail_gap) +
            " exceeds " + std::to_string(tail_tol) + " * |u_inf|; enlarge x_max",
        tail_gap);

  // Odd mirror; the slot at -x_max carries -u(x_max).
  for (std::size_t j = 1; j < j0; ++j) p.u[j] = -p.u[n - j];
  p.u[0] = -(ui - tail_gap);

  double worst = 0.0;
  for (std::size_t j = 4; j + 4 < n; ++j) {
    double uj = p.u[j];
    double defect = fd8_second(p.u, j, h) -
                    uj * (uj - ui) * (uj + ui) / (1.0 + uj * uj);
    worst = std::max(worst, std::abs(defect));
  }
  p.ode_residual = worst;

  if (sign < 0.0)
    for (auto& v : p.u) v = -v;
  return p;
}

// Tail diagnostics; delta defaults to just below the linearization rate
// guarantee delta < omega/2 scaled by 0.98 (bright) and the gap rate (dark).
inline DecayCheck decay_check(const BrightProfile& p) {
  DecayCheck c;
  std::size_t j0 = p.x.size() / 2;
  std::span<const double> xs(p.x.data() + j0, p.x.size() - j0);
  std::vector<double> us(p.u.begin() + static_cast<long>(j0), p.u.end());
  for (auto& v : us) v = std::abs(v);
  auto [rate, m] = fit_decay_rate(xs, us, std::abs(p.u_m));
  c.delta_fit = rate;
  c.points_used = m;
  c.weighted_tail_bounded =
      weighted_tail_bounded(xs, us, std::abs(p.u_m), 0.49 * p.omega);
  return c;
}

}  // namespace photoref

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>

// Exponential tail diagnostics shared by the 1D and radial solitary-wave
// profiles.

namespace photoref {

struct DecayCheck {
  double delta_fit = 0.0;           // fitted rate of u ~ exp(-delta x)
  bool weighted_tail_bounded = false;
  std::size_t points_used = 0;
};

// Least-squares slope of ln u against x over the samples with
// u in [lo_frac, hi_frac] * u_ref.  Only the leading monotone stretch of the
// tail enters the fit.  Throws if fewer than `min_points` samples qualify
// (tail not resolved).
inline std::pair<double, std::size_t> fit_decay_rate(
    std::span<const double> x, std::span<const double> u, double u_ref,
    double lo_frac = 1e-10, double hi_frac = 1e-4, std::size_t min_points = 8) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  double prev = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double uj = u[j];
    if (!(uj > 0.0)) continue;
    if (uj > hi_frac * u_ref || uj < lo_frac * u_ref) continue;
    if (m > 0 && uj >= prev) break;  // tail stopped decreasing
    prev = uj;
    double lx = x[j], ly = std::log(uj);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < min_points)
    throw std::runtime_error(
        "fit_decay_rate: tail not resolved over the fit window");
  double dm = static_cast<double>(m);
  double slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  return {-slope, m};
}

// Checks that exp(delta x) u(x) is non-increasing (up to round-off slack)
// once u has dropped below start_frac * u_ref, i.e. the weighted tail stays
// bounded.
inline bool weighted_tail_bounded(std::span<const double> x,
                                  std::span<const double> u, double u_ref,
                                  double delta, double start_frac = 1e-2) {
  bool in_tail = false;
  double prev = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!in_tail) {
      if (u[j] > 0.0 && u[j] <= start_frac * u_ref) {
        in_tail = true;
        prev = std::exp(delta * x[j]) * u[j];
      }
      continue;
    }
    if (!(u[j] > 0.0)) break;  // past the resolved tail
    double w = std::exp(delta * x[j]) * u[j];
    if (w > prev * (1.0 + 1e-9)) return false;
    prev = w;
  }
  return in_tail;
}

}  // namespace photoref

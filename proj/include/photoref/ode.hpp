#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

// Dormand-Prince 5(4) embedded Runge-Kutta with step-size control, for the
// small initial-value problems behind the solitary-wave constructions.

namespace photoref {

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double h_init = 1e-4;
  double h_max = 0.0;  // 0: unlimited
  std::size_t max_steps = 50'000'000;
};

// Integrates y' = f(x, y) from x0 to x1 (x1 > x0), updating y in place.
// `observer(x, y)` runs after every accepted step; returning false stops the
// integration early.  Returns the x actually reached.
template <std::size_t N, class F, class Obs>
double integrate_ode(F&& f, double x0, double x1, std::array<double, N>& y,
                     const OdeOptions& opt, Obs&& observer) {
  using State = std::array<double, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double x = x0;
  double h = opt.h_init;
  if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
  h = std::min(h, x1 - x0);
  State k1, k2, k3, k4, k5, k6, k7, yt, ynew;
  f(x, y, k1);  // FSAL seed
  for (std::size_t step = 0; step < opt.max_steps && x < x1; ++step) {
    h = std::min(h, x1 - x);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    f(x + c2 * h, yt, k2);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * h, yt, k3);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * h, yt, k4);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * h, yt, k5);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                          a64 * k4[i] + a65 * k5[i]);
    f(x + h, yt, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    f(x + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                       e6 * k6[i] + e7 * k7[i]);
      double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0 || h <= 1e-14 * std::max(1.0, std::abs(x))) {
      x += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (!observer(x, y)) return x;
    }
    double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
    if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::runtime_error("integrate_ode: step size collapsed");
  }
  return x;
}

template <std::size_t N, class F>
double integrate_ode(F&& f, double x0, double x1, std::array<double, N>& y,
                     const OdeOptions& opt = {}) {
  return integrate_ode<N>(static_cast<F&&>(f), x0, x1, y, opt,
                          [](double, const std::array<double, N>&) { return true; });
}

}  // namespace photoref

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "photoref/fft.hpp"

namespace photoref {

// Visit every Fourier slot with its Laplacian wavenumbers (k0, k1) and
// derivative wavenumbers (kd0, kd1; Nyquist zeroed).  In 1D the second-axis
// wavenumbers are 0.
template <class F>
void for_each_mode(const GridSpec& g, F&& f) {
  const std::size_t n0 = g.points[0];
  const std::size_t n1 = g.points[1];
  for (std::size_t i0 = 0; i0 < n0; ++i0) {
    double k0 = g.wavenumber(0, i0);
    double kd0 = g.deriv_wavenumber(0, i0);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      double k1 = (g.dim == 2) ? g.wavenumber(1, i1) : 0.0;
      double kd1 = (g.dim == 2) ? g.deriv_wavenumber(1, i1) : 0.0;
      f(i0 * n1 + i1, k0, k1, kd0, kd1);
    }
  }
}

// Trapezoidal (= spectrally exact periodic) integral h^d * sum, compensated.
inline double integrate(const RealField& f) {
  KahanSum s;
  for (double x : f.values) s.add(x);
  return s.value() * f.grid.cell_volume();
}

inline double mean(const RealField& f) {
  return integrate(f) / f.grid.volume();
}

// integral |f|^2
inline double l2_sq(const ComplexField& f) {
  KahanSum s;
  for (const auto& z : f.values) s.add(std::norm(z));
  return s.value() * f.grid.cell_volume();
}

inline double l2_sq(const RealField& f) {
  KahanSum s;
  for (double x : f.values) s.add(x * x);
  return s.value() * f.grid.cell_volume();
}

inline ComplexField laplacian(const ComplexField& f) {
  auto spec = forward_fft(f);
  for_each_mode(f.grid, [&](std::size_t i, double k0, double k1, double, double) {
    spec[i] *= -(k0 * k0 + k1 * k1);
  });
  return inverse_fft(f.grid, std::move(spec));
}

inline ComplexField gradient_axis(const ComplexField& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim)
    throw std::invalid_argument("gradient_axis: axis out of range");
  auto spec = forward_fft(f);
  const std::complex<double> im(0.0, 1.0);
  for_each_mode(f.grid,
                [&](std::size_t i, double, double, double kd0, double kd1) {
                  spec[i] *= im * (axis == 0 ? kd0 : kd1);
                });
  return inverse_fft(f.grid, std::move(spec));
}

inline RealField gradient_axis(const RealField& f, int axis) {
  return real_part(gradient_axis(complexify(f), axis));
}

inline ComplexField gradient_x(const ComplexField& f) {
  return gradient_axis(f, 0);
}
inline RealField gradient_x(const RealField& f) { return gradient_axis(f, 0); }

inline RealField laplacian(const RealField& f) {
  return real_part(laplacian(complexify(f)));
}

// Solve laplacian(u) = f on the zero-mean subspace.  The right-hand side must
// itself be (numerically) mean free; the returned u has exactly zero k = 0
// coefficient.
inline RealField inverse_laplacian_zero_mean(const RealField& f,
                                             double compat_tol = 1e-8) {
  double m = std::abs(mean(f));
  double scale = max_abs(f);
  if (m > compat_tol * std::max(scale, 1e-300))
    throw std::invalid_argument(
        "inverse_laplacian_zero_mean: right-hand side has nonzero mean (" +
        std::to_string(m) + "), equation is not solvable");
  auto spec = forward_fft(complexify(f));
  for_each_mode(f.grid, [&](std::size_t i, double k0, double k1, double, double) {
    double k2 = k0 * k0 + k1 * k1;
    spec[i] = (k2 > 0.0) ? spec[i] / (-k2) : 0.0;
  });
  return real_part(inverse_fft(f.grid, std::move(spec)));
}

// integral |grad f|^2, evaluated in Fourier space with the first-derivative
// convention (Nyquist zeroed), consistent with gradient_axis.
inline double grad_sq_integral(const ComplexField& f) {
  auto spec = forward_fft(f);
  KahanSum s;
  for_each_mode(f.grid,
                [&](std::size_t i, double, double, double kd0, double kd1) {
                  s.add((kd0 * kd0 + kd1 * kd1) * std::norm(spec[i]));
                });
  // Parseval: sum_j |f_j|^2 = (1/N) sum_k |fhat_k|^2.
  return s.value() * f.grid.cell_volume() / static_cast<double>(f.grid.size());
}

inline double grad_sq_integral(const RealField& f) {
  return grad_sq_integral(complexify(f));
}

}  // namespace photoref

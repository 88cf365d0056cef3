#pragma once

#include <complex>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "photoref/field.hpp"

// Iterative radix-2 FFT.  Grids are power-of-two by construction, which keeps
// this self-contained implementation exact-size and dependency-free.  Twiddle
// tables are cached per transform length in thread-local storage, so all
// entry points are safe to call from multiple threads.

namespace photoref {
namespace detail {

struct FftPlan {
  std::vector<std::complex<double>> w;  // w[j] = exp(-2*pi*i*j/n), j < n/2
  std::vector<std::size_t> rev;         // bit-reversal permutation

  explicit FftPlan(std::size_t n) : w(n / 2), rev(n) {
    for (std::size_t j = 0; j < n / 2; ++j) {
      double ang = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
      w[j] = {std::cos(ang), std::sin(ang)};
    }
    rev[0] = 0;
    for (std::size_t j = 1; j < n; ++j)
      rev[j] = (rev[j >> 1] >> 1) | ((j & 1u) ? n >> 1 : 0u);
  }
};

inline const FftPlan& fft_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, FftPlan> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, FftPlan(n)).first;
  return it->second;
}

// In-place transform of contiguous data.  Forward is the plain sum
// sum_j a_j exp(-2*pi*i*j*k/n); inverse includes the 1/n factor.
inline void fft_pow2(std::complex<double>* a, std::size_t n, bool inverse) {
  if (n < 2) return;
  const FftPlan& plan = fft_plan(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t r = plan.rev[j];
    if (j < r) std::swap(a[j], a[r]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t half = len >> 1;
    std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = plan.w[j * step];
        if (inverse) w = std::conj(w);
        std::complex<double> u = a[base + j];
        std::complex<double> v = a[base + j + half] * w;
        a[base + j] = u + v;
        a[base + j + half] = u - v;
      }
    }
  }
  if (inverse) {
    double s = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) a[j] *= s;
  }
}

// Transform every line of a (possibly 2D) row-major array along both axes.
inline void fft_all_axes(std::complex<double>* a, const GridSpec& g,
                         bool inverse) {
  const std::size_t n0 = g.points[0];
  const std::size_t n1 = g.points[1];
  if (g.dim == 1) {
    fft_pow2(a, n0, inverse);
    return;
  }
  for (std::size_t i0 = 0; i0 < n0; ++i0) fft_pow2(a + i0 * n1, n1, inverse);
  std::vector<std::complex<double>> col(n0);
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i0 = 0; i0 < n0; ++i0) col[i0] = a[i0 * n1 + i1];
    fft_pow2(col.data(), n0, inverse);
    for (std::size_t i0 = 0; i0 < n0; ++i0) a[i0 * n1 + i1] = col[i0];
  }
}

}  // namespace detail

// Forward transform of a field into its (unnormalized) Fourier coefficients.
inline std::vector<std::complex<double>> forward_fft(const ComplexField& f) {
  std::vector<std::complex<double>> spec(f.values);
  detail::fft_all_axes(spec.data(), f.grid, false);
  return spec;
}

// Inverse transform of Fourier coefficients back to samples.
inline ComplexField inverse_fft(const GridSpec& g,
                                std::vector<std::complex<double>> spec) {
  detail::fft_all_axes(spec.data(), g, true);
  return ComplexField(g, std::move(spec));
}

}  // namespace photoref

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "photoref/common.hpp"

namespace photoref {

// Uniform periodic grid on the box [-L/2, L/2)^dim with power-of-two point
// counts per axis.  Samples are stored row-major (axis 0 slowest); axis 0 is
// the x axis that distinguished operators (e.g. d/dx) act along.
//
// Fourier modes are indexed m in {-N/2, ..., N/2-1}; the FFT storage order is
// m = j for j < N/2 and m = j - N for j >= N/2, so the Nyquist slot j = N/2
// carries m = -N/2.  First derivatives zero the Nyquist mode so that real
// fields stay real; the Laplacian keeps it.
struct GridSpec {
  int dim = 1;
  std::array<std::size_t, 2> points{8, 1};
  std::array<double, 2> lengths{1.0, 1.0};

  std::size_t size() const { return points[0] * points[1]; }
  double spacing(int axis) const {
    return lengths[axis] / static_cast<double>(points[axis]);
  }
  double cell_volume() const {
    double v = spacing(0);
    if (dim == 2) v *= spacing(1);
    return v;
  }
  double volume() const {
    double v = lengths[0];
    if (dim == 2) v *= lengths[1];
    return v;
  }
  // Node coordinate along an axis: x_j = -L/2 + j h.
  double coord(int axis, std::size_t j) const {
    return -0.5 * lengths[axis] + static_cast<double>(j) * spacing(axis);
  }
  // Signed integer mode for FFT slot j.
  long mode(int axis, std::size_t j) const {
    long n = static_cast<long>(points[axis]);
    long m = static_cast<long>(j);
    return (m < n / 2) ? m : m - n;
  }
  // Wavenumber 2*pi*m/L, Nyquist treated as m = -N/2 (used by the Laplacian).
  double wavenumber(int axis, std::size_t j) const {
    return 2.0 * kPi * static_cast<double>(mode(axis, j)) / lengths[axis];
  }
  // Wavenumber for first derivatives: identical except the Nyquist mode is 0.
  double deriv_wavenumber(int axis, std::size_t j) const {
    if (j == points[axis] / 2) return 0.0;
    return wavenumber(axis, j);
  }
  std::size_t index(std::size_t i0, std::size_t i1 = 0) const {
    return i0 * points[1] + i1;
  }

  bool operator==(const GridSpec& o) const {
    return dim == o.dim && points == o.points && lengths == o.lengths;
  }
};

inline GridSpec make_grid(int dim, const std::vector<std::size_t>& points,
                          const std::vector<double>& lengths) {
  if (dim < 1 || dim > 2)
    throw std::invalid_argument("make_grid: dim must be 1 or 2, got " +
                                std::to_string(dim));
  if (points.size() != static_cast<std::size_t>(dim) ||
      lengths.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument(
        "make_grid: need one point count and one length per axis");
  GridSpec g;
  g.dim = dim;
  g.points = {1, 1};
  g.lengths = {1.0, 1.0};
  for (int ax = 0; ax < dim; ++ax) {
    std::size_t n = points[ax];
    double L = lengths[ax];
    if (n < 8 || !std::has_single_bit(n))
      throw std::invalid_argument(
          "make_grid: points per axis must be a power of two >= 8, got " +
          std::to_string(n));
    if (!(L > 0.0) || !std::isfinite(L))
      throw std::invalid_argument("make_grid: axis length must be positive");
    g.points[ax] = n;
    g.lengths[ax] = L;
  }
  return g;
}

}  // namespace photoref

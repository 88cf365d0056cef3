#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "photoref/grid.hpp"

namespace photoref {

struct RealField {
  GridSpec grid;
  std::vector<double> values;

  RealField() = default;
  explicit RealField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
  RealField(const GridSpec& g, std::vector<double> v)
      : grid(g), values(std::move(v)) {}

  bool all_finite() const {
    for (double x : values)
      if (!std::isfinite(x)) return false;
    return true;
  }
};

struct ComplexField {
  GridSpec grid;
  std::vector<std::complex<double>> values;

  ComplexField() = default;
  explicit ComplexField(const GridSpec& g) : grid(g), values(g.size()) {}
  ComplexField(const GridSpec& g, std::vector<std::complex<double>> v)
      : grid(g), values(std::move(v)) {}

  bool all_finite() const {
    for (const auto& z : values)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }
};

// Build a field from a callable f(x) in 1D or f(x, y) in 2D; the 1D case
// passes y = 0.
template <class F>
RealField make_real_field(const GridSpec& g, F&& f) {
  RealField out(g);
  for (std::size_t i0 = 0; i0 < g.points[0]; ++i0) {
    double x = g.coord(0, i0);
    for (std::size_t i1 = 0; i1 < g.points[1]; ++i1) {
      double y = (g.dim == 2) ? g.coord(1, i1) : 0.0;
      out.values[g.index(i0, i1)] = f(x, y);
    }
  }
  return out;
}

template <class F>
ComplexField make_complex_field(const GridSpec& g, F&& f) {
  ComplexField out(g);
  for (std::size_t i0 = 0; i0 < g.points[0]; ++i0) {
    double x = g.coord(0, i0);
    for (std::size_t i1 = 0; i1 < g.points[1]; ++i1) {
      double y = (g.dim == 2) ? g.coord(1, i1) : 0.0;
      out.values[g.index(i0, i1)] = f(x, y);
    }
  }
  return out;
}

inline ComplexField complexify(const RealField& f) {
  ComplexField out(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    out.values[i] = f.values[i];
  return out;
}

inline RealField real_part(const ComplexField& f) {
  RealField out(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    out.values[i] = f.values[i].real();
  return out;
}

// |A|^2, sample by sample.
inline RealField intensity(const ComplexField& f) {
  RealField out(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    out.values[i] = std::norm(f.values[i]);
  return out;
}

inline double max_abs(const RealField& f) {
  double m = 0.0;
  for (double x : f.values) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace photoref

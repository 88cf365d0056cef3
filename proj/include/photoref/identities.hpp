#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "photoref/field.hpp"
#include "photoref/radial.hpp"
#include "photoref/spectral.hpp"

// Stationary-state identities and the frequency-window classification for
//   -Delta U + omega U = a U |U|^2 / (1 + eps |U|^2).
//
// Every localized solution satisfies
//   energy:    int |grad U|^2 + omega |U|^2 - a |U|^4/(1+eps|U|^2) = 0
//   Pohozaev:  (d-2) int |grad U|^2 + d omega int |U|^2
//              - (a d/eps) int [ |U|^2 - ln(1+eps|U|^2)/eps ] = 0
// and eliminating the gradient term between them yields
//   int F(|U|^2) = 0,  F(X) = (2 omega + (d-2) a X/(1+X)) X - a d (X - ln(1+X))
// (written for eps = 1).  When F is strictly one-signed for X > 0 the only
// solution is U = 0; that is the "sign-definite combination" clause below.

namespace photoref {

struct IdentityResiduals {
  double energy = 0.0;    // normalized by int |grad U|^2 + |U|^2
  double pohozaev = 0.0;
};

inline IdentityResiduals identity_residuals(const ComplexField& U,
                                            double omega, int a,
                                            double saturation = 1.0) {
  if (a != 1 && a != -1)
    throw std::invalid_argument("identity_residuals: a must be +-1");
  const double eps = saturation;
  const int d = U.grid.dim;
  const double grad = grad_sq_integral(U);

  KahanSum mass, quart, logs;
  for (const auto& z : U.values) {
    double s = std::norm(z);
    mass.add(s);
    quart.add(s * s / (1.0 + eps * s));
    logs.add(s - std::log1p(eps * s) / eps);
  }
  const double dv = U.grid.cell_volume();
  const double m = mass.value() * dv;
  const double q = quart.value() * dv;
  const double lg = logs.value() * dv;

  const double scale = grad + m;
  IdentityResiduals res;
  res.energy = (grad + omega * m - a * q) / scale;
  res.pohozaev =
      ((d - 2) * grad + d * omega * m - (a * d / eps) * lg) / scale;
  return res;
}

namespace detail {

// Composite Simpson on uniform samples; falls back to the 3/8 rule for the
// last three intervals when the interval count is odd.
inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 4) throw std::invalid_argument("simpson: need >= 4 samples");
  std::size_t m = n - 1;
  std::size_t m_simp = (m % 2 == 0) ? m : m - 3;
  KahanSum s;
  if (m_simp > 0) {
    s.add(f[0]);
    for (std::size_t j = 1; j < m_simp; ++j)
      s.add((j % 2 == 1 ? 4.0 : 2.0) * f[j]);
    s.add(f[m_simp]);
  }
  double out = s.value() * h / 3.0;
  if (m_simp != m)
    out += 3.0 * h / 8.0 *
           (f[m - 3] + 3.0 * f[m - 2] + 3.0 * f[m - 1] + f[m]);
  return out;
}

inline double sphere_area(int dim) {
  double d = static_cast<double>(dim);
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace detail

// Integral of f(r) r^{d-1} over [0, r_max] times the unit-sphere area.
inline double radial_integral(std::span<const double> r,
                              std::span<const double> f, int dim) {
  if (r.size() != f.size() || r.size() < 4)
    throw std::invalid_argument("radial_integral: bad sample arrays");
  std::vector<double> g(f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    g[j] = f[j] * std::pow(r[j], dim - 1);
  return detail::sphere_area(dim) * detail::simpson(g, r[1] - r[0]);
}

inline IdentityResiduals identity_residuals(const RadialSoliton& sol) {
  const int d = sol.dim;
  const double w = sol.omega;
  const double eps = sol.saturation;
  const std::size_t n = sol.u.size();
  std::vector<double> grad_f(n), mass_f(n), quart_f(n), logs_f(n);
  for (std::size_t j = 0; j < n; ++j) {
    double u = sol.u[j], du = sol.du[j], s = u * u;
    grad_f[j] = du * du;
    mass_f[j] = s;
    quart_f[j] = s * s / (1.0 + eps * s);
    logs_f[j] = s - std::log1p(eps * s) / eps;
  }
  const double grad = radial_integral(sol.r, grad_f, d);
  const double m = radial_integral(sol.r, mass_f, d);
  const double q = radial_integral(sol.r, quart_f, d);
  const double lg = radial_integral(sol.r, logs_f, d);

  const double scale = grad + m;
  IdentityResiduals res;
  res.energy = (grad + w * m - q) / scale;  // shooting is focusing (a = +1)
  res.pohozaev = ((d - 2) * grad + d * w * m - (d / eps) * lg) / scale;
  return res;
}

// -------- frequency-window classification --------

enum class WindowKind { possible, excluded, excluded_conditional };

struct WindowClassification {
  WindowKind kind = WindowKind::excluded;
  std::string clause;  // which argument drives the verdict
};

// Classifies (a, omega, d) for eps = 1.  "excluded_conditional" marks windows
// where every known obstruction needs extra decay assumptions.
inline WindowClassification existence_window(int a, double omega, int dim) {
  if (a != 1 && a != -1)
    throw std::invalid_argument("existence_window: a must be +-1");
  if (dim < 1) throw std::invalid_argument("existence_window: dim must be >= 1");
  WindowClassification c;
  if (a == -1) {
    if (omega >= 0.0) {
      c.kind = WindowKind::excluded;
      c.clause = "energy identity is a sum of nonnegative terms";
    } else if (omega <= -1.0) {
      c.kind = WindowKind::excluded;
      c.clause = "sign-definite combination of energy and Pohozaev identities";
    } else {
      c.kind = WindowKind::excluded_conditional;
      c.clause = "no unconditional obstruction; decay-weighted arguments only";
    }
    return c;
  }
  // focusing, a = +1
  if (omega >= 1.0) {
    c.kind = WindowKind::excluded;
    c.clause = "energy identity is a sum of nonnegative terms";
  } else if (omega > 0.0) {
    c.kind = WindowKind::possible;
    c.clause = "inside the admissible frequency window";
  } else if (dim <= 2) {
    c.kind = WindowKind::excluded;
    c.clause = "Pohozaev identity forces the trivial solution";
  } else if (dim <= 4) {
    c.kind = WindowKind::excluded;
    c.clause = "sign-definite combination of energy and Pohozaev identities";
  } else if (omega <= -0.25 * (dim - 4)) {
    c.kind = WindowKind::excluded;
    c.clause = "sign-definite combination of energy and Pohozaev identities";
  } else {
    c.kind = WindowKind::excluded_conditional;
    c.clause = "no unconditional obstruction; decay-weighted arguments only";
  }
  return c;
}

// eps-saturation variant: u -> w/sqrt(eps), x -> x/sqrt(eps) maps the problem
// onto eps = 1 at frequency eps*omega.
inline WindowClassification existence_window_eps(int a, double omega,
                                                 double eps, int dim) {
  if (!(eps > 0.0))
    throw std::invalid_argument("existence_window_eps: eps must be positive");
  return existence_window(a, eps * omega, dim);
}

// -------- sign-definite combination F and its derivative --------

inline double appendix_F(double X, double omega, int a, int dim) {
  double d = static_cast<double>(dim);
  return (2.0 * omega + (d - 2.0) * a * X / (1.0 + X)) * X -
         a * d * (X - std::log1p(X));
}

inline double appendix_F_derivative(double X, double omega, int a, int dim) {
  double d = static_cast<double>(dim);
  double q = 1.0 + X;
  // numerator N(X) = 2 X^2 (omega - a) + X (4 omega + (d-4) a) + 2 omega
  double N = 2.0 * X * X * (omega - a) + X * (4.0 * omega + (d - 4.0) * a) +
             2.0 * omega;
  return N / (q * q);
}

// True when F is strictly decreasing from F(0) = 0 on (0, x_hi]: N(0) <= 0
// and N < 0 at every sampled point.  Together these force F < 0 for X > 0.
inline bool appendix_Fprime_negative(double omega, int a, int dim,
                                     double x_hi = 1e3,
                                     std::size_t samples = 4096) {
  if (2.0 * omega > 0.0) return false;  // N(0) = 2 omega
  for (std::size_t j = 1; j <= samples; ++j) {
    double X = x_hi * static_cast<double>(j) / static_cast<double>(samples);
    double d = static_cast<double>(dim);
    double N = 2.0 * X * X * (omega - a) + X * (4.0 * omega + (d - 4.0) * a) +
               2.0 * omega;
    if (!(N < 0.0)) return false;
  }
  return true;
}

}  // namespace photoref

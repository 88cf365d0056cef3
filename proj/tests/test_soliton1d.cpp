#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "photoref/decay.hpp"
#include "photoref/finite_diff.hpp"
#include "photoref/soliton1d.hpp"

using namespace photoref;
using Catch::Approx;

namespace {
// first integral written without cancellation control, for cross-checking
double bright_q_naive(double u, double um) {
  return std::log1p(u * u) -
         (u * u) / (um * um) * std::log1p(um * um);
}
double dark_q_naive(double u, double uinf) {
  double s = 1.0 + uinf * uinf;
  return s * std::log(s / (1.0 + u * u)) - (uinf * uinf - u * u);
}
}  // namespace

TEST_CASE("peak-frequency relation matches closed forms") {
  // omega(um) = 1 - ln(1+um^2)/um^2
  REQUIRE(bright_frequency(1.0) == Approx(1.0 - std::log(2.0)).epsilon(1e-15));
  REQUIRE(bright_frequency(2.0) ==
          Approx(1.0 - std::log(5.0) / 4.0).epsilon(1e-15));
  // small-peak series omega ~ um^2/2 - um^4/3 + ...
  double um = 1e-3;
  REQUIRE(bright_frequency(um) ==
          Approx(um * um / 2.0 - um * um * um * um / 3.0).epsilon(1e-9));
  // the series branch (u_m^2 < 1e-4) joins the direct formula continuously
  for (double u : {0.0099, 0.0101}) {
    double s = u * u;
    REQUIRE(bright_frequency(u) ==
            Approx(1.0 - std::log1p(s) / s).epsilon(1e-10));
  }
  // monotone increasing toward 1
  double prev = 0.0;
  for (double u : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    double w = bright_frequency(u);
    REQUIRE(w > prev);
    REQUIRE(w < 1.0);
    prev = w;
  }
}

TEST_CASE("peak inversion round-trips the frequency map") {
  for (double um : {0.05, 0.4, 1.0, 3.0, 10.0}) {
    double w = bright_frequency(um);
    REQUIRE(bright_peak_for_frequency(w) == Approx(um).epsilon(1e-12));
  }
  REQUIRE_THROWS_AS(bright_peak_for_frequency(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(bright_peak_for_frequency(1.0), std::invalid_argument);
}

TEST_CASE("first-integral helpers match their naive forms at moderate u") {
  for (double um : {0.5, 1.0, 2.0}) {
    for (double f : {0.3, 0.5, 0.7, 0.9}) {
      double u = f * um;
      REQUIRE(bright_first_integral_sq(u, um) ==
              Approx(bright_q_naive(u, um)).epsilon(1e-12));
    }
  }
  for (double uinf : {0.5, 1.0, 2.0}) {
    for (double f : {0.0, 0.3, 0.6, 0.9}) {
      double u = f * uinf;
      REQUIRE(dark_first_integral_sq(u, uinf) ==
              Approx(dark_q_naive(u, uinf)).margin(1e-14));
    }
  }
}

TEST_CASE("bright profiles satisfy their defining relations") {
  for (double um : {0.5, 1.0, 2.0}) {
    BrightProfile p = bright_profile(um, bright_suggested_half_width(um), 1024);
    REQUIRE(p.u_m == um);
    REQUIRE(p.omega == Approx(bright_frequency(um)));
    REQUIRE(p.ode_residual < 1e-8);
    REQUIRE(p.tail < 1e-12);

    std::size_t n = p.u.size(), j0 = n / 2;
    REQUIRE(p.x[j0] == Approx(0.0).margin(1e-14));
    REQUIRE(p.u[j0] == Approx(um).epsilon(1e-14));
    // even symmetry and monotone decay away from the peak
    for (std::size_t k = 1; k < n / 2; ++k) {
      REQUIRE(p.u[j0 + k] == Approx(p.u[j0 - k]).margin(1e-15));
      REQUIRE(p.u[j0 + k] <= p.u[j0 + k - 1] + 1e-15);
      REQUIRE(p.u[j0 + k] > 0.0);
    }
    // pointwise first integral from an eighth-order derivative
    double h = p.x[1] - p.x[0];
    double worst = 0.0;
    for (std::size_t j = 4; j + 4 < n; ++j) {
      double du = fd8_first(p.u, j, h);
      worst = std::max(worst,
                       std::abs(du * du - bright_first_integral_sq(p.u[j], um)));
    }
    REQUIRE(worst < 1e-10);
  }
}

TEST_CASE("negative peaks mirror the positive profile") {
  BrightProfile pos = bright_profile(1.0, 40.0, 256, 1e-8);
  BrightProfile neg = bright_profile(-1.0, 40.0, 256, 1e-8);
  REQUIRE(neg.omega == pos.omega);
  for (std::size_t j = 0; j < pos.u.size(); ++j)
    REQUIRE(neg.u[j] == Approx(-pos.u[j]).margin(1e-15));
}

TEST_CASE("dark profiles satisfy their defining relations") {
  for (double uinf : {0.5, 1.0}) {
    DarkProfile p = dark_profile(uinf, dark_suggested_half_width(uinf), 2048);
    REQUIRE(p.ode_residual < 1e-8);
    REQUIRE(p.tail_gap < 1e-12);
    std::size_t n = p.u.size(), j0 = n / 2;
    REQUIRE(p.u[j0] == Approx(0.0).margin(1e-14));
    // odd symmetry, increasing through the zero crossing
    for (std::size_t k = 1; k < n / 2; ++k) {
      REQUIRE(p.u[j0 + k] == Approx(-p.u[j0 - k]).margin(1e-15));
      REQUIRE(p.u[j0 + k] >= p.u[j0 + k - 1] - 1e-15);
    }
    REQUIRE(std::abs(p.u.back()) <= uinf);
    REQUIRE(uinf - p.u.back() < 1e-10);
    // pointwise first integral in the gap variable
    double h = p.x[1] - p.x[0];
    double worst = 0.0;
    for (std::size_t j = 4; j + 4 < n; ++j) {
      double du = fd8_first(p.u, j, h);
      worst = std::max(
          worst, std::abs(du * du - dark_first_integral_sq(p.u[j], uinf)));
    }
    REQUIRE(worst < 1e-10);
  }
}

TEST_CASE("small peaks approach the cubic sech profile") {
  double um = 0.1;
  BrightProfile p = bright_profile(um, bright_suggested_half_width(um), 2048);
  double k = std::sqrt(p.omega);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.u.size(); ++j) {
    double sech = um / std::cosh(k * p.x[j]);
    worst = std::max(worst, std::abs(p.u[j] - sech));
  }
  REQUIRE(worst / um < 1e-2);
}

TEST_CASE("decay rates are certified against the frequency") {
  BrightProfile p = bright_profile(1.0, bright_suggested_half_width(1.0), 2048);
  DecayCheck dc = decay_check(p);
  REQUIRE(dc.weighted_tail_bounded);
  REQUIRE(dc.delta_fit >= 0.5 * p.omega);
  // the true rate is sqrt(omega)
  REQUIRE(dc.delta_fit == Approx(std::sqrt(p.omega)).epsilon(1e-2));

  // fit the decaying right-half gap only: the fit walks a monotone tail
  DarkProfile d = dark_profile(1.0, dark_suggested_half_width(1.0), 2048);
  std::size_t h0 = d.u.size() / 2;
  std::vector<double> xs(d.x.begin() + static_cast<long>(h0), d.x.end());
  std::vector<double> gap(xs.size());
  for (std::size_t j = 0; j < gap.size(); ++j)
    gap[j] = 1.0 - std::abs(d.u[h0 + j]);
  auto [rate, used] = fit_decay_rate(xs, gap, 1.0);
  REQUIRE(used >= 8);
  REQUIRE(rate == Approx(1.0).epsilon(2e-2));  // kappa = uinf sqrt(2/(1+uinf^2))
}

TEST_CASE("unreachable tails throw with the measured tail attached") {
  try {
    bright_profile(1.0, 3.0, 64, 1e-12);  // 3 half-widths is far too short
    FAIL("expected ProfileTailError");
  } catch (const ProfileTailError& e) {
    REQUIRE(e.tail > 1e-12);
    REQUIRE(e.tail < 1.0);
  }
  REQUIRE_NOTHROW(bright_profile(1.0, 3.0, 64, 0.5));
}

TEST_CASE("profile arguments are validated") {
  REQUIRE_THROWS_AS(bright_profile(0.0, 10.0, 64), std::invalid_argument);
  REQUIRE_THROWS_AS(bright_profile(1.0, -1.0, 64), std::invalid_argument);
  REQUIRE_THROWS_AS(bright_profile(1.0, 10.0, 63), std::invalid_argument);
  REQUIRE_THROWS_AS(bright_profile(1.0, 10.0, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(dark_profile(0.0, 10.0, 64), std::invalid_argument);
  REQUIRE_THROWS_AS(dark_profile(1.0, 10.0, 65), std::invalid_argument);

  // a negative background mirrors the dark profile
  DarkProfile pos = dark_profile(1.0, 40.0, 128, 1e-6);
  DarkProfile neg = dark_profile(-1.0, 40.0, 128, 1e-6);
  for (std::size_t j = 0; j < pos.u.size(); ++j)
    REQUIRE(neg.u[j] == Approx(-pos.u[j]).margin(1e-15));
}

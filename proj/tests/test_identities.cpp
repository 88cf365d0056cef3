#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "photoref/identities.hpp"
#include "photoref/radial.hpp"

using namespace photoref;
using Catch::Approx;

namespace {
// Independent re-statement of the classification table, used as an oracle:
// focusing is possible on 0 < omega < 1 only; the unconditional exclusions
// cover a=-1 with omega >= 0 or omega <= -1, and a=+1 with omega >= 1 or
// omega <= 0 in d <= 4 (resp. omega <= -(d-4)/4 in d >= 5); everything else
// is excluded only under extra decay assumptions.
WindowKind oracle(int a, double omega, int d) {
  if (a == 1) {
    if (omega >= 1.0) return WindowKind::excluded;
    if (omega > 0.0) return WindowKind::possible;
    if (d <= 4) return WindowKind::excluded;
    if (omega <= -0.25 * static_cast<double>(d - 4)) return WindowKind::excluded;
    return WindowKind::excluded_conditional;
  }
  // a = -1
  if (omega >= 0.0 || omega <= -1.0) return WindowKind::excluded;
  return WindowKind::excluded_conditional;
}
}  // namespace

TEST_CASE("classification matches the oracle table over a dense sweep") {
  for (int a : {+1, -1})
    for (int d = 1; d <= 6; ++d)
      for (int i = -60; i <= 60; ++i) {
        double w = 0.05 * static_cast<double>(i);
        auto got = existence_window(a, w, d);
        INFO("a=" << a << " d=" << d << " omega=" << w);
        REQUIRE(got.kind == oracle(a, w, d));
        REQUIRE_FALSE(got.clause.empty());
      }
}

TEST_CASE("boundary frequencies classify as excluded") {
  REQUIRE(existence_window(1, 0.0, 2).kind == WindowKind::excluded);
  REQUIRE(existence_window(1, 1.0, 2).kind == WindowKind::excluded);
  REQUIRE(existence_window(1, 0.5, 2).kind == WindowKind::possible);
  REQUIRE(existence_window(-1, -0.5, 2).kind ==
          WindowKind::excluded_conditional);
  REQUIRE(existence_window(-1, -0.5, 3).kind ==
          WindowKind::excluded_conditional);
  REQUIRE(existence_window(-1, -1.0, 3).kind == WindowKind::excluded);
  // d >= 5 splits at omega = -(d-4)/4
  REQUIRE(existence_window(1, -0.25, 5).kind == WindowKind::excluded);
  REQUIRE(existence_window(1, -0.1, 5).kind ==
          WindowKind::excluded_conditional);
  REQUIRE_THROWS_AS(existence_window(0, 0.5, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(existence_window(1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("general saturation reduces to the rescaled frequency") {
  for (int a : {+1, -1})
    for (double eps : {0.25, 1.0, 4.0})
      for (double w : {-0.8, 0.3, 0.9, 1.5, 3.0, 5.0})
        for (int d : {1, 2, 3, 5}) {
          auto lhs = existence_window_eps(a, w, eps, d);
          auto rhs = existence_window(a, eps * w, d);
          REQUIRE(lhs.kind == rhs.kind);
        }
  // a window edge moves with 1/eps: omega = 2 is possible at eps = 0.25
  REQUIRE(existence_window_eps(1, 2.0, 0.25, 2).kind == WindowKind::possible);
  REQUIRE(existence_window_eps(1, 2.0, 1.0, 2).kind == WindowKind::excluded);
}

TEST_CASE("computed ground states satisfy both stationary identities") {
  auto sol = shoot_radial(2, 0.3);
  REQUIRE(sol.has_value());
  auto res = identity_residuals(*sol);
  REQUIRE(std::abs(res.energy) < 1e-6);
  REQUIRE(std::abs(res.pohozaev) < 1e-6);

  // identity residuals respond to perturbation: they are not trivially zero
  RadialSoliton bent = *sol;
  for (auto& u : bent.u) u *= 1.05;
  for (auto& du : bent.du) du *= 1.05;
  auto res_bent = identity_residuals(bent);
  REQUIRE(std::abs(res_bent.energy) > 1e-3);
}

TEST_CASE("identity residuals work on complex grid fields") {
  GridSpec g = make_grid(2, {64, 64}, {24.0, 24.0});
  auto sol = shoot_radial(2, 0.5);
  REQUIRE(sol.has_value());
  // sample the radial solution onto the torus; tails are ~1e-9 at the edge
  double h = sol->r[1] - sol->r[0];
  auto U = make_complex_field(g, [&](double x, double y) {
    double r = std::hypot(x, y);
    double u = 0.0;
    if (r < sol->r.back()) {
      // linear interpolation is fine for a smoothness-limited test
      std::size_t j = static_cast<std::size_t>(r / h);
      double t = (r - sol->r[j]) / h;
      u = (1.0 - t) * sol->u[j] + t * sol->u[j + 1];
    }
    return std::complex<double>(u, 0.0);
  });
  auto res = identity_residuals(U, 0.5, 1);
  // interpolation and torus truncation limit the accuracy, not the identity
  REQUIRE(std::abs(res.energy) < 1e-3);
  auto bad = identity_residuals(U, 0.9, 1);
  REQUIRE(std::abs(bad.energy) > 1e-2);
}

TEST_CASE("sign-definite combination vanishes at the origin and flips sign") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uw(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    double w = uw(rng);
    int a = (rng() & 1) ? 1 : -1;
    int d = 1 + static_cast<int>(rng() % 6);
    REQUIRE(appendix_F(0.0, w, a, d) == 0.0);
  }
  // inside the window the combination changes sign (no obstruction)
  REQUIRE(appendix_F(0.1, 0.5, 1, 2) > 0.0);
  REQUIRE(appendix_F(100.0, 0.5, 1, 2) < 0.0);
  REQUIRE_FALSE(appendix_Fprime_negative(0.5, 1, 2));
}

TEST_CASE("the combination's derivative matches finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.01, 5.0), uw(-2.0, 2.0);
  for (int t = 0; t < 30; ++t) {
    double X = ux(rng), w = uw(rng);
    int a = (rng() & 1) ? 1 : -1;
    int d = 1 + static_cast<int>(rng() % 6);
    double h = 1e-6 * std::max(X, 1.0);
    double fd =
        (appendix_F(X + h, w, a, d) - appendix_F(X - h, w, a, d)) / (2.0 * h);
    REQUIRE(appendix_F_derivative(X, w, a, d) == Approx(fd).margin(1e-6));
  }
}

TEST_CASE("monotonicity certifies the documented excluded ranges") {
  // defocusing: any negative frequency, every dimension
  for (int d = 1; d <= 6; ++d) {
    REQUIRE(appendix_Fprime_negative(-1.0, -1, d));
    REQUIRE(appendix_Fprime_negative(-2.0, -1, d));
  }
  // focusing in high dimension at nonpositive frequency
  for (int d : {3, 4, 5, 6}) {
    REQUIRE(appendix_Fprime_negative(-2.0, 1, d));
  }
  REQUIRE(appendix_Fprime_negative(0.0, 1, 3));
  REQUIRE(appendix_Fprime_negative(-0.25, 1, 5));
  REQUIRE(appendix_Fprime_negative(-0.5, 1, 6));
}

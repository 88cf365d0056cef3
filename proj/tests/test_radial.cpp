#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "photoref/radial.hpp"
#include "photoref/soliton1d.hpp"

using namespace photoref;
using Catch::Approx;

TEST_CASE("shooting auxiliaries satisfy their algebra") {
  for (double w : {0.1, 0.5, 0.9}) {
    double alpha = blp_alpha(w);
    // g(alpha) = 0 and alpha^2 = w/(1-w)
    REQUIRE(alpha * alpha == Approx(w / (1.0 - w)).epsilon(1e-14));
    REQUIRE(std::abs(blp_g(alpha, w)) < 1e-14 * std::max(alpha, 1.0));
    // the derivative at alpha has the closed form 2 w (1 - w)
    REQUIRE(blp_g_prime(alpha, w) == Approx(2.0 * w * (1.0 - w)).epsilon(1e-12));
    // zeta0 is the positive root of G and sits above alpha
    double z0 = blp_zeta0(w);
    REQUIRE(z0 > alpha);
    REQUIRE(std::abs(blp_G(z0, w)) < 1e-12);
    REQUIRE(blp_check(w).all_ok());
  }
  REQUIRE_THROWS_AS(blp_alpha(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(blp_alpha(1.0), std::invalid_argument);
}

TEST_CASE("line shooting reproduces the quadrature peak") {
  double w = 0.3;
  auto sol = shoot_radial(1, w);
  REQUIRE(sol.has_value());
  double um = bright_peak_for_frequency(w);
  REQUIRE(sol->zeta == Approx(um).epsilon(1e-6));
  // the trajectory obeys the planar first integral away from the tail
  double worst = 0.0;
  for (std::size_t j = 0; j < sol->u.size(); ++j) {
    double u = sol->u[j];
    if (u < 0.05 * sol->zeta || u > 0.95 * sol->zeta) continue;
    worst = std::max(worst, std::abs(sol->du[j] * sol->du[j] -
                                     bright_first_integral_sq(u, um)));
  }
  REQUIRE(worst < 1e-9);
}

TEST_CASE("planar and space ground states pass all certificates") {
  for (auto [dim, w] : {std::pair{2, 0.25}, {2, 0.75}, {3, 0.5}}) {
    ShootingConfig cfg;
    auto sol = shoot_radial(dim, w, cfg);
    REQUIRE(sol.has_value());
    REQUIRE(sol->dim == dim);
    REQUIRE(sol->zeta > blp_zeta0(w));
    REQUIRE(sol->bracket_hi - sol->bracket_lo <= 1e-12 * sol->zeta);

    // samples start at the center with zero slope and decay monotonically
    REQUIRE(sol->r.front() == 0.0);
    REQUIRE(sol->u.front() == Approx(sol->zeta));
    REQUIRE(sol->du.front() == 0.0);
    for (std::size_t j = 1; j < sol->u.size(); ++j) {
      REQUIRE(sol->u[j] > 0.0);
      REQUIRE(sol->u[j] <= sol->u[j - 1] + 1e-12 * sol->zeta);
    }

    REQUIRE(sol->ode_residual < 1e-4);
    auto cert = certify_ground_state(*sol, cfg);
    REQUIRE(cert.ok());
    REQUIRE(radial_decay_check(*sol, 0.49 * w).weighted_tail_bounded);
    REQUIRE(sol->decay_delta >= 0.5 * w);
  }
}

TEST_CASE("line decay rate approaches sqrt(omega)") {
  auto sol = shoot_radial(1, 0.4);
  REQUIRE(sol.has_value());
  REQUIRE(sol->decay_delta == Approx(std::sqrt(0.4)).epsilon(0.02));
}

TEST_CASE("refinement keeps the defect at the noise floor") {
  ShootingConfig coarse;
  coarse.rtol = 1e-6;
  coarse.samples = 512;
  ShootingConfig fine;  // defaults: rtol 1e-12, 4096 samples
  auto sc = shoot_radial(2, 0.5, coarse);
  auto sf = shoot_radial(2, 0.5, fine);
  REQUIRE(sc.has_value());
  REQUIRE(sf.has_value());
  // both settings resolve the profile far below the acceptance defect budget,
  // and the located amplitude is insensitive to the refinement
  REQUIRE(sc->ode_residual < 1e-9);
  REQUIRE(sf->ode_residual < 1e-9);
  REQUIRE(sf->zeta == Approx(sc->zeta).epsilon(1e-4));
}

TEST_CASE("no ground state is reported outside the window") {
  REQUIRE_FALSE(shoot_radial(2, 1.0).has_value());
  REQUIRE_FALSE(shoot_radial(2, 1.2).has_value());
  REQUIRE_FALSE(shoot_radial(2, -0.2).has_value());
  REQUIRE_THROWS_AS(shoot_radial(0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(shoot_radial(-2, 0.5), std::invalid_argument);
}

TEST_CASE("saturation rescaling matches the unit-saturation solution") {
  double w = 0.5, eps = 0.25;
  auto scaled = shoot_radial_eps(2, w, eps);
  auto base = shoot_radial(2, w * eps);
  REQUIRE(scaled.has_value());
  REQUIRE(base.has_value());
  // u_eps(r) = u_1(sqrt(eps) r)/sqrt(eps) at frequency eps*omega
  REQUIRE(scaled->zeta == Approx(base->zeta / std::sqrt(eps)).epsilon(1e-10));
  REQUIRE(scaled->saturation == eps);
  // the rescaled samples still satisfy the saturated equation directly
  REQUIRE(scaled->ode_residual < 1e-4);
}

TEST_CASE("certificate endpoints classify as claimed") {
  ShootingConfig cfg;
  auto sol = shoot_radial(2, 0.5, cfg);
  REQUIRE(sol.has_value());
  auto cert = certify_ground_state(*sol, cfg);
  REQUIRE(cert.delta == cfg.certificate_delta);
  REQUIRE(cert.rebound_below);
  REQUIRE(cert.crossing_above);
}

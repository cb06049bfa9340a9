#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfoundry/blackhole.hpp"
#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"

using namespace qfoundry;
using namespace qfoundry::blackhole;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Schwarzschild thermodynamics, natural units") {
  const auto t = schwarzschild_thermo({});
  CHECK(std::abs(t.S_BH - 4.0 * kPi) < 1e-12);
  CHECK(std::abs(t.S_mass_form - 4.0 * kPi) < 1e-12);
  CHECK(std::abs(t.T_H - 1.0 / (8.0 * kPi)) < 1e-15);
  CHECK(std::abs(t.first_law_ratio - 1.0) < 1e-6);

  SchwarzschildParams p;
  p.M = 3.0;
  p.G = 0.5;
  const auto u = schwarzschild_thermo(p);
  CHECK(std::abs(u.S_BH - u.S_mass_form) < 1e-12 * u.S_BH);
  CHECK(std::abs(u.T_redshift - u.T_H) < 1e-12 * u.T_H);

  p.M = -1.0;
  CHECK_THROWS_AS(schwarzschild_thermo(p), DomainError);
}

TEST_CASE("Schwarzschild thermodynamics, solar mass in SI") {
  SchwarzschildParams p;
  p.units = UnitSystem::si;
  p.M = p.constants.solar_mass;
  const auto t = schwarzschild_thermo(p);
  CHECK(std::abs(t.T_H / 6.2e-8 - 1.0) < 0.01);
  CHECK(std::abs(t.r_s / 2953.0 - 1.0) < 1e-3);
  CHECK(std::abs(t.first_law_ratio - 1.0) < 1e-6);
}

TEST_CASE("scattering barrier") {
  const SchwarzschildParams p;
  CHECK(effective_potential(2.0 * (1.0 + 1e-12), 3, p) < 1e-10);
  CHECK_THROWS_AS(effective_potential(1.0, 0, p), DomainError);
  const auto b0 = barrier_max(0, p);
  CHECK(std::abs(b0.r_peak / 2.0 - 4.0 / 3.0) < 1e-6);
  const auto fit = barrier_scaling(10, p);
  CHECK(fit.peaks.size() == 11);
  CHECK(fit.r2 >= 0.999);
}

TEST_CASE("Unruh state") {
  const auto u = unruh_state({1.0, 2.0 * kPi, 60});
  CHECK(std::abs(u.occupation[1] / u.occupation[0] - std::exp(-1.0)) < 1e-10);
  for (std::size_t n = 0; n + 1 < 40; ++n) CHECK(std::abs(u.occupation[n + 1] / u.occupation[n] - u.ratio) < 1e-10);
  CHECK(std::abs(u.mean_occupation - 1.0 / (std::exp(1.0) - 1.0)) < 1e-12);
  CHECK(std::abs(u.entropy_R - u.entropy_L) < 1e-10);
  CHECK_FALSE(u.warning.has_value());

  const auto hot = unruh_state({0.01, 2.0 * kPi, 20});
  CHECK(hot.warning.has_value());
  CHECK_THROWS_AS(unruh_state({1.0, 0.0, 60}), DomainError);
}

TEST_CASE("Page curve") {
  const auto pts = page_curve_mc(10, 500, 0);
  CHECK(pts.size() == 11);
  CHECK(pts[0].mean_entropy == 0.0);
  CHECK(pts[2].mean_entropy >= 0.95 * 2.0 * std::log(2.0));
  CHECK(std::abs(pts[3].mean_entropy - pts[7].mean_entropy) < 3.0 * std::hypot(pts[3].std_error, pts[7].std_error) + 1e-12);
  // I(1) is the finite-size deficit of the one-qubit average, not zero
  const double exact1 = page_mean_entropy(2, 512);
  CHECK(std::abs(pts[1].mean_entropy - exact1) < 4.0 * pts[1].std_error);
  CHECK(std::abs(page_mean_entropy(2, 8) - 0.6003718503718504) < 1e-15);
  CHECK(page_mean_entropy(8, 2) == page_mean_entropy(2, 8));
  CHECK_THROWS_AS(page_curve_mc(1, 10, 0), DomainError);
}

TEST_CASE("thermofield double") {
  const auto t = thermofield_double({0.0, 1.0}, std::log(3.0));
  CHECK(std::abs(t.gibbs[0] - 0.75) < 1e-15);
  CHECK(std::abs(t.gibbs[1] - 0.25) < 1e-15);
  CHECK(std::abs(t.entropy_A - (0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0))) < 1e-14);
  CHECK(std::abs(von_neumann_entropy(t.rho_A) - t.entropy_A) < 1e-12);

  CHECK(thermofield_double({0.0, 1.0, 2.0}, 50.0).entropy_A < 1e-12);
  CHECK(std::abs(thermofield_double({0.0, 1.0, 2.0, 3.0}, 1e-7).entropy_A - std::log(4.0)) < 1e-6);
  CHECK_THROWS_AS(thermofield_double({}, 1.0), DomainError);
  CHECK_THROWS_AS(thermofield_double({0.0}, 0.0), DomainError);
}

TEST_CASE("RT entropy") {
  const auto e3 = rt_entropy({1.0, 1.0, 1.0, std::exp(3.0)});
  CHECK(std::abs(e3.S_A - e3.c) < 1e-12);

  const auto h = rt_entropy({1.0, 1.0, 1.0, 100.0});
  CHECK(std::abs(h.L_analytic - 2.0 * std::log(100.0)) < 1e-12);
  CHECK(std::abs(h.S_A - h.c / 3.0 * std::log(100.0)) < 1e-12);
  CHECK(std::abs(h.L_numeric - 2.0 * std::log(1.0 / std::tan(0.01))) < 1e-10);
  CHECK(h.relative_error < 1e-3);
  CHECK(rt_entropy({1.0, 1.0, 1.0, 1000.0}).relative_error < 1e-3);
  // at l/a = 10 the cutoff correction 2R ln(cot(a/l) a/l) is about 0.15% of the length
  CHECK(rt_entropy({1.0, 1.0, 1.0, 10.0}).relative_error == doctest::Approx(1.451e-3).epsilon(0.01));
  CHECK_THROWS_AS(rt_entropy({1.0, 1.0, 1.0, 5.0}), DomainError);
}

TEST_CASE("scaling dimension") {
  CHECK(scaling_dimension(4, 0.0) == 4.0);
  CHECK(scaling_dimension(4, -4.0) == 2.0);
  CHECK_THROWS_AS(scaling_dimension(3, -9.0 / 4.0 - 0.1), DomainError);
}

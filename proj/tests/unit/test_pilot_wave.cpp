#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfoundry/error.hpp"
#include "qfoundry/pilot_wave.hpp"

using namespace qfoundry;
using namespace qfoundry::pilot_wave;

namespace {

const Grid1D kGrid{};

WaveField packet(double k0 = 0.0, double sigma0 = 1.0) {
  return gaussian_packet(kGrid, 0.0, sigma0, k0, 1.0, free_potential(kGrid));
}

WaveField plane_wave(const Grid1D& g, double k, double t) {
  WaveField f;
  f.grid = g;
  f.potential = free_potential(g);
  f.psi.resize(static_cast<Eigen::Index>(g.points));
  const double amp = 1.0 / std::sqrt(g.x_max - g.x_min + g.dx());
  for (std::size_t i = 0; i < g.points; ++i) {
    f.psi[static_cast<Eigen::Index>(i)] = amp * std::exp(cplx(0.0, k * g.x(i) - 0.5 * k * k * t));
  }
  f.time = t;
  return f;
}

double max_abs_bulk(const GridField& f, const Grid1D& g, double half_width) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.points; ++i) {
    if (std::abs(g.x(i)) <= half_width) m = std::max(m, std::abs(f.values[static_cast<Eigen::Index>(i)]));
  }
  return m;
}

}  // namespace

TEST_CASE("grid and packet") {
  CHECK_THROWS_AS((Grid1D{0.0, 1.0, 10}.validate()), DomainError);
  CHECK_THROWS_AS((Grid1D{1.0, 0.0, 100}.validate()), DomainError);
  const auto f = packet();
  CHECK(std::abs(f.norm() - 1.0) < 1e-12);
  CHECK(std::abs(width(f) - 1.0) < 1e-6);
  CHECK(std::abs(mean_x(f)) < 1e-12);
}

TEST_CASE("Schrodinger evolution") {
  const auto f = packet();
  const auto same = schrodinger_step(f, 0.0, 10);
  CHECK((same.psi - f.psi).norm() == 0.0);

  const double t = 4.0;
  const auto g = schrodinger_step(f, 0.004, 1000);
  CHECK(std::abs(g.time - t) < 1e-12);
  CHECK(std::abs(g.norm() - 1.0) < 1e-8);
  CHECK(std::abs(width(g) / free_width(1.0, 1.0, t) - 1.0) < 5e-3);
  CHECK(std::abs(energy(g) - energy(f)) < 1e-8);
}

TEST_CASE("harmonic ground state is stationary") {
  const Grid1D g{-10.0, 10.0, 1024};
  const auto h = harmonic_ground_state(g, 1.0, 1.0);
  const auto later = schrodinger_step(h, 0.01, 300);
  CHECK((later.psi.cwiseAbs() - h.psi.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(energy(h) - 0.5) < 1e-3);
}

TEST_CASE("walls are detected") {
  const Grid1D g{-10.0, 10.0, 512};
  const auto f = gaussian_packet(g, 0.0, 1.0, 5.0, 1.0, free_potential(g));
  CHECK_THROWS_AS(schrodinger_step(f, 0.01, 400), DomainError);
}

TEST_CASE("Bohm velocity") {
  CHECK(max_abs_bulk(bohm_velocity(packet()), kGrid, 5.0) < 1e-12);

  // fourth-order truncation error is about (k dx)^4 k / 30
  const auto pw = plane_wave(kGrid, 0.7, 0.0);
  CHECK(std::abs(max_abs_bulk(bohm_velocity(pw), kGrid, 30.0) - 0.7) < 1e-7);

  const auto boosted = packet(1.5);
  const auto v = bohm_velocity(boosted);
  const auto centre = static_cast<Eigen::Index>(kGrid.points / 2);
  CHECK(std::abs(v.values[centre] - 1.5) < 1e-5);
  const auto pv = phase_gradient_velocity(boosted);
  CHECK(std::abs(pv.values[centre] - 1.5) < 1e-5);
}

TEST_CASE("quantum potential") {
  CHECK(max_abs_bulk(quantum_potential(plane_wave(kGrid, 0.7, 0.0)), kGrid, 30.0) < 1e-8);

  const double sigma = 1.0;
  const auto deviation = [&](std::size_t points) {
    const Grid1D g{-20.0, 20.0, points};
    const auto f = gaussian_packet(g, 0.0, sigma, 0.0, 1.0, free_potential(g));
    const auto u = quantum_potential(f);
    double m = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const double x = g.x(i);
      if (std::abs(x) > 3.0) continue;
      const double exact = 0.5 * (1.0 / (2 * sigma * sigma) - x * x / (4 * std::pow(sigma, 4)));
      m = std::max(m, std::abs(u.values[static_cast<Eigen::Index>(i)] - exact));
    }
    return m;
  };
  const double coarse = deviation(801);
  const double fine = deviation(1601);
  CHECK(coarse / fine >= 3.5);
}

TEST_CASE("Hamilton-Jacobi and continuity residuals") {
  CHECK(hamilton_jacobi_residual(plane_wave(kGrid, 0.5, 0.0), plane_wave(kGrid, 0.5, 0.01)).max_residual < 1e-8);

  const auto f = schrodinger_step(packet(0.5), 0.002, 500);
  const auto g = schrodinger_step(f, 0.002, 1);
  CHECK(hamilton_jacobi_residual(f, g).max_residual < 1e-3);
  CHECK(continuity_residual(f, g) < 1e-8);

  const Grid1D hg{-10.0, 10.0, 1024};
  const auto h = harmonic_ground_state(hg, 1.0, 1.0);
  CHECK(hamilton_jacobi_residual(h, schrodinger_step(h, 0.001, 1)).max_residual < 1e-6);
}

TEST_CASE("trajectories") {
  const Grid1D g{-10.0, 10.0, 1024};
  const auto h = harmonic_ground_state(g, 1.0, 1.0);
  const auto still = run_trajectories(h, 0.01, 1.0, 200, 3);
  for (std::size_t k = 0; k < 200; ++k) CHECK(std::abs(still.ensemble.final_positions[k] - still.ensemble.initial[k]) < 1e-6);

  const double t3 = 2.0 * std::sqrt(8.0);
  const auto run = run_trajectories(packet(), t3 / 1000.0, t3, 10000, 1);
  CHECK(run.ks_distance < 0.02);
  CHECK(run.ensemble.order_preserved);
  CHECK(std::abs(width(run.final_field) - 3.0) < 0.015);

  const auto again = run_trajectories(packet(), t3 / 1000.0, t3, 10000, 1);
  CHECK(again.ensemble.final_positions == run.ensemble.final_positions);
}

TEST_CASE("sampling and KS distance") {
  const auto f = packet();
  std::vector<double> u;
  for (int i = 1; i <= 999; ++i) u.push_back(i / 1000.0);
  const auto q = sample_positions(f, u);
  CHECK(std::is_sorted(q.begin(), q.end()));
  CHECK(ks_distance(f, q) < 2e-3);
  CHECK(std::abs(q[499]) < 1e-3);
}

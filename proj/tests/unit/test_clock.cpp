#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfoundry/clock.hpp"
#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"

using namespace qfoundry;
using namespace qfoundry::clock;

namespace {

constexpr double kPi = std::numbers::pi;

struct Photons {
  ClockUniverse u = photon_clock_model(1.3);
  Operator clock_h = Operator::projector_onto(StateVector::basis(u.h_clock().partition(), std::size_t{0}));
  Operator clock_v = Operator::projector_onto(StateVector::basis(u.h_clock().partition(), std::size_t{1}));
  Operator rest_v = Operator::projector_onto(StateVector::basis(u.h_rest().partition(), std::size_t{1}));
  std::vector<double> plates{0.0, 0.5, 2.0};
};

}  // namespace

TEST_CASE("photon universe") {
  const Photons p;
  CHECK(p.u.constraint_norm() < 1e-12);
  // singlet: swapping the photons flips the sign
  const auto& a = p.u.psi().amplitudes();
  CHECK(std::abs(a[1] + a[2]) < 1e-15);
  CHECK(std::abs(a[0]) + std::abs(a[3]) < 1e-15);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(p.u.h_clock().matrix());
  CHECK(p.u.h_clock().is_hermitian());
  CHECK(std::abs(es.eigenvalues()(0) + 1.3) < 1e-14);
  CHECK(std::abs(es.eigenvalues()(1) - 1.3) < 1e-14);
  CHECK_THROWS_AS(photon_clock_model(0.0), DomainError);
}

TEST_CASE("constraint is enforced at construction") {
  const Photons p;
  const auto product = tensor(StateVector::basis(p.u.h_clock().partition(), std::size_t{0}),
                              StateVector::basis(p.u.h_rest().partition(), std::size_t{0}));
  CHECK_THROWS_AS(ClockUniverse(p.u.h_clock(), p.u.h_rest(), product, 1.3), DomainError);
}

TEST_CASE("conditional state") {
  const Photons p;
  const auto c0 = conditional_state(p.u, 0.0);
  const auto& psi = p.u.psi().amplitudes();
  CHECK(std::abs(c0.amplitudes[0] - psi[0]) < 1e-15);
  CHECK(std::abs(c0.amplitudes[1] - psi[1]) < 1e-15);

  // the conditional rest state rotates at ω and recurs after 2π/ω
  const double w = p.u.omega();
  for (double t : {0.2, 0.9, 1.7}) {
    const auto c = conditional_state(p.u, t);
    const double p_v = std::norm(c.amplitudes[1]) / (c.norm * c.norm);
    CHECK(std::abs(p_v - std::pow(std::cos(w * t), 2)) < 1e-12);
  }
  const auto back = conditional_state(p.u, 2.0 * kPi / w);
  CHECK((back.amplitudes - c0.amplitudes).norm() < 1e-10);
}

TEST_CASE("conditional probability") {
  const Photons p;
  const auto id = Operator::identity(p.u.h_rest().partition());
  CHECK(std::abs(conditional_probability(p.u, p.clock_h, id, p.plates) - 1.0) < 1e-14);
  CHECK(std::abs(conditional_probability(p.u, clock_reading(p.u, p.clock_h, 0.0), p.rest_v, p.plates) - 1.0) < 1e-14);
  const double quarter = kPi / (2.0 * p.u.omega());
  CHECK(conditional_probability(p.u, clock_reading(p.u, p.clock_h, quarter), p.rest_v, p.plates) < 1e-14);
  for (int k = 0; k < 50; ++k) {
    const double tau = kPi / p.u.omega() * k / 49.0;
    CHECK(std::abs(conditional_probability(p.u, clock_reading(p.u, p.clock_h, tau), p.rest_v, p.plates) -
                   photon_closed_form(p.u.omega(), tau, 0)) < 1e-9);
    CHECK(std::abs(conditional_probability(p.u, clock_reading(p.u, p.clock_v, tau), p.rest_v, p.plates) -
                   photon_closed_form(p.u.omega(), tau, 1)) < 1e-9);
  }
  CHECK_THROWS_AS(conditional_probability(p.u, p.clock_h, p.rest_v, {}), DomainError);
}

TEST_CASE("static deviation") {
  const Photons p;
  const double w = p.u.omega();
  CHECK(static_deviation(p.u.total_hamiltonian(), p.u.psi(), {0.0}) < 1e-15);
  CHECK(super_observer_invariance(p.u, {0.1 / w, 1.0 / w, 10.0 / w}) < 1e-10);

  // |H>|H> is not annihilated by H: the deviation grows linearly at small T
  const auto hh = tensor(StateVector::basis(p.u.h_clock().partition(), std::size_t{0}),
                         StateVector::basis(p.u.h_rest().partition(), std::size_t{0}));
  const double d1 = static_deviation(p.u.total_hamiltonian(), hh, {1e-4});
  const double d2 = static_deviation(p.u.total_hamiltonian(), hh, {2e-4});
  CHECK(d1 > 1e-6);
  CHECK(std::abs(d2 / d1 - 2.0) < 1e-3);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"
#include "qfoundry/measurement.hpp"

using namespace qfoundry;
using namespace qfoundry::measurement;

namespace {

const HilbertPartition kQ = HilbertPartition::single(2, "q");

Operator pauli_x(double g = 1.0) {
  CMatrix x(2, 2);
  x << 0, g, g, 0;
  return Operator(x, kQ, OperatorKind::hermitian);
}

StateVector zero() { return StateVector::basis(kQ, std::size_t{0}); }
StateVector plus() { return StateVector::normalized(CVector::Ones(2), kQ); }
Operator proj0() { return Operator::projector_onto(zero()); }

}  // namespace

TEST_CASE("evolve") {
  CHECK((evolve(plus(), pauli_x(), 0.0).amplitudes() - plus().amplitudes()).norm() < 1e-15);

  const auto psi = evolve(zero(), pauli_x(), std::numbers::pi / 2);
  CHECK(std::abs(psi[1] - cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::norm(psi[0]) < 1e-28);

  // |+> is an eigenstate with E = 1
  const auto e = evolve(plus(), pauli_x(), 0.7);
  CHECK((e.amplitudes() - std::exp(cplx(0.0, -0.7)) * plus().amplitudes()).norm() < 1e-14);
}

TEST_CASE("Born rule and collapse") {
  const auto rho = DensityMatrix::pure(plus());
  CHECK(born_probability(rho, Operator::identity(kQ)) == doctest::Approx(1.0));
  CHECK(std::abs(born_probability(rho, proj0()) - 0.5) < 1e-15);
  CHECK(born_probability(DensityMatrix::pure(StateVector::basis(kQ, std::size_t{1})), proj0()) == 0.0);

  const auto c = collapse(rho, proj0());
  CHECK(std::abs(c.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(c.matrix().cwiseAbs().sum() == doctest::Approx(1.0));
  const auto same = collapse(DensityMatrix::pure(zero()), proj0());
  CHECK((same.matrix() - DensityMatrix::pure(zero()).matrix()).norm() < 1e-15);
  CHECK_THROWS_AS(collapse(DensityMatrix::pure(StateVector::basis(kQ, std::size_t{1})), proj0()), ImpossibleBranchError);
}

TEST_CASE("history probability") {
  const auto rho = DensityMatrix::pure(plus());
  CHECK(std::abs(history_probability(rho, pauli_x(), {{proj0(), 0.0}}) - born_probability(rho, proj0())) < 1e-15);

  const Operator zero_h(CMatrix::Zero(2, 2), kQ, OperatorKind::hermitian);
  CHECK(std::abs(history_probability(rho, zero_h, {{proj0(), 0.3}, {proj0(), 0.9}}) - 0.5) < 1e-15);

  const double tau = 0.4;
  const double c2 = std::pow(std::cos(tau), 2);
  const auto r0 = DensityMatrix::pure(zero());
  CHECK(std::abs(history_probability(r0, pauli_x(), {{proj0(), tau}, {proj0(), 2 * tau}}) - c2 * c2) < 1e-14);

  CHECK_THROWS_AS(history_probability(r0, pauli_x(), {{proj0(), 1.0}, {proj0(), 0.5}}), DomainError);
}

TEST_CASE("Zeno survival") {
  const double t = std::numbers::pi / 2;
  CHECK(zeno_survival(zero(), pauli_x(), 0.0, 5) == doctest::Approx(1.0));
  CHECK(zeno_survival(zero(), pauli_x(), t, 1) < 1e-30);
  CHECK(std::abs(zeno_survival(zero(), pauli_x(), t, 2) - 0.25) < 1e-15);
  double prev = 0.0;
  for (int k = 1; k <= 14; ++k) {
    const double s = zeno_survival(zero(), pauli_x(), t, 1ULL << k);
    CHECK(s > prev);
    prev = s;
  }
  CHECK(prev > 0.9998);  // cos^(2N)(pi/2N) ~ 1 - pi^2/4N
}

TEST_CASE("Zeno timescale") {
  CHECK_FALSE(zeno_timescale(plus(), pauli_x()).has_value());
  CHECK(std::abs(*zeno_timescale(zero(), pauli_x()) - 1.0) < 1e-15);
  CHECK(std::abs(*zeno_timescale(zero(), pauli_x(2.5)) - 0.4) < 1e-15);
  CHECK(std::abs(zeno_timescale_finite_difference(zero(), pauli_x()) - 1.0) < 1e-6);
}

TEST_CASE("decoherence chain") {
  const double r = 1.0 / std::numbers::sqrt2;
  SUBCASE("alpha = 1 leaves a product state") {
    const auto res = decohere(DecoherenceChain::with_overlap(1.0, 0.0, 0.3));
    CHECK(res.reduced.is_pure());
    CHECK(res.coherence < 1e-15);
  }
  SUBCASE("kappa = 0 gives the completed-measurement mixture") {
    const auto res = decohere(DecoherenceChain::with_overlap(r, r, 0.0));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;  // |+,D+>
    expect(3, 3) = 0.5;  // |-,D->
    CHECK((res.reduced.matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("off-diagonal scales with kappa") {
    for (double k : {0.25, 0.5, 0.75, 1.0}) {
      const auto res = decohere(DecoherenceChain::with_overlap(r, r, k));
      CHECK(std::abs(res.coherence - 0.5 * k) < 1e-14);
    }
  }
  CHECK_THROWS_AS(decohere(DecoherenceChain::with_overlap(1.0, 1.0, 0.0)), DomainError);
}

TEST_CASE("Orch OR lifetime") {
  CHECK(orch_or_lifetime(1.0) == 1.0);
  CHECK(orch_or_lifetime(2.0) == 0.5);
  CHECK(std::abs(orch_or_lifetime(1.0545718e-34, UnitSystem::si) - 1.0) < 1e-7);
  CHECK_THROWS_AS(orch_or_lifetime(0.0), DomainError);
}

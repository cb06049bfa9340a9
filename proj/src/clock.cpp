#include "qfoundry/clock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"
#include "qfoundry/measurement.hpp"

namespace qfoundry::clock {

Operator total_hamiltonian(const Operator& h_clock, const Operator& h_rest) {
  const auto full = h_clock.partition().concat(h_rest.partition());
  CMatrix h = embed(h_clock, full).matrix() + embed(h_rest, full).matrix();
  return Operator(std::move(h), full, OperatorKind::hermitian);
}

double constraint_norm(const Operator& h_clock, const Operator& h_rest, const StateVector& psi) {
  const auto h = total_hamiltonian(h_clock, h_rest);
  if (h.dimension() != psi.dimension()) throw DomainError("state does not live on clock ⊗ rest");
  return (h.matrix() * psi.amplitudes()).norm();
}

ClockUniverse::ClockUniverse(Operator h_clock, Operator h_rest, StateVector psi, double omega)
    : h_c_(std::move(h_clock)),
      h_r_(std::move(h_rest)),
      psi_(std::move(psi)),
      omega_(omega),
      h_(clock::total_hamiltonian(h_c_, h_r_)),
      constraint_norm_(0.0) {
  if (!(psi_.partition() == h_.partition())) throw DomainError("state partition differs from clock ⊗ rest");
  if (!h_c_.is_hermitian() || !h_r_.is_hermitian()) throw DomainError("clock and rest Hamiltonians must be Hermitian");
  constraint_norm_ = (h_.matrix() * psi_.amplitudes()).norm();
  if (constraint_norm_ > kConstraintTolerance) {
    throw DomainError(fmt::format("constraint violated: ||H Psi|| = {:.3e}", constraint_norm_));
  }
}

ClockUniverse photon_clock_model(double omega) {
  if (!(omega > 0.0)) throw DomainError(fmt::format("omega must be positive (got {})", omega));
  CMatrix h(2, 2);
  h << 0.0, kI * omega, -kI * omega, 0.0;  // iω(|H⟩⟨V| − |V⟩⟨H|)
  Operator hc(h, HilbertPartition::single(2, "clock"), OperatorKind::hermitian);
  Operator hr(h, HilbertPartition::single(2, "rest"), OperatorKind::hermitian);
  CVector psi = CVector::Zero(4);
  psi[1] = 1.0;   // |H⟩|V⟩
  psi[2] = -1.0;  // |V⟩|H⟩
  auto joint = StateVector::normalized(std::move(psi), HilbertPartition({2, 2}, {"clock", "rest"}));
  return ClockUniverse(std::move(hc), std::move(hr), std::move(joint), omega);
}

StateVector clock_state(const ClockUniverse& u, double t, const std::optional<StateVector>& reference) {
  const auto& cp = u.h_clock().partition();
  const StateVector phi0 = reference ? *reference : StateVector::basis(cp, std::size_t{0});
  if (phi0.dimension() != cp.total_dimension()) throw DomainError("reference clock state has the wrong dimension");
  return StateVector(measurement::propagator(u.h_clock(), t).matrix() * phi0.amplitudes(), cp);
}

ConditionalState conditional_state(const ClockUniverse& u, double t, const std::optional<StateVector>& reference) {
  const StateVector phi = clock_state(u, t, reference);
  const auto dc = static_cast<Eigen::Index>(u.h_clock().dimension());
  const auto dr = static_cast<Eigen::Index>(u.h_rest().dimension());
  // Row-major amplitudes: index = c·d_R + r.
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      u.psi().amplitudes().data(), dc, dr);
  ConditionalState out;
  out.amplitudes = m.transpose() * phi.amplitudes().conjugate();
  out.norm = out.amplitudes.norm();
  if (out.norm < 1e-12) throw DomainError("reference clock state has no overlap with the universe state");
  return out;
}

Operator clock_reading(const ClockUniverse& u, const Operator& outcome, double tau) {
  if (outcome.dimension() != u.h_clock().dimension()) throw DomainError("clock outcome has the wrong dimension");
  const CMatrix v = measurement::propagator(u.h_clock(), tau).matrix();
  CMatrix p = v.adjoint() * outcome.matrix() * v;
  return Operator(0.5 * (p + p.adjoint()), u.h_clock().partition(), OperatorKind::projector);
}

double conditional_probability(const ClockUniverse& u, const Operator& clock_outcome, const Operator& rest_outcome,
                               const std::vector<double>& plate_times) {
  if (plate_times.empty()) throw DomainError("plate_times must be nonempty");
  if (rest_outcome.dimension() != u.h_rest().dimension()) throw DomainError("rest outcome has the wrong dimension");
  const auto& full = u.psi().partition();
  const CMatrix joint = tensor(clock_outcome.relabeled(u.h_clock().partition().labels()),
                               rest_outcome.relabeled(u.h_rest().partition().labels()))
                            .matrix();
  const CMatrix marginal = embed(clock_outcome.relabeled(u.h_clock().partition().labels()), full).matrix();
  double num = 0.0, den = 0.0;
  for (double t : plate_times) {
    const CVector psi_t = measurement::propagator(u.total_hamiltonian(), t).matrix() * u.psi().amplitudes();
    num += psi_t.dot(joint * psi_t).real();
    den += psi_t.dot(marginal * psi_t).real();
  }
  if (den <= 1e-14 * static_cast<double>(plate_times.size())) {
    throw DomainError("clock outcome never occurs (zero denominator)");
  }
  return std::clamp(num / den, 0.0, 1.0);
}

double photon_closed_form(double omega, double tau, int clock_digit) {
  const double phase = clock_digit == 0 ? 0.0 : std::numbers::pi / 2.0;
  const double c = std::cos(omega * tau + phase);
  return c * c;
}

double static_deviation(const Operator& h_total, const StateVector& psi, const std::vector<double>& T_values) {
  if (h_total.dimension() != psi.dimension()) throw DomainError("state and Hamiltonian dimensions differ");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h_total.matrix());
  double worst = 0.0;
  for (double t : T_values) {
    CVector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(cplx(0.0, -es.eigenvalues()[i] * t));
    const CVector evolved = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi.amplitudes()));
    const cplx overlap = psi.amplitudes().dot(evolved);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
    worst = std::max(worst, (evolved - phase * psi.amplitudes()).norm());
  }
  return worst;
}

double super_observer_invariance(const ClockUniverse& u, const std::vector<double>& T_values) {
  return static_deviation(u.total_hamiltonian(), u.psi(), T_values);
}

}  // namespace qfoundry::clock

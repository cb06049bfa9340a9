#include "qfoundry/measurement.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"

namespace qfoundry::measurement {

namespace {

void require_hermitian(const Operator& h) {
  if (h.kind() != OperatorKind::hermitian && h.kind() != OperatorKind::projector) {
    throw DomainError(fmt::format("Hamiltonian must be tagged hermitian (got {})", to_string(h.kind())));
  }
}

void require_projector(const Operator& p) {
  if (p.kind() != OperatorKind::projector) {
    throw DomainError(fmt::format("expected a projector (got {})", to_string(p.kind())));
  }
}

void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError(fmt::format("dimension mismatch: {} vs {}", a, b));
}

}  // namespace

Operator propagator(const Operator& hamiltonian, double t) {
  require_hermitian(hamiltonian);
  if (t == 0.0) return Operator(Operator::identity(hamiltonian.partition()).matrix(), hamiltonian.partition(), OperatorKind::unitary);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hamiltonian.matrix());
  const auto& e = es.eigenvalues();
  CVector phases(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) phases[i] = std::exp(cplx(0.0, -e[i] * t));
  CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return Operator(std::move(u), hamiltonian.partition(), OperatorKind::unitary);
}

StateVector evolve(const StateVector& state, const Operator& hamiltonian, double t) {
  require_same_dimension(state.dimension(), hamiltonian.dimension());
  return apply(propagator(hamiltonian, t), state);
}

double born_probability(const DensityMatrix& rho, const Operator& projector) {
  require_projector(projector);
  require_same_dimension(rho.dimension(), projector.dimension());
  return std::clamp(expectation(projector, rho).real(), 0.0, 1.0);
}

DensityMatrix collapse(const DensityMatrix& rho, const Operator& projector) {
  const double p = born_probability(rho, projector);
  if (p <= 1e-12) throw ImpossibleBranchError(fmt::format("collapse onto an outcome with probability {:.3e}", p));
  const auto& pm = projector.matrix();
  CMatrix out = pm * rho.matrix() * pm / p;
  return DensityMatrix(std::move(out), rho.partition());
}

double history_probability(const DensityMatrix& rho0, const Operator& hamiltonian,
                           const std::vector<ProjectiveEvent>& events) {
  require_hermitian(hamiltonian);
  require_same_dimension(rho0.dimension(), hamiltonian.dimension());
  for (std::size_t k = 0; k < events.size(); ++k) {
    require_projector(events[k].projector);
    require_same_dimension(rho0.dimension(), events[k].projector.dimension());
    if (k > 0 && events[k].time < events[k - 1].time) {
      throw DomainError(fmt::format("event times must be non-decreasing ({} after {})", events[k].time, events[k - 1].time));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hamiltonian.matrix());
  const auto heisenberg = [&](const Operator& p, double t) -> CMatrix {
    CVector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(cplx(0.0, -es.eigenvalues()[i] * t));
    const CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return u.adjoint() * p.matrix() * u;
  };
  const auto n = static_cast<Eigen::Index>(rho0.dimension());
  CMatrix chain = CMatrix::Identity(n, n);  // P_n(t_n) … P_1(t_1)
  for (const auto& ev : events) chain = heisenberg(ev.projector, ev.time) * chain;
  const double p = (chain * rho0.matrix() * chain.adjoint()).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

double zeno_survival(const StateVector& psi0, const Operator& hamiltonian, double t, unsigned long long n) {
  if (n == 0) throw DomainError("number of measurements must be >= 1");
  require_same_dimension(psi0.dimension(), hamiltonian.dimension());
  const auto step = evolve(psi0, hamiltonian, t / static_cast<double>(n));
  const double p = std::norm(psi0.inner(step));
  return std::pow(std::min(p, 1.0), static_cast<double>(n));
}

std::optional<double> zeno_timescale(const StateVector& psi0, const Operator& hamiltonian) {
  require_hermitian(hamiltonian);
  require_same_dimension(psi0.dimension(), hamiltonian.dimension());
  const CVector h_psi = hamiltonian.matrix() * psi0.amplitudes();
  const double mean = psi0.amplitudes().dot(h_psi).real();
  const double variance = h_psi.squaredNorm() - mean * mean;
  if (variance <= 1e-14 * std::max(1.0, h_psi.squaredNorm())) return std::nullopt;
  return 1.0 / std::sqrt(variance);
}

double zeno_timescale_finite_difference(const StateVector& psi0, const Operator& hamiltonian, double dt) {
  const double p = zeno_survival(psi0, hamiltonian, dt, 1);
  const double loss = 1.0 - p;
  if (!(loss > 0.0)) throw DomainError("no survival loss at this interval; state is stationary");
  return dt / std::sqrt(loss);
}

DecoherenceChain DecoherenceChain::with_overlap(cplx alpha, cplx beta, cplx kappa) {
  if (std::abs(kappa) > 1.0 + 1e-12) throw DomainError(fmt::format("environment overlap |kappa| = {} exceeds 1", std::abs(kappa)));
  const auto det = HilbertPartition::single(2, "detector");
  const auto env = HilbertPartition::single(2, "environment");
  const double perp = std::sqrt(std::max(0.0, 1.0 - std::norm(kappa)));
  CVector e_minus(2);
  e_minus << std::conj(kappa), perp;
  return DecoherenceChain{alpha,
                          beta,
                          StateVector::basis(det, 0),
                          StateVector::basis(det, 1),
                          StateVector::basis(env, 0),
                          StateVector::normalized(std::move(e_minus), env)};
}

DecoherenceResult decohere(const DecoherenceChain& chain, const ChainLabels& labels) {
  const double weight = std::norm(chain.alpha) + std::norm(chain.beta);
  if (std::abs(weight - 1.0) > kNormTolerance) {
    throw DomainError(fmt::format("|alpha|^2 + |beta|^2 = {} differs from 1", weight));
  }
  const auto& dp = chain.detector_plus;
  const auto& dm = chain.detector_minus;
  if (dp.dimension() != dm.dimension() || std::abs(dp.inner(dm)) > kNormTolerance) {
    throw DomainError("detector pointer states must be orthonormal");
  }
  if (chain.env_plus.dimension() != chain.env_minus.dimension()) {
    throw DomainError("environment states must share a dimension");
  }

  const auto sys = HilbertPartition::single(2, labels.system);
  const auto rel_det = dp.partition().size() == 1 ? std::vector<std::string>{labels.detector} : dp.partition().labels();
  const auto rel_env =
      chain.env_plus.partition().size() == 1 ? std::vector<std::string>{labels.environment} : chain.env_plus.partition().labels();

  const auto plus = tensor(tensor(StateVector::basis(sys, 0), dp.relabeled(rel_det)), chain.env_plus.relabeled(rel_env));
  const auto minus = tensor(tensor(StateVector::basis(sys, 1), dm.relabeled(rel_det)), chain.env_minus.relabeled(rel_env));
  StateVector joint(chain.alpha * plus.amplitudes() + chain.beta * minus.amplitudes(), plus.partition());

  LabelSet keep{labels.system};
  keep.insert(keep.end(), rel_det.begin(), rel_det.end());
  auto reduced = reduced_density(joint, keep);

  // Coherence between |+,D+⟩ and |−,D−⟩ inside ρ_SD.
  const auto branch_plus = tensor(StateVector::basis(sys, 0), dp.relabeled(rel_det));
  const auto branch_minus = tensor(StateVector::basis(sys, 1), dm.relabeled(rel_det));
  const double coherence =
      std::abs(branch_plus.amplitudes().dot(reduced.matrix() * branch_minus.amplitudes()));

  auto pure = DensityMatrix::pure(joint);
  return DecoherenceResult{std::move(joint), std::move(pure), std::move(reduced), chain.kappa(), coherence};
}

double orch_or_lifetime(double gravitational_self_energy, UnitSystem units, const SiConstants& constants) {
  if (!(gravitational_self_energy > 0.0)) {
    throw DomainError(fmt::format("gravitational self-energy must be positive (got {})", gravitational_self_energy));
  }
  const double hbar = units == UnitSystem::si ? constants.hbar : 1.0;
  return hbar / gravitational_self_energy;
}

}  // namespace qfoundry::measurement

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfoundry/constants.hpp"
#include "qfoundry/core/state.hpp"

namespace qfoundry::measurement {

/// A projector applied at a given time (Heisenberg picture with respect to the history's Hamiltonian).
struct ProjectiveEvent {
  Operator projector;
  double time = 0.0;
};

/// exp(−iHt) from the Hermitian eigendecomposition of H. Throws DomainError unless H is tagged hermitian.
Operator propagator(const Operator& hamiltonian, double t);

/// Process II: |ψ(t)⟩ = exp(−iHt)|ψ⟩.
StateVector evolve(const StateVector& state, const Operator& hamiltonian, double t);

/// Born rule tr(Pρ), clamped to [0, 1].
double born_probability(const DensityMatrix& rho, const Operator& projector);

/// Process I: PρP / tr(Pρ). Throws ImpossibleBranchError when tr(Pρ) <= 1e-12.
DensityMatrix collapse(const DensityMatrix& rho, const Operator& projector);

/// Joint probability tr(P_n(t_n)…P_1(t_1) ρ₀ P_1(t_1)…P_n(t_n)) with P(t) = U(t)† P U(t).
/// Throws DomainError if event times decrease.
double history_probability(const DensityMatrix& rho0, const Operator& hamiltonian,
                           const std::vector<ProjectiveEvent>& events);

/// [|⟨ψ₀|exp(−iHt/N)|ψ₀⟩|²]^N: survival under N equally spaced projective checks over [0, t].
double zeno_survival(const StateVector& psi0, const Operator& hamiltonian, double t, unsigned long long n);

/// Zeno time τ_Z with 1/τ_Z² = ⟨H²⟩ − ⟨H⟩². Returns std::nullopt (infinite timescale) when ψ₀ is an eigenstate.
std::optional<double> zeno_timescale(const StateVector& psi0, const Operator& hamiltonian);

/// τ_Z estimated from the exact single-interval survival p(δt) via τ² = δt² / (1 − p).
double zeno_timescale_finite_difference(const StateVector& psi0, const Operator& hamiltonian, double dt = 1e-4);

/// System (qubit, basis |+⟩,|−⟩) + detector + environment: α|+⟩|D+⟩|E+⟩ + β|−⟩|D−⟩|E−⟩.
struct DecoherenceChain {
  cplx alpha;
  cplx beta;
  StateVector detector_plus;
  StateVector detector_minus;
  StateVector env_plus;
  StateVector env_minus;

  /// Two-level detector with orthonormal pointer states and a two-level environment whose states have
  /// overlap ⟨E−|E+⟩ = kappa (|kappa| <= 1).
  static DecoherenceChain with_overlap(cplx alpha, cplx beta, cplx kappa);

  /// ⟨E−|E+⟩.
  cplx kappa() const { return env_minus.inner(env_plus); }
};

struct DecoherenceResult {
  StateVector joint_state;    // |Ψ⟩ over (system, detector, environment)
  DensityMatrix joint_pure;   // ρ_e = |Ψ⟩⟨Ψ|
  DensityMatrix reduced;      // ρ_SD = Tr_E ρ_e
  cplx kappa;
  /// |⟨+,D+|ρ_SD|−,D−⟩|: surviving coherence between the two pointer branches.
  double coherence = 0.0;
};

struct ChainLabels {
  std::string system = "system";
  std::string detector = "detector";
  std::string environment = "environment";
};

/// Throws DomainError when |α|²+|β|² != 1 or the detector states are not orthonormal (1e-10).
DecoherenceResult decohere(const DecoherenceChain& chain, const ChainLabels& labels = {});

/// Orch OR collapse time τ = ħ/E_G (natural units: 1/E_G). Throws DomainError for E_G <= 0.
double orch_or_lifetime(double gravitational_self_energy, UnitSystem units = UnitSystem::natural,
                        const SiConstants& constants = SiConstants{});

}  // namespace qfoundry::measurement

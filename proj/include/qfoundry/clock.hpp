#pragma once

#include <optional>
#include <vector>

#include "qfoundry/core/state.hpp"

namespace qfoundry::clock {

inline constexpr double kConstraintTolerance = 1e-10;

/// Static universe split into a clock ("clock") and the rest ("rest"), with
/// (H_C ⊗ 1 + 1 ⊗ H_R)|Ψ⟩ = 0 checked at construction.
class ClockUniverse {
 public:
  /// Throws DomainError if the constraint norm exceeds kConstraintTolerance or the factors do not match.
  ClockUniverse(Operator h_clock, Operator h_rest, StateVector psi, double omega);

  const Operator& h_clock() const noexcept { return h_c_; }
  const Operator& h_rest() const noexcept { return h_r_; }
  const StateVector& psi() const noexcept { return psi_; }
  double omega() const noexcept { return omega_; }
  /// H_C ⊗ 1 + 1 ⊗ H_R over the joint partition of Ψ.
  const Operator& total_hamiltonian() const noexcept { return h_; }
  double constraint_norm() const noexcept { return constraint_norm_; }

 private:
  Operator h_c_, h_r_;
  StateVector psi_;
  double omega_;
  Operator h_;
  double constraint_norm_;
};

/// H_C ⊗ 1 + 1 ⊗ H_R as one operator over clock ⊗ rest.
Operator total_hamiltonian(const Operator& h_clock, const Operator& h_rest);

/// ‖(H_C ⊗ 1 + 1 ⊗ H_R)|Ψ⟩‖.
double constraint_norm(const Operator& h_clock, const Operator& h_rest, const StateVector& psi);

/// Two photons with polarizations {H = 0, V = 1}: Ψ = (|H⟩|V⟩ − |V⟩|H⟩)/√2 and
/// H_C = H_R = iω(|H⟩⟨V| − |V⟩⟨H|). Throws DomainError unless omega > 0.
ClockUniverse photon_clock_model(double omega);

struct ConditionalState {
  CVector amplitudes;  // ⟨Φ_C(t)|Ψ⟩ over the rest, unnormalized
  double norm = 0.0;
};

/// Clock orbit |Φ_C(t)⟩ = exp(−iH_C t)|Φ_C(0)⟩.
StateVector clock_state(const ClockUniverse& u, double t, const std::optional<StateVector>& reference = std::nullopt);

/// ⟨Φ_C(t)|Ψ⟩ with |Φ_C(0)⟩ = `reference` (default: the first clock basis state). Throws DomainError when
/// the reference has no overlap with Ψ (norm below 1e-12).
ConditionalState conditional_state(const ClockUniverse& u, double t,
                                   const std::optional<StateVector>& reference = std::nullopt);

/// Projector on the clock reading `outcome` after the clock has advanced by tau:
/// e^{iH_C τ} P e^{−iH_C τ}.
Operator clock_reading(const ClockUniverse& u, const Operator& outcome, double tau);

/// Σ_T Tr[U(T)† (P_clock ⊗ P_rest) U(T) ρ] / Σ_T Tr[U(T)† (P_clock ⊗ 1) U(T) ρ] over the plate times,
/// U(T) = exp(−iHT), ρ = |Ψ⟩⟨Ψ|. Throws DomainError for an empty list or a zero denominator.
double conditional_probability(const ClockUniverse& u, const Operator& clock_outcome, const Operator& rest_outcome,
                               const std::vector<double>& plate_times);

/// Closed form for the photon model: P(V on rest | clock reads x after τ) = cos²(ωτ + φ_x), φ_H = 0, φ_V = π/2.
double photon_closed_form(double omega, double tau, int clock_digit);

/// max over T of min_θ ‖exp(−iHT)|Ψ⟩ − e^{iθ}|Ψ⟩‖ for an arbitrary (possibly unconstrained) state.
double static_deviation(const Operator& h_total, const StateVector& psi, const std::vector<double>& T_values);

double super_observer_invariance(const ClockUniverse& u, const std::vector<double>& T_values);

}  // namespace qfoundry::clock

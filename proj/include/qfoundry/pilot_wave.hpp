#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qfoundry/core/types.hpp"

namespace qfoundry::pilot_wave {

/// Uniform grid x_i = x_min + i·dx, i = 0..points−1, dx = (x_max − x_min)/(points − 1). Hard walls beyond the ends.
struct Grid1D {
  double x_min = -40.0;
  double x_max = 40.0;
  std::size_t points = 2048;

  /// Throws DomainError unless points >= 64 and x_max > x_min.
  void validate() const;
  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(points - 1); }
  double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * dx(); }
  RVector coordinates() const;
};

inline constexpr double kNormDriftTolerance = 1e-8;
inline constexpr double kNodeThreshold = 1e-12;  // relative to the peak of |ψ|²

/// ψ on the grid (discrete norm Σ|ψ|²dx = 1 within 1e-8), with time, mass, potential and ħ.
struct WaveField {
  Grid1D grid;
  CVector psi;
  double time = 0.0;
  double mass = 1.0;
  RVector potential;
  double hbar = 1.0;

  /// Throws DomainError on size mismatch, non-positive mass or a norm off by more than 1e-8.
  void validate() const;
  double norm() const;
  RVector density() const;
};

RVector free_potential(const Grid1D& grid);
RVector harmonic_potential(const Grid1D& grid, double mass, double omega);

/// Discretely normalized e^{ik₀x} exp(−(x−x₀)²/4σ₀²).
WaveField gaussian_packet(const Grid1D& grid, double x0, double sigma0, double k0, double mass, RVector potential,
                          double hbar = 1.0);

/// Ground state of the finite-difference Hamiltonian with the harmonic potential (inverse iteration).
WaveField harmonic_ground_state(const Grid1D& grid, double mass, double omega, double hbar = 1.0);

/// Crank-Nicolson propagator (1 + iHdt/2ħ)ψ' = (1 − iHdt/2ħ)ψ with the three-point Laplacian and hard walls.
class CrankNicolson {
 public:
  CrankNicolson(const Grid1D& grid, const RVector& potential, double mass, double dt, double hbar = 1.0);
  void step(CVector& psi) const;
  double dt() const noexcept { return dt_; }

 private:
  double dt_;
  CVector denom_, cprime_;  // Thomas factorization of the left-hand side
  CVector rhs_diag_;
  cplx lhs_off_, rhs_off_;
};

/// Discrete ⟨H⟩ with the same Laplacian as the propagator.
double energy(const WaveField& field);

/// Probability in the first and last 1% of cells.
double edge_probability(const WaveField& field);

inline constexpr double kEdgeTolerance = 1e-6;

/// Advances `steps` Crank-Nicolson steps. dt = 0 or steps = 0 returns the field unchanged. Throws DomainError
/// if the edge probability exceeds 1e-6 afterwards (the packet has reached the walls).
WaveField schrodinger_step(const WaveField& field, double dt, std::size_t steps);

/// Largest dt the explicit stability budget dx²·m/(2ħ) allows; the implicit scheme does not need it.
double explicit_dt_budget(const WaveField& field);

struct GridField {
  RVector values;
  std::vector<bool> masked;  // |ψ|² below kNodeThreshold·peak
};

/// v = (ħ/m) Im(ψ* ∂ψ)/|ψ|² with fourth-order central differences. Masked cells take the value of the
/// nearest unmasked cell.
GridField bohm_velocity(const WaveField& field);

/// Phase S of ψ unwrapped along the grid outward from the density peak (units of ħ).
RVector unwrapped_phase(const WaveField& field);

/// ∂S/∂x / m from the unwrapped phase (fourth-order central differences).
GridField phase_gradient_velocity(const WaveField& field);

/// U = −(ħ²/2m) R''/R with R = |ψ| and the three-point second difference; masked cells hold 0.
GridField quantum_potential(const WaveField& field);

struct HjResidual {
  double max_residual = 0.0;
  std::size_t points = 0;  // bulk cells used (|ψ|² >= 1% of peak in both snapshots)
};

/// Max over the bulk of |∂S/∂t + (∂S/∂x)²/2m + V + U|, with ∂S/∂t = ħ arg(ψ₂ψ₁*)/(t₂ − t₁) and the
/// right-hand side averaged over both snapshots.
HjResidual hamilton_jacobi_residual(const WaveField& before, const WaveField& after);

/// Max over the bulk of |(ρ₂ − ρ₁)/dt + δJ/δx| with the current of the Crank-Nicolson midpoint state,
/// J_{i+½} = (ħ/m) Im(ψ̄_i ψ_{i+1})/dx.
double continuity_residual(const WaveField& before, const WaveField& after);

struct TrajectoryEnsemble {
  std::vector<double> initial;               // Q_k(0), in sampling order
  std::vector<double> final_positions;       // Q_k(t_end)
  std::vector<double> record_times;
  std::vector<std::vector<double>> records;  // positions of the first `recorded` trajectories at record_times
  std::uint64_t seed = 0;
  bool order_preserved = true;               // Q_j(0) < Q_k(0) ⇒ Q_j(t) < Q_k(t)
};

struct TrajectoryRun {
  TrajectoryEnsemble ensemble;
  WaveField final_field;
  double ks_distance = 0.0;    // sup |F_emp(Q(t)) − ∫|ψ(t)|²|
  double mean_position = 0.0;  // ensemble mean of Q(t)
  double expected_x = 0.0;     // ⟨x̂⟩ at t_end
  double max_norm_drift = 0.0;
};

/// Samples n_traj initial positions from |ψ(0)|² by inverse CDF (seed-determined uniforms) and integrates
/// dQ/dt = v(Q, t) by RK4 with step 2dt, in lockstep with Crank-Nicolson steps of dt, until t_end.
/// Velocities are linearly interpolated and capped at dx/(2dt). Throws DomainError if a trajectory leaves
/// the grid. `recorded` trajectories are stored every `record_every` RK4 steps.
TrajectoryRun run_trajectories(const WaveField& initial, double dt, double t_end, std::size_t n_traj,
                               std::uint64_t seed, std::size_t recorded = 0, std::size_t record_every = 1);

/// Inverse-CDF sample of |ψ|² for the given uniforms in (0, 1).
std::vector<double> sample_positions(const WaveField& field, const std::vector<double>& uniforms);

/// Kolmogorov-Smirnov distance between the empirical law of `positions` and |ψ|² (piecewise-linear CDF).
double ks_distance(const WaveField& field, std::vector<double> positions);

/// ⟨x̂⟩ and the packet width √⟨(x − ⟨x⟩)²⟩ under |ψ|².
double mean_x(const WaveField& field);
double width(const WaveField& field);

/// σ₀ √(1 + (ħt/2mσ₀²)²).
double free_width(double sigma0, double mass, double t, double hbar = 1.0);

}  // namespace qfoundry::pilot_wave

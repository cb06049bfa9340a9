#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfoundry/constants.hpp"
#include "qfoundry/core/state.hpp"

namespace qfoundry::blackhole {

/// Mass M and Newton constant G. In natural units ħ = c = k_B = 1 and G may be kept; in SI, M is in kg and
/// G, ħ, c, k_B come from `constants` (the `G` field is ignored).
struct SchwarzschildParams {
  double M = 1.0;
  double G = 1.0;
  UnitSystem units = UnitSystem::natural;
  SiConstants constants{};

  /// Effective G (SI: constants.G). Validates M > 0, G > 0.
  double newton() const;
};

struct ThermoRecord {
  double r_s = 0.0;            // natural: 2GM; SI: 2GM/c² [m]
  double area = 0.0;           // 4π r_s²
  double T_H = 0.0;            // natural: 1/(8πGM); SI: ħc³/(8πGMk_B) [K]
  double S_BH = 0.0;           // A/4G in units of k_B (SI: A c³/(4Għ))
  double S_mass_form = 0.0;    // 4πGM² (SI: 4πGM²/(ħc))
  double T_unruh_local = 0.0;  // 1/(2π), the local Rindler temperature in proper units
  double T_redshift = 0.0;     // T_unruh_local redshifted by 1/(4GM) (SI: times ħc³/k_B)
  /// (dS/dM)·T_H·(c²/k_B)⁻¹ from a central difference at δ/M = 1e-6; 1 when dS = dE/T.
  double first_law_ratio = 0.0;
};

ThermoRecord schwarzschild_thermo(const SchwarzschildParams& p);

/// (1 − r_s/r)(r_s/r³ + l(l+1)/r²). Throws DomainError for r <= r_s or l < 0.
double effective_potential(double r, int l, const SchwarzschildParams& p);

struct BarrierPeak {
  double r_peak = 0.0;
  double V_max = 0.0;
};

/// Maximum of the effective potential on (r_s, 20 r_s) by Brent's method.
BarrierPeak barrier_max(int l, const SchwarzschildParams& p);

struct BarrierFit {
  std::vector<BarrierPeak> peaks;  // l = 0..l_max
  double slope = 0.0;              // V_max ≈ slope·(l² + 1) + intercept
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_over_TH2 = 0.0;     // slope / T_H²
};

BarrierFit barrier_scaling(int l_max, const SchwarzschildParams& p);

struct UnruhMode {
  double omega = 1.0;
  double accel = 1.0;
  int n_max = 60;
};

struct UnruhState {
  StateVector state;  // Σ e^{−nπω/a}|n⟩_R|n⟩_L (normalized, truncated), labels "R", "L"
  DensityMatrix rho_R;
  std::vector<double> occupation;      // diagonal of ρ_R
  double ratio = 0.0;                  // e^{−2πω/a}
  double mean_occupation = 0.0;        // Σ n p_n
  double bose_einstein = 0.0;          // 1/(e^{2πω/a} − 1)
  double entropy_R = 0.0;
  double entropy_L = 0.0;
  double thermal_entropy = 0.0;        // −Σ p_n ln p_n of the untruncated geometric law
  double truncation_error = 0.0;       // e^{−2(n_max+1)πω/a}, the weight beyond the cutoff
  std::optional<std::string> warning;  // set when truncation_error >= 1e-12
};

/// Throws DomainError unless omega > 0, accel > 0, n_max >= 10.
UnruhState unruh_state(const UnruhMode& m);

struct PagePoint {
  std::size_t m = 0;
  double mean_entropy = 0.0;  // S̄(m), nats
  double std_error = 0.0;
  double boltzmann = 0.0;     // min(m, n − m)·ln 2
  double information = 0.0;   // boltzmann − mean_entropy
};

/// Haar-average entanglement entropy of the first m of n qubits, m = 0..n. Requires 2 <= n <= 14.
std::vector<PagePoint> page_curve_mc(unsigned n_qubits, std::uint64_t samples, std::uint64_t seed);

/// Exact Haar average of the entanglement entropy of a d_A-dimensional factor of a d_A·d_B pure state (d_A <= d_B):
/// Σ_{k=d_B+1}^{d_A d_B} 1/k − (d_A − 1)/(2 d_B). Arguments are swapped when d_A > d_B.
double page_mean_entropy(std::uint64_t d_a, std::uint64_t d_b);

struct ThermofieldDouble {
  StateVector state;  // labels "A", "B"
  DensityMatrix rho_A;
  std::vector<double> gibbs;  // e^{−βE_i}/Z
  double entropy_A = 0.0;
};

/// Z^{−1/2} Σ e^{−βE_i/2}|E_i⟩_A|E_i⟩_B. Throws DomainError on an empty spectrum or beta <= 0.
ThermofieldDouble thermofield_double(const std::vector<double>& spectrum, double beta);

struct AdsParams {
  double R = 1.0;
  double G3 = 1.0;
  double a_cut = 0.01;
  double l = 1.0;
};

struct RtRecord {
  double L_numeric = 0.0;   // quadrature of R/sin s over [2a/l, π − 2a/l]
  double L_analytic = 0.0;  // 2R ln(l/a)
  double L_exact = 0.0;     // 2R ln cot(a/l), the closed form of the same integral
  double relative_error = 0.0;  // |L_numeric − L_analytic| / L_analytic
  double S_A = 0.0;         // L_analytic / 4G
  double S_A_numeric = 0.0; // L_numeric / 4G
  double c = 0.0;           // 3R / 2G
  double cft_entropy = 0.0; // (c/3) ln(l/a)
};

/// Throws DomainError unless all parameters are positive and a_cut <= l/10.
RtRecord rt_entropy(const AdsParams& p);

/// Δ = d/2 + √(d²/4 + m²L²). Throws DomainError below the Breitenlohner-Freedman bound −d²/4.
double scaling_dimension(int d, double m2L2);

}  // namespace qfoundry::blackhole

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qfoundry/core/types.hpp"

namespace qfoundry::gaussian {

/// H = ½ Σ π_A² + ½ Σ φ_A V_AB φ_B. W = V^{1/2} (positive branch); W⁻¹ is cached alongside.
struct GaussianModel {
  RMatrix V;
  RMatrix W;
  RMatrix W_inv;

  std::size_t size() const noexcept { return static_cast<std::size_t>(V.rows()); }
};

/// Throws DomainError if V is not square/symmetric, SpectrumError if an eigenvalue is not positive.
GaussianModel ground_state_w(const RMatrix& V);

/// Traced (inaccessible) oscillators, 0-based. Must be a nonempty proper subset of the model's oscillators.
struct TracedRegion {
  std::vector<std::size_t> indices;
};

/// Sorted complement of the region; validates it against a model of `n` oscillators.
std::vector<std::size_t> kept_indices(const TracedRegion& region, std::size_t n);

/// Entropy of the kept block from its symplectic eigenvalues ν = √eig(X P), X = ½(W⁻¹)_kept, P = ½W_kept:
/// S = Σ (ν+½)ln(ν+½) − (ν−½)ln(ν−½). Throws SpectrumError if some ν falls below ½ beyond 1e-10.
double bombelli_entropy(const GaussianModel& model, const TracedRegion& region);

/// Same entropy from Λ_ij = −Σ_α (W⁻¹)_iα W_αj (i, j kept, α traced) and
/// S = Σ [ln(½√λ) + √(1+λ) ln(1/√λ + √(1+1/λ))]. Eigenvalues below 1e-12 are dropped.
double bombelli_literal_entropy(const GaussianModel& model, const TracedRegion& region);

/// Eigenvalues of Λ (ascending, real parts).
std::vector<double> bombelli_lambda(const GaussianModel& model, const TracedRegion& region);

struct BombelliComparison {
  double symplectic = 0.0;
  double literal = 0.0;
  double difference = 0.0;  // |symplectic − literal|
  std::vector<double> lambda;
};

BombelliComparison compare_bombelli_paths(const GaussianModel& model, const TracedRegion& region);

struct FockOracleResult {
  double entropy = 0.0;
  int n_max = 0;               // truncation at which convergence was declared
  std::size_t basis_size = 0;  // number of Fock states at that truncation
  double ground_energy = 0.0;
  double last_change = 0.0;    // |S(n_max) − S(n_max − 10)|
};

inline constexpr int kFockCap = 80;
inline constexpr double kFockTolerance = 1e-8;

/// Brute-force entropy: H in the Fock basis of local oscillators ω_A = √V_AA truncated to Σ n_A <= n_max,
/// ground state by Lanczos, numerical partial trace, von Neumann entropy. n_max is raised by 10 until S
/// changes by less than 1e-8; ConvergenceError past kFockCap. Requires at most 3 oscillators and n_max >= 20.
FockOracleResult fock_oracle(const GaussianModel& model, const TracedRegion& region, int n_max);

double fock_oracle_entropy(const GaussianModel& model, const TracedRegion& region, int n_max);

struct OracleCase {
  std::string label;
  RMatrix V;
  TracedRegion region;
};

/// Twenty validation models: ten two-oscillator pairs V = [[1, ε], [ε, 1]] with ε in [0.1, 0.9] and ten
/// three-site open chains with ε in [0.1, 0.65] (positive definite needs ε < 1/√2).
std::vector<OracleCase> oracle_grid();

enum class ChainBoundary { periodic, open };

/// Nearest-neighbour chain: V = (m² + 2)δ_ij − δ_{|i−j|,1}, with the ring closed for periodic boundaries.
RMatrix chain_potential(double mass, std::size_t sites, ChainBoundary boundary = ChainBoundary::periodic);

struct ChainPoint {
  std::size_t ell = 0;
  double entropy = 0.0;
};

/// Entropy of the contiguous block of sites [0, ℓ) for each ℓ. ℓ = 0 gives 0; ℓ >= sites throws DomainError.
std::vector<ChainPoint> chain_scan(double mass, std::size_t sites, const std::vector<std::size_t>& region_sizes,
                                   ChainBoundary boundary = ChainBoundary::periodic);

/// Entropy of an arbitrary kept set of a model (empty or full set gives 0).
double kept_entropy(const GaussianModel& model, const std::vector<std::size_t>& kept);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Least squares S = slope·ln ℓ + intercept over points with ℓ in [ell_min, ell_max].
LogFit fit_log_slope(const std::vector<ChainPoint>& curve, std::size_t ell_min, std::size_t ell_max);

}  // namespace qfoundry::gaussian

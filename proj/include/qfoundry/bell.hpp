#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "qfoundry/core/random.hpp"
#include "qfoundry/core/state.hpp"

namespace qfoundry::bell {

/// Unit vector in R³ (measurement axis).
class Direction {
 public:
  /// Throws DomainError unless |v| = 1 within 1e-12.
  explicit Direction(const Eigen::Vector3d& v);
  static Direction normalized(const Eigen::Vector3d& v);
  /// Polar angle theta from +z, azimuth phi from +x (radians).
  static Direction spherical(double theta, double phi);
  /// Direction in the x-z plane at angle theta from +z.
  static Direction in_plane(double theta) { return spherical(theta, 0.0); }

  const Eigen::Vector3d& vector() const noexcept { return v_; }
  double dot(const Direction& other) const noexcept { return v_.dot(other.v_); }

 private:
  Eigen::Vector3d v_;
};

using Correlator = std::function<double(const Direction&, const Direction&)>;

/// σ·a as a 2×2 Hermitian operator on a qubit labelled `label`.
Operator spin_operator(const Direction& a, const std::string& label);

/// (|01⟩ − |10⟩)/√2 over qubits "A", "B".
StateVector singlet_state();

/// ⟨(σ·a)⊗(σ·b)⟩ in the singlet, from the spin operators alone.
double singlet_correlation_operator(const Direction& a, const Direction& b);

/// P(a,b) for the singlet. The operator route is cross-checked against −a·b; a disagreement beyond
/// 1e-10 throws CrossCheckError.
double singlet_correlation(const Direction& a, const Direction& b);

struct BellCheck {
  double lhs = 0.0;  // |P(a,b) − P(a,c)|
  double rhs = 0.0;  // 1 + P(b,c)
  bool violated = false;
};

inline constexpr double kBellTolerance = 1e-12;

/// Evaluates |P(a,b) − P(a,c)| <= 1 + P(b,c). Throws DomainError if the correlator leaves [−1, 1].
BellCheck bell_check(const Direction& a, const Direction& b, const Direction& c, const Correlator& correlator);

/// Deterministic local-hidden-variable model: side A answers f(a, λ), side B answers g(b, λ) = −f(b, λ).
struct LhvModel {
  std::string name;
  std::function<int(const Direction&, const Eigen::Vector3d&)> response;
  std::function<Eigen::Vector3d(const CounterRng&, std::uint64_t)> sampler;

  int response_a(const Direction& a, const Eigen::Vector3d& lambda) const { return response(a, lambda); }
  int response_b(const Direction& b, const Eigen::Vector3d& lambda) const { return -response(b, lambda); }

  /// f(a, λ) = sign(a·λ), λ uniform on the unit sphere.
  static LhvModel sign_model();
  /// A randomized deterministic rule (rotated, thresholded or folded sign responses) keyed on `rule_seed`.
  static LhvModel randomized(std::uint64_t rule_seed);
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo mean of f(a,λ)·g(b,λ) with its standard error; a pure function of (seed, samples).
Estimate lhv_correlation(const LhvModel& model, const Direction& a, const Direction& b, std::uint64_t samples,
                         std::uint64_t seed);

/// Closed-form correlator of the sign model: −1 + 2θ/π for angle θ between a and b.
double sign_model_correlation(const Direction& a, const Direction& b);

struct LhvBellCheck {
  BellCheck check;
  Estimate p_ab, p_ac, p_bc;
  double sigma = 0.0;  // combined standard error of lhs − rhs
  /// lhs − rhs > 3σ.
  bool violated_beyond_3sigma = false;
};

/// Bell check with all three correlators estimated on the same λ samples.
LhvBellCheck bell_check_lhv(const LhvModel& model, const Direction& a, const Direction& b, const Direction& c,
                            std::uint64_t samples, std::uint64_t seed);

/// Region counts N₁…N₈ of a three-set Venn diagram (index 0 holds N₁).
struct VennCounts {
  std::array<std::uint64_t, 8> n{};
};

struct VennResult {
  std::uint64_t n1 = 0;  // N₁ + N₂
  std::uint64_t n2 = 0;  // N₇ + N₄
  std::uint64_t n3 = 0;  // N₁ + N₄
  bool holds = true;
  std::uint64_t slack = 0;  // n1 + n2 − n3 = N₂ + N₇
};

VennResult venn_inequality(const VennCounts& counts);

/// (|000⟩ + |111⟩)/√2 over qubits "q0", "q1", "q2".
StateVector ghz_state();

struct GhzReduction {
  DensityMatrix rho;
  double entropy = 0.0;
  /// Smallest eigenvalue of the partial transpose (two-qubit case; 0 otherwise).
  double ppt_min_eigenvalue = 0.0;
  /// PPT criterion (exact at 2⊗2).
  bool separable = false;
  bool maximally_mixed = false;
};

/// Keep 1 → third qubit; keep 2 → first two qubits. Throws DomainError for other values.
GhzReduction ghz_reductions(int n_keep);

}  // namespace qfoundry::bell

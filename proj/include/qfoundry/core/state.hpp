#pragma once

#include <vector>

#include "qfoundry/core/partition.hpp"
#include "qfoundry/core/types.hpp"

namespace qfoundry {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPurityTolerance = 1e-8;

/// Normalized pure state over a factorized Hilbert space.
class StateVector {
 public:
  /// Throws DomainError unless the length matches the partition and the norm is 1 within kNormTolerance.
  StateVector(CVector amplitudes, HilbertPartition partition);

  /// Rescales to unit norm; throws DomainError for a (numerically) zero vector.
  static StateVector normalized(CVector amplitudes, HilbertPartition partition);
  static StateVector basis(HilbertPartition partition, std::size_t index);
  /// Product of basis states, one digit per factor.
  static StateVector basis(HilbertPartition partition, const std::vector<std::size_t>& digits);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  const HilbertPartition& partition() const noexcept { return partition_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  /// ⟨this|other⟩.
  cplx inner(const StateVector& other) const;
  StateVector relabeled(std::vector<std::string> labels) const;

 private:
  CVector amplitudes_;
  HilbertPartition partition_;
};

/// Hermitian, positive, unit-trace operator over a factorized Hilbert space.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalues >= -1e-10.
  DensityMatrix(CMatrix matrix, HilbertPartition partition);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(HilbertPartition partition);
  /// Diagonal matrix from a probability vector.
  static DensityMatrix diagonal(const std::vector<double>& probabilities, HilbertPartition partition);

  const CMatrix& matrix() const noexcept { return matrix_; }
  const HilbertPartition& partition() const noexcept { return partition_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// tr ρ².
  double purity() const;
  bool is_pure() const { return std::abs(purity() - 1.0) <= kPurityTolerance; }
  /// Ascending eigenvalues with values in [-1e-10, 0) clamped to 0.
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  DensityMatrix relabeled(std::vector<std::string> labels) const;

 private:
  CMatrix matrix_;
  HilbertPartition partition_;
  std::vector<double> eigenvalues_;
};

enum class OperatorKind { hermitian, unitary, projector, general };

const char* to_string(OperatorKind kind) noexcept;

/// Linear operator on a factorized space, tagged with the structural property it is validated against.
class Operator {
 public:
  Operator(CMatrix matrix, HilbertPartition partition, OperatorKind kind = OperatorKind::general);

  static Operator identity(HilbertPartition partition);
  /// |ψ⟩⟨ψ|.
  static Operator projector_onto(const StateVector& psi);
  /// Orthogonal projector onto the span of the given (not necessarily orthogonal) states.
  static Operator projector_onto_span(const std::vector<StateVector>& states);

  const CMatrix& matrix() const noexcept { return matrix_; }
  const HilbertPartition& partition() const noexcept { return partition_; }
  OperatorKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  bool is_hermitian(double tol = kHermitianTolerance) const;
  Operator adjoint() const;
  Operator relabeled(std::vector<std::string> labels) const;

 private:
  CMatrix matrix_;
  HilbertPartition partition_;
  OperatorKind kind_;
};

}  // namespace qfoundry

#include "qfoundry/core/state.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qfoundry/error.hpp"

namespace qfoundry {

namespace {

void require_square(const CMatrix& m, const HilbertPartition& p, const char* what) {
  const auto n = static_cast<Eigen::Index>(p.total_dimension());
  if (m.rows() != n || m.cols() != n) {
    throw DomainError(fmt::format("{} is {}x{} but partition has dimension {}", what, m.rows(), m.cols(), n));
  }
}

double hermiticity_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CVector amplitudes, HilbertPartition partition)
    : amplitudes_(std::move(amplitudes)), partition_(std::move(partition)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != partition_.total_dimension()) {
    throw DomainError(fmt::format("state has {} amplitudes but partition has dimension {}", amplitudes_.size(),
                                  partition_.total_dimension()));
  }
  const double n2 = amplitudes_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw DomainError(fmt::format("state vector squared norm {:.3e} differs from 1", n2));
  }
}

StateVector StateVector::normalized(CVector amplitudes, HilbertPartition partition) {
  const double n = amplitudes.norm();
  if (!(n > 1e-300)) throw DomainError("cannot normalize a zero vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes), std::move(partition));
}

StateVector StateVector::basis(HilbertPartition partition, std::size_t index) {
  if (index >= partition.total_dimension()) throw DomainError(fmt::format("basis index {} out of range", index));
  CVector v = CVector::Zero(static_cast<Eigen::Index>(partition.total_dimension()));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v), std::move(partition));
}

StateVector StateVector::basis(HilbertPartition partition, const std::vector<std::size_t>& digits) {
  if (digits.size() != partition.size()) throw DomainError("basis digit count does not match factor count");
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= partition.dims()[k]) throw DomainError("basis digit out of range");
  }
  const auto index = partition.flatten(digits);
  return basis(std::move(partition), index);
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.dimension() != dimension()) throw DomainError("inner product of states with different dimensions");
  return amplitudes_.dot(other.amplitudes_);
}

StateVector StateVector::relabeled(std::vector<std::string> labels) const {
  return StateVector(amplitudes_, partition_.relabeled(std::move(labels)));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix matrix, HilbertPartition partition)
    : matrix_(std::move(matrix)), partition_(std::move(partition)) {
  require_square(matrix_, partition_, "density matrix");
  const double defect = hermiticity_defect(matrix_);
  if (defect > kHermitianTolerance) {
    throw DomainError(fmt::format("density matrix is not Hermitian (defect {:.3e})", defect));
  }
  const cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    throw DomainError(fmt::format("density matrix trace {:.12f}{:+.3e}i differs from 1", tr.real(), tr.imag()));
  }
  // Symmetrize away the sub-tolerance anti-Hermitian part before diagonalizing.
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  eigenvalues_.resize(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()[i];
    if (ev < -kNormTolerance) {
      std::vector<double> spectrum(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
      throw SpectrumError(fmt::format("density matrix has negative eigenvalue {:.3e}", ev), std::move(spectrum));
    }
    eigenvalues_[static_cast<std::size_t>(i)] = std::max(ev, 0.0);
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.partition());
}

DensityMatrix DensityMatrix::maximally_mixed(HilbertPartition partition) {
  const auto n = static_cast<Eigen::Index>(partition.total_dimension());
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n), std::move(partition));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probabilities, HilbertPartition partition) {
  const auto n = static_cast<Eigen::Index>(partition.total_dimension());
  if (static_cast<Eigen::Index>(probabilities.size()) != n) throw DomainError("probability vector length mismatch");
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m), std::move(partition));
}

double DensityMatrix::purity() const {
  // tr ρ² = Σ|ρ_ij|² for Hermitian ρ.
  return matrix_.squaredNorm();
}

DensityMatrix DensityMatrix::relabeled(std::vector<std::string> labels) const {
  return DensityMatrix(matrix_, partition_.relabeled(std::move(labels)));
}

// ---------------------------------------------------------------------------
// Operator

const char* to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::hermitian: return "hermitian";
    case OperatorKind::unitary: return "unitary";
    case OperatorKind::projector: return "projector";
    case OperatorKind::general: return "general";
  }
  return "unknown";
}

Operator::Operator(CMatrix matrix, HilbertPartition partition, OperatorKind kind)
    : matrix_(std::move(matrix)), partition_(std::move(partition)), kind_(kind) {
  require_square(matrix_, partition_, "operator");
  const auto n = matrix_.rows();
  switch (kind_) {
    case OperatorKind::hermitian: {
      const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
      if (hermiticity_defect(matrix_) > kHermitianTolerance * scale) {
        throw DomainError("operator tagged hermitian is not Hermitian");
      }
      break;
    }
    case OperatorKind::unitary: {
      const double defect = (matrix_.adjoint() * matrix_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
      if (defect > kHermitianTolerance) throw DomainError(fmt::format("operator is not unitary (defect {:.3e})", defect));
      break;
    }
    case OperatorKind::projector: {
      const double herm = hermiticity_defect(matrix_);
      const double idem = n == 0 ? 0.0 : (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff();
      if (herm > kHermitianTolerance || idem > kHermitianTolerance) {
        throw DomainError(fmt::format("operator is not a projector (hermiticity {:.3e}, idempotence {:.3e})", herm, idem));
      }
      break;
    }
    case OperatorKind::general: break;
  }
}

Operator Operator::identity(HilbertPartition partition) {
  const auto n = static_cast<Eigen::Index>(partition.total_dimension());
  return Operator(CMatrix::Identity(n, n), std::move(partition), OperatorKind::projector);
}

Operator Operator::projector_onto(const StateVector& psi) {
  return Operator(psi.amplitudes() * psi.amplitudes().adjoint(), psi.partition(), OperatorKind::projector);
}

Operator Operator::projector_onto_span(const std::vector<StateVector>& states) {
  if (states.empty()) throw DomainError("projector onto the span of no states");
  const auto& p = states.front().partition();
  const auto n = static_cast<Eigen::Index>(p.total_dimension());
  CMatrix basis(n, static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dimension() != p.total_dimension()) throw DomainError("span of states with different dimensions");
    basis.col(static_cast<Eigen::Index>(k)) = states[k].amplitudes();
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(basis);
  const auto rank = qr.rank();
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, rank);
  return Operator(q * q.adjoint(), p, OperatorKind::projector);
}

bool Operator::is_hermitian(double tol) const { return hermiticity_defect(matrix_) <= tol; }

Operator Operator::adjoint() const {
  return Operator(matrix_.adjoint(), partition_, kind_);
}

Operator Operator::relabeled(std::vector<std::string> labels) const {
  return Operator(matrix_, partition_.relabeled(std::move(labels)), kind_);
}

}  // namespace qfoundry

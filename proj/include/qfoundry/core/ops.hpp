#pragma once

#include <vector>

#include "qfoundry/core/state.hpp"

namespace qfoundry {

// Kronecker composition; partitions concatenate (labels must stay unique).
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Operator tensor(const Operator& a, const Operator& b);

/// ρ_keep = Tr_{complement} ρ. `keep` must be a nonempty subset of the labels.
DensityMatrix partial_trace(const DensityMatrix& rho, const LabelSet& keep);
/// Same as partial_trace(DensityMatrix::pure(psi), keep) without forming the full projector.
DensityMatrix reduced_density(const StateVector& psi, const LabelSet& keep);

/// Nonzero part of the spectrum of the reduced state of `keep`, computed from whichever side of the
/// Schmidt decomposition is smaller. Ascending, clamped at 0.
std::vector<double> subsystem_spectrum(const StateVector& psi, const LabelSet& keep);

/// Partial transpose on one factor. The result is Hermitian with unit trace but need not be positive.
CMatrix partial_transpose(const DensityMatrix& rho, const std::string& label);

/// −Σ p ln p over eigenvalues; values below 1e-12 contribute 0.
double entropy_from_spectrum(const std::vector<double>& eigenvalues);
/// S(ρ) = −tr ρ ln ρ in nats.
double von_neumann_entropy(const DensityMatrix& rho);
/// I(A,B) = S_A + S_B − S_{AB}; A and B must be disjoint.
double mutual_information(const DensityMatrix& rho, const LabelSet& a, const LabelSet& b);
/// Entanglement entropy of `keep` for a pure global state.
double entanglement_entropy(const StateVector& psi, const LabelSet& keep);

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

/// Lift an operator on a subset of factors to the full space (identity elsewhere). The local operator's labels
/// name the factors it acts on; its factor order may differ from the full partition's.
Operator embed(const Operator& local, const HilbertPartition& full);

/// U|ψ⟩ for a unitary (or an operator that is norm-preserving on ψ within tolerance).
StateVector apply(const Operator& op, const StateVector& psi);
/// ⟨ψ|O|ψ⟩.
cplx expectation(const Operator& op, const StateVector& psi);
/// tr(O ρ).
cplx expectation(const Operator& op, const DensityMatrix& rho);

}  // namespace qfoundry

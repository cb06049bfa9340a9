#include "qfoundry/core/ops.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qfoundry/error.hpp"

namespace qfoundry {

namespace {

// Full basis index as a function of (index over `first` factors, index over the remaining factors).
struct SplitIndex {
  std::size_t first_dim = 1;
  std::size_t rest_dim = 1;
  std::vector<std::size_t> table;  // table[a * rest_dim + r]

  std::size_t operator()(std::size_t a, std::size_t r) const { return table[a * rest_dim + r]; }
};

SplitIndex split_index(const HilbertPartition& p, const std::vector<std::size_t>& first_positions) {
  std::vector<std::size_t> rest_positions;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::find(first_positions.begin(), first_positions.end(), k) == first_positions.end()) {
      rest_positions.push_back(k);
    }
  }
  SplitIndex s;
  for (auto k : first_positions) s.first_dim *= p.dims()[k];
  for (auto k : rest_positions) s.rest_dim *= p.dims()[k];
  s.table.resize(s.first_dim * s.rest_dim);
  std::vector<std::size_t> digits(p.size());
  for (std::size_t full = 0; full < p.total_dimension(); ++full) {
    digits = p.unflatten(full);
    std::size_t a = 0;
    for (auto k : first_positions) a = a * p.dims()[k] + digits[k];
    std::size_t r = 0;
    for (auto k : rest_positions) r = r * p.dims()[k] + digits[k];
    s.table[a * s.rest_dim + r] = full;
  }
  return s;
}

// Positions of `keep` in partition order (matches HilbertPartition::restrict).
std::vector<std::size_t> positions_in_order(const HilbertPartition& p, const LabelSet& keep) {
  if (keep.empty()) throw DomainError("label set must be nonempty");
  std::vector<std::size_t> pos;
  for (const auto& l : keep) pos.push_back(p.index_of(l));
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) throw DomainError("label set has duplicates");
  return pos;
}

OperatorKind combined_kind(OperatorKind a, OperatorKind b) {
  if (a == b) return a;
  auto hermitian_like = [](OperatorKind k) { return k == OperatorKind::hermitian || k == OperatorKind::projector; };
  if (hermitian_like(a) && hermitian_like(b)) return OperatorKind::hermitian;
  return OperatorKind::general;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Matrix M with M(k, t) = ψ(full(k, t)).
CMatrix amplitude_matrix(const StateVector& psi, const LabelSet& keep) {
  const auto& p = psi.partition();
  const auto s = split_index(p, positions_in_order(p, keep));
  CMatrix m(static_cast<Eigen::Index>(s.first_dim), static_cast<Eigen::Index>(s.rest_dim));
  for (std::size_t a = 0; a < s.first_dim; ++a) {
    for (std::size_t r = 0; r < s.rest_dim; ++r) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(r)) = psi[s(a, r)];
    }
  }
  return m;
}

}  // namespace

StateVector tensor(const StateVector& a, const StateVector& b) {
  CVector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()[i] * b.amplitudes();
  }
  return StateVector::normalized(std::move(v), a.partition().concat(b.partition()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()), a.partition().concat(b.partition()));
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()), a.partition().concat(b.partition()), combined_kind(a.kind(), b.kind()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const LabelSet& keep) {
  const auto& p = rho.partition();
  const auto s = split_index(p, positions_in_order(p, keep));
  const auto n = static_cast<Eigen::Index>(s.first_dim);
  CMatrix out = CMatrix::Zero(n, n);
  const auto& m = rho.matrix();
  for (std::size_t a = 0; a < s.first_dim; ++a) {
    for (std::size_t b = 0; b < s.first_dim; ++b) {
      cplx acc = 0.0;
      for (std::size_t r = 0; r < s.rest_dim; ++r) {
        acc += m(static_cast<Eigen::Index>(s(a, r)), static_cast<Eigen::Index>(s(b, r)));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return DensityMatrix(std::move(out), p.restrict(keep));
}

DensityMatrix reduced_density(const StateVector& psi, const LabelSet& keep) {
  const CMatrix m = amplitude_matrix(psi, keep);
  return DensityMatrix(m * m.adjoint(), psi.partition().restrict(keep));
}

std::vector<double> subsystem_spectrum(const StateVector& psi, const LabelSet& keep) {
  const CMatrix m = amplitude_matrix(psi, keep);
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::max(0.0, es.eigenvalues()[i]));
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho, const std::string& label) {
  const auto& p = rho.partition();
  const auto s = split_index(p, {p.index_of(label)});
  const auto& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (std::size_t x = 0; x < s.first_dim; ++x) {
    for (std::size_t y = 0; y < s.first_dim; ++y) {
      for (std::size_t r = 0; r < s.rest_dim; ++r) {
        for (std::size_t q = 0; q < s.rest_dim; ++q) {
          out(static_cast<Eigen::Index>(s(x, r)), static_cast<Eigen::Index>(s(y, q))) =
              m(static_cast<Eigen::Index>(s(y, r)), static_cast<Eigen::Index>(s(x, q)));
        }
      }
    }
  }
  return out;
}

double entropy_from_spectrum(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p < -kNormTolerance) throw SpectrumError("negative eigenvalue in entropy", eigenvalues);
    if (p > 1e-12) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_from_spectrum(rho.eigenvalues()); }

double mutual_information(const DensityMatrix& rho, const LabelSet& a, const LabelSet& b) {
  for (const auto& l : a) {
    if (std::find(b.begin(), b.end(), l) != b.end()) {
      throw DomainError(fmt::format("mutual information label sets overlap on '{}'", l));
    }
  }
  LabelSet ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
         von_neumann_entropy(partial_trace(rho, ab));
}

double entanglement_entropy(const StateVector& psi, const LabelSet& keep) {
  return entropy_from_spectrum(subsystem_spectrum(psi, keep));
}

Operator embed(const Operator& local, const HilbertPartition& full) {
  const auto& lp = local.partition();
  std::vector<std::size_t> positions;
  for (std::size_t k = 0; k < lp.size(); ++k) {
    const auto pos = full.index_of(lp.labels()[k]);
    if (full.dims()[pos] != lp.dims()[k]) {
      throw DomainError(fmt::format("factor '{}' has dimension {} locally but {} in the full space", lp.labels()[k],
                                    lp.dims()[k], full.dims()[pos]));
    }
    positions.push_back(pos);
  }
  // split_index orders the first group as given, so local factor order is respected.
  const auto s = split_index(full, positions);
  const auto n = static_cast<Eigen::Index>(full.total_dimension());
  CMatrix out = CMatrix::Zero(n, n);
  const auto& m = local.matrix();
  for (std::size_t a = 0; a < s.first_dim; ++a) {
    for (std::size_t b = 0; b < s.first_dim; ++b) {
      const cplx v = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v == cplx{0.0, 0.0}) continue;
      for (std::size_t r = 0; r < s.rest_dim; ++r) {
        out(static_cast<Eigen::Index>(s(a, r)), static_cast<Eigen::Index>(s(b, r))) = v;
      }
    }
  }
  return Operator(std::move(out), full, local.kind());
}

StateVector apply(const Operator& op, const StateVector& psi) {
  if (op.dimension() != psi.dimension()) throw DomainError("operator and state dimensions differ");
  return StateVector(op.matrix() * psi.amplitudes(), psi.partition());
}

cplx expectation(const Operator& op, const StateVector& psi) {
  if (op.dimension() != psi.dimension()) throw DomainError("operator and state dimensions differ");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

cplx expectation(const Operator& op, const DensityMatrix& rho) {
  if (op.dimension() != rho.dimension()) throw DomainError("operator and density matrix dimensions differ");
  return (op.matrix() * rho.matrix()).trace();
}

}  // namespace qfoundry

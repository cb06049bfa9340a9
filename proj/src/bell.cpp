#include "qfoundry/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"

namespace qfoundry::bell {

Direction::Direction(const Eigen::Vector3d& v) : v_(v) {
  if (std::abs(v.norm() - 1.0) > 1e-12) throw DomainError(fmt::format("direction has norm {} (expected 1)", v.norm()));
}

Direction Direction::normalized(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero direction");
  return Direction(v / n);
}

Direction Direction::spherical(double theta, double phi) {
  return normalized(Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)));
}

Operator spin_operator(const Direction& a, const std::string& label) {
  const auto& v = a.vector();
  CMatrix m(2, 2);
  m << v.z(), cplx(v.x(), -v.y()), cplx(v.x(), v.y()), -v.z();
  return Operator(std::move(m), HilbertPartition::single(2, label), OperatorKind::hermitian);
}

StateVector singlet_state() {
  CVector v = CVector::Zero(4);
  v[1] = 1.0;
  v[2] = -1.0;
  return StateVector::normalized(std::move(v), HilbertPartition({2, 2}, {"A", "B"}));
}

double singlet_correlation_operator(const Direction& a, const Direction& b) {
  const auto obs = tensor(spin_operator(a, "A"), spin_operator(b, "B"));
  return expectation(obs, singlet_state()).real();
}

double singlet_correlation(const Direction& a, const Direction& b) {
  const double via_operators = singlet_correlation_operator(a, b);
  const double via_scalar_product = -a.dot(b);
  if (std::abs(via_operators - via_scalar_product) > 1e-10) {
    throw CrossCheckError(fmt::format("singlet correlator routes disagree: {} vs {}", via_operators, via_scalar_product));
  }
  return via_operators;
}

BellCheck bell_check(const Direction& a, const Direction& b, const Direction& c, const Correlator& correlator) {
  const double pab = correlator(a, b);
  const double pac = correlator(a, c);
  const double pbc = correlator(b, c);
  for (double p : {pab, pac, pbc}) {
    if (!(p >= -1.0 - kBellTolerance && p <= 1.0 + kBellTolerance)) {
      throw DomainError(fmt::format("correlator value {} outside [-1, 1]", p));
    }
  }
  BellCheck out;
  out.lhs = std::abs(pab - pac);
  out.rhs = 1.0 + pbc;
  out.violated = out.lhs > out.rhs + kBellTolerance;
  return out;
}

namespace {

int sign_of(double x) { return x >= 0.0 ? 1 : -1; }

Eigen::Matrix3d rotation_from(const CounterRng& rng, std::uint64_t counter) {
  // Random rotation from a normalized quaternion.
  Eigen::Quaterniond q(rng.normal(4 * counter), rng.normal(4 * counter + 1), rng.normal(4 * counter + 2),
                       rng.normal(4 * counter + 3));
  q.normalize();
  return q.toRotationMatrix();
}

Eigen::Vector3d sphere_sampler(const CounterRng& rng, std::uint64_t i) { return uniform_unit_vector(rng, i); }

}  // namespace

LhvModel LhvModel::sign_model() {
  return LhvModel{"sign", [](const Direction& a, const Eigen::Vector3d& l) { return sign_of(a.vector().dot(l)); },
                  sphere_sampler};
}

LhvModel LhvModel::randomized(std::uint64_t rule_seed) {
  const CounterRng rng(rule_seed, /*stream=*/7);
  const Eigen::Matrix3d rot = rotation_from(rng, 0);
  const double threshold = 0.8 * (rng.uniform(100) - 0.5);
  const Eigen::Vector3d axis = uniform_unit_vector(rng, 200);
  const int family = static_cast<int>(rng.bits(300) % 3);
  const std::string name = fmt::format("randomized-{}-f{}", rule_seed, family);
  switch (family) {
    case 0:  // rotated, thresholded sign
      return LhvModel{name,
                      [rot, threshold](const Direction& a, const Eigen::Vector3d& l) {
                        return sign_of(a.vector().dot(rot * l) - threshold);
                      },
                      sphere_sampler};
    case 1:  // sign folded by a fixed axis
      return LhvModel{name,
                      [rot, axis](const Direction& a, const Eigen::Vector3d& l) {
                        return sign_of(a.vector().dot(rot * l)) * sign_of(axis.dot(l) + 0.3);
                      },
                      sphere_sampler};
    default:  // quadratic response
      return LhvModel{name,
                      [rot, threshold](const Direction& a, const Eigen::Vector3d& l) {
                        const double x = a.vector().dot(rot * l);
                        return sign_of(x * x - 0.25 + threshold * x);
                      },
                      sphere_sampler};
  }
}

Estimate lhv_correlation(const LhvModel& model, const Direction& a, const Direction& b, std::uint64_t samples,
                         std::uint64_t seed) {
  if (samples == 0) throw DomainError("samples must be >= 1");
  const CounterRng rng(seed, /*stream=*/3);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto lambda = model.sampler(rng, i);
    const double v = model.response_a(a, lambda) * model.response_b(b, lambda);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return Estimate{mean, std::sqrt(var / n)};
}

double sign_model_correlation(const Direction& a, const Direction& b) {
  const double theta = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  return -1.0 + 2.0 * theta / std::numbers::pi;
}

LhvBellCheck bell_check_lhv(const LhvModel& model, const Direction& a, const Direction& b, const Direction& c,
                            std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw DomainError("samples must be >= 2");
  const CounterRng rng(seed, /*stream=*/3);
  double s_ab = 0, s_ac = 0, s_bc = 0, q_ab = 0, q_ac = 0, q_bc = 0, s_d = 0, q_d = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto l = model.sampler(rng, i);
    const double ab = model.response_a(a, l) * model.response_b(b, l);
    const double ac = model.response_a(a, l) * model.response_b(c, l);
    const double bc = model.response_a(b, l) * model.response_b(c, l);
    s_ab += ab, q_ab += ab * ab;
    s_ac += ac, q_ac += ac * ac;
    s_bc += bc, q_bc += bc * bc;
    s_d += ab - ac, q_d += (ab - ac) * (ab - ac);
  }
  const double n = static_cast<double>(samples);
  auto estimate = [n](double s, double q) {
    const double m = s / n;
    return Estimate{m, std::sqrt(std::max(0.0, (q - n * m * m) / (n - 1.0)) / n)};
  };
  LhvBellCheck out;
  out.p_ab = estimate(s_ab, q_ab);
  out.p_ac = estimate(s_ac, q_ac);
  out.p_bc = estimate(s_bc, q_bc);
  const Estimate diff = estimate(s_d, q_d);
  out.check.lhs = std::abs(out.p_ab.mean - out.p_ac.mean);
  out.check.rhs = 1.0 + out.p_bc.mean;
  out.check.violated = out.check.lhs > out.check.rhs + kBellTolerance;
  out.sigma = std::hypot(diff.std_error, out.p_bc.std_error);
  out.violated_beyond_3sigma = out.check.lhs - out.check.rhs > 3.0 * out.sigma;
  return out;
}

VennResult venn_inequality(const VennCounts& counts) {
  const auto& n = counts.n;
  VennResult r;
  r.n1 = n[0] + n[1];
  r.n2 = n[6] + n[3];
  r.n3 = n[0] + n[3];
  r.holds = r.n1 + r.n2 >= r.n3;
  r.slack = r.n1 + r.n2 - r.n3;
  return r;
}

StateVector ghz_state() {
  CVector v = CVector::Zero(8);
  v[0] = 1.0;
  v[7] = 1.0;
  return StateVector::normalized(std::move(v), HilbertPartition::qubits(3));
}

GhzReduction ghz_reductions(int n_keep) {
  if (n_keep != 1 && n_keep != 2) throw DomainError(fmt::format("n_keep must be 1 or 2 (got {})", n_keep));
  const auto ghz = ghz_state();
  auto rho = n_keep == 1 ? reduced_density(ghz, {"q2"}) : reduced_density(ghz, {"q0", "q1"});
  GhzReduction out{rho, von_neumann_entropy(rho), 0.0, false, false};
  const auto d = static_cast<Eigen::Index>(rho.dimension());
  const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
  out.maximally_mixed = (rho.matrix() - mixed).cwiseAbs().maxCoeff() <= 1e-12;
  if (n_keep == 2) {
    const CMatrix pt = partial_transpose(rho, "q1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(pt, Eigen::EigenvaluesOnly);
    out.ppt_min_eigenvalue = es.eigenvalues().minCoeff();
    out.separable = out.ppt_min_eigenvalue >= -1e-12;
  } else {
    out.separable = true;
  }
  return out;
}

}  // namespace qfoundry::bell

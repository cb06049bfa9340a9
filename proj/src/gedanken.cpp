#include "qfoundry/gedanken.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"

namespace qfoundry::gedanken {

// ---------------------------------------------------------------------------
// Mach-Zehnder

DetectorProbabilities mach_zehnder(const InterferometerConfig& config) {
  const cplx r = config.reflection;
  const cplx t = config.transmission;
  const double scale2 = std::norm(r) + std::norm(t);
  if (!(scale2 > 0.0)) throw DomainError("beam splitter amplitudes are both zero");
  if (std::abs((t * std::conj(r)).real()) > 1e-12 * scale2) {
    throw DomainError("beam splitter is not unitary: Re(t r*) must vanish");
  }
  Eigen::Matrix2cd bs;
  bs << t, r, r, t;
  bs /= std::sqrt(scale2);

  // Mode 0 continues straight (transmitted), mode 1 is reflected; D1 sits on mode 1 after BS2.
  Eigen::Vector2cd in(std::exp(cplx(0.0, config.input_phase)), 0.0);
  Eigen::Vector2cd out = bs * in;
  if (config.bs2_present) out = bs * out;
  // Without BS2 each arm runs straight into a detector: P1 (reflected) → D1, P2 (transmitted) → D2.
  return DetectorProbabilities{std::norm(out[1]), std::norm(out[0])};
}

// ---------------------------------------------------------------------------
// Cat and Wigner's friend

CatChain cat_chain(cplx alpha, cplx beta, cplx kappa) {
  const auto chain = measurement::DecoherenceChain::with_overlap(alpha, beta, kappa);
  auto res = measurement::decohere(chain, {"cat", "observer", "environment"});
  return CatChain{std::move(res.joint_state), std::move(res.joint_pure), std::move(res.reduced), res.coherence};
}

DensityMatrix wigner_friend_dm(cplx alpha, cplx beta, double delta) {
  const double weight = std::norm(alpha) + std::norm(beta);
  if (std::abs(weight - 1.0) > kNormTolerance) throw DomainError(fmt::format("|alpha|^2 + |beta|^2 = {} differs from 1", weight));
  CMatrix m(2, 2);
  const cplx off = alpha * std::conj(beta) * std::cos(delta);
  m << std::norm(alpha), off, std::conj(off), std::norm(beta);
  return DensityMatrix(std::move(m), HilbertPartition::single(2, "friend"));
}

// ---------------------------------------------------------------------------
// Extended Wigner's friend

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

HilbertPartition fr_partition() { return HilbertPartition(std::vector<std::size_t>(6, 2), kFrLabels); }

HilbertPartition pair_partition(const std::string& which) {
  if (which == "F1C") return HilbertPartition({2, 2}, {"C", "F1"});
  if (which == "F2S") return HilbertPartition({2, 2}, {"S", "F2"});
  throw DomainError(fmt::format("unknown observer pair '{}' (expected F1C|F2S)", which));
}

// |ok⟩, |fail⟩ of a pair as 4-vectors over its pair partition.
//   F1C: fail = (|head,H⟩ + |tail,T⟩)/√2, ok = (|head,H⟩ − |tail,T⟩)/√2
//   F2S: fail = (|−,D⟩ + |+,U⟩)/√2,       ok = (|−,D⟩ − |+,U⟩)/√2
CVector pair_vector(const std::string& which, const std::string& outcome) {
  CVector v = CVector::Zero(4);
  const bool fail = outcome == "fail";
  if (!fail && outcome != "ok") throw DomainError(fmt::format("unknown outcome '{}' (expected ok|fail)", outcome));
  if (which == "F1C") {
    v[0] = 1.0 / kSqrt2;
    v[3] = (fail ? 1.0 : -1.0) / kSqrt2;
  } else {
    v[3] = 1.0 / kSqrt2;
    v[0] = (fail ? 1.0 : -1.0) / kSqrt2;
  }
  return v;
}

Operator local_unitary(CMatrix m, HilbertPartition p) { return Operator(std::move(m), std::move(p), OperatorKind::unitary); }

// CNOT from `control` onto `target` (both qubits): records the control's basis value in a ready (0) memory.
Operator record(const std::string& control, const std::string& target) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return local_unitary(std::move(m), HilbertPartition({2, 2}, {control, target}));
}

// Memory flips from ok to fail iff the pair is in its |fail⟩ state: (1 − P_fail)⊗1 + P_fail⊗X.
Operator ok_fail_measurement(const std::string& which, const std::string& memory) {
  const CVector f = pair_vector(which, "fail");
  const CMatrix p_fail = f * f.adjoint();
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const CMatrix id4 = CMatrix::Identity(4, 4);
  CMatrix u(8, 8);
  const CMatrix id2 = CMatrix::Identity(2, 2);
  // Kronecker products (pair ⊗ memory).
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      u.block(2 * i, 2 * j, 2, 2) = (id4(i, j) - p_fail(i, j)) * id2 + p_fail(i, j) * x;
    }
  }
  auto labels = pair_partition(which).labels();
  labels.push_back(memory);
  return local_unitary(std::move(u), HilbertPartition({2, 2, 2}, labels));
}

StateVector step(const Operator& local, const StateVector& psi) { return apply(embed(local, psi.partition()), psi); }

Operator digit_projector(const std::string& label, std::size_t digit) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(static_cast<Eigen::Index>(digit), static_cast<Eigen::Index>(digit)) = 1.0;
  return embed(Operator(std::move(m), HilbertPartition::single(2, label), OperatorKind::projector), fr_partition());
}

// Full-register vector |x⟩_F1C ⊗ |y⟩_F2S ⊗ |a_digit⟩_A ⊗ |w_digit⟩_W (register order C, F1, S, F2, A, W).
CVector displayed_term(const std::string& x, const std::string& y, std::size_t a_digit, std::size_t w_digit) {
  const CVector p1 = pair_vector("F1C", x);
  const CVector p2 = pair_vector("F2S", y);
  CVector v = CVector::Zero(64);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const auto idx = ((i * 4 + j) * 2 + static_cast<Eigen::Index>(a_digit)) * 2 + static_cast<Eigen::Index>(w_digit);
      v[idx] = p1[i] * p2[j];
    }
  }
  return v;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

Operator fr_outcome_projector(const std::string& which, const std::string& outcome) {
  const CVector v = pair_vector(which, outcome);
  return embed(Operator(v * v.adjoint(), pair_partition(which), OperatorKind::projector), fr_partition());
}

double FrTranscript::probability(const std::string& a, const std::string& w) const {
  for (const auto& o : outcomes) {
    if (o.a == a && o.w == w) return o.probability;
  }
  throw DomainError(fmt::format("no outcome ({}, {})", a, w));
}

FrTranscript fr_protocol() {
  FrTranscript tr;
  const auto reg = fr_partition();

  // Coin (1/√3)|head⟩ + √(2/3)|tail⟩; every memory ready, spin ready in |+⟩.
  CVector init = CVector::Zero(64);
  init[reg.flatten({0, 0, 0, 0, 0, 0})] = 1.0 / kSqrt3;
  init[reg.flatten({1, 0, 0, 0, 0, 0})] = std::sqrt(2.0 / 3.0);
  const StateVector psi0(init, reg);

  const StateVector r = step(record("C", "F1"), psi0);

  // F1 sets the spin: head → |−⟩, tail → |+⟩_x = (|+⟩ + |−⟩)/√2, starting from |+⟩.
  CMatrix set_spin = CMatrix::Zero(4, 4);
  set_spin(0, 1) = set_spin(1, 0) = 1.0;                                  // H: X
  set_spin.block(2, 2, 2, 2) << 1.0 / kSqrt2, 1.0 / kSqrt2, 1.0 / kSqrt2, -1.0 / kSqrt2;  // T: Hadamard
  const StateVector f1sc = step(local_unitary(set_spin, HilbertPartition({2, 2}, {"F1", "S"})), r);

  const StateVector f2f1sc = step(record("S", "F2"), f1sc);
  const StateVector a = step(ok_fail_measurement("F1C", "A"), f2f1sc);
  const StateVector w = step(ok_fail_measurement("F2S", "W"), a);

  tr.states.emplace("psi0_C", psi0);
  tr.states.emplace("r", r);
  tr.states.emplace("F1SC", f1sc);
  tr.states.emplace("F2F1SC", f2f1sc);
  tr.states.emplace("a", a);
  tr.states.emplace("w", w);

  const auto rho = DensityMatrix::pure(f2f1sc);
  const auto rho_w = DensityMatrix::pure(w);
  for (const char* x : {"ok", "fail"}) {
    for (const char* y : {"ok", "fail"}) {
      const CMatrix joint = fr_outcome_projector("F1C", x).matrix() * fr_outcome_projector("F2S", y).matrix();
      tr.outcomes.push_back(
          {x, y, measurement::born_probability(rho, Operator(joint, reg, OperatorKind::projector))});
      const std::size_t ad = std::string(x) == "ok" ? 0 : 1;
      const std::size_t wd = std::string(y) == "ok" ? 0 : 1;
      const CMatrix mem = digit_projector("A", ad).matrix() * digit_projector("W", wd).matrix();
      tr.memory_outcomes.push_back(
          {x, y, measurement::born_probability(rho_w, Operator(mem, reg, OperatorKind::projector))});
    }
  }

  // tail ⇒ w = fail: condition |F2F1SC⟩ on F1 having recorded tail, then ask Wigner's question.
  {
    const auto given_tail = measurement::collapse(rho, digit_projector("F1", 1));
    tr.implications.push_back(
        {"r1=tail => w4=fail", measurement::born_probability(given_tail, fr_outcome_projector("F2S", "fail"))});
  }
  // head ⇒ s = −½.
  {
    const auto given_head = measurement::collapse(DensityMatrix::pure(f1sc), digit_projector("F1", 0));
    tr.implications.push_back({"r1=head => s2=-1/2", measurement::born_probability(given_head, digit_projector("S", 1))});
  }
  // s = −½ ⇒ a = fail: condition on F2 having recorded D.
  {
    const auto given_down = measurement::collapse(rho, digit_projector("F2", 1));
    tr.implications.push_back(
        {"s2=-1/2 => a3=fail", measurement::born_probability(given_down, fr_outcome_projector("F1C", "fail"))});
  }

  // Displayed expansions of |a⟩ and |w⟩ (the |fail⟩_x in the first line of |w⟩ read as |fail⟩_a).
  const double k = 1.0 / (2.0 * kSqrt3);
  const CVector a_disp = k * (displayed_term("ok", "ok", 0, 0) - displayed_term("ok", "fail", 0, 0) +
                              displayed_term("fail", "ok", 1, 0) + 3.0 * displayed_term("fail", "fail", 1, 0));
  const CVector w_disp = k * (displayed_term("ok", "ok", 0, 0) + displayed_term("fail", "ok", 1, 0) -
                              displayed_term("ok", "fail", 0, 1) + 3.0 * displayed_term("fail", "fail", 1, 1));
  tr.displayed_expansion_mismatch =
      std::max((a.amplitudes() - a_disp).cwiseAbs().maxCoeff(), (w.amplitudes() - w_disp).cwiseAbs().maxCoeff());
  tr.notes.push_back("|w> first line: |fail>_x read as the assistant memory |fail>_a");
  if (tr.displayed_expansion_mismatch > 1e-12) {
    tr.notes.push_back(fmt::format("reconstructed |a>,|w> differ from the displayed expansions by {:.3e}",
                                   tr.displayed_expansion_mismatch));
  }

  tr.assistant_disturbance_f2s =
      max_abs_diff(reduced_density(f2f1sc, {"S", "F2"}).matrix(), reduced_density(a, {"S", "F2"}).matrix());
  tr.wigner_disturbance_f1c =
      max_abs_diff(reduced_density(a, {"C", "F1"}).matrix(), reduced_density(w, {"C", "F1"}).matrix());
  return tr;
}

// ---------------------------------------------------------------------------
// Quantum immortality

ImmortalityRecord quantum_immortality(unsigned n) {
  if (n < 1 || n > 63) throw DomainError(fmt::format("rounds must be in [1, 63] (got {})", n));
  ImmortalityRecord rec;
  rec.copenhagen_survival = std::ldexp(1.0, -static_cast<int>(n));
  rec.branch_count = 1ULL << n;
  // Exactly one of the 2ⁿ equally weighted branches survives every round.
  rec.surviving_branch_weight = std::ldexp(1.0, -static_cast<int>(n));
  // Conditioned on continuity of the observer's experience, only the surviving branch is ever experienced.
  rec.conditional_survival = rec.surviving_branch_weight / rec.surviving_branch_weight;
  return rec;
}

}  // namespace qfoundry::gedanken

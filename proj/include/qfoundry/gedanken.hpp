#pragma once

#include <map>
#include <string>
#include <vector>

#include "qfoundry/core/state.hpp"
#include "qfoundry/measurement.hpp"

namespace qfoundry::gedanken {

// ---------------------------------------------------------------------------
// Mach-Zehnder

/// Beam splitter amplitudes (reflected, transmitted). Each splitter is normalized internally by
/// 1/√(|r|²+|t|²) and must be unitary: Re(t r*) = 0.
struct InterferometerConfig {
  bool bs2_present = true;
  cplx reflection{0.0, 1.0};
  cplx transmission{1.0, 0.0};
  double input_phase = 0.0;
};

struct DetectorProbabilities {
  double p_d1 = 0.0;
  double p_d2 = 0.0;
};

DetectorProbabilities mach_zehnder(const InterferometerConfig& config);

// ---------------------------------------------------------------------------
// Schrödinger cat

struct CatChain {
  StateVector phi_e;    // α|alive⟩|happy⟩|E+⟩ + β|dead⟩|sad⟩|E−⟩ over (cat, observer, environment)
  DensityMatrix rho_e;  // |Φ_e⟩⟨Φ_e|
  DensityMatrix rho_r;  // Tr_environment ρ_e
  double coherence = 0.0;
};

/// Cat/observer/environment labels over the measurement-engine decoherence chain; kappa = ⟨E−|E+⟩.
CatChain cat_chain(cplx alpha, cplx beta, cplx kappa);

/// [[|α|², αβ* cos δ], [α*β cos δ, |β|²]] over the friend's two outcomes.
DensityMatrix wigner_friend_dm(cplx alpha, cplx beta, double delta);

// ---------------------------------------------------------------------------
// Extended Wigner's friend

/// Factor labels of the full register, in tensor order. Basis digit 0 / 1 per factor:
/// coin {head, tail}, F1 memory {H, T}, spin S {+, −}, F2 memory {U, D}, assistant A {ok, fail},
/// Wigner W {ok, fail}.
inline const LabelSet kFrLabels{"C", "F1", "S", "F2", "A", "W"};

struct FrOutcome {
  std::string a;  // assistant's result on F1+C
  std::string w;  // Wigner's result on F2+S
  double probability = 0.0;
};

struct FrImplication {
  std::string statement;
  double conditional_probability = 0.0;
};

struct FrTranscript {
  /// Named intermediate states: psi0_C, r, F1SC, F2F1SC, a, w. Each is normalized over the full register with
  /// untouched factors in their ready state (F1=H, S=+, F2=U, A=ok, W=ok).
  std::map<std::string, StateVector> states;
  /// Born probabilities of {ok, fail}_F1C ⊗ {ok, fail}_F2S on |F2F1SC⟩.
  std::vector<FrOutcome> outcomes;
  /// The same table read off the assistant's and Wigner's memory registers in |w⟩.
  std::vector<FrOutcome> memory_outcomes;
  /// tail ⇒ w=fail, head ⇒ s=−½, s=−½ ⇒ a=fail.
  std::vector<FrImplication> implications;
  /// Largest |coefficient| difference between the reconstructed |a⟩, |w⟩ and their displayed expansions.
  double displayed_expansion_mismatch = 0.0;
  /// Change of the (S, F2) reduced state caused by the assistant's measurement, and of the (C, F1) reduced
  /// state caused by Wigner's measurement (max-abs entry difference).
  double assistant_disturbance_f2s = 0.0;
  double wigner_disturbance_f1c = 0.0;
  std::vector<std::string> notes;

  double probability(const std::string& a, const std::string& w) const;
};

/// Projector onto |ok⟩ or |fail⟩ of the coin+F1 pair (which = "F1C") or the spin+F2 pair (which = "F2S"),
/// embedded in the full register.
Operator fr_outcome_projector(const std::string& which, const std::string& outcome);

FrTranscript fr_protocol();

// ---------------------------------------------------------------------------
// Quantum immortality

struct ImmortalityRecord {
  double copenhagen_survival = 0.0;
  unsigned long long branch_count = 0;
  double surviving_branch_weight = 0.0;
  double conditional_survival = 0.0;
};

/// n rounds of a 50/50 quantum suicide device; n in [1, 63].
ImmortalityRecord quantum_immortality(unsigned n);

}  // namespace qfoundry::gedanken

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bentchain/chain.hpp"
#include "bentchain/pauli.hpp"

namespace bentchain {

// Ordered toggled-frame operators g_0..g_{m-1}; all Hermitian (phase +1),
// self-inverse Pauli strings.
struct DecouplingScheme {
  int n_qubits = 0;
  std::string name;
  std::vector<PauliString> ops;

  int size() const { return static_cast<int>(ops.size()); }
};

// Pulses p_0..p_m derived from a scheme: p_0 = g_0, p_k = g_k g_{k-1}†, and
// the closing pulse p_m = g_{m-1}† so the cumulative product over a full
// cycle is the identity.
struct PulseSequence {
  int n_qubits = 0;
  std::vector<PauliString> pulses;  // length m+1

  int intervals() const { return static_cast<int>(pulses.size()) - 1; }
  // Non-identity pulses actually applied when cycles run back to back (the
  // closing pulse of one cycle merges with the opening pulse of the next).
  int physical_pulses_per_cycle() const;
};

struct AverageReport {
  Hamiltonian average;          // computed H̄^(0)
  bool matches_target = false;  // residual empty and uniform 1/D ratio
  std::optional<double> scale;  // D
  Hamiltonian residual;
};

DecouplingScheme trivial_scheme(int n_qubits);  // single identity operator

// §4.1: g_0 = g_1 = I; g_2 = Z on alpha-1 and every second qubit before it;
// g_3 = Z on alpha+1 and every second qubit after it. Scales couplings by
// 1/2, leaves Z terms unscaled, cancels the bend.
DecouplingScheme partial_scheme(int n_qubits, int alpha);

// §4.2: g_1 = X on 1..alpha-1, g_2 = Y on alpha+1..N, g_3 = Z pattern
// anchored at alpha-1 (descending) and alpha+2 (ascending) with X on alpha.
// Scales the full ideal Hamiltonian (couplings and Z terms) by 1/2.
DecouplingScheme complete_scheme(int n_qubits, int alpha);

// §4.3: X/Y-only operators; g_1 = X up to alpha then Y,X alternation;
// g_3 mirrored with the alternation anchored Y at alpha-1. Scales couplings
// by 1/2 and cancels all Z terms, uniform or not.
DecouplingScheme practical_scheme(int n_qubits, int alpha);

// SDD: append the scheme's reverse (palindromic, length 2m).
DecouplingScheme symmetrize(const DecouplingScheme& s);

// PDD: cyclic repetition, length r*m.
DecouplingScheme repeat_pdd(const DecouplingScheme& s, int repetitions);

PulseSequence to_pulses(const DecouplingScheme& s);

// Recover g_k as cumulative pulse products (inverse of to_pulses, dropping
// the closing pulse).
DecouplingScheme scheme_from_pulses(const PulseSequence& seq);

// H̄^(0) = (1/m) Σ g_i† h g_i computed termwise and compared against target:
// matches iff every surviving term is a target term with one common ratio
// 1/D and nothing else survives.
AverageReport verify_selective(const DecouplingScheme& s, const Hamiltonian& h,
                               const Hamiltonian& target);

// Scheme registry for CLI/config: "none", "partial", "complete", "practical",
// with optional "+sdd" suffix, e.g. "complete+sdd".
DecouplingScheme scheme_by_name(const std::string& name, int n_qubits,
                                int alpha);

// Text listing of the scheme's g's and derived p's in the pauli grammar.
std::string scheme_listing(const DecouplingScheme& s);

}  // namespace bentchain

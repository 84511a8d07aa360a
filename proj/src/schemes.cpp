#include "bentchain/schemes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bentchain {

namespace {

void check_alpha(int n, int alpha) {
  if (alpha < 2 || alpha > n - 1) {
    throw std::invalid_argument("scheme: alpha must be in [2, N-1]");
  }
}

PauliString z_pattern(int n, int first, int last) {
  // Z on first, first+2, ... while <= last (first may exceed last: identity).
  uint64_t z = 0;
  for (int q = first; q <= last; q += 2) z |= uint64_t{1} << (q - 1);
  return PauliString::from_masks(n, 0, z);
}

PauliString z_pattern_desc(int n, int first, int lowest) {
  uint64_t z = 0;
  for (int q = first; q >= lowest; q -= 2) z |= uint64_t{1} << (q - 1);
  return PauliString::from_masks(n, 0, z);
}

}  // namespace

int PulseSequence::physical_pulses_per_cycle() const {
  if (pulses.empty()) return 0;
  int count = 0;
  // Interior pulses p_1..p_{m-1}; boundary pulse is the merged p_m * p_0.
  for (size_t k = 1; k + 1 < pulses.size(); ++k) {
    if (!pulses[k].is_identity_factors()) ++count;
  }
  const PauliString boundary = multiply(pulses.front(), pulses.back());
  if (!boundary.is_identity_factors()) ++count;
  return count;
}

DecouplingScheme trivial_scheme(int n_qubits) {
  return {n_qubits, "none", {PauliString::identity(n_qubits)}};
}

DecouplingScheme partial_scheme(int n_qubits, int alpha) {
  check_alpha(n_qubits, alpha);
  DecouplingScheme s{n_qubits, "partial", {}};
  s.ops.push_back(PauliString::identity(n_qubits));
  s.ops.push_back(PauliString::identity(n_qubits));
  s.ops.push_back(z_pattern_desc(n_qubits, alpha - 1, 1));
  s.ops.push_back(z_pattern(n_qubits, alpha + 1, n_qubits));
  return s;
}

DecouplingScheme complete_scheme(int n_qubits, int alpha) {
  check_alpha(n_qubits, alpha);
  const int n = n_qubits;
  DecouplingScheme s{n, "complete", {}};
  s.ops.push_back(PauliString::identity(n));

  uint64_t g1x = 0;
  for (int q = 1; q <= alpha - 1; ++q) g1x |= uint64_t{1} << (q - 1);
  s.ops.push_back(PauliString::from_masks(n, g1x, 0));

  uint64_t g2 = 0;
  for (int q = alpha + 1; q <= n; ++q) g2 |= uint64_t{1} << (q - 1);
  s.ops.push_back(PauliString::from_masks(n, g2, g2));  // Y factors

  PauliString left = z_pattern_desc(n, alpha - 1, 1);
  PauliString right = z_pattern(n, alpha + 2, n);
  uint64_t g3z = left.z_mask() | right.z_mask();
  uint64_t g3x = uint64_t{1} << (alpha - 1);  // X on the bend qubit
  s.ops.push_back(PauliString::from_masks(n, g3x, g3z));
  return s;
}

DecouplingScheme practical_scheme(int n_qubits, int alpha) {
  check_alpha(n_qubits, alpha);
  const int n = n_qubits;
  DecouplingScheme s{n, "practical", {}};
  s.ops.push_back(PauliString::identity(n));

  // g_1: X on 1..alpha, then Y,X,Y,... from alpha+1.
  uint64_t x = 0, z = 0;
  for (int q = 1; q <= n; ++q) {
    x |= uint64_t{1} << (q - 1);
    if (q > alpha && (q - alpha) % 2 == 1) z |= uint64_t{1} << (q - 1);
  }
  s.ops.push_back(PauliString::from_masks(n, x, z));

  s.ops.push_back(PauliString::identity(n));

  // g_3: alternation anchored Y at alpha-1 going down, X from alpha to N.
  z = 0;
  for (int q = 1; q < alpha; ++q) {
    if ((alpha - 1 - q) % 2 == 0) z |= uint64_t{1} << (q - 1);
  }
  s.ops.push_back(PauliString::from_masks(n, x, z));
  return s;
}

DecouplingScheme symmetrize(const DecouplingScheme& s) {
  DecouplingScheme out{s.n_qubits, s.name + "+sdd", s.ops};
  out.ops.insert(out.ops.end(), s.ops.rbegin(), s.ops.rend());
  return out;
}

DecouplingScheme repeat_pdd(const DecouplingScheme& s, int repetitions) {
  if (repetitions < 1) {
    throw std::invalid_argument("repeat_pdd: repetitions must be >= 1");
  }
  DecouplingScheme out{s.n_qubits, s.name, {}};
  out.ops.reserve(s.ops.size() * repetitions);
  for (int r = 0; r < repetitions; ++r) {
    out.ops.insert(out.ops.end(), s.ops.begin(), s.ops.end());
  }
  return out;
}

PulseSequence to_pulses(const DecouplingScheme& s) {
  PulseSequence seq{s.n_qubits, {}};
  if (s.ops.empty()) throw std::invalid_argument("to_pulses: empty scheme");
  seq.pulses.reserve(s.ops.size() + 1);
  seq.pulses.push_back(s.ops.front());
  for (size_t k = 1; k < s.ops.size(); ++k) {
    seq.pulses.push_back(multiply(s.ops[k], s.ops[k - 1].adjoint()));
  }
  seq.pulses.push_back(s.ops.back().adjoint());
  return seq;
}

DecouplingScheme scheme_from_pulses(const PulseSequence& seq) {
  if (seq.pulses.size() < 2) {
    throw std::invalid_argument("scheme_from_pulses: need at least one interval");
  }
  DecouplingScheme s{seq.n_qubits, "", {}};
  PauliString g = seq.pulses.front();
  s.ops.push_back(g);
  for (size_t k = 1; k + 1 < seq.pulses.size(); ++k) {
    g = multiply(seq.pulses[k], g);
    s.ops.push_back(g);
  }
  return s;
}

AverageReport verify_selective(const DecouplingScheme& s, const Hamiltonian& h,
                               const Hamiltonian& target) {
  if (s.n_qubits != h.n_qubits() || h.n_qubits() != target.n_qubits()) {
    throw std::invalid_argument("verify_selective: dimension mismatch");
  }
  const int m = s.size();
  AverageReport report{Hamiltonian(h.n_qubits()), false, std::nullopt,
                       Hamiltonian(h.n_qubits())};
  for (const auto& t : h.terms()) {
    int sign_sum = 0;
    for (const auto& g : s.ops) {
      sign_sum += g.commutes_with(t.op) ? 1 : -1;
    }
    if (sign_sum != 0) {
      report.average.add(t.coeff * (double(sign_sum) / double(m)), t.op);
    }
  }

  // Ratio test against the target, exact arithmetic (sign sums divided by m
  // are exact dyadics for the schemes here).
  std::optional<double> ratio;
  bool ok = true;
  for (const auto& t : target.terms()) {
    const double got = report.average.coefficient_of(t.op);
    if (got == 0.0) {
      ok = false;
      continue;
    }
    const double r = got / t.coeff;
    if (!ratio) {
      ratio = r;
    } else if (r != *ratio) {
      ok = false;
      report.residual.add(got, t.op);
    }
  }
  for (const auto& t : report.average.terms()) {
    if (target.coefficient_of(t.op) == 0.0) {
      ok = false;
      report.residual.add(t.coeff, t.op);
    }
  }
  if (ok && ratio && *ratio != 0.0) {
    report.matches_target = true;
    report.scale = 1.0 / *ratio;
  }
  return report;
}

DecouplingScheme scheme_by_name(const std::string& name, int n_qubits,
                                int alpha) {
  std::string base = name;
  bool sdd = false;
  if (const auto pos = base.find("+sdd"); pos != std::string::npos) {
    sdd = true;
    base = base.substr(0, pos);
  }
  DecouplingScheme s;
  if (base == "none" || base.empty()) {
    s = trivial_scheme(n_qubits);
  } else if (base == "partial") {
    s = partial_scheme(n_qubits, alpha);
  } else if (base == "complete") {
    s = complete_scheme(n_qubits, alpha);
  } else if (base == "practical") {
    s = practical_scheme(n_qubits, alpha);
  } else {
    throw std::invalid_argument("unknown scheme '" + name + "'");
  }
  if (sdd) s = symmetrize(s);
  return s;
}

std::string scheme_listing(const DecouplingScheme& s) {
  std::ostringstream out;
  out << "scheme " << s.name << " (m=" << s.size() << ")\n";
  for (int k = 0; k < s.size(); ++k) {
    out << "  g" << k << " = " << s.ops[k].str() << "\n";
  }
  const auto seq = to_pulses(s);
  for (size_t k = 0; k < seq.pulses.size(); ++k) {
    out << "  p" << k << " = " << seq.pulses[k].str() << "\n";
  }
  return out.str();
}

}  // namespace bentchain

#include "bentchain/pauli.hpp"

#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bentchain {

namespace {

constexpr std::complex<double> kPhases[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_qubit_count(int n) {
  if (n < 1 || n > PauliString::max_qubits) {
    throw std::invalid_argument("PauliString: n_qubits must be in [1, 64]");
  }
}

void check_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("PauliString: dimension mismatch");
  }
}

uint64_t qubit_bit(int n, int qubit) {
  if (qubit < 1 || qubit > n) {
    throw std::out_of_range("PauliString: qubit index out of range");
  }
  return uint64_t{1} << (qubit - 1);
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits);
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  PauliString s(n_qubits);
  uint64_t bit = qubit_bit(n_qubits, qubit);
  if (p == Pauli::X || p == Pauli::Y) s.x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) s.z_ |= bit;
  return s;
}

PauliString PauliString::from_masks(int n_qubits, uint64_t x, uint64_t z,
                                    int phase_exponent) {
  check_qubit_count(n_qubits);
  uint64_t valid = (n_qubits == 64) ? ~uint64_t{0}
                                    : ((uint64_t{1} << n_qubits) - 1);
  if ((x & ~valid) || (z & ~valid)) {
    throw std::out_of_range("PauliString: mask exceeds qubit count");
  }
  PauliString s(n_qubits);
  s.x_ = x;
  s.z_ = z;
  s.k_ = static_cast<uint8_t>(((phase_exponent % 4) + 4) % 4);
  return s;
}

std::complex<double> PauliString::phase() const { return kPhases[k_]; }

Pauli PauliString::factor(int qubit) const {
  uint64_t bit = qubit_bit(n_, qubit);
  bool x = x_ & bit, z = z_ & bit;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

int PauliString::weight() const {
  return std::popcount(x_ | z_);
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_size(*this, other);
  int s = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return (s % 2) == 0;
}

PauliString PauliString::adjoint() const {
  // (i^k W)† = i^{-k} W† and W† = W up to the sign absorbed below:
  // the canonical factor product X^x Z^z transposes to (-1)^{xz} X^x Z^z,
  // but the stored form tracks the literal Pauli (Hermitian per factor),
  // so only the global phase conjugates.
  PauliString s = *this;
  s.k_ = static_cast<uint8_t>((4 - k_) % 4);
  return s;
}

PauliString PauliString::with_phase_exponent(int k) const {
  PauliString s = *this;
  s.k_ = static_cast<uint8_t>(((k % 4) + 4) % 4);
  return s;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_size(a, b);
  uint64_t x3 = a.x_mask() ^ b.x_mask();
  uint64_t z3 = a.z_mask() ^ b.z_mask();
  // Per-qubit i-exponent from the canonical form P = i^{x z} X^x Z^z:
  // g = x1 z1 + x2 z2 + 2 z1 x2 - x3 z3 (mod 4), summed word-parallel.
  int g = std::popcount(a.x_mask() & a.z_mask()) +
          std::popcount(b.x_mask() & b.z_mask()) +
          2 * std::popcount(a.z_mask() & b.x_mask()) +
          3 * std::popcount(x3 & z3);
  int k = a.phase_exponent() + b.phase_exponent() + g;
  return PauliString::from_masks(a.n_qubits(), x3, z3, k);
}

PauliString conjugate(const PauliString& g, const PauliString& h) {
  check_same_size(g, h);
  bool anti = !g.commutes_with(h);
  return h.with_phase_exponent(h.phase_exponent() + (anti ? 2 : 0));
}

StateVector apply_to_state(const PauliString& p, const StateVector& psi) {
  const int64_t dim = int64_t{1} << p.n_qubits();
  if (psi.size() != dim) {
    throw std::invalid_argument("apply_to_state: dimension mismatch");
  }
  const uint64_t x = p.x_mask(), z = p.z_mask();
  const int yc = std::popcount(x & z);
  const std::complex<double> base =
      kPhases[(p.phase_exponent() + yc) % 4];
  StateVector out(dim);
  for (int64_t b = 0; b < dim; ++b) {
    const bool neg = std::popcount(static_cast<uint64_t>(b) & z) & 1;
    out[static_cast<int64_t>(static_cast<uint64_t>(b) ^ x)] =
        (neg ? -base : base) * psi[b];
  }
  return out;
}

std::string PauliString::str() const {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string out = kPrefix[k_];
  if (k_ != 0) out += ' ';
  if (is_identity_factors()) {
    out += 'I';
    return out;
  }
  bool first = true;
  for (int q = 1; q <= n_; ++q) {
    Pauli f = factor(q);
    if (f == Pauli::I) continue;
    if (!first) out += ' ';
    out += pauli_char(f);
    out += std::to_string(q);
    first = false;
  }
  return out;
}

PauliString PauliString::parse(std::string_view text, int n_qubits) {
  check_qubit_count(n_qubits);
  std::istringstream in{std::string(text)};
  std::string tok;
  PauliString s(n_qubits);
  bool first = true;
  while (in >> tok) {
    if (first) {
      first = false;
      if (tok == "+") continue;
      if (tok == "-") { s.k_ = 2; continue; }
      if (tok == "i" || tok == "+i") { s.k_ = 1; continue; }
      if (tok == "-i") { s.k_ = 3; continue; }
    }
    if (tok == "I") continue;  // bare identity token
    char letter = static_cast<char>(std::toupper(tok[0]));
    Pauli p;
    switch (letter) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw std::invalid_argument("PauliString::parse: bad factor '" + tok + "'");
    }
    size_t pos = 0;
    int q;
    try {
      q = std::stoi(tok.substr(1), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("PauliString::parse: bad index in '" + tok + "'");
    }
    if (pos != tok.size() - 1) {
      throw std::invalid_argument("PauliString::parse: bad token '" + tok + "'");
    }
    uint64_t bit = qubit_bit(n_qubits, q);
    if ((s.x_ | s.z_) & bit) {
      throw std::invalid_argument("PauliString::parse: duplicate qubit in '" +
                                  std::string(text) + "'");
    }
    if (p == Pauli::X || p == Pauli::Y) s.x_ |= bit;
    if (p == Pauli::Z || p == Pauli::Y) s.z_ |= bit;
  }
  return s;
}

}  // namespace bentchain

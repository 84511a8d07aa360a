#include "bentchain/chain.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bentchain {

Hamiltonian::Hamiltonian(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > PauliString::max_qubits) {
    throw std::invalid_argument("Hamiltonian: bad qubit count");
  }
}

void Hamiltonian::add(double coeff, const PauliString& op) {
  if (op.n_qubits() != n_) {
    throw std::invalid_argument("Hamiltonian::add: dimension mismatch");
  }
  if (!op.is_hermitian()) {
    throw std::invalid_argument("Hamiltonian::add: term must have phase ±1");
  }
  if (op.phase_exponent() == 2) coeff = -coeff;
  if (coeff == 0.0) return;
  for (auto& t : terms_) {
    if (t.op.x_mask() == op.x_mask() && t.op.z_mask() == op.z_mask()) {
      t.coeff += coeff;
      if (t.coeff == 0.0) {
        terms_.erase(terms_.begin() + (&t - terms_.data()));
      }
      return;
    }
  }
  terms_.push_back({coeff, op.with_phase_exponent(0)});
}

double Hamiltonian::coefficient_of(const PauliString& op) const {
  for (const auto& t : terms_) {
    if (t.op.x_mask() == op.x_mask() && t.op.z_mask() == op.z_mask()) {
      return op.phase_exponent() == 2 ? -t.coeff : t.coeff;
    }
  }
  return 0.0;
}

bool Hamiltonian::is_real() const {
  for (const auto& t : terms_) {
    if (std::popcount(t.op.x_mask() & t.op.z_mask()) % 2 != 0) return false;
  }
  return true;
}

Eigen::MatrixXcd Hamiltonian::dense() const {
  static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int64_t dim = int64_t{1} << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    const uint64_t x = t.op.x_mask(), z = t.op.z_mask();
    const std::complex<double> base = t.coeff * i_pow[std::popcount(x & z) % 4];
    for (int64_t b = 0; b < dim; ++b) {
      const bool neg = std::popcount(static_cast<uint64_t>(b) & z) & 1;
      m(static_cast<int64_t>(static_cast<uint64_t>(b) ^ x), b) +=
          neg ? -base : base;
    }
  }
  return m;
}

std::string Hamiltonian::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << (t.coeff < 0 ? "  - " : "  + ");
    else if (t.coeff < 0) out << "- ";
    out << std::abs(t.coeff) << " * " << t.op.str();
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

double ChainSpec::eigenenergy(int qubit) const {
  if (eigenenergies.empty()) return 0.0;
  return eigenenergies.at(qubit - 1);
}

void ChainSpec::validate() const {
  if (n_qubits < 2) throw std::invalid_argument("ChainSpec: N must be >= 2");
  if (lambda <= 0) throw std::invalid_argument("ChainSpec: lambda must be > 0");
  if (!eigenenergies.empty() &&
      eigenenergies.size() != static_cast<size_t>(n_qubits)) {
    throw std::invalid_argument("ChainSpec: eigenenergies size mismatch");
  }
  if (bend_alpha) {
    if (*bend_alpha < 2 || *bend_alpha > n_qubits - 1) {
      throw std::invalid_argument("ChainSpec: bend alpha must be in [2, N-1]");
    }
  }
}

std::vector<double> pst_couplings(int n_qubits, double lambda) {
  if (n_qubits < 2) throw std::invalid_argument("pst_couplings: N must be >= 2");
  if (lambda <= 0) throw std::invalid_argument("pst_couplings: lambda must be > 0");
  std::vector<double> j(n_qubits - 1);
  for (int i = 1; i < n_qubits; ++i) {
    j[i - 1] = 0.5 * lambda * std::sqrt(double(i) * double(n_qubits - i));
  }
  return j;
}

double default_gamma(int n_qubits, int alpha, double lambda) {
  const double left =
      0.5 * lambda * std::sqrt(double(alpha - 1) * double(n_qubits - alpha + 1));
  const double right =
      0.5 * lambda * std::sqrt(double(alpha) * double(n_qubits - alpha));
  return 0.4 * std::max(left, right);
}

double default_gamma(const ChainSpec& spec) {
  spec.validate();
  if (!spec.bend_alpha) {
    throw std::invalid_argument("default_gamma: spec has no bend");
  }
  return default_gamma(spec.n_qubits, *spec.bend_alpha, spec.lambda);
}

double resolved_gamma(const ChainSpec& spec) {
  if (spec.bend_gamma) return *spec.bend_gamma;
  return default_gamma(spec);
}

namespace {

void add_pair(Hamiltonian& h, int n, int i, int j, double coeff) {
  h.add(coeff, multiply(PauliString::single(n, i, Pauli::X),
                        PauliString::single(n, j, Pauli::X)));
  h.add(coeff, multiply(PauliString::single(n, i, Pauli::Y),
                        PauliString::single(n, j, Pauli::Y)));
}

}  // namespace

Hamiltonian ideal_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  Hamiltonian h(n);
  for (int i = 1; i <= n; ++i) {
    const double b = spec.eigenenergy(i);
    if (b != 0.0) h.add(b, PauliString::single(n, i, Pauli::Z));
  }
  const auto j = pst_couplings(n, spec.lambda);
  for (int i = 1; i < n; ++i) {
    add_pair(h, n, i, i + 1, 0.5 * j[i - 1]);
  }
  return h;
}

Hamiltonian coupling_part(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  Hamiltonian h(n);
  const auto j = pst_couplings(n, spec.lambda);
  for (int i = 1; i < n; ++i) {
    add_pair(h, n, i, i + 1, 0.5 * j[i - 1]);
  }
  return h;
}

Hamiltonian build_hamiltonian(const ChainSpec& spec) {
  Hamiltonian h = ideal_hamiltonian(spec);
  if (spec.bend_alpha) {
    const int a = *spec.bend_alpha;
    add_pair(h, spec.n_qubits, a - 1, a + 1, -0.5 * resolved_gamma(spec));
  }
  return h;
}

std::complex<double> expected_phase(int n_qubits, double b_uniform, double t) {
  static const std::complex<double> minus_i_pow[4] = {
      {1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  std::complex<double> p = minus_i_pow[(n_qubits - 1) % 4];
  return p * std::polar(1.0, 2.0 * b_uniform * t);
}

int middle_alpha(int n_qubits) {
  return (n_qubits % 2 == 1) ? (n_qubits + 1) / 2 : n_qubits / 2 + 1;
}

std::vector<double> disorder_eigenenergies(int n_qubits, double beta,
                                           double lambda, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-beta * lambda, beta * lambda);
  std::vector<double> b(n_qubits);
  for (auto& v : b) v = dist(rng);
  return b;
}

ChainSpec chain_spec_from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ChainSpec spec;
  spec.n_qubits = j.at("n_qubits").get<int>();
  if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
  if (j.contains("eigenenergies")) {
    const auto& e = j.at("eigenenergies");
    if (e.is_number()) {
      spec.eigenenergies.assign(spec.n_qubits, e.get<double>());
    } else if (e.is_array()) {
      spec.eigenenergies = e.get<std::vector<double>>();
    } else if (e.is_object()) {
      const double beta = e.at("disorder").get<double>();
      const uint64_t seed = e.value("seed", uint64_t{0});
      spec.eigenenergies =
          disorder_eigenenergies(spec.n_qubits, beta, spec.lambda, seed);
      spec.disorder_beta = beta;
      spec.disorder_seed = seed;
    } else {
      throw std::invalid_argument("ChainSpec json: bad eigenenergies");
    }
  }
  if (j.contains("bend") && !j.at("bend").is_null()) {
    const auto& b = j.at("bend");
    spec.bend_alpha = b.at("alpha").get<int>();
    if (b.contains("gamma") && !b.at("gamma").is_string()) {
      spec.bend_gamma = b.at("gamma").get<double>();
    }
  }
  spec.validate();
  return spec;
}

std::string chain_spec_to_json_text(const ChainSpec& spec) {
  nlohmann::ordered_json j;
  j["n_qubits"] = spec.n_qubits;
  j["lambda"] = spec.lambda;
  if (!spec.eigenenergies.empty()) {
    j["eigenenergies"] = spec.eigenenergies;
    if (spec.disorder_beta) {
      j["disorder_meta"] = {{"disorder", *spec.disorder_beta},
                            {"seed", spec.disorder_seed.value_or(0)}};
    }
  }
  if (spec.bend_alpha) {
    nlohmann::ordered_json b;
    b["alpha"] = *spec.bend_alpha;
    if (spec.bend_gamma) {
      b["gamma"] = *spec.bend_gamma;
    } else {
      b["gamma"] = "default";
    }
    j["bend"] = b;
  }
  return j.dump();
}

}  // namespace bentchain

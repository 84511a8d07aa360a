#include <doctest.h>

#include <cmath>

#include "bentchain/chain.hpp"
#include "bentchain/engine.hpp"
#include "oracle.hpp"

using namespace bentchain;

namespace {

Eigen::MatrixXcd excitation_number(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    m(b, b) = double(std::popcount(uint64_t(b)));
  }
  return m;
}

double comm_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("pst_couplings matches the closed form") {
  const auto j10 = pst_couplings(10, 1.0);
  CHECK(j10[4] == doctest::Approx(2.5).epsilon(1e-15));  // J_5 = (1/2)sqrt(25)
  CHECK(j10[0] == doctest::Approx(1.5).epsilon(1e-15));  // J_1 = (1/2)sqrt(9)
  CHECK(j10[0] == doctest::Approx(j10[8]).epsilon(1e-15));  // J_1 == J_9
  const auto j2 = pst_couplings(2, 1.0);
  CHECK(j2[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(pst_couplings(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pst_couplings(4, 0.0), std::invalid_argument);
}

TEST_CASE("default_gamma evaluates the section-5 formula") {
  ChainSpec s;
  s.n_qubits = 10;
  s.bend_alpha = 5;
  CHECK(default_gamma(s) == doctest::Approx(1.0).epsilon(1e-14));
  s.n_qubits = 11;
  s.bend_alpha = 6;
  CHECK(default_gamma(s) ==
        doctest::Approx(0.4 * 0.5 * std::sqrt(30.0)).epsilon(1e-14));
  // both branches computed, max taken
  CHECK(default_gamma(10, 5, 1.0) ==
        doctest::Approx(0.4 * std::max(0.5 * std::sqrt(24.0), 2.5)));
  ChainSpec none;
  none.n_qubits = 5;
  CHECK_THROWS_AS(default_gamma(none), std::invalid_argument);
}

TEST_CASE("build_hamiltonian term structure") {
  // N=3, B=0, no bend: two coupling pairs in canonical order.
  ChainSpec s;
  s.n_qubits = 3;
  const auto h = build_hamiltonian(s);
  const auto j = pst_couplings(3, 1.0);
  REQUIRE(h.terms().size() == 4);
  CHECK(h.terms()[0].op == PauliString::parse("X1 X2", 3));
  CHECK(h.terms()[1].op == PauliString::parse("Y1 Y2", 3));
  CHECK(h.terms()[2].op == PauliString::parse("X2 X3", 3));
  CHECK(h.terms()[3].op == PauliString::parse("Y2 Y3", 3));
  CHECK(h.terms()[0].coeff == doctest::Approx(0.5 * j[0]).epsilon(1e-15));
  CHECK(h.terms()[2].coeff == doctest::Approx(0.5 * j[1]).epsilon(1e-15));

  // bend at alpha=2 adds the (1,3) pair last, opposite sign to couplings
  ChainSpec sb = s;
  sb.bend_alpha = 2;
  sb.bend_gamma = 0.7;
  const auto hb = build_hamiltonian(sb);
  REQUIRE(hb.terms().size() == 6);
  CHECK(hb.terms()[4].op == PauliString::parse("X1 X3", 3));
  CHECK(hb.terms()[5].op == PauliString::parse("Y1 Y3", 3));
  CHECK(hb.terms()[4].coeff == doctest::Approx(-0.35).epsilon(1e-15));

  // N=2 with uniform B: Z terms first
  ChainSpec s2;
  s2.n_qubits = 2;
  s2.eigenenergies = {0.3, 0.3};
  const auto h2 = build_hamiltonian(s2);
  REQUIRE(h2.terms().size() == 4);
  CHECK(h2.terms()[0].op == PauliString::parse("Z1", 2));
  CHECK(h2.terms()[1].op == PauliString::parse("Z2", 2));
  CHECK(h2.terms()[0].coeff == doctest::Approx(0.3));
  CHECK(h2.terms()[2].op == PauliString::parse("X1 X2", 2));

  ChainSpec bad;
  bad.n_qubits = 4;
  bad.bend_alpha = 4;  // must be <= N-1
  CHECK_THROWS_AS(build_hamiltonian(bad), std::invalid_argument);
}

TEST_CASE("expected_phase follows (-i)^(N-1) e^(2iBT)") {
  CHECK(std::abs(expected_phase(10, 0.0, 1.0) -
                 std::complex<double>(0.0, -1.0)) < 1e-15);  // (-i)^9 = -i
  CHECK(std::abs(expected_phase(1, 0.4, 0.0) - 1.0) < 1e-15);
  // B = (N-1)lambda/4 at T = pi cancels the phase
  const int n = 5;
  CHECK(std::abs(expected_phase(n, 0.25 * (n - 1), M_PI) - 1.0) < 1e-12);
}

TEST_CASE("excitation and parity conservation") {
  for (int n = 3; n <= 6; ++n) {
    ChainSpec s;
    s.n_qubits = n;
    s.eigenenergies.assign(n, 0.2);
    if (n >= 4) s.bend_alpha = middle_alpha(n);
    const auto h = build_hamiltonian(s);
    for (const auto& t : h.terms()) {
      const int flips = std::popcount(t.op.x_mask());
      CHECK((flips == 0 || flips == 2));
    }
    CHECK(comm_norm(oracle::dense(h), excitation_number(n)) < 1e-12);
  }
}

TEST_CASE("uniform-B Z part commutes with the couplings") {
  for (int n = 2; n <= 5; ++n) {
    ChainSpec s;
    s.n_qubits = n;
    Hamiltonian zpart(n);
    for (int i = 1; i <= n; ++i) {
      zpart.add(0.7, PauliString::single(n, i, Pauli::Z));
    }
    const auto coup = coupling_part(s);
    CHECK(comm_norm(oracle::dense(zpart), oracle::dense(coup)) < 1e-12);
  }
}

TEST_CASE("perfect transfer at T = pi/lambda with the known phase") {
  for (int n = 2; n <= 8; ++n) {
    ChainSpec s;
    s.n_qubits = n;
    const auto prop = Propagator::spectral_decompose(build_hamiltonian(s));
    const StateVector psi = prop.evolve(excitation_state(n, 1), M_PI);
    const std::complex<double> amp = excitation_state(n, n).dot(psi);
    CHECK(std::abs(amp) >= 1.0 - 1e-9);
    CHECK(std::abs(amp / std::abs(amp) - expected_phase(n, 0.0, M_PI)) < 1e-8);
  }
}

TEST_CASE("middle_alpha convention") {
  CHECK(middle_alpha(4) == 3);
  CHECK(middle_alpha(9) == 5);
  CHECK(middle_alpha(10) == 6);
  CHECK(middle_alpha(11) == 6);
}

TEST_CASE("chain spec json round trip") {
  ChainSpec s;
  s.n_qubits = 6;
  s.lambda = 2.0;
  s.eigenenergies = {0.1, -0.2, 0.3, 0.0, 0.5, -0.1};
  s.bend_alpha = 4;
  const auto text = chain_spec_to_json_text(s);
  const auto back = chain_spec_from_json_text(text);
  CHECK(back.n_qubits == s.n_qubits);
  CHECK(back.lambda == s.lambda);
  CHECK(back.eigenenergies == s.eigenenergies);
  CHECK(back.bend_alpha == s.bend_alpha);
  CHECK_FALSE(back.bend_gamma.has_value());  // "default" survives the trip

  const auto with_disorder = chain_spec_from_json_text(
      R"({"n_qubits": 5, "eigenenergies": {"disorder": 0.3, "seed": 9}})");
  CHECK(with_disorder.eigenenergies.size() == 5);
  CHECK(with_disorder.disorder_beta == 0.3);
  // deterministic draw
  const auto again = chain_spec_from_json_text(
      R"({"n_qubits": 5, "eigenenergies": {"disorder": 0.3, "seed": 9}})");
  CHECK(again.eigenenergies == with_disorder.eigenenergies);
  for (double b : with_disorder.eigenenergies) {
    CHECK(std::abs(b) <= 0.3);
  }

  const auto scalar = chain_spec_from_json_text(
      R"({"n_qubits": 4, "eigenenergies": 0.25, "bend": {"alpha": 2, "gamma": 0.9}})");
  CHECK(scalar.eigenenergies == std::vector<double>(4, 0.25));
  CHECK(scalar.bend_gamma == 0.9);
}

TEST_CASE("hamiltonian merges duplicate patterns and enforces hermiticity") {
  Hamiltonian h(2);
  h.add(0.5, PauliString::parse("X1 X2", 2));
  h.add(0.25, PauliString::parse("- X1 X2", 2));  // sign folds into coeff
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms()[0].coeff == doctest::Approx(0.25));
  CHECK_THROWS_AS(h.add(1.0, PauliString::parse("i Z1", 2)),
                  std::invalid_argument);
  h.add(-0.25, PauliString::parse("X1 X2", 2));
  CHECK(h.empty());
}

}  // TEST_SUITE

#include <doctest.h>

#include <random>

#include "bentchain/pauli.hpp"
#include "oracle.hpp"

using namespace bentchain;

namespace {

PauliString random_string(int n, std::mt19937_64& rng, bool random_phase = true) {
  std::uniform_int_distribution<uint64_t> bits(0, (uint64_t{1} << n) - 1);
  std::uniform_int_distribution<int> ph(0, 3);
  return PauliString::from_masks(n, bits(rng), bits(rng),
                                 random_phase ? ph(rng) : 0);
}

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector psi(int64_t{1} << n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = {g(rng), g(rng)};
  psi.normalize();
  return psi;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("pauli") {

TEST_CASE("single-qubit products follow sigma^x sigma^y = i sigma^z") {
  const auto x = PauliString::parse("X1", 2);
  const auto y = PauliString::parse("Y1", 2);
  CHECK(multiply(x, y) == PauliString::parse("i Z1", 2));
  CHECK(multiply(y, x) == PauliString::parse("-i Z1", 2));
  const auto yz = multiply(PauliString::parse("Y2", 2), PauliString::parse("Z2", 2));
  CHECK(yz == PauliString::parse("i X2", 2));
}

TEST_CASE("identity and involution") {
  const auto id = PauliString::identity(3);
  const auto p = PauliString::parse("X1 Z3", 3);
  CHECK(multiply(p, id) == p);
  CHECK(multiply(id, p) == p);
  const auto zz = PauliString::parse("Z1 Z2", 2);
  CHECK(multiply(zz, zz) == PauliString::identity(2));
}

TEST_CASE("multiply rejects dimension mismatch") {
  CHECK_THROWS_AS(multiply(PauliString::identity(2), PauliString::identity(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(conjugate(PauliString::identity(2), PauliString::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("conjugation flips sign exactly on anticommuting pairs") {
  // g = Z1 acts as time reversal on X1 X2.
  const auto g = PauliString::parse("Z1", 2);
  const auto h = PauliString::parse("X1 X2", 2);
  CHECK(conjugate(g, h) == PauliString::parse("- X1 X2", 2));
  // XX conjugated by XX is itself.
  const auto xx = PauliString::parse("X1 X2", 2);
  CHECK(conjugate(xx, xx) == xx);
  // sigma^x sigma^z sigma^x = -sigma^z.
  CHECK(conjugate(PauliString::parse("X1", 1), PauliString::parse("Z1", 1)) ==
        PauliString::parse("- Z1", 1));
  CHECK(conjugate(PauliString::parse("Y1", 1), PauliString::parse("Z1", 1)) ==
        PauliString::parse("- Z1", 1));
}

TEST_CASE("apply_to_state permutes and phases basis states") {
  const int n = 3;
  StateVector psi = StateVector::Zero(8);
  psi[1] = 1.0;  // |100> : excitation on qubit 1
  const auto x1 = PauliString::parse("X1", n);
  StateVector out = apply_to_state(x1, psi);
  CHECK(out[0] == std::complex<double>(1.0, 0.0));

  const auto id = PauliString::identity(n);
  StateVector rnd(8);
  std::mt19937_64 rng(7);
  rnd = random_state(n, rng);
  CHECK((apply_to_state(id, rnd) - rnd).norm() == 0.0);

  // Z1 on (|0>+|1>)/sqrt(2) x |0>
  StateVector plus = StateVector::Zero(4);
  plus[0] = plus[1] = 1.0 / std::sqrt(2.0);
  StateVector z = apply_to_state(PauliString::parse("Z1", 2), plus);
  CHECK(z[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(z[1].real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("apply_to_state rejects dimension mismatch") {
  CHECK_THROWS_AS(apply_to_state(PauliString::identity(3), StateVector::Zero(4)),
                  std::invalid_argument);
}

TEST_CASE("group closure and associativity on random strings") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + int(rng() % 8);
    const auto a = random_string(n, rng);
    const auto b = random_string(n, rng);
    const auto c = random_string(n, rng);
    const auto ab = multiply(a, b);
    CHECK(ab.phase_exponent() >= 0);
    CHECK(ab.phase_exponent() < 4);
    CHECK(multiply(ab, c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("conjugation is an involution") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + int(rng() % 8);
    const auto g = random_string(n, rng, false);
    const auto h = random_string(n, rng);
    CHECK(conjugate(g, conjugate(g, h)) == h);
  }
}

TEST_CASE("dense matrix oracle: multiply, conjugate, apply are exact") {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 60; ++it) {
    const int n = 1 + int(rng() % 4);
    const auto a = random_string(n, rng);
    const auto b = random_string(n, rng);
    CHECK(max_abs_diff(oracle::dense(multiply(a, b)),
                       oracle::dense(a) * oracle::dense(b)) == 0.0);
    const auto g = random_string(n, rng, false);
    CHECK(max_abs_diff(oracle::dense(conjugate(g, a)),
                       oracle::dense(g).adjoint() * oracle::dense(a) *
                           oracle::dense(g)) == 0.0);
    const StateVector psi = random_state(n, rng);
    const StateVector via_masks = apply_to_state(a, psi);
    const StateVector via_dense = oracle::dense(a) * psi;
    CHECK((via_masks - via_dense).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("apply_to_state preserves the norm") {
  std::mt19937_64 rng(45);
  for (int it = 0; it < 50; ++it) {
    const int n = 1 + int(rng() % 8);
    const auto p = random_string(n, rng);
    const StateVector psi = random_state(n, rng);
    CHECK(std::abs(apply_to_state(p, psi).norm() - 1.0) < 1e-15);
  }
}

TEST_CASE("hermitian strings square to the identity") {
  std::mt19937_64 rng(46);
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + int(rng() % 6);
    auto p = random_string(n, rng, false);  // phase +1
    const auto sq = multiply(p, p);
    CHECK(sq.is_identity());
  }
}

TEST_CASE("text round trip") {
  for (const char* text : {"X1 X2", "Z3", "-i Y2 X5", "i X1", "- Z2 Z4", "I"}) {
    const auto p = PauliString::parse(text, 5);
    CHECK(PauliString::parse(p.str(), 5) == p);
  }
  CHECK(PauliString::parse("X1 X2", 4).str() == "X1 X2");
  CHECK(PauliString::parse("-i Y2 X5", 5).str() == "-i Y2 X5");
  CHECK(PauliString::identity(3).str() == "I");
  CHECK(PauliString::parse("+ Z3", 3).str() == "Z3");
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(PauliString::parse("X0", 3), std::out_of_range);
  CHECK_THROWS_AS(PauliString::parse("X4", 3), std::out_of_range);
  CHECK_THROWS_AS(PauliString::parse("Q1", 3), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("X1 Z1", 3), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("Xa", 3), std::invalid_argument);
}

}  // TEST_SUITE

#include <doctest.h>

#include <random>

#include "bentchain/errors.hpp"
#include "oracle.hpp"

using namespace bentchain;

namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector psi(int64_t{1} << n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = {g(rng), g(rng)};
  psi.normalize();
  return psi;
}

// Dense oracle for the imperfect pulse: product over non-identity factors of
// sigma (cos I - i sin sigma) embedded on the right qubit.
Eigen::MatrixXcd imperfect_dense(const PauliString& p, double theta) {
  const Eigen::Index dim = Eigen::Index(1) << p.n_qubits();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (int q = 1; q <= p.n_qubits(); ++q) {
    const Pauli f = p.factor(q);
    if (f == Pauli::I) continue;
    const Eigen::Matrix2cd sig = oracle::mat(f);
    const Eigen::Matrix2cd u1 =
        sig * (std::cos(theta) * Eigen::Matrix2cd::Identity() -
               std::complex<double>(0, 1) * std::sin(theta) * sig);
    // embed u1 on qubit q
    Eigen::MatrixXcd emb = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = p.n_qubits(); k >= 1; --k) {
      emb = oracle::kron(emb, k == q ? Eigen::MatrixXcd(u1)
                                     : Eigen::MatrixXcd(
                                           Eigen::Matrix2cd::Identity()));
    }
    u = emb * u;
  }
  return u;
}

}  // namespace

TEST_SUITE("errors") {

TEST_CASE("jittered gaps: exact at q = 0, clamped, right statistics") {
  std::mt19937_64 rng(21);
  const auto exact = jittered_gaps(0.25, 10, 0.0, rng);
  for (double g : exact) CHECK(g == 0.25);

  const auto clamped = jittered_gaps(0.1, 2000, 0.5, rng);
  for (double g : clamped) CHECK(g >= 0.0);

  const double dt = 0.37, q = 0.2;
  const int samples = 100000;
  const auto gaps = jittered_gaps(dt, samples, q, rng);
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= samples;
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= samples;
  CHECK(std::abs(mean - dt) < 0.01 * dt);
  CHECK(std::abs(std::sqrt(var) - q * dt) < 0.03 * q * dt);

  CHECK_THROWS_AS(jittered_gaps(0.1, 3, -0.1, rng), std::invalid_argument);
}

TEST_CASE("theta = 0 reduces to the exact pulse") {
  std::mt19937_64 rng(22);
  const auto p = PauliString::parse("X1 Y3 Z4", 4);
  const StateVector psi = random_state(4, rng);
  const StateVector a = imperfect_pulse(p, 0.0, psi);
  const StateVector b = apply_to_state(p, psi);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("theta = pi flips only a global sign per factor") {
  std::mt19937_64 rng(23);
  const auto p = PauliString::parse("X2", 3);
  const StateVector psi = random_state(3, rng);
  const StateVector a = imperfect_pulse(p, M_PI, psi);
  const StateVector b = apply_to_state(p, psi);
  CHECK((a + b).cwiseAbs().maxCoeff() < 1e-12);  // sigma e^{-i pi sigma} = -sigma
  CHECK(std::abs(std::abs(psi.dot(a)) - std::abs(psi.dot(b))) < 1e-12);
}

TEST_CASE("theta = pi/2 erases a single X pulse up to -i") {
  std::mt19937_64 rng(24);
  const auto p = PauliString::parse("X1", 2);
  const StateVector psi = random_state(2, rng);
  const StateVector a = imperfect_pulse(p, M_PI / 2.0, psi);
  const StateVector want = std::complex<double>(0.0, -1.0) * psi;
  CHECK((a - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("imperfect pulses are unitary and match the dense oracle") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  std::uniform_int_distribution<uint64_t> bits(0, 15);
  for (int it = 0; it < 40; ++it) {
    const int n = 4;
    const auto p = PauliString::from_masks(n, bits(rng), bits(rng));
    const double theta = angle(rng);
    const StateVector psi = random_state(n, rng);
    const StateVector got = imperfect_pulse(p, theta, psi);
    CHECK(std::abs(got.norm() - 1.0) < 1e-12);
    const StateVector want = imperfect_dense(p, theta) * psi;
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("theta units resolve against the nominal gap") {
  ErrorModel m;
  m.theta_coeff = 0.1;
  CHECK(m.theta_for_gap(0.5) == doctest::Approx(0.05));
  m.theta_units = ErrorModel::ThetaUnits::Radians;
  CHECK(m.theta_for_gap(0.5) == doctest::Approx(0.1));
  ErrorModel none;
  CHECK(none.theta_for_gap(0.5) == 0.0);
  CHECK_FALSE(none.any());
  CHECK(m.any());
}

}  // TEST_SUITE

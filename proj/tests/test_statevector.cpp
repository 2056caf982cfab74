#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ooqeom/statevector.hpp"
#include "test_helpers.hpp"

using namespace ooq;
using namespace ooq::testing;

namespace {
Statevector random_state(int n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Statevector sv(n);
  for (std::size_t i = 0; i < sv.dim(); ++i) sv[i] = cplx{g(rng), g(rng)};
  const double nm = sv.norm();
  for (std::size_t i = 0; i < sv.dim(); ++i) sv[i] /= nm;
  return sv;
}
}  // namespace

TEST_CASE("reference states put qubit 0 in the most significant index bit") {
  const auto sv = Statevector::reference(4, 2);  // |1100>
  CHECK(sv.dim() == 16);
  CHECK(sv[12] == cplx{1.0, 0.0});
  CHECK(sv.norm() == doctest::Approx(1.0));
  const auto vac = Statevector::reference(3, 0);
  CHECK(vac[0] == cplx{1.0, 0.0});
}

TEST_CASE("Z on qubit 0 of two qubits is diag(1,1,-1,-1)") {
  const auto z0 = PauliString::from_label("ZI");
  for (std::size_t basis = 0; basis < 4; ++basis) {
    Statevector sv(2);
    sv[basis] = 1.0;
    sv.apply_pauli(z0);
    CHECK(sv[basis] == (basis < 2 ? cplx{1, 0} : cplx{-1, 0}));
  }
}

TEST_CASE("pauli application matches the dense matrix action") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_pauli(3, rng);
    auto sv = random_state(3, rng);
    const DenseVector expect = dense_pauli(p) * dense_state(sv);
    sv.apply_pauli(p);
    CHECK((dense_state(sv) - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("rotations match cos/sin of the dense generator and stay unitary") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_pauli(3, rng);
    const double a = ang(rng);
    auto sv = random_state(3, rng);
    const DenseMatrix pm = dense_pauli(p);
    const DenseMatrix u = std::cos(0.5 * a) * DenseMatrix::Identity(8, 8) -
                          cplx{0, 1} * std::sin(0.5 * a) * pm;
    const DenseVector expect = u * dense_state(sv);
    sv.apply_rotation(p, a);
    CHECK((dense_state(sv) - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sv.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expectations agree with dense quadratic forms") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PauliSum a(3);
    for (int k = 0; k < 5; ++k) a.add(random_pauli(3, rng), cplx{coeff(rng), coeff(rng)});
    const auto sv = random_state(3, rng);
    const DenseVector v = dense_state(sv);
    const cplx expect = (v.adjoint() * dense_sum(a) * v)(0);
    CHECK(std::abs(sv.expectation(a) - expect) < 1e-12);
    // applied() is consistent with expectation(): <psi|A|psi> = <psi|(A psi)>
    CHECK(std::abs(sv.inner(sv.applied(a)) - expect) < 1e-12);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  Statevector sv(2);
  CHECK_THROWS_AS(sv.apply_pauli(PauliString::from_label("XXX")), Error);
  CHECK_THROWS_AS(sv.expectation(PauliString::from_label("X")), Error);
}

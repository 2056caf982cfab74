#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ooqeom/integrals.hpp"
#include "ooqeom/jordan_wigner.hpp"
#include "ooqeom/oracle.hpp"
#include "test_helpers.hpp"

using namespace ooq;
using namespace ooq::testing;

namespace {
std::string fixture(const std::string& name) { return std::string(OOQEOM_FIXTURE_DIR) + "/" + name; }
}

TEST_CASE("to_dense agrees with the test-side Kronecker construction") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    PauliSum s(3);
    for (int k = 0; k < 5; ++k) s.add(random_pauli(3, rng), cplx{coeff(rng), coeff(rng)});
    CHECK((to_dense(s) - dense_sum(s)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("determinant algebra and the qubit mapping build the same matrices") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> orb(0, 3);
  std::uniform_int_distribution<int> flag(0, 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    FermionOperator op;
    for (int t = 0; t < 3; ++t) {
      std::vector<LadderOp> ops;
      const int len = 1 + trial % 4;
      for (int k = 0; k < len; ++k)
        ops.push_back(LadderOp{static_cast<std::uint32_t>(orb(rng)), flag(rng) == 1});
      op.add_term(cplx{coeff(rng), coeff(rng)}, std::move(ops));
    }
    const auto direct = fermion_to_dense(op, 4);
    const auto mapped = to_dense(jordan_wigner(op, 4));
    CHECK((direct - mapped).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("number operator is diagonal with the expected counts") {
  FermionOperator n_op;
  for (std::uint32_t p = 0; p < 3; ++p)
    n_op += FermionOperator::creation(p) * FermionOperator::annihilation(p);
  const auto m = fermion_to_dense(n_op, 3);
  // index bits are (orbital 0, orbital 1, orbital 2) from most significant
  CHECK(m(0, 0) == cplx{0, 0});
  CHECK(m(4, 4) == cplx{1, 0});  // |100>
  CHECK(m(6, 6) == cplx{2, 0});  // |110>
  CHECK(m(7, 7) == cplx{3, 0});
  CHECK(m.cwiseAbs().sum() == doctest::Approx(0 + 1 + 1 + 1 + 2 + 2 + 2 + 3));
}

TEST_CASE("sector-restricted diagonalization matches the full spectrum") {
  const auto mi = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const auto h = jordan_wigner(build_hamiltonian(mi), 4);

  const auto full = eigensolve(h, SectorBasis::full(4));
  const auto sector = eigensolve(h, SectorBasis::particle_sector(4, 2, true));
  CHECK(sector.basis.dim() == 4);  // (2,2) singlet-projected determinants

  // every sector eigenvalue appears in the full spectrum
  for (Eigen::Index k = 0; k < sector.values.size(); ++k) {
    double best = 1e9;
    for (Eigen::Index j = 0; j < full.values.size(); ++j)
      best = std::min(best, std::abs(full.values[j] - sector.values[k]));
    CHECK(best < 1e-10);
  }
  // correlation lowers the energy below the determinant value
  CHECK(sector.values[0] < hf_determinant_energy(mi) - 1e-4);
}

TEST_CASE("H2/STO-3G full CI ground-state energy") {
  const auto mi = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const auto h = jordan_wigner(build_hamiltonian(mi), 4);
  const auto spec = eigensolve(h, SectorBasis::particle_sector(4, 2, true));
  // literature value for r = 0.7414 A
  CHECK(spec.values[0] == doctest::Approx(-1.13727).epsilon(2e-5));
}

TEST_CASE("matrix elements are conjugate-symmetric for Hermitian operators") {
  const auto mi = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const auto h = jordan_wigner(build_hamiltonian(mi), 4);
  const auto spec = eigensolve(h, SectorBasis::particle_sector(4, 2, true));
  PauliSum z(4);
  z.add(PauliString::from_label("ZIII"), 0.7);
  z.add(PauliString::from_label("XXII"), 0.1);
  const cplx a = exact_matrix_element(spec, z, 0, 1);
  const cplx b = exact_matrix_element(spec, z, 1, 0);
  CHECK(std::abs(a - std::conj(b)) < 1e-12);
}

TEST_CASE("closure checking flags sector-breaking operators") {
  PauliSum x(2);
  x.add(PauliString::from_label("XI"), 1.0);
  const auto basis = SectorBasis::particle_sector(2, 1, false);
  CHECK_THROWS_AS(dense_in_sector(x, basis, true), Error);
  CHECK_NOTHROW(dense_in_sector(x, basis, false));
}

TEST_CASE("the dense path refuses oversized systems") {
  CHECK_THROWS_AS(to_dense(PauliSum(20)), Error);
  CHECK_THROWS_AS(SectorBasis::full(16), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ooqeom/active_space.hpp"
#include "ooqeom/jordan_wigner.hpp"
#include "ooqeom/statevector.hpp"

using namespace ooq;

namespace {
std::string fixture(const std::string& name) { return std::string(OOQEOM_FIXTURE_DIR) + "/" + name; }

double max_term_dev(const PauliSum& a, const PauliSum& b) {
  double dev = 0.0;
  PauliSum d = a;
  d -= b;
  for (const auto& [k, c] : d.terms()) dev = std::max(dev, std::abs(c));
  return dev;
}
}  // namespace

TEST_CASE("partition validation rejects inconsistent splits") {
  const auto mi = parse_fcidump_file(fixture("beh2_sto3g.fcidump"));
  const ActiveSpaceSpec ok{1, 4, 2};
  const ActiveSpaceSpec wrong_total{1, 4, 3};
  const ActiveSpaceSpec too_many_electrons{0, 2, 5};
  const ActiveSpaceSpec negative_electrons{4, 2, 1};
  const ActiveSpaceSpec negative_block{0, -1, 8};
  CHECK_NOTHROW(ok.validate(mi));
  CHECK_THROWS_AS(wrong_total.validate(mi), InputError);
  CHECK_THROWS_AS(too_many_electrons.validate(mi), InputError);
  CHECK_THROWS_AS(negative_electrons.validate(mi), InputError);
  CHECK_THROWS_AS(negative_block.validate(mi), InputError);
}

TEST_CASE("projecting with no frozen orbitals is the identity") {
  const auto mi = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const ActiveSpaceSpec spec{0, 2, 0};
  const auto full = jordan_wigner(build_hamiltonian(mi), 4);
  CHECK(max_term_dev(project(full, spec), full) < 1e-14);
}

TEST_CASE("projection drops X/Y on frozen qubits and signs inactive Z") {
  const ActiveSpaceSpec spec{1, 1, 1};  // qubits 0,1 inactive; 2,3 active; 4,5 virtual
  PauliSum full(6);
  full.add(PauliString::from_label("IIXYII"), 2.0);   // survives unchanged
  full.add(PauliString::from_label("ZIXYII"), 3.0);   // inactive Z -> factor -1
  full.add(PauliString::from_label("ZZXYIZ"), 5.0);   // two inactive Z, one virtual Z -> +1
  full.add(PauliString::from_label("XIXYII"), 7.0);   // X on inactive -> dropped
  full.add(PauliString::from_label("IIIIYI"), 11.0);  // Y on virtual -> dropped
  full.add(PauliString::from_label("ZIIIII"), 13.0);  // collapses to a constant, -13
  const auto act = project(full, spec);
  CHECK(act.n_qubits() == 2);
  CHECK(act.coefficient(PauliString::from_label("XY")) == cplx{2.0 - 3.0 + 5.0, 0.0});
  CHECK(act.coefficient(PauliString::identity(2)) == cplx{-13.0, 0.0});
  CHECK(act.size() == 2);
}

TEST_CASE("effective-integral Hamiltonian equals the projected full Hamiltonian") {
  const auto mi = parse_fcidump_file(fixture("beh2_sto3g.fcidump"));
  const ActiveSpaceSpec spec{1, 4, 2};
  const auto full = jordan_wigner(build_hamiltonian(mi), spec.n_qubits_full());
  const auto projected = project(full, spec);
  const auto direct = active_hamiltonian(mi, spec);
  CHECK(direct.n_qubits() == 8);
  CHECK(max_term_dev(direct, projected) < 1e-9);
}

TEST_CASE("active Hamiltonian reproduces the determinant energy on the reference") {
  const auto mi = parse_fcidump_file(fixture("beh2_sto3g.fcidump"));
  const ActiveSpaceSpec spec{1, 4, 2};
  const auto h_act = active_hamiltonian(mi, spec);
  const auto ref = Statevector::reference(spec.n_qubits_active(),
                                          spec.n_active_electrons(mi.n_electrons));
  const cplx e = ref.expectation(h_act);
  CHECK(std::abs(e.imag()) < 1e-10);
  CHECK(e.real() == doctest::Approx(hf_determinant_energy(mi)).epsilon(1e-9));
}

TEST_CASE("frozen-core constant matches the closed-shell core energy") {
  const auto mi = parse_fcidump_file(fixture("beh2_sto3g.fcidump"));
  const ActiveSpaceSpec spec{1, 4, 2};
  const auto act = effective_active_integrals(mi, spec);
  CHECK(act.n_spatial == 4);
  CHECK(act.n_electrons == 4);
  double core = mi.e_nuc + 2.0 * mi.h(0, 0) + 2.0 * mi.g_at(0, 0, 0, 0) - mi.g_at(0, 0, 0, 0);
  CHECK(act.e_nuc == doctest::Approx(core));
  CHECK(act.check_invariants().empty());
}

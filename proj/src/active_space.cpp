#include "ooqeom/active_space.hpp"

#include <bit>

#include "ooqeom/jordan_wigner.hpp"

namespace ooq {

void ActiveSpaceSpec::validate(const MolecularIntegrals& mi) const {
  if (n_inactive < 0 || n_active <= 0 || n_virtual < 0)
    throw InputError("active space: block sizes must be non-negative with n_active > 0");
  if (n_spatial() != mi.n_spatial)
    throw InputError("active space: blocks sum to " + std::to_string(n_spatial()) +
                     " orbitals but integrals have " + std::to_string(mi.n_spatial));
  const int ne = n_active_electrons(mi.n_electrons);
  if (ne < 0 || ne > 2 * n_active)
    throw InputError("active space: " + std::to_string(ne) +
                     " active electrons do not fit in " + std::to_string(n_active) +
                     " active orbitals");
  if (mi.n_electrons % 2 != 0)
    throw InputError("active space: odd total electron count " +
                     std::to_string(mi.n_electrons));
}

PauliSum project(const PauliSum& full, const ActiveSpaceSpec& spec) {
  if (full.n_qubits() != spec.n_qubits_full())
    throw Error("project: operator qubit count does not match the partition");
  const int lo = 2 * spec.n_inactive;             // first active qubit
  const int na_q = spec.n_qubits_active();
  const std::uint64_t inactive_mask = (lo == 0) ? 0 : ((std::uint64_t{1} << lo) - 1);
  const std::uint64_t active_mask = ((na_q == 64) ? ~std::uint64_t{0}
                                                  : ((std::uint64_t{1} << na_q) - 1))
                                    << lo;
  const std::uint64_t external_mask = ~active_mask;

  PauliSum out(na_q);
  for (const auto& [key, coeff] : full.terms()) {
    if (key.x & external_mask) continue;  // X or Y on a frozen qubit annihilates the term
    const int parity = std::popcount(key.z & inactive_mask) & 1;
    const cplx c = parity ? -coeff : coeff;
    out.add(PauliString(na_q, (key.x & active_mask) >> lo, (key.z & active_mask) >> lo), c);
  }
  return out;
}

MolecularIntegrals effective_active_integrals(const MolecularIntegrals& mi,
                                              const ActiveSpaceSpec& spec) {
  spec.validate(mi);
  const int ni = spec.n_inactive;
  const int na = spec.n_active;

  MolecularIntegrals act;
  act.n_spatial = na;
  act.n_electrons = spec.n_active_electrons(mi.n_electrons);
  act.h = Eigen::MatrixXd::Zero(na, na);
  act.g.assign(static_cast<std::size_t>(na) * na * na * na, 0.0);

  act.e_nuc = mi.e_nuc;
  for (int i = 0; i < ni; ++i) act.e_nuc += 2.0 * mi.h(i, i);
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < ni; ++j) act.e_nuc += 2.0 * mi.g_at(i, i, j, j) - mi.g_at(i, j, j, i);

  for (int u = 0; u < na; ++u)
    for (int v = 0; v < na; ++v) {
      double val = mi.h(ni + u, ni + v);
      for (int i = 0; i < ni; ++i)
        val += 2.0 * mi.g_at(ni + u, ni + v, i, i) - mi.g_at(ni + u, i, i, ni + v);
      act.h(u, v) = val;
    }

  for (int u = 0; u < na; ++u)
    for (int v = 0; v < na; ++v)
      for (int w = 0; w < na; ++w)
        for (int x = 0; x < na; ++x)
          act.g_at(u, v, w, x) = mi.g_at(ni + u, ni + v, ni + w, ni + x);
  return act;
}

PauliSum active_hamiltonian(const MolecularIntegrals& mi, const ActiveSpaceSpec& spec) {
  const MolecularIntegrals act = effective_active_integrals(mi, spec);
  return jordan_wigner(build_hamiltonian(act), spec.n_qubits_active());
}

}  // namespace ooq

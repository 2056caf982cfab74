#include "ooqeom/jordan_wigner.hpp"

namespace ooq {

PauliSum jordan_wigner(const FermionOperator& op, int n_spin_orbitals) {
  PauliSum result(n_spin_orbitals);
  for (const auto& term : op.terms()) {
    PauliSum acc = PauliSum::identity(n_spin_orbitals, term.coeff);
    for (const auto& lad : term.ops) {
      if (static_cast<int>(lad.index) >= n_spin_orbitals)
        throw Error("jordan_wigner: spin-orbital index " + std::to_string(lad.index) +
                    " out of range for " + std::to_string(n_spin_orbitals) + " spin orbitals");
      const std::uint64_t zchain = (1ULL << lad.index) - 1;
      PauliSum ladder(n_spin_orbitals);
      // (X_p -+ i Y_p)/2 * Z_{<p}; upper sign for creation.
      ladder.add(PauliString(n_spin_orbitals, 1ULL << lad.index, zchain), 0.5);
      ladder.add(PauliString(n_spin_orbitals, 1ULL << lad.index, zchain | (1ULL << lad.index)),
                 lad.create ? cplx{0, -0.5} : cplx{0, 0.5});
      acc = sum_mul(acc, ladder);
    }
    result += acc;
  }
  result.prune();
  return result;
}

}  // namespace ooq

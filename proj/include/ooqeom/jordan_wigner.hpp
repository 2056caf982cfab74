#pragma once

#include "ooqeom/fermion.hpp"
#include "ooqeom/pauli.hpp"

namespace ooq {

/// Jordan-Wigner transform with the convention
///   a+_p = (X_p - i Y_p)/2 * prod_{q<p} Z_q
/// (Z parity string on the lower qubit indices).  Spin orbital p maps to
/// qubit p.  Throws if any index >= n_spin_orbitals.
PauliSum jordan_wigner(const FermionOperator& op, int n_spin_orbitals);

}  // namespace ooq

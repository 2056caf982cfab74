#include "ooqeom/oracle.hpp"

#include <bit>
#include <unordered_map>

namespace ooq {

namespace {

constexpr int kDenseQubitCap = 14;

constexpr cplx kIPow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

std::uint64_t index_mask(std::uint64_t qubit_mask, int n) {
  std::uint64_t out = 0;
  while (qubit_mask) {
    const int q = std::countr_zero(qubit_mask);
    qubit_mask &= qubit_mask - 1;
    out |= std::uint64_t{1} << (n - 1 - q);
  }
  return out;
}

void check_cap(int n_qubits) {
  if (n_qubits > kDenseQubitCap)
    throw Error("dense oracle limited to " + std::to_string(kDenseQubitCap) + " qubits, got " +
                std::to_string(n_qubits));
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliSum& op) {
  check_cap(op.n_qubits());
  const Eigen::Index dim = Eigen::Index{1} << op.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, coeff] : op.terms()) {
    const std::uint64_t xm = index_mask(key.x, op.n_qubits());
    const std::uint64_t zm = index_mask(key.z, op.n_qubits());
    const cplx ph = coeff * kIPow[std::popcount(key.x & key.z) & 3];
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
      const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) += ph * sign;
    }
  }
  return m;
}

Eigen::MatrixXcd fermion_to_dense(const FermionOperator& op, int n_spin_orbitals) {
  check_cap(n_spin_orbitals);
  if (op.max_index() >= n_spin_orbitals)
    throw Error("fermion_to_dense: operator index exceeds the orbital count");
  const Eigen::Index dim = Eigen::Index{1} << n_spin_orbitals;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : op.terms()) {
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
      // apply the ladder sequence right-to-left to the determinant
      std::uint64_t det = b;
      double sign = 1.0;
      bool dead = false;
      for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
        const std::uint64_t bit = std::uint64_t{1} << (n_spin_orbitals - 1 - static_cast<int>(it->index));
        const bool occ = det & bit;
        if (occ == it->create) {
          dead = true;
          break;
        }
        // parity of occupied spin orbitals with index < p: these sit at
        // higher (more significant) index bits
        const std::uint64_t above = det >> (n_spin_orbitals - static_cast<int>(it->index));
        if (std::popcount(above) & 1) sign = -sign;
        det ^= bit;
      }
      if (!dead)
        m(static_cast<Eigen::Index>(det), static_cast<Eigen::Index>(b)) += term.coeff * sign;
    }
  }
  return m;
}

SectorBasis SectorBasis::full(int n_qubits) {
  check_cap(n_qubits);
  SectorBasis basis;
  basis.n_qubits = n_qubits;
  basis.indices.resize(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < basis.indices.size(); ++i) basis.indices[i] = i;
  return basis;
}

SectorBasis SectorBasis::particle_sector(int n_qubits, int n_electrons, bool sz_zero) {
  check_cap(n_qubits);
  SectorBasis basis;
  basis.n_qubits = n_qubits;
  // alpha spin orbitals (even qubit labels) occupy index bits n-1, n-3, ...
  std::uint64_t alpha_mask = 0;
  for (int q = 0; q < n_qubits; q += 2) alpha_mask |= std::uint64_t{1} << (n_qubits - 1 - q);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n_qubits); ++b) {
    if (std::popcount(b) != n_electrons) continue;
    if (sz_zero && 2 * std::popcount(b & alpha_mask) != n_electrons) continue;
    basis.indices.push_back(b);
  }
  return basis;
}

Eigen::MatrixXcd dense_in_sector(const PauliSum& op, const SectorBasis& basis, bool check_closure,
                                 double tol) {
  std::unordered_map<std::uint64_t, Eigen::Index> pos;
  pos.reserve(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i)
    pos.emplace(basis.indices[i], static_cast<Eigen::Index>(i));

  const Eigen::Index dim = static_cast<Eigen::Index>(basis.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, coeff] : op.terms()) {
    const std::uint64_t xm = index_mask(key.x, basis.n_qubits);
    const std::uint64_t zm = index_mask(key.z, basis.n_qubits);
    const cplx ph = coeff * kIPow[std::popcount(key.x & key.z) & 3];
    for (Eigen::Index j = 0; j < dim; ++j) {
      const std::uint64_t b = basis.indices[static_cast<std::size_t>(j)];
      const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
      const auto it = pos.find(b ^ xm);
      if (it == pos.end()) {
        if (check_closure && std::abs(ph) > tol)
          throw Error("dense_in_sector: operator leaves the sector");
        continue;
      }
      m(it->second, j) += ph * sign;
    }
  }
  return m;
}

ExactSpectrum eigensolve(const PauliSum& hamiltonian, const SectorBasis& basis) {
  if (hamiltonian.max_imag_coeff() > 1e-10)
    throw Error("eigensolve: Hamiltonian is not Hermitian");
  const Eigen::MatrixXcd h = dense_in_sector(hamiltonian, basis);
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw Error("eigensolve: sector matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  ExactSpectrum out;
  out.basis = basis;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

cplx exact_matrix_element(const ExactSpectrum& spec, const PauliSum& op, int bra, int ket) {
  const Eigen::MatrixXcd m = dense_in_sector(op, spec.basis);
  return (spec.vectors.col(bra).adjoint() * m * spec.vectors.col(ket))(0);
}

}  // namespace ooq

#pragma once

#include <vector>

#include "ooqeom/pauli.hpp"

namespace ooq {

/// Dense noise-free statevector on n qubits.  Amplitude indices are
/// big-endian in the qubit labels: qubit q corresponds to bit (n-1-q) of
/// the index, so |q0 q1 ... q_{n-1}> with q0=q1=1 on four qubits is
/// amplitude index 12.
class Statevector {
 public:
  explicit Statevector(int n_qubits);

  /// Computational basis state with qubits 0..n_occupied-1 set to |1>.
  static Statevector reference(int n_qubits, int n_occupied);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  cplx operator[](std::size_t i) const { return amp_[i]; }

  double norm() const;

  /// In-place |psi> -> P|psi>.
  void apply_pauli(const PauliString& p);

  /// In-place |psi> -> exp(-i angle/2 P)|psi>.
  void apply_rotation(const PauliString& p, double angle);

  /// <psi|P|psi>.
  cplx expectation(const PauliString& p) const;
  /// <psi|A|psi>.
  cplx expectation(const PauliSum& a) const;

  /// A|psi> as a fresh vector.
  Statevector applied(const PauliSum& a) const;

  /// <this|other>.
  cplx inner(const Statevector& other) const;

 private:
  int n_qubits_;
  std::vector<cplx> amp_;
};

}  // namespace ooq

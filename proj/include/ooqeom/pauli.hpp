#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ooqeom/common.hpp"

namespace ooq {

/// A tensor product of single-qubit Pauli operators, stored in symplectic
/// form: qubit q carries X iff bit q of `x` is set and Z iff bit q of `z`
/// is set; both bits set means Y.  Limited to 64 qubits.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  PauliString() = default;
  PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(int n) { return PauliString(n, 0, 0); }
  /// Build from a character spec like "XIZY" (index 0 = qubit 0).
  static PauliString from_label(const std::string& label);

  char op_at(int qubit) const;
  std::string label() const;
  bool is_identity() const { return x == 0 && z == 0; }

  bool operator==(const PauliString& o) const {
    return n_qubits == o.n_qubits && x == o.x && z == o.z;
  }
  /// Canonical order used wherever deterministic iteration is required.
  bool operator<(const PauliString& o) const {
    return std::tie(z, x) < std::tie(o.z, o.x);
  }
};

/// Product of two Pauli strings: returns (phase, string) with
/// phase in {1, -1, i, -i}.
std::pair<cplx, PauliString> pauli_mul(const PauliString& a, const PauliString& b);

/// Complex linear combination of Pauli strings on a fixed qubit count.
/// Coefficients with magnitude below kPruneTol are absent.
class PauliSum {
 public:
  struct Key {
    std::uint64_t x, z;
    bool operator==(const Key& o) const { return x == o.x && z == o.z; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.x * 0x9e3779b97f4a7c15ULL;
      h ^= k.z + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  using TermMap = std::unordered_map<Key, cplx, KeyHash>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  static PauliSum zero(int n_qubits) { return PauliSum(n_qubits); }
  static PauliSum identity(int n_qubits, cplx coeff = 1.0);
  static PauliSum single(const PauliString& p, cplx coeff = 1.0);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  cplx coefficient(const PauliString& p) const;
  void add(const PauliString& p, cplx coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

  /// Drop terms with |coeff| < tol.  Idempotent.
  void prune(double tol = kPruneTol);

  /// Complex-conjugate transpose (strings are Hermitian, so coefficients
  /// are conjugated).
  PauliSum dagger() const;

  /// Largest imaginary coefficient magnitude; ~0 for Hermitian sums.
  double max_imag_coeff() const;

  /// Terms sorted by canonical string order, for deterministic output.
  std::vector<std::pair<PauliString, cplx>> sorted_terms() const;

  std::string to_string(std::size_t max_terms = 32) const;

 private:
  int n_qubits_ = 0;
  TermMap terms_;
};

/// Distributive product of two sums, simplified.
PauliSum sum_mul(const PauliSum& a, const PauliSum& b);

/// Commutator a*b - b*a, simplified.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

}  // namespace ooq

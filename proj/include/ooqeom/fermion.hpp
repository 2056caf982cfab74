#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ooqeom/common.hpp"

namespace ooq {

/// A single creation/annihilation operator on a spin orbital.
struct LadderOp {
  std::uint32_t index = 0;
  bool create = false;
  bool operator==(const LadderOp&) const = default;
};

struct FermionTerm {
  cplx coeff{0, 0};
  std::vector<LadderOp> ops;  // operator product order, left to right
};

/// Sum of products of ladder operators.  No normal ordering is imposed;
/// the ladder sequence is significant.
class FermionOperator {
 public:
  FermionOperator() = default;

  static FermionOperator zero() { return {}; }
  static FermionOperator constant(cplx c);
  static FermionOperator creation(std::uint32_t p);
  static FermionOperator annihilation(std::uint32_t p);
  /// Singlet one-electron excitation E_pq = a+_{pa} a_{qa} + a+_{pb} a_{qb}
  /// for spatial orbitals p, q (spin orbitals 2p, 2p+1).
  static FermionOperator singlet_excitation(std::uint32_t p, std::uint32_t q);

  void add_term(cplx coeff, std::vector<LadderOp> ops);

  const std::vector<FermionTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator-=(const FermionOperator& o);
  FermionOperator& operator*=(cplx s);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a -= b; }
  friend FermionOperator operator*(FermionOperator a, cplx s) { return a *= s; }
  friend FermionOperator operator*(cplx s, FermionOperator a) { return a *= s; }
  /// Operator product (concatenation of ladder sequences).
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

  /// Hermitian adjoint: reverse each ladder sequence, flip create flags,
  /// conjugate coefficients.
  FermionOperator dagger() const;

  /// Largest spin-orbital index appearing in any term, or -1 if constant.
  int max_index() const;

 private:
  std::vector<FermionTerm> terms_;
};

}  // namespace ooq

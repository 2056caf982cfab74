#include "ooqeom/fermion.hpp"

#include <algorithm>

namespace ooq {

FermionOperator FermionOperator::constant(cplx c) {
  FermionOperator f;
  f.add_term(c, {});
  return f;
}

FermionOperator FermionOperator::creation(std::uint32_t p) {
  FermionOperator f;
  f.add_term(1.0, {LadderOp{p, true}});
  return f;
}

FermionOperator FermionOperator::annihilation(std::uint32_t p) {
  FermionOperator f;
  f.add_term(1.0, {LadderOp{p, false}});
  return f;
}

FermionOperator FermionOperator::singlet_excitation(std::uint32_t p, std::uint32_t q) {
  FermionOperator f;
  f.add_term(1.0, {LadderOp{2 * p, true}, LadderOp{2 * q, false}});
  f.add_term(1.0, {LadderOp{2 * p + 1, true}, LadderOp{2 * q + 1, false}});
  return f;
}

void FermionOperator::add_term(cplx coeff, std::vector<LadderOp> ops) {
  if (std::abs(coeff) < kPruneTol) return;
  terms_.push_back(FermionTerm{coeff, std::move(ops)});
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& o) {
  for (const auto& t : o.terms_) terms_.push_back(FermionTerm{-t.coeff, t.ops});
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx s) {
  if (std::abs(s) < kPruneTol) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      std::vector<LadderOp> ops = ta.ops;
      ops.insert(ops.end(), tb.ops.begin(), tb.ops.end());
      out.add_term(ta.coeff * tb.coeff, std::move(ops));
    }
  }
  return out;
}

FermionOperator FermionOperator::dagger() const {
  FermionOperator out;
  for (const auto& t : terms_) {
    std::vector<LadderOp> ops(t.ops.rbegin(), t.ops.rend());
    for (auto& op : ops) op.create = !op.create;
    out.add_term(std::conj(t.coeff), std::move(ops));
  }
  return out;
}

int FermionOperator::max_index() const {
  int m = -1;
  for (const auto& t : terms_)
    for (const auto& op : t.ops) m = std::max(m, static_cast<int>(op.index));
  return m;
}

}  // namespace ooq

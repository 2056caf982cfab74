#include "ooqeom/statevector.hpp"

#include <bit>
#include <cmath>

namespace ooq {

namespace {

constexpr cplx kIPow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

/// Map a qubit-indexed bitmask to an amplitude-index bitmask (qubit q sits
/// at index bit n-1-q).
std::uint64_t index_mask(std::uint64_t qubit_mask, int n) {
  std::uint64_t out = 0;
  while (qubit_mask) {
    const int q = std::countr_zero(qubit_mask);
    qubit_mask &= qubit_mask - 1;
    out |= std::uint64_t{1} << (n - 1 - q);
  }
  return out;
}

}  // namespace

Statevector::Statevector(int n_qubits)
    : n_qubits_(n_qubits), amp_(std::size_t{1} << n_qubits, cplx{0, 0}) {
  if (n_qubits < 0 || n_qubits > 30) throw Error("Statevector: unsupported qubit count");
}

Statevector Statevector::reference(int n_qubits, int n_occupied) {
  if (n_occupied < 0 || n_occupied > n_qubits)
    throw Error("Statevector::reference: occupation out of range");
  Statevector sv(n_qubits);
  std::size_t idx = 0;
  for (int q = 0; q < n_occupied; ++q) idx |= std::size_t{1} << (n_qubits - 1 - q);
  sv.amp_[idx] = 1.0;
  return sv;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::apply_pauli(const PauliString& p) {
  if (p.n_qubits != n_qubits_) throw Error("apply_pauli: qubit count mismatch");
  const std::uint64_t xm = index_mask(p.x, n_qubits_);
  const std::uint64_t zm = index_mask(p.z, n_qubits_);
  const cplx ph = kIPow[std::popcount(p.x & p.z) & 3];
  std::vector<cplx> out(amp_.size());
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    const cplx v = amp_[b];
    if (v == cplx{0, 0}) continue;
    const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    out[b ^ xm] = ph * sign * v;
  }
  amp_ = std::move(out);
}

void Statevector::apply_rotation(const PauliString& p, double angle) {
  if (p.n_qubits != n_qubits_) throw Error("apply_rotation: qubit count mismatch");
  const std::uint64_t xm = index_mask(p.x, n_qubits_);
  const std::uint64_t zm = index_mask(p.z, n_qubits_);
  const cplx ph = kIPow[std::popcount(p.x & p.z) & 3];
  const double c = std::cos(0.5 * angle);
  const cplx mis{0.0, -std::sin(0.5 * angle)};  // -i sin(angle/2)
  if (xm == 0) {
    for (std::size_t b = 0; b < amp_.size(); ++b) {
      const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
      amp_[b] *= c + mis * ph * sign;
    }
    return;
  }
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    const std::size_t j = b ^ xm;
    if (j < b) continue;  // handle each pair once
    const double sb = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    const double sj = (std::popcount(j & zm) & 1) ? -1.0 : 1.0;
    const cplx vb = amp_[b], vj = amp_[j];
    // <b|P|j> = ph * sj, <j|P|b> = ph * sb
    amp_[b] = c * vb + mis * ph * sj * vj;
    amp_[j] = c * vj + mis * ph * sb * vb;
  }
}

cplx Statevector::expectation(const PauliString& p) const {
  if (p.n_qubits != n_qubits_) throw Error("expectation: qubit count mismatch");
  const std::uint64_t xm = index_mask(p.x, n_qubits_);
  const std::uint64_t zm = index_mask(p.z, n_qubits_);
  const cplx ph = kIPow[std::popcount(p.x & p.z) & 3];
  cplx acc{0, 0};
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    const cplx v = amp_[b];
    if (v == cplx{0, 0}) continue;
    const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    acc += std::conj(amp_[b ^ xm]) * ph * sign * v;
  }
  return acc;
}

cplx Statevector::expectation(const PauliSum& a) const {
  cplx acc{0, 0};
  for (const auto& [key, coeff] : a.terms())
    acc += coeff * expectation(PauliString(n_qubits_, key.x, key.z));
  return acc;
}

Statevector Statevector::applied(const PauliSum& a) const {
  if (a.n_qubits() != n_qubits_) throw Error("applied: qubit count mismatch");
  Statevector out(n_qubits_);
  for (const auto& [key, coeff] : a.terms()) {
    const std::uint64_t xm = index_mask(key.x, n_qubits_);
    const std::uint64_t zm = index_mask(key.z, n_qubits_);
    const cplx ph = coeff * kIPow[std::popcount(key.x & key.z) & 3];
    for (std::size_t b = 0; b < amp_.size(); ++b) {
      const cplx v = amp_[b];
      if (v == cplx{0, 0}) continue;
      const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
      out.amp_[b ^ xm] += ph * sign * v;
    }
  }
  return out;
}

cplx Statevector::inner(const Statevector& other) const {
  if (other.n_qubits_ != n_qubits_) throw Error("inner: qubit count mismatch");
  cplx acc{0, 0};
  for (std::size_t b = 0; b < amp_.size(); ++b) acc += std::conj(amp_[b]) * other.amp_[b];
  return acc;
}

}  // namespace ooq

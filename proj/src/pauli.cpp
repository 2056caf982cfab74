#include "ooqeom/pauli.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ooq {

namespace {
constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // i^k

void check_size(int n) {
  if (n < 0 || n > 64) throw Error("PauliString supports 0..64 qubits, got " + std::to_string(n));
}
}  // namespace

PauliString::PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits(n), x(x_mask), z(z_mask) {
  check_size(n);
  if (n < 64) {
    const std::uint64_t valid = (1ULL << n) - 1;
    if ((x & ~valid) || (z & ~valid))
      throw Error("Pauli mask exceeds qubit count " + std::to_string(n));
  }
}

PauliString PauliString::from_label(const std::string& label) {
  PauliString p;
  p.n_qubits = static_cast<int>(label.size());
  check_size(p.n_qubits);
  for (int q = 0; q < p.n_qubits; ++q) {
    switch (label[q]) {
      case 'I': break;
      case 'X': p.x |= 1ULL << q; break;
      case 'Y': p.x |= 1ULL << q; p.z |= 1ULL << q; break;
      case 'Z': p.z |= 1ULL << q; break;
      default: throw Error(std::string("bad Pauli label character '") + label[q] + "'");
    }
  }
  return p;
}

char PauliString::op_at(int qubit) const {
  const bool bx = (x >> qubit) & 1, bz = (z >> qubit) & 1;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

std::string PauliString::label() const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) s[static_cast<std::size_t>(q)] = op_at(q);
  return s;
}

std::pair<cplx, PauliString> pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits)
    throw Error("pauli_mul: qubit count mismatch (" + std::to_string(a.n_qubits) + " vs " +
                std::to_string(b.n_qubits) + ")");
  PauliString c;
  c.n_qubits = a.n_qubits;
  c.x = a.x ^ b.x;
  c.z = a.z ^ b.z;
  // Each string is i^{|x&z|} X^x Z^z; commuting Z^za past X^xb gives (-1)^{|za&xb|}.
  const int e = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
                2 * std::popcount(a.z & b.x) + 4 * 64 - std::popcount(c.x & c.z);
  return {kPhases[e & 3], c};
}

PauliSum PauliSum::identity(int n_qubits, cplx coeff) {
  PauliSum s(n_qubits);
  s.add(PauliString::identity(n_qubits), coeff);
  return s;
}

PauliSum PauliSum::single(const PauliString& p, cplx coeff) {
  PauliSum s(p.n_qubits);
  s.add(p, coeff);
  return s;
}

cplx PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(Key{p.x, p.z});
  return it == terms_.end() ? cplx{0, 0} : it->second;
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (p.n_qubits != n_qubits_)
    throw Error("PauliSum::add: string size mismatch");
  auto [it, inserted] = terms_.try_emplace(Key{p.x, p.z}, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kPruneTol) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) throw Error("PauliSum: size mismatch in +=");
  for (const auto& [k, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kPruneTol) terms_.erase(it);
  }
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) throw Error("PauliSum: size mismatch in -=");
  for (const auto& [k, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, -c);
    if (!inserted) it->second -= c;
    if (std::abs(it->second) < kPruneTol) terms_.erase(it);
  }
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
  if (std::abs(scale) < kPruneTol) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= scale;
  prune();
  return *this;
}

void PauliSum::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

PauliSum PauliSum::dagger() const {
  PauliSum out(n_qubits_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, std::conj(c));
  return out;
}

double PauliSum::max_imag_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

std::vector<std::pair<PauliString, cplx>> PauliSum::sorted_terms() const {
  std::vector<std::pair<PauliString, cplx>> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_)
    out.emplace_back(PauliString(n_qubits_, k.x, k.z), c);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string PauliSum::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t count = 0;
  for (const auto& [p, c] : sorted_terms()) {
    if (count++ >= max_terms) {
      os << "... (" << terms_.size() << " terms)";
      break;
    }
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i) " << p.label() << "\n";
  }
  return os.str();
}

PauliSum sum_mul(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) throw Error("sum_mul: qubit count mismatch");
  PauliSum out(a.n_qubits());
  for (const auto& [ka, ca] : a.terms()) {
    const PauliString pa(a.n_qubits(), ka.x, ka.z);
    for (const auto& [kb, cb] : b.terms()) {
      auto [phase, ps] = pauli_mul(pa, PauliString(b.n_qubits(), kb.x, kb.z));
      out.add(ps, ca * cb * phase);
    }
  }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum out = sum_mul(a, b);
  out -= sum_mul(b, a);
  return out;
}

}  // namespace ooq

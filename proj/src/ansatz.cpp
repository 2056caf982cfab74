#include "ooqeom/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "ooqeom/jordan_wigner.hpp"

namespace ooq {

std::vector<FermionOperator> spin_adapted_excitations(const std::vector<int>& occupied,
                                                      const std::vector<int>& virtuals) {
  std::vector<FermionOperator> out;
  auto E = [](int p, int q) {
    return FermionOperator::singlet_excitation(static_cast<std::uint32_t>(p),
                                               static_cast<std::uint32_t>(q));
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int a : virtuals)
    for (int i : occupied) out.push_back(inv_sqrt2 * E(a, i));

  for (std::size_t ai = 0; ai < virtuals.size(); ++ai)
    for (std::size_t bi = 0; bi <= ai; ++bi)
      for (std::size_t ii = 0; ii < occupied.size(); ++ii)
        for (std::size_t ji = 0; ji <= ii; ++ji) {
          const int a = virtuals[ai], b = virtuals[bi];
          const int i = occupied[ii], j = occupied[ji];
          const double norm =
              0.5 / std::sqrt((1.0 + (a == b ? 1.0 : 0.0)) * (1.0 + (i == j ? 1.0 : 0.0)));
          out.push_back(norm * (E(a, i) * E(b, j) + E(a, j) * E(b, i)));
        }

  const double triplet_norm = 1.0 / (2.0 * std::sqrt(3.0));
  for (std::size_t ai = 0; ai < virtuals.size(); ++ai)
    for (std::size_t bi = 0; bi < ai; ++bi)
      for (std::size_t ii = 0; ii < occupied.size(); ++ii)
        for (std::size_t ji = 0; ji < ii; ++ji) {
          const int a = virtuals[ai], b = virtuals[bi];
          const int i = occupied[ii], j = occupied[ji];
          out.push_back(triplet_norm * (E(a, i) * E(b, j) - E(a, j) * E(b, i)));
        }
  return out;
}

void Ansatz::apply(Statevector& sv, const Eigen::VectorXd& theta) const {
  if (theta.size() != n_params_) throw Error("Ansatz::apply: parameter count mismatch");
  for (const auto& c : components_) sv.apply_rotation(c.op, c.prefactor * theta[c.param_index]);
}

void Ansatz::apply_shifted(Statevector& sv, const Eigen::VectorXd& theta, std::size_t component,
                           double delta) const {
  if (theta.size() != n_params_) throw Error("Ansatz::apply_shifted: parameter count mismatch");
  if (component >= components_.size()) throw Error("Ansatz::apply_shifted: bad component index");
  for (std::size_t m = 0; m < components_.size(); ++m) {
    double angle = components_[m].prefactor * theta[components_[m].param_index];
    if (m == component) angle += delta;
    sv.apply_rotation(components_[m].op, angle);
  }
}

Ansatz build_uccsd_ansatz(int n_occupied, int n_virtual) {
  const int n_qubits = 2 * (n_occupied + n_virtual);
  std::vector<int> occ(static_cast<std::size_t>(n_occupied));
  std::vector<int> vir(static_cast<std::size_t>(n_virtual));
  for (int i = 0; i < n_occupied; ++i) occ[static_cast<std::size_t>(i)] = i;
  for (int a = 0; a < n_virtual; ++a) vir[static_cast<std::size_t>(a)] = n_occupied + a;

  const auto gens = spin_adapted_excitations(occ, vir);
  std::vector<AnsatzComponent> components;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const PauliSum anti = jordan_wigner(gens[k] - gens[k].dagger(), n_qubits);
    for (const auto& [key, c] : anti.terms())  // anti-Hermitian: purely imaginary coefficients
      if (std::abs(c.real()) > kPruneTol)
        throw Error("build_uccsd_ansatz: generator is not anti-Hermitian");
    for (const auto& [p, c] : anti.sorted_terms())
      components.push_back(AnsatzComponent{p, static_cast<int>(k), -2.0 * c.imag()});
  }
  return Ansatz(n_qubits, static_cast<int>(gens.size()), std::move(components));
}

}  // namespace ooq

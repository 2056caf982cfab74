#include "ooqeom/properties.hpp"

#include <cmath>
#include <stdexcept>

#include "ooqeom/jordan_wigner.hpp"

namespace ooq {

PauliSum one_electron_qubit_operator(const Eigen::MatrixXd& comp, int n_qubits) {
  const int n = static_cast<int>(comp.rows());
  if (comp.cols() != n) throw InputError("property component matrix is not square");
  if (2 * n != n_qubits) {
    throw InputError("property component size does not match the qubit count");
  }
  FermionOperator op;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (comp(p, q) != 0.0) {
        op += comp(p, q) * FermionOperator::singlet_excitation(static_cast<std::uint32_t>(p),
                                                               static_cast<std::uint32_t>(q));
      }
    }
  }
  if (op.empty()) return PauliSum::zero(n_qubits);
  PauliSum out = jordan_wigner(op, n_qubits);
  out.prune();
  return out;
}

namespace {

// <0|M|k> for every state from the commutator expectations
//   t_I = <[M, Q_I]>,  u_I = <[M, Q_I^dag]>
// contracted with the eigenvector blocks O_k^dag = sum_I Z_kI Q_I - Y_kI Q_I^dag.
Eigen::VectorXcd moment_component(const EomOperatorBasis& basis, const ProjectedEvaluator& ev,
                                  const EomSolution& sol, const PauliSum& m_op, double sign) {
  const int n_ops = basis.size();
  Eigen::VectorXcd t(n_ops), u(n_ops);
  for (int i = 0; i < n_ops; ++i) {
    t(i) = ev.expect(commutator(m_op, basis.ops[i]));
    u(i) = ev.expect(commutator(m_op, basis.ops_dagger[i]));
  }
  const int n_states = static_cast<int>(sol.energies.size());
  Eigen::VectorXcd out(n_states);
  for (int k = 0; k < n_states; ++k) {
    const Eigen::VectorXcd zk = sol.vectors.col(k).head(n_ops);
    const Eigen::VectorXcd yk = sol.vectors.col(k).tail(n_ops);
    const double denom = std::sqrt(sol.metric_norms(k));
    const cplx contracted = (zk.transpose() * t - yk.transpose() * u)(0);
    out(k) = sign * contracted / denom;
  }
  return out;
}

}  // namespace

std::vector<TransitionMoments> transition_moments(const EomOperatorBasis& basis,
                                                  const ProjectedEvaluator& ev,
                                                  const EomSolution& sol,
                                                  const PropertyIntegrals* electric,
                                                  const PropertyIntegrals* magnetic) {
  if (electric != nullptr && electric->kind != PropertyKind::electric_dipole) {
    throw InputError("electric transition moments require electric dipole integrals");
  }
  if (magnetic != nullptr && magnetic->kind != PropertyKind::magnetic_dipole) {
    throw InputError("rotational strengths require magnetic dipole integrals");
  }
  for (const PropertyIntegrals* p : {electric, magnetic}) {
    if (p == nullptr) continue;
    const auto problems = p->check_invariants();
    if (!problems.empty()) throw InputError("property integrals invalid: " + problems.front());
  }

  const int n_states = static_cast<int>(sol.energies.size());
  std::vector<TransitionMoments> out(static_cast<std::size_t>(n_states));
  for (int k = 0; k < n_states; ++k) {
    const double norm = sol.metric_norms(k);
    if (!(norm > 0.0)) throw InputError("non-positive excitation metric norm");
    out[static_cast<std::size_t>(k)].norm_denominator = std::sqrt(norm);
  }
  for (int c = 0; c < 3; ++c) {
    if (electric != nullptr) {
      const PauliSum m_op = one_electron_qubit_operator(electric->components[c], basis.n_qubits);
      const Eigen::VectorXcd mu = moment_component(basis, ev, sol, m_op, -1.0);
      for (int k = 0; k < n_states; ++k) out[static_cast<std::size_t>(k)].electric(c) = mu(k);
    }
    if (magnetic != nullptr) {
      const PauliSum m_op = one_electron_qubit_operator(magnetic->components[c], basis.n_qubits);
      const Eigen::VectorXcd mm = moment_component(basis, ev, sol, m_op, +1.0);
      for (int k = 0; k < n_states; ++k) out[static_cast<std::size_t>(k)].magnetic(c) = mm(k);
    }
  }
  return out;
}

double oscillator_strength(double e_0k, const Eigen::Vector3cd& mu) {
  return (2.0 / 3.0) * e_0k * mu.squaredNorm();
}

double rotational_strength(const Eigen::Vector3cd& mu, const Eigen::Vector3cd& m) {
  // plain (unconjugated) dot product: with the sign gauge fixed, both
  // moment vectors are real up to roundoff, and the product is invariant
  // under the residual common sign flip of the amplitude vector
  return (mu.array() * m.array()).sum().real();
}

Spectrum convolve(const std::vector<Stick>& sticks, double sigma_ev, double grid_min_ev,
                  double grid_max_ev, int n_points) {
  if (!(sigma_ev > 0.0)) throw InputError("spectral broadening must be positive");
  if (n_points < 2) throw InputError("spectral grid needs at least two points");
  if (!(grid_max_ev > grid_min_ev)) throw InputError("spectral grid bounds are inverted");
  Spectrum sp;
  sp.sticks = sticks;
  sp.grid_ev.resize(static_cast<std::size_t>(n_points));
  sp.intensity.assign(static_cast<std::size_t>(n_points), 0.0);
  const double step = (grid_max_ev - grid_min_ev) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double e = grid_min_ev + step * i;
    sp.grid_ev[static_cast<std::size_t>(i)] = e;
    double v = 0.0;
    for (const Stick& s : sticks) {
      const double d = (e - s.energy_ev) / sigma_ev;
      v += s.strength * std::exp(-0.5 * d * d);
    }
    sp.intensity[static_cast<std::size_t>(i)] = v;
  }
  return sp;
}

}  // namespace ooq

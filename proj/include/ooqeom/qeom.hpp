#pragma once

#include <Eigen/Dense>
#include <string>
#include <unordered_map>
#include <vector>

#include "ooqeom/active_space.hpp"
#include "ooqeom/fermion.hpp"
#include "ooqeom/statevector.hpp"

namespace ooq {

/// Excitation-operator basis for the equation-of-motion problem: orbital
/// (q) operators connecting the frozen blocks, then spin-adapted active
/// (G) operators, in a fixed deterministic order.  Operators are stored
/// both as ladder sums and as their qubit images on the full space.
struct EomOperatorBasis {
  ActiveSpaceSpec spec;
  int n_qubits = 0;
  int n_q = 0;
  int n_g = 0;
  std::vector<std::string> labels;
  std::vector<FermionOperator> fermion_ops;
  std::vector<PauliSum> ops;         // JW images Q_I
  std::vector<PauliSum> ops_dagger;  // Q_I^dag

  int size() const { return n_q + n_g; }
};

/// q families E_vi, E_ai, E_av (each 1/sqrt(2), lexicographic) over the
/// inactive/active/virtual blocks, then the G families of
/// spin_adapted_excitations over the active reference determinant with
/// n_active_electrons electrons.
EomOperatorBasis build_eom_basis(const ActiveSpaceSpec& spec, int n_electrons_total);

/// Expectation values of full-space operators over the product state
/// |inactive filled> x |active state> x |virtual empty>, evaluated by
/// active-space projection with a per-string expectation cache.  The
/// Hamiltonian passed at construction is pre-bucketed by its X support on
/// the frozen qubits so that three-factor products <A H B> only touch
/// Hamiltonian terms that can survive the projection.
class ProjectedEvaluator {
 public:
  ProjectedEvaluator(const PauliSum& h_full, Statevector active_state, ActiveSpaceSpec spec);

  /// <Psi| op |Psi>.
  cplx expect(const PauliSum& op) const;
  /// <Psi| a H b |Psi>.
  cplx expect_ahb(const PauliSum& a, const PauliSum& b) const;
  /// <Psi| H |Psi>.
  cplx expect_h() const;

  std::size_t cache_size() const { return cache_.size(); }

 private:
  cplx projected_string(const PauliString& s) const;

  ActiveSpaceSpec spec_;
  int n_full_ = 0;
  int lo_ = 0;  // first active qubit
  std::uint64_t ext_mask_ = 0, act_mask_ = 0, inact_mask_ = 0;
  Statevector state_;
  PauliSum identity_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<PauliString, cplx>>> h_buckets_;
  mutable std::unordered_map<PauliSum::Key, cplx, PauliSum::KeyHash> cache_;
};

struct EomMatrices {
  Eigen::MatrixXcd A, B, Sigma, Delta;
  int n_q = 0, n_g = 0;

  int dim() const { return n_q + n_g; }
  /// Structure-check diagnostics.
  double max_delta() const { return Delta.size() ? Delta.cwiseAbs().maxCoeff() : 0.0; }
  double max_sigma_qg() const;

  Eigen::MatrixXcd e2() const;  // [[A, B], [B*, A*]]
  Eigen::MatrixXcd s2() const;  // [[Sigma, Delta], [-Delta*, -Sigma*]]
};

/// Assemble the response matrices from the working equations, element by
/// element, as projected expectation values on the active state.
EomMatrices build_eom_matrices(const EomOperatorBasis& basis, const ProjectedEvaluator& ev);

/// |<[H, Q_I]>| per basis operator: zero on an exact eigenstate, of the
/// order of the VQE gradient threshold on a converged state.
Eigen::VectorXd gradient_diagnostic(const EomOperatorBasis& basis, const ProjectedEvaluator& ev);

struct EomSolution {
  Eigen::VectorXd energies;          // positive branch, ascending, Hartree
  Eigen::MatrixXcd vectors;          // 2N rows (Z block over Y block), one column per state
  Eigen::VectorXd metric_norms;      // v^dag S2 v after normalization (all ~ +1)
  Eigen::VectorXcd raw_eigenvalues;  // full reduced spectrum, for pairing checks
  int n_metric_kept = 0;             // metric modes surviving regularization
};

/// Canonically orthogonalize the metric (discard Sigma eigenmodes below
/// lin_tol), solve the reduced non-Hermitian problem, keep real positive
/// eigenvalues, normalize v^dag S2 v = +1 and fix the sign by making the
/// largest-magnitude component real positive.  Throws InstabilityError on
/// complex eigenvalues beyond imag_tol and InputError when the metric is
/// entirely null.
EomSolution solve_eom(const EomMatrices& m, double lin_tol = 1e-8, double imag_tol = 1e-8);

/// Largest distance from any retained excitation energy to its -E partner
/// in the raw reduced spectrum (the +/- pairing structure check).
double max_pairing_deviation(const EomSolution& sol);

}  // namespace ooq

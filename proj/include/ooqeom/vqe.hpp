#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ooqeom/active_space.hpp"
#include "ooqeom/ansatz.hpp"
#include "ooqeom/integrals.hpp"

namespace ooq {

/// --- generic quasi-Newton minimizer --------------------------------------

struct BfgsOptions {
  double grad_tol = 1e-4;    // infinity norm of the gradient
  int max_iterations = 300;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_line_search = 50;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // objective value per accepted iterate
};

/// BFGS with Armijo backtracking.  Exhausting the iteration or line-search
/// budget returns the best iterate flagged as non-converged.
BfgsResult bfgs_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                         Eigen::VectorXd x0, const BfgsOptions& opts = {});

/// --- VQE energy model -----------------------------------------------------

/// Energy and gradients of the trotterized UCCSD state for integrals in a
/// fixed input orbital basis, as a function of the circuit parameters theta
/// and the orbital-rotation parameters kappa.  The active-space Hamiltonian
/// for the current kappa is cached between evaluations.
class EnergyModel {
 public:
  EnergyModel(MolecularIntegrals mi, ActiveSpaceSpec spec);

  const Ansatz& ansatz() const { return ansatz_; }
  const ActiveSpaceSpec& spec() const { return spec_; }
  int n_theta() const { return ansatz_.n_params(); }
  int n_kappa() const { return rotation_.n_parameters(); }

  double energy(const Eigen::VectorXd& theta, const Eigen::VectorXd& kappa) const;

  /// Analytic circuit gradient via the parameter-shift rule,
  /// dE/da_m = (E(a_m + pi/2) - E(a_m - pi/2)) / 2 per rotation angle.
  Eigen::VectorXd gradient_theta(const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& kappa) const;

  /// Central finite differences with step 1e-5 on the kappa parameters.
  Eigen::VectorXd gradient_kappa(const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& kappa) const;

  /// Prepared ansatz state on the active qubits.
  Statevector state(const Eigen::VectorXd& theta) const;

  /// Integrals rotated to the orbital basis described by kappa.
  MolecularIntegrals rotated_integrals(const Eigen::VectorXd& kappa) const;
  /// Active-space qubit Hamiltonian at kappa (cached).
  const PauliSum& hamiltonian(const Eigen::VectorXd& kappa) const;

 private:
  MolecularIntegrals mi_;
  ActiveSpaceSpec spec_;
  OrbitalRotation rotation_;
  Ansatz ansatz_;
  Statevector reference_;

  mutable bool cache_valid_ = false;
  mutable Eigen::VectorXd cached_kappa_;
  mutable PauliSum cached_h_;
};

/// --- two-stage orbital-optimized VQE --------------------------------------

enum class StartOrbitals { as_given, mp2_natural };

struct VqeOptions {
  BfgsOptions circuit;  // stage 1: theta only
  BfgsOptions joint;    // stage 2: theta and kappa together
  bool optimize_orbitals = true;
  StartOrbitals start_orbitals = StartOrbitals::as_given;
  double kappa_fd_step = 1e-5;
};

struct VqeResult {
  double energy = 0.0;
  bool converged = false;
  Eigen::VectorXd theta;
  Eigen::VectorXd kappa;
  OrbitalRotation rotation;          // final generator
  MolecularIntegrals integrals;      // rotated to the optimized orbital basis
  Eigen::MatrixXd transform;         // input basis -> optimized basis, columnwise
  double grad_inf_norm = 0.0;
  int iterations_stage1 = 0;
  int iterations_stage2 = 0;
  std::vector<double> trace;         // energies of all accepted iterates
};

/// Stage 1 optimizes theta from zero at kappa = 0; stage 2 relaxes theta and
/// kappa jointly.  With StartOrbitals::mp2_natural the integrals are first
/// transformed to MP2 natural orbitals (descending occupation), which also
/// fixes the active-space window.  Non-convergence is flagged on the result,
/// not thrown.
VqeResult run_vqe(MolecularIntegrals mi, const ActiveSpaceSpec& spec,
                  const VqeOptions& opts = {});

}  // namespace ooq

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ooqeom/integrals.hpp"
#include "ooqeom/qeom.hpp"

namespace ooq {

/// Qubit image of the one-electron operator sum_pq comp(p,q) E_pq.
PauliSum one_electron_qubit_operator(const Eigen::MatrixXd& comp, int n_qubits);

struct TransitionMoments {
  Eigen::Vector3cd electric = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd magnetic = Eigen::Vector3cd::Zero();
  double norm_denominator = 0.0;  // sqrt(v^dag S2 v)
};

/// Ground-to-excited transition moments for every state of the solution:
///   <0|mu_x|k> = -sum_pq x_pq <[E_pq, O_k^dag]> / sqrt(v^dag S2 v)
///   <0|m_x|k>  = +sum_pq m_pq <[E_pq, O_k^dag]> / sqrt(v^dag S2 v)
/// with O_k^dag = sum_I (Z_kI Q_I - Y_kI Q_I^dag).  Property integrals must
/// already be in the optimized orbital basis; a null pointer skips that
/// moment.  The commutator expectations <[M, Q_I]> and <[M, Q_I^dag]> are
/// computed once per Cartesian component and reused for all states.
std::vector<TransitionMoments> transition_moments(const EomOperatorBasis& basis,
                                                  const ProjectedEvaluator& ev,
                                                  const EomSolution& sol,
                                                  const PropertyIntegrals* electric,
                                                  const PropertyIntegrals* magnetic);

/// f = (2/3) E_0k sum_i |mu_i|^2, in atomic units (dimensionless).
double oscillator_strength(double e_0k, const Eigen::Vector3cd& mu);

/// rs = Re sum_i mu_i m_i (length gauge, unconjugated dot product of the
/// stored moment vectors).
double rotational_strength(const Eigen::Vector3cd& mu, const Eigen::Vector3cd& m);

struct Stick {
  double energy_ev = 0.0;
  double strength = 0.0;
};

struct Spectrum {
  std::vector<double> grid_ev;
  std::vector<double> intensity;
  std::vector<Stick> sticks;
};

/// Gaussian convolution intensity(E) = sum_k s_k exp(-(E - E_k)^2 / (2 s^2))
/// with sigma in eV on a uniform grid.  An empty stick list yields zero
/// intensity everywhere.
Spectrum convolve(const std::vector<Stick>& sticks, double sigma_ev, double grid_min_ev,
                  double grid_max_ev, int n_points);

}  // namespace ooq

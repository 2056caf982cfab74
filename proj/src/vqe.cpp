#include "ooqeom/vqe.hpp"

#include <cmath>
#include <numbers>

namespace ooq {

BfgsResult bfgs_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                         Eigen::VectorXd x, const BfgsOptions& opts) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  double fx = f(x);
  Eigen::VectorXd g = grad(x);

  BfgsResult res;
  res.trace.push_back(fx);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const double gnorm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
    if (gnorm <= opts.grad_tol) {
      res.x = x;
      res.f = fx;
      res.grad_inf_norm = gnorm;
      res.iterations = iter;
      res.converged = true;
      return res;
    }

    Eigen::VectorXd dir = -(h_inv * g);
    double slope = g.dot(dir);
    if (slope >= 0.0) {  // reset to steepest descent if curvature went bad
      h_inv.setIdentity();
      dir = -g;
      slope = g.dot(dir);
    }

    double step = 1.0;
    double f_new = fx;
    Eigen::VectorXd x_new = x;
    bool accepted = false;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      x_new = x + step * dir;
      f_new = f(x_new);
      if (f_new <= fx + opts.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
    }
    if (!accepted) {  // stuck: hand back the best point, flagged
      res.x = x;
      res.f = fx;
      res.grad_inf_norm = gnorm;
      res.iterations = iter;
      return res;
    }

    const Eigen::VectorXd g_new = grad(x_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      h_inv = (eye - rho * s * y.transpose()) * h_inv * (eye - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }
    x = std::move(x_new);
    fx = f_new;
    g = g_new;
    res.trace.push_back(fx);
  }
  res.x = x;
  res.f = fx;
  res.grad_inf_norm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  res.iterations = opts.max_iterations;
  res.converged = res.grad_inf_norm <= opts.grad_tol;
  return res;
}

EnergyModel::EnergyModel(MolecularIntegrals mi, ActiveSpaceSpec spec)
    : mi_(std::move(mi)),
      spec_(spec),
      rotation_(OrbitalRotation::for_blocks(spec.n_inactive, spec.n_active, spec.n_virtual)),
      ansatz_(build_uccsd_ansatz(spec.n_active_electrons(mi_.n_electrons) / 2,
                                 spec.n_active - spec.n_active_electrons(mi_.n_electrons) / 2)),
      reference_(Statevector::reference(spec.n_qubits_active(),
                                        spec.n_active_electrons(mi_.n_electrons))),
      cached_h_(spec.n_qubits_active()) {
  spec_.validate(mi_);
}

MolecularIntegrals EnergyModel::rotated_integrals(const Eigen::VectorXd& kappa) const {
  if (kappa.size() == 0 || kappa.cwiseAbs().maxCoeff() == 0.0) return mi_;
  OrbitalRotation rot = rotation_;
  rot.set_parameters(kappa);
  return rotate_integrals(mi_, rot);
}

const PauliSum& EnergyModel::hamiltonian(const Eigen::VectorXd& kappa) const {
  if (!cache_valid_ || cached_kappa_.size() != kappa.size() || cached_kappa_ != kappa) {
    cached_h_ = active_hamiltonian(rotated_integrals(kappa), spec_);
    cached_kappa_ = kappa;
    cache_valid_ = true;
  }
  return cached_h_;
}

Statevector EnergyModel::state(const Eigen::VectorXd& theta) const {
  Statevector sv = reference_;
  ansatz_.apply(sv, theta);
  return sv;
}

double EnergyModel::energy(const Eigen::VectorXd& theta, const Eigen::VectorXd& kappa) const {
  const PauliSum& h = hamiltonian(kappa);
  return state(theta).expectation(h).real();
}

Eigen::VectorXd EnergyModel::gradient_theta(const Eigen::VectorXd& theta,
                                            const Eigen::VectorXd& kappa) const {
  const PauliSum& h = hamiltonian(kappa);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n_theta());
  const auto& components = ansatz_.components();
  for (std::size_t m = 0; m < components.size(); ++m) {
    Statevector plus = reference_;
    ansatz_.apply_shifted(plus, theta, m, std::numbers::pi / 2);
    Statevector minus = reference_;
    ansatz_.apply_shifted(minus, theta, m, -std::numbers::pi / 2);
    const double de_da = 0.5 * (plus.expectation(h).real() - minus.expectation(h).real());
    grad[components[m].param_index] += components[m].prefactor * de_da;
  }
  return grad;
}

Eigen::VectorXd EnergyModel::gradient_kappa(const Eigen::VectorXd& theta,
                                            const Eigen::VectorXd& kappa) const {
  constexpr double h_step = 1e-5;
  Eigen::VectorXd grad(n_kappa());
  for (int k = 0; k < n_kappa(); ++k) {
    Eigen::VectorXd kp = kappa, km = kappa;
    kp[k] += h_step;
    km[k] -= h_step;
    // bypass the single-slot cache: these are one-shot evaluations
    const double ep = state(theta).expectation(active_hamiltonian(rotated_integrals(kp), spec_)).real();
    const double em = state(theta).expectation(active_hamiltonian(rotated_integrals(km), spec_)).real();
    grad[k] = (ep - em) / (2.0 * h_step);
  }
  return grad;
}

VqeResult run_vqe(MolecularIntegrals mi, const ActiveSpaceSpec& spec, const VqeOptions& opts) {
  Eigen::MatrixXd basis_transform = Eigen::MatrixXd::Identity(mi.n_spatial, mi.n_spatial);
  if (opts.start_orbitals == StartOrbitals::mp2_natural) {
    auto mp2 = mp2_natural_orbitals(mi);
    basis_transform = mp2.transform;
    mi = std::move(mp2.integrals);
  }
  const EnergyModel model(mi, spec);
  const int nt = model.n_theta();
  const int nk = model.n_kappa();

  VqeResult out;

  // stage 1: circuit parameters at fixed (zero) orbital rotation
  const Eigen::VectorXd kappa0 = Eigen::VectorXd::Zero(nk);
  const BfgsResult stage1 = bfgs_minimize(
      [&](const Eigen::VectorXd& t) { return model.energy(t, kappa0); },
      [&](const Eigen::VectorXd& t) { return model.gradient_theta(t, kappa0); },
      Eigen::VectorXd::Zero(nt), opts.circuit);
  out.iterations_stage1 = stage1.iterations;
  out.trace = stage1.trace;
  out.converged = stage1.converged;
  Eigen::VectorXd theta = stage1.x;
  Eigen::VectorXd kappa = kappa0;
  double energy = stage1.f;
  double gnorm = stage1.grad_inf_norm;

  // stage 2: joint relaxation of theta and kappa
  if (opts.optimize_orbitals && nk > 0 && stage1.converged) {
    auto split = [&](const Eigen::VectorXd& x) {
      return std::pair<Eigen::VectorXd, Eigen::VectorXd>(x.head(nt), x.tail(nk));
    };
    Eigen::VectorXd x0(nt + nk);
    x0 << theta, kappa;
    const BfgsResult stage2 = bfgs_minimize(
        [&](const Eigen::VectorXd& x) {
          const auto [t, k] = split(x);
          return model.energy(t, k);
        },
        [&](const Eigen::VectorXd& x) {
          const auto [t, k] = split(x);
          Eigen::VectorXd g(nt + nk);
          g << model.gradient_theta(t, k), model.gradient_kappa(t, k);
          return g;
        },
        std::move(x0), opts.joint);
    out.iterations_stage2 = stage2.iterations;
    out.trace.insert(out.trace.end(), stage2.trace.begin(), stage2.trace.end());
    out.converged = stage2.converged;
    std::tie(theta, kappa) = split(stage2.x);
    energy = stage2.f;
    gnorm = stage2.grad_inf_norm;
  }

  out.energy = energy;
  out.theta = theta;
  out.kappa = kappa;
  out.grad_inf_norm = gnorm;
  out.rotation = OrbitalRotation::for_blocks(spec.n_inactive, spec.n_active, spec.n_virtual);
  if (nk > 0) out.rotation.set_parameters(kappa);
  out.integrals = model.rotated_integrals(kappa);
  out.transform = basis_transform * expm_antisymmetric(-out.rotation.kappa);
  return out;
}

}  // namespace ooq

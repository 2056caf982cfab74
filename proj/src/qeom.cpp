#include "ooqeom/qeom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "ooqeom/ansatz.hpp"
#include "ooqeom/jordan_wigner.hpp"

namespace ooq {

EomOperatorBasis build_eom_basis(const ActiveSpaceSpec& spec, int n_electrons_total) {
  const int ni = spec.n_inactive, na = spec.n_active, nv = spec.n_virtual;
  const int ne_act = spec.n_active_electrons(n_electrons_total);
  if (ne_act % 2 != 0) throw InputError("eom basis: odd active electron count");

  EomOperatorBasis basis;
  basis.spec = spec;
  basis.n_qubits = spec.n_qubits_full();

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto add_q = [&](int p, int q) {
    basis.fermion_ops.push_back(
        inv_sqrt2 * FermionOperator::singlet_excitation(static_cast<std::uint32_t>(p),
                                                        static_cast<std::uint32_t>(q)));
    basis.labels.push_back("q:E(" + std::to_string(p) + "<-" + std::to_string(q) + ")");
  };
  // families: active<-inactive, virtual<-inactive, virtual<-active
  for (int v = ni; v < ni + na; ++v)
    for (int i = 0; i < ni; ++i) add_q(v, i);
  for (int a = ni + na; a < ni + na + nv; ++a)
    for (int i = 0; i < ni; ++i) add_q(a, i);
  for (int a = ni + na; a < ni + na + nv; ++a)
    for (int v = ni; v < ni + na; ++v) add_q(a, v);
  basis.n_q = static_cast<int>(basis.fermion_ops.size());

  // active-space G operators over the reference determinant occupation
  std::vector<int> occ, vir;
  for (int p = 0; p < ne_act / 2; ++p) occ.push_back(ni + p);
  for (int p = ne_act / 2; p < na; ++p) vir.push_back(ni + p);
  auto g_ops = spin_adapted_excitations(occ, vir);
  basis.n_g = static_cast<int>(g_ops.size());
  const int no = static_cast<int>(occ.size()), nva = static_cast<int>(vir.size());
  const int n_singles = no * nva;
  const int n_paired = (nva * (nva + 1) / 2) * (no * (no + 1) / 2);
  for (int k = 0; k < basis.n_g; ++k) {
    const char* family = k < n_singles ? "s" : k < n_singles + n_paired ? "d" : "t";
    basis.labels.push_back("G:" + std::string(family) + std::to_string(k));
    basis.fermion_ops.push_back(std::move(g_ops[static_cast<std::size_t>(k)]));
  }

  for (const auto& op : basis.fermion_ops) {
    basis.ops.push_back(jordan_wigner(op, basis.n_qubits));
    basis.ops_dagger.push_back(jordan_wigner(op.dagger(), basis.n_qubits));
  }
  return basis;
}

ProjectedEvaluator::ProjectedEvaluator(const PauliSum& h_full, Statevector active_state,
                                       ActiveSpaceSpec spec)
    : spec_(spec),
      n_full_(spec.n_qubits_full()),
      lo_(2 * spec.n_inactive),
      state_(std::move(active_state)),
      identity_(PauliSum::identity(spec.n_qubits_full())) {
  if (h_full.n_qubits() != n_full_)
    throw Error("ProjectedEvaluator: Hamiltonian qubit count mismatch");
  if (state_.n_qubits() != spec_.n_qubits_active())
    throw Error("ProjectedEvaluator: state must live on the active qubits");
  const int na_q = spec_.n_qubits_active();
  inact_mask_ = (lo_ == 0) ? 0 : ((std::uint64_t{1} << lo_) - 1);
  act_mask_ = ((na_q == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << na_q) - 1)) << lo_;
  ext_mask_ = ~act_mask_ & ((n_full_ == 64) ? ~std::uint64_t{0}
                                            : ((std::uint64_t{1} << n_full_) - 1));
  for (const auto& [key, coeff] : h_full.terms())
    h_buckets_[key.x & ext_mask_].emplace_back(PauliString(n_full_, key.x, key.z), coeff);
  for (auto& [x_ext, bucket] : h_buckets_)
    std::sort(bucket.begin(), bucket.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

cplx ProjectedEvaluator::projected_string(const PauliString& s) const {
  // caller guarantees no X/Y support on frozen qubits
  const double sign = (std::popcount(s.z & inact_mask_) & 1) ? -1.0 : 1.0;
  const PauliSum::Key key{(s.x & act_mask_) >> lo_, (s.z & act_mask_) >> lo_};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    const cplx val =
        state_.expectation(PauliString(spec_.n_qubits_active(), key.x, key.z));
    it = cache_.emplace(key, val).first;
  }
  return sign * it->second;
}

cplx ProjectedEvaluator::expect(const PauliSum& op) const {
  if (op.n_qubits() != n_full_) throw Error("ProjectedEvaluator: qubit count mismatch");
  cplx acc{0, 0};
  for (const auto& [key, coeff] : op.terms()) {
    if (key.x & ext_mask_) continue;
    acc += coeff * projected_string(PauliString(n_full_, key.x, key.z));
  }
  return acc;
}

cplx ProjectedEvaluator::expect_ahb(const PauliSum& a, const PauliSum& b) const {
  if (a.n_qubits() != n_full_ || b.n_qubits() != n_full_)
    throw Error("ProjectedEvaluator: qubit count mismatch");
  cplx acc{0, 0};
  for (const auto& [ka, ca] : a.terms()) {
    const PauliString sa(n_full_, ka.x, ka.z);
    const std::uint64_t xa_ext = ka.x & ext_mask_;
    for (const auto& [kb, cb] : b.terms()) {
      const PauliString sb(n_full_, kb.x, kb.z);
      // survival of the projection demands the X support of the triple
      // product vanishes on the frozen qubits
      const auto bucket = h_buckets_.find(xa_ext ^ (kb.x & ext_mask_));
      if (bucket == h_buckets_.end()) continue;
      const cplx cab = ca * cb;
      for (const auto& [sh, ch] : bucket->second) {
        const auto [p1, s1] = pauli_mul(sa, sh);
        const auto [p2, s2] = pauli_mul(s1, sb);
        acc += cab * ch * p1 * p2 * projected_string(s2);
      }
    }
  }
  return acc;
}

cplx ProjectedEvaluator::expect_h() const { return expect_ahb(identity_, identity_); }

double EomMatrices::max_sigma_qg() const {
  if (n_q == 0 || n_g == 0) return 0.0;
  return std::max(Sigma.topRightCorner(n_q, n_g).cwiseAbs().maxCoeff(),
                  Sigma.bottomLeftCorner(n_g, n_q).cwiseAbs().maxCoeff());
}

Eigen::MatrixXcd EomMatrices::e2() const {
  const int n = dim();
  Eigen::MatrixXcd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = A;
  m.topRightCorner(n, n) = B;
  m.bottomLeftCorner(n, n) = B.conjugate();
  m.bottomRightCorner(n, n) = A.conjugate();
  return m;
}

Eigen::MatrixXcd EomMatrices::s2() const {
  const int n = dim();
  Eigen::MatrixXcd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = Sigma;
  m.topRightCorner(n, n) = Delta;
  m.bottomLeftCorner(n, n) = -Delta.conjugate();
  m.bottomRightCorner(n, n) = -Sigma.conjugate();
  return m;
}

EomMatrices build_eom_matrices(const EomOperatorBasis& basis, const ProjectedEvaluator& ev) {
  const int nq = basis.n_q, ng = basis.n_g, n = nq + ng;
  EomMatrices m;
  m.n_q = nq;
  m.n_g = ng;
  m.A = Eigen::MatrixXcd::Zero(n, n);
  m.B = Eigen::MatrixXcd::Zero(n, n);
  m.Sigma = Eigen::MatrixXcd::Zero(n, n);
  m.Delta = Eigen::MatrixXcd::Zero(n, n);

  const PauliSum id = PauliSum::identity(basis.n_qubits);
  auto op = [&](int i) -> const PauliSum& { return basis.ops[static_cast<std::size_t>(i)]; };
  auto dag = [&](int i) -> const PauliSum& {
    return basis.ops_dagger[static_cast<std::size_t>(i)];
  };

  // A and B blocks, from the working equations of the response problem
  for (int i = 0; i < n; ++i) {
    const bool gi = i >= nq;
    for (int j = 0; j < n; ++j) {
      const bool gj = j >= nq;
      cplx a, b;
      if (!gi && !gj) {
        const PauliSum qq = sum_mul(dag(j), op(i));
        a = 0.5 * (2.0 * ev.expect_ahb(dag(j), op(i)) - ev.expect_ahb(qq, id) -
                   ev.expect_ahb(id, qq));
        b = ev.expect_ahb(id, sum_mul(op(i), op(j)));
      } else if (!gi && gj) {
        a = 0.5 * (2.0 * ev.expect_ahb(dag(j), op(i)) -
                   ev.expect_ahb(id, sum_mul(op(i), dag(j))) -
                   ev.expect_ahb(id, sum_mul(dag(j), op(i))));
        b = 0.5 * (ev.expect_ahb(id, sum_mul(op(j), op(i))) - 2.0 * ev.expect_ahb(op(j), op(i)) +
                   ev.expect_ahb(id, sum_mul(op(i), op(j))));
      } else if (gi && !gj) {
        // A[G,q] is the conjugate of A[q,G] transposed; B[G,q] its plain
        // transpose -- both filled in the second pass below
        continue;
      } else {
        const PauliSum gi_gjd = sum_mul(op(i), dag(j));
        const PauliSum gjd_gi = sum_mul(dag(j), op(i));
        a = 0.5 * (2.0 * ev.expect_ahb(op(i), dag(j)) + 2.0 * ev.expect_ahb(dag(j), op(i)) -
                   ev.expect_ahb(id, gi_gjd) - ev.expect_ahb(gjd_gi, id) -
                   ev.expect_ahb(id, gjd_gi) - ev.expect_ahb(gi_gjd, id));
        // -<[G_I, [H, G_J]]>
        b = -(ev.expect_ahb(op(i), op(j)) - ev.expect_ahb(sum_mul(op(i), op(j)), id) -
              ev.expect_ahb(id, sum_mul(op(j), op(i))) + ev.expect_ahb(op(j), op(i)));
      }
      m.A(i, j) = a;
      m.B(i, j) = b;
    }
  }
  for (int i = nq; i < n; ++i)
    for (int j = 0; j < nq; ++j) {
      m.A(i, j) = std::conj(m.A(j, i));
      m.B(i, j) = m.B(j, i);
    }
  // B is defined as the symmetric half-sum over the two operator orderings;
  // the single-ordering expressions above only coincide with it on exact
  // eigenstates, so enforce the defining form here
  m.B = (0.5 * (m.B + m.B.transpose())).eval();

  // metric and the Delta structure check
  for (int i = 0; i < n; ++i) {
    const bool gi = i >= nq;
    for (int j = 0; j < n; ++j) {
      const bool gj = j >= nq;
      if (!gi && !gj) {
        m.Sigma(i, j) = ev.expect(sum_mul(dag(i), op(j)));
      } else if (gi && gj) {
        m.Sigma(i, j) = ev.expect(sum_mul(dag(i), op(j)) - sum_mul(op(j), dag(i)));
      } else {
        // expected zero; evaluated as a structure check
        m.Sigma(i, j) = ev.expect(sum_mul(dag(i), op(j)) - sum_mul(op(j), dag(i)));
      }
      m.Delta(i, j) = -ev.expect(sum_mul(op(i), op(j)) - sum_mul(op(j), op(i)));
    }
  }
  return m;
}

Eigen::VectorXd gradient_diagnostic(const EomOperatorBasis& basis, const ProjectedEvaluator& ev) {
  const PauliSum id = PauliSum::identity(basis.n_qubits);
  Eigen::VectorXd out(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const PauliSum& q = basis.ops[static_cast<std::size_t>(i)];
    out[i] = std::abs(ev.expect_ahb(id, q) - ev.expect_ahb(q, id));
  }
  return out;
}

EomSolution solve_eom(const EomMatrices& m, double lin_tol, double imag_tol) {
  const int n = m.dim();
  if (n == 0) throw InputError("eom solve: empty operator basis");

  // canonical orthogonalization of the metric
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ses(m.Sigma);
  std::vector<int> kept;
  for (int k = 0; k < n; ++k)
    if (ses.eigenvalues()[k] > lin_tol) kept.push_back(k);
  const int nk = static_cast<int>(kept.size());
  if (nk == 0) throw InputError("eom solve: metric is entirely null; no excitations resolvable");

  Eigen::MatrixXcd x(n, nk);
  for (int c = 0; c < nk; ++c)
    x.col(c) = ses.eigenvectors().col(kept[static_cast<std::size_t>(c)]) /
               std::sqrt(ses.eigenvalues()[kept[static_cast<std::size_t>(c)]]);
  Eigen::MatrixXcd x2 = Eigen::MatrixXcd::Zero(2 * n, 2 * nk);
  x2.topLeftCorner(n, nk) = x;
  x2.bottomRightCorner(n, nk) = x.conjugate();

  const Eigen::MatrixXcd e2 = m.e2();
  const Eigen::MatrixXcd s2 = m.s2();
  // in the orthogonalized basis the metric is diag(I, -I); fold its inverse
  // into the reduced operator and solve the standard eigenproblem
  Eigen::MatrixXcd reduced = x2.adjoint() * e2 * x2;
  reduced.bottomRows(nk) *= -1.0;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(reduced);
  EomSolution sol;
  sol.n_metric_kept = nk;
  sol.raw_eigenvalues = ces.eigenvalues();

  std::vector<std::pair<double, Eigen::VectorXcd>> states;
  for (int k = 0; k < 2 * nk; ++k) {
    const cplx ev_k = ces.eigenvalues()[k];
    if (std::abs(ev_k.imag()) > imag_tol)
      throw InstabilityError("eom solve: complex eigenvalue pair " + std::to_string(ev_k.real()) +
                             " +/- " + std::to_string(ev_k.imag()) +
                             "i exceeds the reality tolerance (poor ground state?)");
    if (ev_k.real() <= 1e-8) continue;  // keep the positive branch only
    Eigen::VectorXcd v = x2 * ces.eigenvectors().col(k);
    const cplx norm = (v.adjoint() * s2 * v)(0);
    if (norm.real() <= 0.0) continue;  // negative-metric partner of a -E root
    v /= std::sqrt(norm.real());
    // gauge fix: largest-magnitude component real positive
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    const cplx phase = v[imax] / std::abs(v[imax]);
    v /= phase;
    states.emplace_back(ev_k.real(), std::move(v));
  }
  std::sort(states.begin(), states.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  sol.energies.resize(static_cast<Eigen::Index>(states.size()));
  sol.metric_norms.resize(static_cast<Eigen::Index>(states.size()));
  sol.vectors.resize(2 * n, static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    sol.energies[static_cast<Eigen::Index>(k)] = states[k].first;
    sol.vectors.col(static_cast<Eigen::Index>(k)) = states[k].second;
    sol.metric_norms[static_cast<Eigen::Index>(k)] =
        (states[k].second.adjoint() * s2 * states[k].second)(0).real();
  }
  return sol;
}

double max_pairing_deviation(const EomSolution& sol) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < sol.energies.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < sol.raw_eigenvalues.size(); ++j) {
      best = std::min(best, std::abs(sol.raw_eigenvalues(j) + sol.energies(k)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace ooq

#!/usr/bin/env python3
"""Generate molecular-integral fixtures (FCIDUMP + PROPINTS) for the test suite.

Computes Gaussian-basis integrals with the McMurchie-Davidson scheme, runs a
closed-shell RHF, transforms everything to the canonical MO basis, and writes
the files under tests/fixtures/.  Only s and p shells are supported, which
covers STO-3G and 6-31G for H and Be.
"""

import argparse
import math
import os

import numpy as np
from scipy.special import gammainc, gamma as gamma_fn

ANGSTROM_TO_BOHR = 1.8897259886


# --------------------------------------------------------------------------
# basis set data (exponents, contraction coefficients)

STO3G = {
    "H": [("S", [(3.42525091, 0.15432897),
                 (0.62391373, 0.53532814),
                 (0.16885540, 0.44463454)])],
    "Be": [("S", [(30.1678710, 0.15432897),
                  (5.4951153, 0.53532814),
                  (1.4871927, 0.44463454)]),
           ("SP", [(1.3148331, -0.09996723, 0.15591627),
                   (0.3055389, 0.39951283, 0.60768372),
                   (0.0993707, 0.70011547, 0.39195739)])],
}

G631 = {
    "H": [("S", [(18.73113696, 0.03349460434),
                 (2.825394365, 0.2347269535),
                 (0.6401216923, 0.8137573261)]),
          ("S", [(0.1612777588, 1.0)])],
    "Be": [("S", [(1264.5857000, 0.0019448),
                  (189.9368100, 0.0148351),
                  (43.1590890, 0.0720906),
                  (12.0986620, 0.2371542),
                  (3.8063232, 0.4691987),
                  (1.2728903, 0.3565202)]),
           ("SP", [(3.1964631, -0.1126487, 0.0559802),
                   (0.7478133, -0.2295064, 0.2615506),
                   (0.2199663, 1.1869167, 0.7939723)]),
           ("SP", [(0.0823099, 1.0, 1.0)])],
}

BASES = {"sto-3g": STO3G, "6-31g": G631}
CHARGES = {"H": 1, "Be": 4}


class Primitive:
    def __init__(self, exp, coef, lmn, center):
        self.exp = exp
        self.lmn = lmn
        self.center = np.asarray(center, dtype=float)
        l, m, n = lmn
        # normalization of a cartesian gaussian
        norm = (2 * exp / math.pi) ** 0.75 * (4 * exp) ** ((l + m + n) / 2.0)
        norm /= math.sqrt(_odd_fact(2 * l - 1) * _odd_fact(2 * m - 1) * _odd_fact(2 * n - 1))
        self.coef = coef * norm


def _odd_fact(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


class ContractedGaussian:
    def __init__(self, prims):
        self.prims = prims
        # normalize the contraction
        s = sum(pa.coef * pb.coef * _overlap_prim(pa, pb)
                for pa in prims for pb in prims)
        for p in prims:
            p.coef /= math.sqrt(s)


def build_basis(atoms, basis_name):
    data = BASES[basis_name]
    cgtos = []
    for sym, center in atoms:
        for shell in data[sym]:
            kind, rows = shell[0], shell[1]
            if kind == "S":
                cgtos.append(ContractedGaussian(
                    [Primitive(e, c, (0, 0, 0), center) for e, c in rows]))
            elif kind == "SP":
                cgtos.append(ContractedGaussian(
                    [Primitive(e, cs, (0, 0, 0), center) for e, cs, cp in rows]))
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    cgtos.append(ContractedGaussian(
                        [Primitive(e, cp, lmn, center) for e, cs, cp in rows]))
            else:
                raise ValueError(kind)
    return cgtos


# --------------------------------------------------------------------------
# McMurchie-Davidson machinery

def hermite_E(i, j, t, Qx, a, b):
    """Hermite expansion coefficient E_t^{ij} for a 1D gaussian pair."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * Qx * Qx)
    if j == 0:
        return (hermite_E(i - 1, j, t - 1, Qx, a, b) / (2 * p)
                - q * Qx / a * hermite_E(i - 1, j, t, Qx, a, b)
                + (t + 1) * hermite_E(i - 1, j, t + 1, Qx, a, b))
    return (hermite_E(i, j - 1, t - 1, Qx, a, b) / (2 * p)
            + q * Qx / b * hermite_E(i, j - 1, t, Qx, a, b)
            + (t + 1) * hermite_E(i, j - 1, t + 1, Qx, a, b))


def _overlap_prim(pa, pb):
    a, b = pa.exp, pb.exp
    p = a + b
    AB = pa.center - pb.center
    out = (math.pi / p) ** 1.5
    for d in range(3):
        out *= hermite_E(pa.lmn[d], pb.lmn[d], 0, AB[d], a, b)
    return out


def boys(n, x):
    if x < 1e-12:
        return 1.0 / (2 * n + 1) - x / (2 * n + 3)
    return gamma_fn(n + 0.5) * gammainc(n + 0.5, x) / (2 * x ** (n + 0.5))


def hermite_R(t, u, v, n, p, PC):
    """Hermite Coulomb integral R^n_{tuv}."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2 * p) ** n * boys(n, p * float(np.dot(PC, PC)))
    if t > 0:
        return ((t - 1) * hermite_R(t - 2, u, v, n + 1, p, PC)
                + PC[0] * hermite_R(t - 1, u, v, n + 1, p, PC))
    if u > 0:
        return ((u - 1) * hermite_R(t, u - 2, v, n + 1, p, PC)
                + PC[1] * hermite_R(t, u - 1, v, n + 1, p, PC))
    return ((v - 1) * hermite_R(t, u, v - 2, n + 1, p, PC)
            + PC[2] * hermite_R(t, u, v - 1, n + 1, p, PC))


def overlap(ca, cb):
    return sum(pa.coef * pb.coef * _overlap_prim(pa, pb)
               for pa in ca.prims for pb in cb.prims)


def _kinetic_prim(pa, pb):
    """Kinetic energy via second derivatives of the ket."""
    b = pb.exp
    l, m, n = pb.lmn
    term0 = b * (2 * (l + m + n) + 3) * _overlap_prim(pa, pb)
    term1 = 0.0
    for inc in [(2, 0, 0), (0, 2, 0), (0, 0, 2)]:
        term1 += _overlap_raw(pa, pb, shift=inc)
    term1 *= -2 * b * b
    term2 = 0.0
    for d in range(3):
        if pb.lmn[d] >= 2:
            dec = [0, 0, 0]
            dec[d] = -2
            term2 += pb.lmn[d] * (pb.lmn[d] - 1) * _overlap_raw(pa, pb, shift=tuple(dec))
    term2 *= -0.5
    return term0 + term1 + term2


def _overlap_raw(pa, pb, shift=(0, 0, 0)):
    """Overlap with the ket angular momentum shifted, same exponents/centers."""
    a, b = pa.exp, pb.exp
    p = a + b
    AB = pa.center - pb.center
    out = (math.pi / p) ** 1.5
    for d in range(3):
        j = pb.lmn[d] + shift[d]
        if j < 0:
            return 0.0
        out *= hermite_E(pa.lmn[d], j, 0, AB[d], a, b)
    return out


def kinetic(ca, cb):
    return sum(pa.coef * pb.coef * _kinetic_prim(pa, pb)
               for pa in ca.prims for pb in cb.prims)


def nuclear(ca, cb, atoms):
    out = 0.0
    for pa in ca.prims:
        for pb in cb.prims:
            a, b = pa.exp, pb.exp
            p = a + b
            P = (a * pa.center + b * pb.center) / p
            AB = pa.center - pb.center
            l1, m1, n1 = pa.lmn
            l2, m2, n2 = pb.lmn
            pre = 2 * math.pi / p * pa.coef * pb.coef
            for sym, C in atoms:
                PC = P - np.asarray(C)
                val = 0.0
                for t in range(l1 + l2 + 1):
                    Ex = hermite_E(l1, l2, t, AB[0], a, b)
                    if Ex == 0.0:
                        continue
                    for u in range(m1 + m2 + 1):
                        Ey = hermite_E(m1, m2, u, AB[1], a, b)
                        if Ey == 0.0:
                            continue
                        for v in range(n1 + n2 + 1):
                            Ez = hermite_E(n1, n2, v, AB[2], a, b)
                            if Ez == 0.0:
                                continue
                            val += Ex * Ey * Ez * hermite_R(t, u, v, 0, p, PC)
                out -= CHARGES[sym] * pre * val
    return out


def eri(ca, cb, cc, cd):
    out = 0.0
    for pa in ca.prims:
        for pb in cb.prims:
            a, b = pa.exp, pb.exp
            p = a + b
            P = (a * pa.center + b * pb.center) / p
            AB = pa.center - pb.center
            Eab = [[hermite_E(pa.lmn[d], pb.lmn[d], t, AB[d], a, b)
                    for t in range(pa.lmn[d] + pb.lmn[d] + 1)] for d in range(3)]
            for pc in cc.prims:
                for pd in cd.prims:
                    c, dd = pc.exp, pd.exp
                    q = c + dd
                    Q = (c * pc.center + dd * pd.center) / q
                    CD = pc.center - pd.center
                    Ecd = [[hermite_E(pc.lmn[d2], pd.lmn[d2], t, CD[d2], c, dd)
                            for t in range(pc.lmn[d2] + pd.lmn[d2] + 1)] for d2 in range(3)]
                    alpha = p * q / (p + q)
                    PQ = P - Q
                    pre = (2 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
                           * pa.coef * pb.coef * pc.coef * pd.coef)
                    val = 0.0
                    for t in range(len(Eab[0])):
                        if Eab[0][t] == 0.0:
                            continue
                        for u in range(len(Eab[1])):
                            if Eab[1][u] == 0.0:
                                continue
                            for v in range(len(Eab[2])):
                                if Eab[2][v] == 0.0:
                                    continue
                                for tau in range(len(Ecd[0])):
                                    if Ecd[0][tau] == 0.0:
                                        continue
                                    for nu in range(len(Ecd[1])):
                                        if Ecd[1][nu] == 0.0:
                                            continue
                                        for phi in range(len(Ecd[2])):
                                            if Ecd[2][phi] == 0.0:
                                                continue
                                            sign = (-1) ** (tau + nu + phi)
                                            val += (Eab[0][t] * Eab[1][u] * Eab[2][v]
                                                    * Ecd[0][tau] * Ecd[1][nu] * Ecd[2][phi]
                                                    * sign
                                                    * hermite_R(t + tau, u + nu, v + phi,
                                                                0, alpha, PQ))
                    out += pre * val
    return out


def _moment_1d(pa, pb, d):
    """<a| x_d |b> about the origin, as a full 3D integral."""
    a, b = pa.exp, pb.exp
    p = a + b
    P = (a * pa.center + b * pb.center) / p
    AB = pa.center - pb.center
    out = (math.pi / p) ** 1.5
    for k in range(3):
        i, j = pa.lmn[k], pb.lmn[k]
        E0 = hermite_E(i, j, 0, AB[k], a, b)
        if k == d:
            E1 = hermite_E(i, j, 1, AB[k], a, b)
            out *= (E1 + P[k] * E0)
        else:
            out *= E0
    return out


def dipole(ca, cb, d):
    return sum(pa.coef * pb.coef * _moment_1d(pa, pb, d)
               for pa in ca.prims for pb in cb.prims)


def _deriv_overlap_1d_factors(pa, pb, dx_dim, mom_dim):
    """Product over dims of 1D integrals with d/dx on ket in dx_dim and a
    position moment (about origin 0) in mom_dim."""
    a, b = pa.exp, pb.exp
    p = a + b
    P = (a * pa.center + b * pb.center) / p
    AB = pa.center - pb.center
    out = (math.pi / p) ** 1.5
    for k in range(3):
        i, j = pa.lmn[k], pb.lmn[k]
        if k == dx_dim:
            # d/dx |j> = j|j-1> - 2b|j+1>
            lo = j * hermite_E(i, j - 1, 0, AB[k], a, b) if j > 0 else 0.0
            hi = -2 * b * hermite_E(i, j + 1, 0, AB[k], a, b)
            out *= (lo + hi)
        elif k == mom_dim:
            E0 = hermite_E(i, j, 0, AB[k], a, b)
            E1 = hermite_E(i, j, 1, AB[k], a, b)
            out *= (E1 + P[k] * E0)
        else:
            out *= hermite_E(i, j, 0, AB[k], a, b)
    return out


def angmom(ca, cb, comp):
    """<a| (r x grad)_comp |b> about gauge origin (0,0,0); real antisymmetric."""
    axes = {0: (1, 2), 1: (2, 0), 2: (0, 1)}[comp]  # Lx = y dz - z dy, etc.
    m1, d1 = axes[0], axes[1]
    m2, d2 = axes[1], axes[0]
    out = 0.0
    for pa in ca.prims:
        for pb in cb.prims:
            out += pa.coef * pb.coef * (
                _deriv_overlap_1d_factors(pa, pb, d1, m1)
                - _deriv_overlap_1d_factors(pa, pb, d2, m2))
    return out


# --------------------------------------------------------------------------
# SCF and file output

def rhf(S, Hcore, ERI, nelec, e_nuc, max_iter=200, tol=1e-11):
    n = S.shape[0]
    nocc = nelec // 2
    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval ** -0.5) @ svec.T
    D = np.zeros((n, n))
    E_old = 0.0
    F = Hcore
    for it in range(max_iter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :nocc]
        D = 2.0 * Cocc @ Cocc.T
        J = np.einsum("pqrs,rs->pq", ERI, D)
        K = np.einsum("prqs,rs->pq", ERI, D)
        F = Hcore + J - 0.5 * K
        E = 0.5 * np.sum(D * (Hcore + F)) + e_nuc
        if abs(E - E_old) < tol and it > 2:
            return E, C, eps
        E_old = E
    raise RuntimeError("SCF did not converge")


def mo_transform(ERI, C):
    g = np.einsum("pqrs,pi->iqrs", ERI, C)
    g = np.einsum("iqrs,qj->ijrs", g, C)
    g = np.einsum("ijrs,rk->ijks", g, C)
    g = np.einsum("ijks,sl->ijkl", g, C)
    return g


def write_fcidump(path, h, g, e_nuc, nelec, tol=1e-14):
    n = h.shape[0]
    with open(path, "w") as f:
        f.write(f"&FCI NORB={n},NELEC={nelec},MS2=0,\n")
        f.write(" ORBSYM=" + ",".join(["1"] * n) + ",\n")
        f.write(" ISYM=1,\n")
        f.write("&END\n")
        seen = set()
        for p in range(n):
            for q in range(p + 1):
                for r in range(n):
                    for s in range(r + 1):
                        if (p, q) < (r, s):
                            continue
                        key = (p, q, r, s)
                        if key in seen or abs(g[p, q, r, s]) < tol:
                            continue
                        seen.add(key)
                        f.write(f"{g[p, q, r, s]:23.16e} {p+1:3d} {q+1:3d} {r+1:3d} {s+1:3d}\n")
        for p in range(n):
            for q in range(p + 1):
                if abs(h[p, q]) >= tol:
                    f.write(f"{h[p, q]:23.16e} {p+1:3d} {q+1:3d}   0   0\n")
        f.write(f"{e_nuc:23.16e}   0   0   0   0\n")


def write_propints(path, kind, mats, origin, symmetric, tol=1e-14):
    n = mats[0].shape[0]
    with open(path, "w") as f:
        f.write(f"PROPINTS {kind} NORB={n} ORIGIN={origin[0]:.10f} {origin[1]:.10f} {origin[2]:.10f}\n")
        for comp, M in zip("xyz", mats):
            for i in range(n):
                jmax = i + 1 if symmetric else n
                for j in range(jmax):
                    if abs(M[i, j]) >= tol:
                        f.write(f"{comp} {i+1} {j+1} {M[i, j]:23.16e}\n")


def make_system(name, atoms_ang, basis_name, nelec, outdir, magnetic=False):
    atoms = [(s, np.asarray(xyz) * ANGSTROM_TO_BOHR) for s, xyz in atoms_ang]
    cg = build_basis(atoms, basis_name)
    n = len(cg)
    S = np.array([[overlap(a, b) for b in cg] for a in cg])
    T = np.array([[kinetic(a, b) for b in cg] for a in cg])
    V = np.array([[nuclear(a, b, atoms) for b in cg] for a in cg])
    ERI = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(p + 1):
            for r in range(n):
                for s in range(r + 1):
                    if (p, q) < (r, s):
                        continue
                    val = eri(cg[p], cg[q], cg[r], cg[s])
                    for (a, b, c, d) in [(p, q, r, s), (q, p, r, s), (p, q, s, r),
                                         (q, p, s, r), (r, s, p, q), (s, r, p, q),
                                         (r, s, q, p), (s, r, q, p)]:
                        ERI[a, b, c, d] = val
    e_nuc = 0.0
    for i in range(len(atoms)):
        for j in range(i):
            rij = np.linalg.norm(atoms[i][1] - atoms[j][1])
            e_nuc += CHARGES[atoms[i][0]] * CHARGES[atoms[j][0]] / rij
    E_hf, C, eps = rhf(S, T + V, ERI, nelec, e_nuc)
    print(f"{name:16s} basis={basis_name:7s} nao={n:2d}  E(RHF) = {E_hf:.8f} Ha")

    h_mo = C.T @ (T + V) @ C
    g_mo = mo_transform(ERI, C)
    tag = basis_name.replace("-", "")
    write_fcidump(os.path.join(outdir, f"{name}_{tag}.fcidump"), h_mo, g_mo, e_nuc, nelec)

    dip = [C.T @ np.array([[dipole(a, b, d) for b in cg] for a in cg]) @ C for d in range(3)]
    write_propints(os.path.join(outdir, f"{name}_{tag}_dipole.propints"),
                   "electric_dipole", dip, (0, 0, 0), symmetric=True)
    if magnetic:
        ang = [0.5 * (C.T @ np.array([[angmom(a, b, d) for b in cg] for a in cg]) @ C)
               for d in range(3)]
        write_propints(os.path.join(outdir, f"{name}_{tag}_magdip.propints"),
                       "magnetic_dipole", ang, (0, 0, 0), symmetric=False)
    return E_hf


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default=os.path.join(os.path.dirname(__file__),
                                                     "..", "tests", "fixtures"))
    args = ap.parse_args()
    outdir = os.path.abspath(args.outdir)
    os.makedirs(outdir, exist_ok=True)

    r_h2 = 0.7414
    make_system("h2", [("H", (0, 0, 0)), ("H", (0, 0, r_h2))], "sto-3g", 2, outdir)
    make_system("h2", [("H", (0, 0, 0)), ("H", (0, 0, r_h2))], "6-31g", 2, outdir)

    # twisted H4 chain, 1.0 A bonds, 90 degree angles, dihedral 120 degrees
    # (chiral geometry -> nonzero rotational strengths)
    r, dih = 1.0, math.radians(120.0)
    a1 = np.array((0.0, 0.0, 0.0))
    a2 = np.array((r, 0.0, 0.0))
    a3 = np.array((r, r, 0.0))
    # bond 3->4 perpendicular to 2->3, rotated about the 2->3 axis by the
    # dihedral measured from the 1-2-3 plane
    axis = (a3 - a2) / np.linalg.norm(a3 - a2)
    v = np.array((-1.0, 0.0, 0.0))  # in-plane reference (parallel to bond 2->1)
    c, s = math.cos(dih), math.sin(dih)
    vrot = v * c + np.cross(axis, v) * s + axis * np.dot(axis, v) * (1 - c)
    a4 = a3 + r * vrot
    make_system("h4", [("H", tuple(a1)), ("H", tuple(a2)), ("H", tuple(a3)),
                       ("H", tuple(a4))], "sto-3g", 4, outdir, magnetic=True)

    r_beh = 1.352
    beh2 = [("Be", (0, 0, 0)), ("H", (0, 0, r_beh)), ("H", (0, 0, -r_beh))]
    make_system("beh2", beh2, "sto-3g", 6, outdir)
    make_system("beh2", beh2, "6-31g", 6, outdir)

    # single atom checks
    # (printed energies below are compared against literature values by hand)
    make_system("be", [("Be", (0, 0, 0))], "sto-3g", 4, outdir)
    make_system("be", [("Be", (0, 0, 0))], "6-31g", 4, outdir)


if __name__ == "__main__":
    main()

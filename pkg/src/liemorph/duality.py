"""Compact duals: transported families with sign-flipped constants.

Splitting a Lie algebra into skew-Hermitian (k) and Hermitian (p) parts
and replacing p by ip produces the algebra of a compact group on which
the same polynomial functions restrict.  Tension and conformality on the
dual side are taken with a sign per basis direction: -1 on k, +1 on ip.
Pushing the 2-jets through shows every eigenfamily constant flips sign:
tau(phi) = -lam phi and kappa(phi, psi) = -mu phi psi on the dual group.

The metric sign of a dual direction W read off as Re trace(W^2) is
negative on all of k + ip (everything is skew-Hermitian there), so it
cannot reproduce the +1 on ip; the sign read off the source element
before multiplication by i does.  verify_dual reports both sign tables
as a diagnostic and uses the structural split for the actual check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .calculus import DEFAULT_SEED, ScalarField, TraceForm, jet_eval
from .families import (
    BiEigenFamily,
    EigenFamily,
    Family,
    _Accumulator,
    _jet_tables,
    _rel,
)
from .groups import (
    BasisElement,
    GroupDescriptor,
    algebra_basis,
    signature_matrix,
    symplectic_form,
)

DUAL_SU = "dual_su"
DUAL_SO = "dual_so"
DUAL_SP = "dual_sp"


@dataclass(frozen=True)
class DualDescriptor:
    """Compact dual target of a source group.

    kind selects the membership test; label is the conventional name.
    bilinear (if set) is the matrix S with u S u^T = S on the dual group;
    project_traceless marks duals sampled inside the determinant-one
    subgroup, which adds |det - 1| to the membership residual.
    """

    source: GroupDescriptor
    kind: str
    label: str
    bilinear: np.ndarray | None
    project_traceless: bool

    @property
    def matrix_size(self) -> int:
        return self.source.matrix_size


def dual_descriptor(desc: GroupDescriptor) -> DualDescriptor:
    n = desc.n
    fam = desc.family
    if fam in ("gl_r", "sl_r"):
        return DualDescriptor(desc, DUAL_SU, f"SU({n})", None,
                              project_traceless=(fam == "gl_r"))
    if fam == "u_star":
        return DualDescriptor(desc, DUAL_SU, f"SU({2 * n})", None, True)
    if fam == "u_pq":
        return DualDescriptor(desc, DUAL_SU, f"SU({n})", None, True)
    if fam == "sp_r":
        return DualDescriptor(desc, DUAL_SP, f"Sp({n})",
                              symplectic_form(n, dtype=np.complex128), False)
    if fam == "sp_pq":
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        z = np.zeros((n, n), dtype=np.complex128)
        m = np.block([[z, ipq], [-ipq, z]])
        return DualDescriptor(desc, DUAL_SP, f"Sp({n})", m, False)
    if fam == "so_star":
        s = (signature_matrix(n, n, dtype=np.complex128)
             @ symplectic_form(n, dtype=np.complex128))
        return DualDescriptor(desc, DUAL_SO, f"SO({2 * n})", s, False)
    if fam == "so_pq":
        return DualDescriptor(desc, DUAL_SO, f"SO({n})",
                              signature_matrix(desc.p, desc.q,
                                               dtype=np.complex128), False)
    raise ValueError(f"no dual for family {fam!r}")


def _split_type(z: np.ndarray, tol: float = 1e-12) -> str:
    """'skew' if Z* = -Z, 'herm' if Z* = Z; anything else is rejected."""
    zs = np.conj(z).T
    if np.max(np.abs(zs + z)) <= tol:
        return "skew"
    if np.max(np.abs(zs - z)) <= tol:
        return "herm"
    raise ValueError("basis element is neither Hermitian nor skew-Hermitian")


def dual_basis(desc: GroupDescriptor) -> list[BasisElement]:
    """Dual algebra basis: keep skew-Hermitian elements with sign -1,
    multiply Hermitian ones by i with sign +1."""
    out = []
    for b in algebra_basis(desc):
        kind = _split_type(b.matrix)
        if kind == "skew":
            out.append(BasisElement(b.label, b.matrix, eps=-1))
        else:
            out.append(BasisElement("i*" + b.label, 1j * b.matrix, eps=+1))
    return out


def dual_membership_residual(dd: DualDescriptor, u: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.complex128)
    m = dd.matrix_size
    eye = np.eye(m)
    res = float(np.max(np.abs(u @ np.conj(u).T - eye)))
    if dd.bilinear is not None:
        res = max(res, float(np.max(np.abs(u @ dd.bilinear @ u.T - dd.bilinear))))
    if dd.kind in (DUAL_SU, DUAL_SO):
        res = max(res, abs(np.linalg.det(u) - 1.0))
    return res


def sample_dual_point(dd: DualDescriptor, basis: list[BasisElement],
                      rng: np.random.Generator, scale: float = 0.3) -> np.ndarray:
    z = np.zeros((dd.matrix_size, dd.matrix_size), dtype=np.complex128)
    for c, b in zip(rng.uniform(-scale, scale, size=len(basis)), basis):
        z += c * b.matrix
    if dd.project_traceless:
        z -= (np.trace(z) / dd.matrix_size) * np.eye(dd.matrix_size)
    return expm(z)


@dataclass
class DualFamily:
    """A family transported to the compact dual group.

    The generator fields are the same expression trees; only the group
    being sampled and the metric signs change, and every claimed constant
    flips sign.
    """

    source: Family
    dual: DualDescriptor
    basis: list[BasisElement]


def dualize_family(fam: Family) -> DualFamily:
    dd = dual_descriptor(fam.descriptor)
    return DualFamily(source=fam, dual=dd, basis=dual_basis(fam.descriptor))


@dataclass
class DualReport:
    descriptor: str
    dual_label: str
    family_name: str
    samples: int
    tol: float
    membership_tol: float
    seed: int
    scale: float
    residuals: dict
    claimed: dict
    measured: dict
    const_err: dict
    membership_err: float
    sign_table: list
    metric_sign_mismatches_on_dual: int
    cross_diagnostic: dict | None

    @property
    def ok(self) -> bool:
        return (all(v <= self.tol for v in self.residuals.values())
                and all(v <= self.tol for v in self.const_err.values())
                and self.membership_err <= self.membership_tol)


def verify_dual(dual: DualFamily, samples: int = 20, tol: float = 1e-8,
                membership_tol: float = 1e-10, seed: int = DEFAULT_SEED,
                scale: float = 0.3) -> DualReport:
    """Verify the sign-flipped constants on sampled dual group points.

    Membership of every sample is checked against the dual group's
    defining relations.  The sign table lists, per dual direction, the
    structural sign used and the metric signs read from Re trace(W^2) on
    the dual element and on its source element; the latter agrees with
    the structural choice, the former does not on ip.
    """
    fam = dual.source
    dd = dual.dual
    basis = dual.basis
    zs = np.stack([b.matrix for b in basis])
    eps = np.array([b.eps for b in basis], dtype=np.float64)
    s2 = np.einsum("k,kab->ab", eps, zs @ zs)

    source_basis = algebra_basis(fam.descriptor)
    sign_table = []
    mism = 0
    for b_src, b_dual in zip(source_basis, basis):
        metric_dual = float(np.sign(np.real(np.trace(b_dual.matrix
                                                     @ b_dual.matrix))))
        metric_src = float(np.sign(np.real(np.trace(b_src.matrix
                                                    @ b_src.matrix))))
        if int(metric_dual) != b_dual.eps:
            mism += 1
        sign_table.append({"label": b_dual.label, "eps": b_dual.eps,
                           "metric_sign_dual": metric_dual,
                           "metric_sign_source": metric_src})

    if isinstance(fam, EigenFamily):
        groups = [("", fam.generators, -fam.lam, -fam.mu)]
        cross_claim = None
    else:
        groups = [("1", fam.e1, -fam.lam1, -fam.mu1),
                  ("2", fam.e2, -fam.lam2, -fam.mu2)]
        cross_claim = None if fam.mu_cross is None else -fam.mu_cross

    residuals: dict[str, float] = {}
    fits = {f"lambda{t}": _Accumulator() for t, *_ in groups}
    fits.update({f"mu{t}": _Accumulator() for t, *_ in groups})
    cross_fit = _Accumulator()
    cross_pairs = []
    mem_err = 0.0

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        u = sample_dual_point(dd, basis, rng, scale)
        mem_err = max(mem_err, dual_membership_residual(dd, u))
        tables = {}
        for tag, gens, lam, mu in groups:
            v, d, t = _jet_tables(gens, u, zs, s2, eps)
            k = np.einsum("gk,hk,k->gh", d, d, eps)
            tables[tag] = (v, d)
            residuals[f"tau{tag}"] = max(residuals.get(f"tau{tag}", 0.0),
                                         _rel(t, lam * v))
            residuals[f"kappa{tag}"] = max(residuals.get(f"kappa{tag}", 0.0),
                                           _rel(k, mu * np.outer(v, v)))
            fits[f"lambda{tag}"].add(v, t)
            fits[f"mu{tag}"].add(np.outer(v, v), k)
        if len(groups) == 2:
            v1, d1 = tables["1"]
            v2, d2 = tables["2"]
            kx = np.einsum("gk,hk,k->gh", d1, d2, eps)
            prod = np.outer(v1, v2)
            cross_fit.add(prod, kx)
            cross_pairs.append((prod, kx))
            if cross_claim is not None:
                residuals["cross"] = max(residuals.get("cross", 0.0),
                                         _rel(kx, cross_claim * prod))

    claimed, measured, const_err = {}, {}, {}
    for tag, gens, lam, mu in groups:
        for cname, cval in ((f"lambda{tag}", lam), (f"mu{tag}", mu)):
            claimed[cname] = complex(cval)
            measured[cname] = fits[cname].fit
            const_err[cname] = abs(complex(cval) - fits[cname].fit)
    cross_diag = None
    if len(groups) == 2:
        if cross_claim is not None:
            claimed["mu_cross"] = complex(cross_claim)
            measured["mu_cross"] = cross_fit.fit
            const_err["mu_cross"] = abs(complex(cross_claim) - cross_fit.fit)
        else:
            best = cross_fit.fit
            dev = max(_rel(kx, best * prod) for prod, kx in cross_pairs)
            cross_diag = {"best_fit": [float(np.real(best)),
                                       float(np.imag(best))],
                          "max_rel_deviation_from_fit": dev}

    return DualReport(
        descriptor=fam.descriptor.text, dual_label=dd.label,
        family_name=fam.name, samples=samples, tol=tol,
        membership_tol=membership_tol, seed=seed, scale=scale,
        residuals=residuals, claimed=claimed, measured=measured,
        const_err=const_err, membership_err=mem_err, sign_table=sign_table,
        metric_sign_mismatches_on_dual=mism, cross_diagnostic=cross_diag)

"""Eigenfamily constructors and their pointwise verification.

An eigenfamily is a set of functions phi with tau(phi) = lam*phi and
kappa(phi, psi) = mu*phi*psi for fixed constants; a bi-eigenfamily is a
pair of such sets whose cross pairings are also proportional.  The
constructors here produce the families that exist on each group: linear
combinations of entry coordinates weighted by an isotropic or otherwise
constrained vector.  Three constructors return a pair of eigenfamilies
whose cross pairing is provably not proportional (it comes out with the
generator indices swapped); for these the cross ratio is measured and
reported but never asserted.

verify_family evaluates every claim at sampled group points with exact
2-jets and also reports best-fit constants, so a wrong claimed eigenvalue
shows up twice: as a large residual and as a mismatched fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import (
    COORD_BLOCKS,
    DEFAULT_SEED,
    ScalarField,
    TraceForm,
    block_bounds,
    entry_jets,
    field_from_dict,
    jet_eval,
)
from .groups import GroupDescriptor, algebra_basis, parse_descriptor, sample_point
from .linalg import IndexSets


@dataclass
class EigenFamily:
    descriptor: GroupDescriptor
    name: str
    generators: list[ScalarField]
    labels: list[str]
    lam: complex
    mu: complex


@dataclass
class BiEigenFamily:
    """Two eigenfamilies on one group.

    mu_cross is the claimed constant for cross pairings, or None when no
    constant exists; verification then only measures the cross behaviour.
    """

    descriptor: GroupDescriptor
    name: str
    e1: list[ScalarField]
    labels1: list[str]
    e2: list[ScalarField]
    labels2: list[str]
    lam1: complex
    mu1: complex
    lam2: complex
    mu2: complex
    mu_cross: complex | None


Family = EigenFamily | BiEigenFamily


def max_isotropic_subspace(n: int) -> np.ndarray:
    """Rows v_k = e_{2k-1} + i e_{2k}, k = 1..floor(n/2).

    Mutually isotropic for the bilinear (not Hermitian) dot product, and
    of maximal dimension among such subspaces of C^n.
    """
    k = n // 2
    out = np.zeros((k, n), dtype=np.complex128)
    for a in range(k):
        out[a, 2 * a] = 1.0
        out[a, 2 * a + 1] = 1.0j
    return out


def _as_vec(v, n: int, what: str) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.shape != (n,):
        raise ValueError(f"{what} must have length {n}, got {v.shape[0]}")
    if np.max(np.abs(v)) == 0:
        raise ValueError(f"{what} must be nonzero")
    return v


def _multi_form(desc: GroupDescriptor, parts: dict[str, np.ndarray]) -> TraceForm:
    """TraceForm reading several named blocks at once."""
    m = desc.matrix_size
    coeff = np.zeros((m, m), dtype=np.complex128)
    letters = COORD_BLOCKS[desc.family]
    for letter, a in parts.items():
        r0, r1, c0, c1 = block_bounds(m, letters[letter])
        coeff[r0:r1, c0:c1] += np.asarray(a, dtype=np.complex128)
    return TraceForm(coeff)


def _row_embed(n: int, r: int, v: np.ndarray) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.complex128)
    a[r - 1, :] = v
    return a


def _col_embed(n: int, c: int, v: np.ndarray) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.complex128)
    a[:, c - 1] = v
    return a


# --- constructors ---------------------------------------------------------

def family_glr(n: int, vectors: np.ndarray | None = None) -> EigenFamily:
    """On the real general linear group: phi(x) = sum_c v_c x_rc.

    One generator per (isotropic vector, row).  The vectors must be
    mutually isotropic: every plain dot product (v_a, v_b) must vanish,
    which is what kills the kappa pairing entirely (mu = 0).
    """
    desc = GroupDescriptor("gl_r", n)
    if vectors is None:
        vectors = max_isotropic_subspace(n)
    vectors = np.asarray(vectors, dtype=np.complex128)
    if vectors.ndim != 2 or vectors.shape[1] != n or vectors.shape[0] == 0:
        raise ValueError(f"need a nonempty set of vectors in C^{n}")
    gram = vectors @ vectors.T
    if np.max(np.abs(gram)) > 1e-12:
        raise ValueError("vectors are not mutually isotropic")
    gens, labels = [], []
    for a, v in enumerate(vectors, start=1):
        for r in range(1, n + 1):
            gens.append(_multi_form(desc, {"x": _row_embed(n, r, v)}))
            labels.append(f"x[v{a},r{r}]")
    return EigenFamily(desc, "glr-isotropic", gens, labels, lam=1.0, mu=0.0)


def family_ustar_xi(n: int, xi: complex = 1.0j) -> EigenFamily:
    """On the quaternionic linear group: phi = tr(A z^T) + xi tr(A w^T).

    A ranges over all matrix units, so the family spans every pair (A, xi A);
    any fixed xi works.
    """
    desc = GroupDescriptor("u_star", n)
    xi = complex(xi)
    gens, labels = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            a = np.zeros((n, n), dtype=np.complex128)
            a[i - 1, j - 1] = 1.0
            gens.append(_multi_form(desc, {"z": a, "w": xi * a}))
            labels.append(f"z+xi*w[{i}{j}]")
    return EigenFamily(desc, "ustar-xi", gens, labels, lam=-1.0, mu=0.0)


def family_ustar_p(n: int, p_vec: np.ndarray | None = None) -> EigenFamily:
    """On the quaternionic linear group: column forms weighted by one vector.

    Generators sum_u p_u z_uk and sum_u p_u w_uk for every column k.
    """
    desc = GroupDescriptor("u_star", n)
    p = _as_vec(np.ones(n) if p_vec is None else p_vec, n, "p_vec")
    gens, labels = [], []
    for k in range(1, n + 1):
        gens.append(_multi_form(desc, {"z": _col_embed(n, k, p)}))
        labels.append(f"z[c{k}]")
    for k in range(1, n + 1):
        gens.append(_multi_form(desc, {"w": _col_embed(n, k, p)}))
        labels.append(f"w[c{k}]")
    return EigenFamily(desc, "ustar-p", gens, labels, lam=-1.0, mu=0.0)


def family_spr_v(n: int, v: np.ndarray | None = None) -> EigenFamily:
    """On the real symplectic group: row forms in x+iy and z+iw.

    phi1_r = sum_c v_c (x_rc + i y_rc), phi2_r likewise on the bottom
    blocks; together one eigenfamily for any nonzero v.
    """
    desc = GroupDescriptor("sp_r", n)
    v = _as_vec(np.ones(n) if v is None else v, n, "v")
    gens, labels = [], []
    for r in range(1, n + 1):
        gens.append(_multi_form(desc, {"x": _row_embed(n, r, v),
                                       "y": _row_embed(n, r, 1j * v)}))
        labels.append(f"top[r{r}]")
    for r in range(1, n + 1):
        gens.append(_multi_form(desc, {"z": _row_embed(n, r, v),
                                       "w": _row_embed(n, r, 1j * v)}))
        labels.append(f"bot[r{r}]")
    return EigenFamily(desc, "spr-v", gens, labels, lam=0.5, mu=-0.5)


def family_spr_ab(n: int, a: np.ndarray | None = None,
                  b: np.ndarray | None = None) -> EigenFamily:
    """On the real symplectic group: column forms mixing both block rows."""
    desc = GroupDescriptor("sp_r", n)
    a = _as_vec(np.ones(n) if a is None else a, n, "a")
    b = _as_vec(np.ones(n) if b is None else b, n, "b")
    gens, labels = [], []
    for c in range(1, n + 1):
        gens.append(_multi_form(desc, {
            "x": _col_embed(n, c, a), "y": _col_embed(n, c, 1j * a),
            "z": _col_embed(n, c, b), "w": _col_embed(n, c, 1j * b)}))
        labels.append(f"col[c{c}]")
    return EigenFamily(desc, "spr-ab", gens, labels, lam=0.5, mu=-0.5)


def bifamily_sostar(n: int, v: np.ndarray | None = None) -> BiEigenFamily:
    """Column forms on both blocks of the skew-star group: a bi-eigenfamily.

    The cross pairing is constant because the antisymmetric tail cancels
    against itself for a single weight vector.
    """
    desc = GroupDescriptor("so_star", n)
    v = _as_vec(np.ones(n) if v is None else v, n, "v")
    e1 = [_multi_form(desc, {"z": _col_embed(n, c, v)}) for c in range(1, n + 1)]
    e2 = [_multi_form(desc, {"w": _col_embed(n, c, v)}) for c in range(1, n + 1)]
    l1 = [f"z[c{c}]" for c in range(1, n + 1)]
    l2 = [f"w[c{c}]" for c in range(1, n + 1)]
    return BiEigenFamily(desc, "sostar-bi", e1, l1, e2, l2,
                         lam1=-0.5, mu1=-0.5, lam2=-0.5, mu2=-0.5, mu_cross=0.5)


def family_sostar_a(n: int, a: np.ndarray | None = None) -> BiEigenFamily:
    """Row forms on both blocks of the skew-star group: two eigenfamilies.

    Unlike the column version, the cross pairing picks up a trailing
    antisymmetric sum scaled by (a, a) plus an index-swapped product, so
    no cross constant exists; it is measured, not claimed.
    """
    desc = GroupDescriptor("so_star", n)
    a = _as_vec(np.ones(n) if a is None else a, n, "a")
    e1 = [_multi_form(desc, {"z": _row_embed(n, r, a)}) for r in range(1, n + 1)]
    e2 = [_multi_form(desc, {"w": _row_embed(n, r, a)}) for r in range(1, n + 1)]
    l1 = [f"z[r{r}]" for r in range(1, n + 1)]
    l2 = [f"w[r{r}]" for r in range(1, n + 1)]
    return BiEigenFamily(desc, "sostar-pair", e1, l1, e2, l2,
                         lam1=-0.5, mu1=-0.5, lam2=-0.5, mu2=-0.5, mu_cross=None)


def bifamily_upq(p: int, q: int, v: np.ndarray | None = None) -> BiEigenFamily:
    """Column forms on the indefinite unitary group, split by column block."""
    desc = GroupDescriptor("u_pq", p, q)
    n = p + q
    if p == 0 or q == 0:
        raise ValueError("both blocks must be nonempty")
    v = _as_vec(np.ones(n) if v is None else v, n, "v")
    e1 = [_multi_form(desc, {"z": _col_embed(n, c, v)}) for c in range(1, p + 1)]
    e2 = [_multi_form(desc, {"z": _col_embed(n, c, v)}) for c in range(p + 1, n + 1)]
    l1 = [f"z[c{c}]" for c in range(1, p + 1)]
    l2 = [f"z[c{c}]" for c in range(p + 1, n + 1)]
    return BiEigenFamily(desc, "upq-bi", e1, l1, e2, l2,
                         lam1=q - p, mu1=-1.0, lam2=p - q, mu2=-1.0, mu_cross=1.0)


def family_upq_uv(p: int, q: int, u: np.ndarray | None = None,
                  v: np.ndarray | None = None) -> BiEigenFamily:
    """Row forms weighted inside each column block: two eigenfamilies.

    u lives in the first column block, v in the second.  Cross pairings
    swap the row indices, so no constant exists; measured only.
    """
    desc = GroupDescriptor("u_pq", p, q)
    n = p + q
    if p == 0 or q == 0:
        raise ValueError("both blocks must be nonempty")
    uu = np.zeros(n, dtype=np.complex128)
    uu[:p] = np.ones(p) if u is None else _as_vec(u, p, "u")
    vv = np.zeros(n, dtype=np.complex128)
    vv[p:] = np.ones(q) if v is None else _as_vec(v, q, "v")
    e1 = [_multi_form(desc, {"z": _row_embed(n, j, uu)}) for j in range(1, n + 1)]
    e2 = [_multi_form(desc, {"z": _row_embed(n, j, vv)}) for j in range(1, n + 1)]
    l1 = [f"u-row[{j}]" for j in range(1, n + 1)]
    l2 = [f"v-row[{j}]" for j in range(1, n + 1)]
    return BiEigenFamily(desc, "upq-pair", e1, l1, e2, l2,
                         lam1=q - p, mu1=-1.0, lam2=p - q, mu2=-1.0, mu_cross=None)


def bifamily_sopq(p: int, q: int, u: np.ndarray | None = None) -> BiEigenFamily:
    """On the indefinite orthogonal group: u-weighted rows against the
    maximal isotropic subspaces of each column block.

    Needs p, q >= 2 so both blocks carry an isotropic direction.
    """
    desc = GroupDescriptor("so_pq", p, q)
    n = p + q
    if p < 2 or q < 2:
        raise ValueError("both blocks need dimension >= 2")
    u = _as_vec(np.ones(n) if u is None else u, n, "u")
    vs1 = max_isotropic_subspace(p)
    vs2 = max_isotropic_subspace(q)

    def gen(a_block: np.ndarray, offset: int):
        a = np.zeros(n, dtype=np.complex128)
        a[offset:offset + a_block.shape[0]] = a_block
        return _multi_form(desc, {"x": np.outer(u, a)})

    e1 = [gen(a, 0) for a in vs1]
    e2 = [gen(a, p) for a in vs2]
    l1 = [f"iso1[{k}]" for k in range(1, len(e1) + 1)]
    l2 = [f"iso2[{k}]" for k in range(1, len(e2) + 1)]
    return BiEigenFamily(desc, "sopq-bi", e1, l1, e2, l2,
                         lam1=0.5 * (1 - (p - q)), mu1=-0.5,
                         lam2=0.5 * (1 + (p - q)), mu2=-0.5, mu_cross=0.5)


def family_sopq_uv(p: int, q: int, u: np.ndarray | None = None,
                   v: np.ndarray | None = None) -> BiEigenFamily:
    """Row forms against one isotropic vector per column block.

    u and v must each be isotropic inside their own block.  Cross pairings
    swap row indices; measured only.
    """
    desc = GroupDescriptor("so_pq", p, q)
    n = p + q
    if p < 2 or q < 2:
        raise ValueError("both blocks need dimension >= 2")
    ub = max_isotropic_subspace(p)[0] if u is None else _as_vec(u, p, "u")
    vb = max_isotropic_subspace(q)[0] if v is None else _as_vec(v, q, "v")
    if abs(ub @ ub) > 1e-12 or abs(vb @ vb) > 1e-12:
        raise ValueError("u and v must be isotropic in their blocks")
    uu = np.zeros(n, dtype=np.complex128)
    uu[:p] = ub
    vv = np.zeros(n, dtype=np.complex128)
    vv[p:] = vb
    e1 = [_multi_form(desc, {"x": _row_embed(n, j, uu)}) for j in range(1, n + 1)]
    e2 = [_multi_form(desc, {"x": _row_embed(n, j, vv)}) for j in range(1, n + 1)]
    l1 = [f"u-row[{j}]" for j in range(1, n + 1)]
    l2 = [f"v-row[{j}]" for j in range(1, n + 1)]
    return BiEigenFamily(desc, "sopq-pair", e1, l1, e2, l2,
                         lam1=0.5 * (1 - (p - q)), mu1=-0.5,
                         lam2=0.5 * (1 + (p - q)), mu2=-0.5, mu_cross=None)


def bifamily_sppq(p: int, q: int, v: np.ndarray | None = None) -> BiEigenFamily:
    """Column forms on both blocks of the indefinite quaternionic group,
    split by column block; the antisymmetric tail cancels for one weight
    vector, so both in-block and cross constants exist."""
    desc = GroupDescriptor("sp_pq", p, q)
    n = p + q
    if p == 0 or q == 0:
        raise ValueError("both blocks must be nonempty")
    v = _as_vec(np.ones(n) if v is None else v, n, "v")
    e1, l1 = [], []
    for c in range(1, p + 1):
        e1.append(_multi_form(desc, {"z": _col_embed(n, c, v)}))
        l1.append(f"z[c{c}]")
    for c in range(1, p + 1):
        e1.append(_multi_form(desc, {"w": _col_embed(n, c, v)}))
        l1.append(f"w[c{c}]")
    e2, l2 = [], []
    for c in range(p + 1, n + 1):
        e2.append(_multi_form(desc, {"z": _col_embed(n, c, v)}))
        l2.append(f"z[c{c}]")
    for c in range(p + 1, n + 1):
        e2.append(_multi_form(desc, {"w": _col_embed(n, c, v)}))
        l2.append(f"w[c{c}]")
    return BiEigenFamily(desc, "sppq-bi", e1, l1, e2, l2,
                         lam1=(q - p) - 0.5, mu1=-0.5,
                         lam2=(p - q) - 0.5, mu2=-0.5, mu_cross=0.5)


# Registry used by the CLI and the sweep verifier: name -> (constructor,
# default descriptor parameters).
CONSTRUCTORS = {
    "glr-isotropic": (family_glr, ("n",)),
    "ustar-xi": (family_ustar_xi, ("n",)),
    "ustar-p": (family_ustar_p, ("n",)),
    "spr-v": (family_spr_v, ("n",)),
    "spr-ab": (family_spr_ab, ("n",)),
    "sostar-bi": (bifamily_sostar, ("n",)),
    "sostar-pair": (family_sostar_a, ("n",)),
    "upq-bi": (bifamily_upq, ("p", "q")),
    "upq-pair": (family_upq_uv, ("p", "q")),
    "sopq-bi": (bifamily_sopq, ("p", "q")),
    "sopq-pair": (family_sopq_uv, ("p", "q")),
    "sppq-bi": (bifamily_sppq, ("p", "q")),
}


CONSTRUCTOR_FAMILY = {
    "glr-isotropic": "gl_r",
    "ustar-xi": "u_star",
    "ustar-p": "u_star",
    "spr-v": "sp_r",
    "spr-ab": "sp_r",
    "sostar-bi": "so_star",
    "sostar-pair": "so_star",
    "upq-bi": "u_pq",
    "upq-pair": "u_pq",
    "sopq-bi": "so_pq",
    "sopq-pair": "so_pq",
    "sppq-bi": "sp_pq",
}

# Smallest sizes at which each constructor yields enough generators for
# quotient tests (sopq-bi at p = q = 2 has one generator per block, so
# no independent same-degree pair exists there).
DEMO_GROUPS = {
    "glr-isotropic": "gl_r:4",
    "ustar-xi": "u_star:2",
    "ustar-p": "u_star:2",
    "spr-v": "sp_r:2",
    "spr-ab": "sp_r:2",
    "sostar-bi": "so_star:3",
    "sostar-pair": "so_star:3",
    "upq-bi": "u_pq:2,1",
    "upq-pair": "u_pq:2,1",
    "sopq-bi": "so_pq:4,2",
    "sopq-pair": "so_pq:2,2",
    "sppq-bi": "sp_pq:2,1",
}


def construct(name: str, desc: GroupDescriptor) -> Family:
    """Build the named family at the size given by a group descriptor."""
    if name not in CONSTRUCTORS:
        raise ValueError(f"unknown family constructor {name!r}; "
                         f"choose from {sorted(CONSTRUCTORS)}")
    if desc.family != CONSTRUCTOR_FAMILY[name]:
        raise ValueError(f"constructor {name!r} lives on "
                         f"{CONSTRUCTOR_FAMILY[name]}, not {desc.family}")
    fn, params = CONSTRUCTORS[name]
    if params == ("n",):
        return fn(desc.n)
    return fn(desc.p, desc.q)


# --- serialization ---------------------------------------------------------

def _c2l(c: complex) -> list[float]:
    return [float(np.real(c)), float(np.imag(c))]


def _l2c(v) -> complex:
    return complex(v[0], v[1])


def family_to_dict(fam: Family) -> dict:
    if isinstance(fam, EigenFamily):
        return {
            "kind": "eigen",
            "descriptor": fam.descriptor.text,
            "name": fam.name,
            "lambda": _c2l(fam.lam),
            "mu": _c2l(fam.mu),
            "labels": list(fam.labels),
            "generators": [g.to_dict() for g in fam.generators],
        }
    return {
        "kind": "bi",
        "descriptor": fam.descriptor.text,
        "name": fam.name,
        "lambda1": _c2l(fam.lam1),
        "mu1": _c2l(fam.mu1),
        "lambda2": _c2l(fam.lam2),
        "mu2": _c2l(fam.mu2),
        "mu_cross": None if fam.mu_cross is None else _c2l(fam.mu_cross),
        "labels1": list(fam.labels1),
        "labels2": list(fam.labels2),
        "e1": [g.to_dict() for g in fam.e1],
        "e2": [g.to_dict() for g in fam.e2],
    }


def family_from_dict(d: dict) -> Family:
    desc = parse_descriptor(d["descriptor"])
    if d["kind"] == "eigen":
        return EigenFamily(
            descriptor=desc, name=d["name"],
            generators=[field_from_dict(g) for g in d["generators"]],
            labels=list(d["labels"]),
            lam=_l2c(d["lambda"]), mu=_l2c(d["mu"]))
    if d["kind"] == "bi":
        return BiEigenFamily(
            descriptor=desc, name=d["name"],
            e1=[field_from_dict(g) for g in d["e1"]],
            labels1=list(d["labels1"]),
            e2=[field_from_dict(g) for g in d["e2"]],
            labels2=list(d["labels2"]),
            lam1=_l2c(d["lambda1"]), mu1=_l2c(d["mu1"]),
            lam2=_l2c(d["lambda2"]), mu2=_l2c(d["mu2"]),
            mu_cross=None if d["mu_cross"] is None else _l2c(d["mu_cross"]))
    raise ValueError(f"unknown family kind {d['kind']!r}")


# --- verification -----------------------------------------------------------

@dataclass
class FamilyReport:
    descriptor: str
    name: str
    kind: str
    n_generators: int
    samples: int
    tol: float
    const_tol: float
    seed: int
    scale: float
    residuals: dict
    claimed: dict
    measured: dict
    const_err: dict
    cross_diagnostic: dict | None

    @property
    def ok(self) -> bool:
        return (all(v <= self.tol for v in self.residuals.values())
                and all(v <= self.const_tol for v in self.const_err.values()))


class _Accumulator:
    """Least-squares fit of a proportionality constant over many pairs."""

    def __init__(self):
        self.num = 0.0 + 0.0j
        self.den = 0.0

    def add(self, rhs_base: np.ndarray, lhs: np.ndarray):
        self.num += complex(np.sum(np.conj(rhs_base) * lhs))
        self.den += float(np.sum(np.abs(rhs_base) ** 2))

    @property
    def fit(self) -> complex:
        return self.num / self.den if self.den > 0 else complex("nan")


def _rel(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))))


def _jet_tables(gens: list[ScalarField], g: np.ndarray, zs: np.ndarray,
                s2: np.ndarray, eps: np.ndarray):
    """Values V[g], first derivatives D[g,k], tension T[g] for all fields.

    Vectorised when every generator is a TraceForm (the constructors only
    emit those); otherwise falls back to the generic jet walk.
    """
    if all(isinstance(f, TraceForm) for f in gens):
        c = np.stack([f.coeff for f in gens])
        v = np.einsum("gab,ab->g", c, g)
        d = np.einsum("gab,kab->gk", c, g @ zs)
        t = np.einsum("gab,ab->g", c, g @ s2)
        return v, d, t
    v = np.zeros(len(gens), dtype=np.complex128)
    d = np.zeros((len(gens), zs.shape[0]), dtype=np.complex128)
    t = np.zeros(len(gens), dtype=np.complex128)
    for gi, f in enumerate(gens):
        for k in range(zs.shape[0]):
            jet = jet_eval(f, g, zs[k])
            d[gi, k] = jet.d1
            t[gi] += eps[k] * jet.d2
            if k == 0:
                v[gi] = jet.v
    return v, d, t


def verify_family(fam: Family, samples: int = 20, tol: float = 1e-9,
                  const_tol: float = 1e-8, seed: int = DEFAULT_SEED,
                  scale: float = 0.3) -> FamilyReport:
    """Check every eigenfamily claim at sampled points.

    For each point, tau of every generator is compared against lam*phi and
    the full kappa Gram matrix against mu*phi*psi (claimed constants); a
    least-squares fit of each constant over all samples is reported next
    to the claim.  For pairs without a cross constant the best-fit cross
    ratio and its residual are reported as diagnostics only.
    """
    desc = fam.descriptor
    basis = algebra_basis(desc)
    zs = np.stack([b.matrix for b in basis])
    eps = np.array([b.eps for b in basis], dtype=np.float64)
    s2 = np.einsum("k,kab->ab", eps, zs @ zs)

    if isinstance(fam, EigenFamily):
        groups = [("", fam.generators, fam.lam, fam.mu)]
        cross_claim = None
        kind = "eigen"
    else:
        groups = [("1", fam.e1, fam.lam1, fam.mu1),
                  ("2", fam.e2, fam.lam2, fam.mu2)]
        cross_claim = fam.mu_cross
        kind = "bi"

    residuals: dict[str, float] = {}
    fits = {f"lambda{tag}": _Accumulator() for tag, *_ in groups}
    fits.update({f"mu{tag}": _Accumulator() for tag, *_ in groups})
    cross_fit = _Accumulator()
    cross_pairs: list[tuple[np.ndarray, np.ndarray]] = []

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        g = sample_point(desc, rng, scale)
        tables = {}
        for tag, gens, lam, mu in groups:
            v, d, t = _jet_tables(gens, g, zs, s2, eps)
            k = np.einsum("gk,hk,k->gh", d, d, eps)
            tables[tag] = (v, d)
            r_tau = _rel(t, lam * v)
            r_kap = _rel(k, mu * np.outer(v, v))
            residuals[f"tau{tag}"] = max(residuals.get(f"tau{tag}", 0.0), r_tau)
            residuals[f"kappa{tag}"] = max(residuals.get(f"kappa{tag}", 0.0), r_kap)
            fits[f"lambda{tag}"].add(v, t)
            fits[f"mu{tag}"].add(np.outer(v, v), k)
        if kind == "bi":
            v1, d1 = tables["1"]
            v2, d2 = tables["2"]
            kx = np.einsum("gk,hk,k->gh", d1, d2, eps)
            prod = np.outer(v1, v2)
            cross_fit.add(prod, kx)
            cross_pairs.append((prod, kx))
            if cross_claim is not None:
                r = _rel(kx, cross_claim * prod)
                residuals["cross"] = max(residuals.get("cross", 0.0), r)

    claimed, measured, const_err = {}, {}, {}
    for tag, gens, lam, mu in groups:
        for cname, cval in ((f"lambda{tag}", lam), (f"mu{tag}", mu)):
            claimed[cname] = complex(cval)
            measured[cname] = fits[cname].fit
            const_err[cname] = abs(complex(cval) - fits[cname].fit)
    cross_diag = None
    if kind == "bi":
        if cross_claim is not None:
            claimed["mu_cross"] = complex(cross_claim)
            measured["mu_cross"] = cross_fit.fit
            const_err["mu_cross"] = abs(complex(cross_claim) - cross_fit.fit)
        else:
            best = cross_fit.fit
            dev = max(_rel(kx, best * prod) for prod, kx in cross_pairs)
            cross_diag = {
                "best_fit": [float(np.real(best)), float(np.imag(best))],
                "max_rel_deviation_from_fit": dev,
                "max_abs_cross": float(max(np.max(np.abs(kx))
                                           for _, kx in cross_pairs)),
            }

    n_gens = (len(fam.generators) if isinstance(fam, EigenFamily)
              else len(fam.e1) + len(fam.e2))
    return FamilyReport(descriptor=desc.text, name=fam.name, kind=kind,
                        n_generators=n_gens, samples=samples, tol=tol,
                        const_tol=const_tol, seed=seed, scale=scale,
                        residuals=residuals, claimed=claimed,
                        measured=measured, const_err=const_err,
                        cross_diagnostic=cross_diag)

"""Group descriptors, Lie algebra bases, membership tests and sampling.

Eight matrix groups are supported, each identified by a short descriptor
string such as ``gl_r:3`` or ``u_pq:2,1``.  For every group this module
produces an ordered orthonormal basis of its Lie algebra (orthonormal for
the real inner product Re trace(Z W*)), a residual measuring how far a
matrix is from satisfying the group's defining relations, and a sampler
that draws points by exponentiating random algebra elements.

Quaternionic groups are realised through their standard complex embedding
(pattern [[z, w], [-conj(w), conj(z)]]); no quaternion arithmetic is used
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .linalg import (
    IndexSets,
    SQRT2,
    all_pairs,
    diag_generator,
    signature_matrix,
    skew_generator,
    sym_generator,
    symplectic_form,
)

GL_R = "gl_r"
SL_R = "sl_r"
U_STAR = "u_star"
SP_R = "sp_r"
SO_STAR = "so_star"
U_PQ = "u_pq"
SO_PQ = "so_pq"
SP_PQ = "sp_pq"

SINGLE_PARAM = (GL_R, SL_R, U_STAR, SP_R, SO_STAR)
TWO_PARAM = (U_PQ, SO_PQ, SP_PQ)
FAMILIES = SINGLE_PARAM + TWO_PARAM

DEFAULT_SCALE = 0.3


@dataclass(frozen=True)
class GroupDescriptor:
    """A group family plus its size parameters.

    Single-parameter families store n in ``p`` and leave ``q`` as None.
    """

    family: str
    p: int
    q: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        two = self.family in TWO_PARAM
        if two and self.q is None:
            raise ValueError(f"{self.family} needs two parameters")
        if not two and self.q is not None:
            raise ValueError(f"{self.family} takes a single parameter")
        if self.p < 1 or (self.q is not None and self.q < 0):
            raise ValueError(f"invalid parameters ({self.p},{self.q})")

    @property
    def n(self) -> int:
        """Structural size: n for single-parameter families, p+q otherwise."""
        return self.p if self.q is None else self.p + self.q

    @property
    def matrix_size(self) -> int:
        if self.family in (U_STAR, SP_R, SO_STAR, SP_PQ):
            return 2 * self.n
        return self.n

    @property
    def dim(self) -> int:
        n = self.n
        return {
            GL_R: n * n,
            SL_R: n * n - 1,
            U_STAR: 4 * n * n,
            SP_R: n * (2 * n + 1),
            SO_STAR: n * (2 * n - 1),
            U_PQ: n * n,
            SO_PQ: n * (n - 1) // 2,
            SP_PQ: n * (2 * n + 1),
        }[self.family]

    @property
    def text(self) -> str:
        if self.q is None:
            return f"{self.family}:{self.p}"
        return f"{self.family}:{self.p},{self.q}"

    def __str__(self) -> str:
        return self.text


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse ``family:n`` or ``family:p,q`` into a GroupDescriptor."""
    try:
        family, _, params = text.strip().partition(":")
        nums = [int(x) for x in params.split(",")]
    except ValueError:
        raise ValueError(f"malformed group descriptor {text!r}") from None
    if len(nums) == 1:
        return GroupDescriptor(family, nums[0])
    if len(nums) == 2:
        return GroupDescriptor(family, nums[0], nums[1])
    raise ValueError(f"malformed group descriptor {text!r}")


@dataclass(frozen=True)
class BasisElement:
    label: str
    matrix: np.ndarray
    eps: int = 1          # metric sign; +1 throughout for these groups


# --- block helpers -------------------------------------------------------

def _diag2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    z = np.zeros_like(a)
    return np.block([[a, z], [z, b]])


def _off2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    z = np.zeros_like(a)
    return np.block([[z, a], [b, z]])


def _xyd(n: int):
    """The three generator stacks as complex matrices, with labels."""
    xs = [(f"X_{r}{s}", sym_generator(n, r, s, dtype=np.complex128))
          for r, s in all_pairs(n)]
    ys = [(f"Y_{r}{s}", skew_generator(n, r, s, dtype=np.complex128))
          for r, s in all_pairs(n)]
    ds = [(f"D_{t}", diag_generator(n, t, dtype=np.complex128))
          for t in range(1, n + 1)]
    return xs, ys, ds


# --- per-family bases ----------------------------------------------------
# Ordering convention, used everywhere downstream: symmetric block first,
# then antisymmetric, then diagonal, lexicographic inside each block; for
# split groups the first-block pair set comes before the cross set, and
# diagonal-embedding families come before off-diagonal ones.

def _basis_gl_r(n: int) -> list[BasisElement]:
    xs, ys, ds = _xyd(n)
    return [BasisElement(lbl, m) for lbl, m in xs + ys + ds]


def _basis_sl_r(n: int) -> list[BasisElement]:
    xs, ys, _ = _xyd(n)
    out = [BasisElement(lbl, m) for lbl, m in xs + ys]
    for k in range(1, n):
        m = np.zeros((n, n), dtype=np.complex128)
        for t in range(1, k + 1):
            m += diag_generator(n, t, dtype=np.complex128)
        m -= k * diag_generator(n, k + 1, dtype=np.complex128)
        m /= np.sqrt(k * (k + 1))
        out.append(BasisElement(f"H_{k}", m))
    return out


def _basis_u_star(n: int) -> list[BasisElement]:
    xs, ys, ds = _xyd(n)
    gens = xs + ys + ds
    out = []
    for tag, emb in (
        ("d+", lambda a: _diag2(a, a)),
        ("di", lambda a: _diag2(1j * a, -1j * a)),
        ("o-", lambda a: _off2(a, -a)),
        ("oi", lambda a: _off2(1j * a, 1j * a)),
    ):
        for lbl, m in gens:
            out.append(BasisElement(f"{tag}{lbl}", emb(m) / SQRT2))
    return out


def _basis_sp_r(n: int) -> list[BasisElement]:
    xs, ys, ds = _xyd(n)
    out = []
    for lbl, m in ys:
        out.append(BasisElement(f"d+{lbl}", _diag2(m, m) / SQRT2))
    for lbl, m in xs:
        out.append(BasisElement(f"d-{lbl}", _diag2(m, -m) / SQRT2))
    for lbl, m in ds:
        out.append(BasisElement(f"d-{lbl}", _diag2(m, -m) / SQRT2))
    for lbl, m in xs:
        out.append(BasisElement(f"o+{lbl}", _off2(m, m) / SQRT2))
    for lbl, m in xs:
        out.append(BasisElement(f"o-{lbl}", _off2(m, -m) / SQRT2))
    for lbl, m in ds:
        out.append(BasisElement(f"o+{lbl}", _off2(m, m) / SQRT2))
    for lbl, m in ds:
        out.append(BasisElement(f"o-{lbl}", _off2(m, -m) / SQRT2))
    return out


def _basis_so_star(n: int) -> list[BasisElement]:
    xs, ys, ds = _xyd(n)
    out = []
    for lbl, m in ys:
        out.append(BasisElement(f"d+{lbl}", _diag2(m, m) / SQRT2))
    for lbl, m in xs:
        out.append(BasisElement(f"di{lbl}", _diag2(1j * m, -1j * m) / SQRT2))
    for lbl, m in ds:
        out.append(BasisElement(f"di{lbl}", _diag2(1j * m, -1j * m) / SQRT2))
    for lbl, m in ys:
        out.append(BasisElement(f"o-{lbl}", _off2(m, -m) / SQRT2))
    for lbl, m in ys:
        out.append(BasisElement(f"oi{lbl}", _off2(1j * m, 1j * m) / SQRT2))
    return out


def _basis_u_pq(p: int, q: int) -> list[BasisElement]:
    n = p + q
    idx = IndexSets(p, q)
    out = []
    for r, s in idx.lambda1:
        out.append(BasisElement(f"iX_{r}{s}",
                                1j * sym_generator(n, r, s, dtype=np.complex128)))
    for r, s in idx.lambda1:
        out.append(BasisElement(f"Y_{r}{s}",
                                skew_generator(n, r, s, dtype=np.complex128)))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"X_{r}{s}",
                                sym_generator(n, r, s, dtype=np.complex128)))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"iY_{r}{s}",
                                1j * skew_generator(n, r, s, dtype=np.complex128)))
    for t in range(1, n + 1):
        out.append(BasisElement(f"iD_{t}",
                                1j * diag_generator(n, t, dtype=np.complex128)))
    return out


def _basis_so_pq(p: int, q: int) -> list[BasisElement]:
    n = p + q
    idx = IndexSets(p, q)
    out = []
    for r, s in idx.lambda1:
        out.append(BasisElement(f"Y_{r}{s}",
                                skew_generator(n, r, s, dtype=np.complex128)))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"X_{r}{s}",
                                sym_generator(n, r, s, dtype=np.complex128)))
    return out


def _basis_sp_pq(p: int, q: int) -> list[BasisElement]:
    n = p + q
    idx = IndexSets(p, q)
    xs = {(r, s): sym_generator(n, r, s, dtype=np.complex128)
          for r, s in all_pairs(n)}
    ys = {(r, s): skew_generator(n, r, s, dtype=np.complex128)
          for r, s in all_pairs(n)}
    out = []
    for r, s in idx.lambda1:
        out.append(BasisElement(f"d+Y_{r}{s}", _diag2(ys[r, s], ys[r, s]) / SQRT2))
    for r, s in idx.lambda1:
        out.append(BasisElement(f"diX_{r}{s}",
                                _diag2(1j * xs[r, s], -1j * xs[r, s]) / SQRT2))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"d+X_{r}{s}", _diag2(xs[r, s], xs[r, s]) / SQRT2))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"diY_{r}{s}",
                                _diag2(1j * ys[r, s], -1j * ys[r, s]) / SQRT2))
    for r, s in idx.lambda1:
        out.append(BasisElement(f"o-X_{r}{s}", _off2(xs[r, s], -xs[r, s]) / SQRT2))
    for r, s in idx.lambda1:
        out.append(BasisElement(f"oiX_{r}{s}",
                                _off2(1j * xs[r, s], 1j * xs[r, s]) / SQRT2))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"o-Y_{r}{s}", _off2(ys[r, s], -ys[r, s]) / SQRT2))
    for r, s in idx.lambda2:
        out.append(BasisElement(f"oiY_{r}{s}",
                                _off2(1j * ys[r, s], 1j * ys[r, s]) / SQRT2))
    for t in range(1, n + 1):
        d = diag_generator(n, t, dtype=np.complex128)
        out.append(BasisElement(f"diD_{t}", _diag2(1j * d, -1j * d) / SQRT2))
    for t in range(1, n + 1):
        d = diag_generator(n, t, dtype=np.complex128)
        out.append(BasisElement(f"o-D_{t}", _off2(d, -d) / SQRT2))
    for t in range(1, n + 1):
        d = diag_generator(n, t, dtype=np.complex128)
        out.append(BasisElement(f"oiD_{t}", _off2(1j * d, 1j * d) / SQRT2))
    return out


def algebra_basis(desc: GroupDescriptor) -> list[BasisElement]:
    """Ordered orthonormal basis of the Lie algebra of ``desc``."""
    fam = desc.family
    if fam == GL_R:
        return _basis_gl_r(desc.n)
    if fam == SL_R:
        return _basis_sl_r(desc.n)
    if fam == U_STAR:
        return _basis_u_star(desc.n)
    if fam == SP_R:
        return _basis_sp_r(desc.n)
    if fam == SO_STAR:
        return _basis_so_star(desc.n)
    if fam == U_PQ:
        return _basis_u_pq(desc.p, desc.q)
    if fam == SO_PQ:
        return _basis_so_pq(desc.p, desc.q)
    if fam == SP_PQ:
        return _basis_sp_pq(desc.p, desc.q)
    raise ValueError(f"no basis for family {fam!r}")


# --- membership ----------------------------------------------------------

def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def membership_residual(desc: GroupDescriptor, g: np.ndarray) -> float:
    """Max-abs residual of the defining relations of the group at g.

    Zero (up to rounding) exactly on group elements.  Invertibility is not
    tested; sampled points are exponentials and satisfy it automatically.
    """
    g = np.asarray(g, dtype=np.complex128)
    m = desc.matrix_size
    if g.shape != (m, m):
        raise ValueError(f"expected {m}x{m} matrix for {desc.text}, got {g.shape}")
    fam, n = desc.family, desc.n

    if fam == GL_R:
        return _maxabs(g.imag)
    if fam == SL_R:
        return max(_maxabs(g.imag), abs(np.linalg.det(g) - 1.0))
    if fam == U_STAR:
        j = symplectic_form(n, dtype=np.complex128)
        return _maxabs(g @ j - j @ np.conj(g))
    if fam == SP_R:
        j = symplectic_form(n, dtype=np.complex128)
        return max(_maxabs(g.imag), _maxabs(g @ j @ g.T - j))
    if fam == SO_STAR:
        inn = signature_matrix(n, n, dtype=np.complex128)
        m2 = inn @ symplectic_form(n, dtype=np.complex128)
        r1 = _maxabs(g @ inn @ np.conj(g).T - inn)
        r2 = _maxabs(g @ m2 @ g.T - m2)
        return max(r1, r2, abs(np.linalg.det(g) - 1.0))
    if fam == U_PQ:
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        return _maxabs(g @ ipq @ np.conj(g).T - ipq)
    if fam == SO_PQ:
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        r1 = _maxabs(g @ ipq @ g.T - ipq)
        return max(_maxabs(g.imag), r1, abs(np.linalg.det(g) - 1.0))
    if fam == SP_PQ:
        j = symplectic_form(n, dtype=np.complex128)
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        k = _diag2(ipq, ipq)
        r1 = _maxabs(g @ j - j @ np.conj(g))
        r2 = _maxabs(g @ k @ np.conj(g).T - k)
        return max(r1, r2)
    raise ValueError(f"no membership test for family {fam!r}")


def algebra_residual(desc: GroupDescriptor, z: np.ndarray) -> float:
    """Max-abs residual of the linearised relations at an algebra element."""
    z = np.asarray(z, dtype=np.complex128)
    fam, n = desc.family, desc.n
    if fam == GL_R:
        return _maxabs(z.imag)
    if fam == SL_R:
        return max(_maxabs(z.imag), abs(np.trace(z)))
    if fam == U_STAR:
        j = symplectic_form(n, dtype=np.complex128)
        return _maxabs(z @ j - j @ np.conj(z))
    if fam == SP_R:
        j = symplectic_form(n, dtype=np.complex128)
        return max(_maxabs(z.imag), _maxabs(z @ j + j @ z.T))
    if fam == SO_STAR:
        inn = signature_matrix(n, n, dtype=np.complex128)
        m2 = inn @ symplectic_form(n, dtype=np.complex128)
        r1 = _maxabs(z @ inn + inn @ np.conj(z).T)
        r2 = _maxabs(z @ m2 + m2 @ z.T)
        return max(r1, r2)
    if fam == U_PQ:
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        return _maxabs(z @ ipq + ipq @ np.conj(z).T)
    if fam == SO_PQ:
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        return max(_maxabs(z.imag), _maxabs(z @ ipq + ipq @ z.T))
    if fam == SP_PQ:
        j = symplectic_form(n, dtype=np.complex128)
        ipq = signature_matrix(desc.p, desc.q, dtype=np.complex128)
        k = _diag2(ipq, ipq)
        r1 = _maxabs(z @ j - j @ np.conj(z))
        r2 = _maxabs(z @ k + k @ np.conj(z).T)
        return max(r1, r2)
    raise ValueError(f"no algebra test for family {fam!r}")


# --- sampling ------------------------------------------------------------

def random_algebra_element(desc: GroupDescriptor, rng: np.random.Generator,
                           scale: float = DEFAULT_SCALE) -> np.ndarray:
    """Random combination of basis elements, coefficients U[-scale, scale]."""
    basis = algebra_basis(desc)
    coeffs = rng.uniform(-scale, scale, size=len(basis))
    z = np.zeros((desc.matrix_size, desc.matrix_size), dtype=np.complex128)
    for c, b in zip(coeffs, basis):
        z += c * b.matrix
    return z


def sample_point(desc: GroupDescriptor, rng: np.random.Generator,
                 scale: float = DEFAULT_SCALE) -> np.ndarray:
    """Draw a group point exp(Z) for a random algebra element Z."""
    return expm(random_algebra_element(desc, rng, scale))


# --- basis verification ----------------------------------------------------

@dataclass
class BasisReport:
    descriptor: str
    dim: int
    expected_dim: int
    gram_err: float
    algebra_err: float
    closure_err: float
    membership_err: float

    @property
    def ok(self) -> bool:
        return (self.dim == self.expected_dim
                and self.gram_err <= 1e-12
                and self.algebra_err <= 1e-12
                and self.closure_err <= 1e-10
                and self.membership_err <= 1e-10)


def verify_basis(desc: GroupDescriptor, rng: np.random.Generator | None = None,
                 samples: int = 3) -> BasisReport:
    """Check dimension, orthonormality, algebra membership, bracket closure
    and that sampled exponentials satisfy the group relations."""
    basis = algebra_basis(desc)
    mats = np.stack([b.matrix for b in basis])
    # Gram under Re trace(Z W*)
    gram = np.einsum("kab,lab->kl", mats, np.conj(mats)).real
    gram_err = _maxabs(gram - np.eye(len(basis)))
    alg_err = max(algebra_residual(desc, b.matrix) for b in basis)

    closure = 0.0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            br = mats[i] @ mats[j] - mats[j] @ mats[i]
            coeff = np.einsum("ab,kab->k", br, np.conj(mats)).real
            resid = br - np.einsum("k,kab->ab", coeff, mats)
            closure = max(closure, _maxabs(resid))

    rng = np.random.default_rng(0) if rng is None else rng
    mem = max(membership_residual(desc, sample_point(desc, rng))
              for _ in range(samples))
    return BasisReport(descriptor=desc.text, dim=len(basis),
                       expected_dim=desc.dim, gram_err=gram_err,
                       algebra_err=alg_err, closure_err=closure,
                       membership_err=mem)

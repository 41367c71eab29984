"""Transport of families to compact dual groups."""

import numpy as np
import pytest

from liemorph.duality import (
    DUAL_SO,
    DUAL_SP,
    DUAL_SU,
    _split_type,
    dual_basis,
    dual_descriptor,
    dual_membership_residual,
    dualize_family,
    sample_dual_point,
    verify_dual,
)
from liemorph.families import (
    CONSTRUCTORS,
    DEMO_GROUPS,
    EigenFamily,
    construct,
)
from liemorph.groups import algebra_basis, parse_descriptor

EXPECTED_DUAL = {
    "gl_r:3": ("SU(3)", DUAL_SU, True),
    "sl_r:3": ("SU(3)", DUAL_SU, False),
    "u_star:2": ("SU(4)", DUAL_SU, True),
    "u_pq:2,1": ("SU(3)", DUAL_SU, True),
    "sp_r:2": ("Sp(2)", DUAL_SP, False),
    "sp_pq:2,1": ("Sp(3)", DUAL_SP, False),
    "so_star:3": ("SO(6)", DUAL_SO, False),
    "so_pq:2,2": ("SO(4)", DUAL_SO, False),
}


def test_dual_targets():
    for text, (label, kind, traceless) in EXPECTED_DUAL.items():
        dd = dual_descriptor(parse_descriptor(text))
        assert dd.label == label
        assert dd.kind == kind
        assert dd.project_traceless is traceless
        if kind == DUAL_SU:
            assert dd.bilinear is None
        else:
            s = dd.bilinear
            assert s is not None
            assert s.shape == (dd.matrix_size, dd.matrix_size)


def test_split_type():
    assert _split_type(np.array([[1.0j, 0.0], [0.0, -1.0j]])) == "skew"
    assert _split_type(np.array([[0.0, 1.0], [1.0, 0.0]])) == "herm"
    with pytest.raises(ValueError):
        _split_type(np.array([[1.0, 1.0], [0.0, 1.0]]))    # neither


@pytest.mark.parametrize("text", sorted(EXPECTED_DUAL))
def test_dual_basis_is_skew_hermitian(text):
    desc = parse_descriptor(text)
    src = algebra_basis(desc)
    dst = dual_basis(desc)
    assert len(dst) == len(src)
    n_herm = 0
    for b_src, b_dst in zip(src, dst):
        m = b_dst.matrix
        assert np.max(np.abs(m + np.conj(m.T))) <= 1e-12
        if b_dst.eps == 1:
            n_herm += 1
            assert b_dst.label == "i*" + b_src.label
            assert np.allclose(m, 1j * b_src.matrix)
        else:
            assert b_dst.eps == -1
            assert b_dst.label == b_src.label
            assert np.array_equal(m, b_src.matrix)
    # at least one direction of each type on every group here
    assert 0 < n_herm < len(dst)


@pytest.mark.parametrize("text", sorted(EXPECTED_DUAL))
def test_sampled_dual_points_lie_on_dual_group(text):
    desc = parse_descriptor(text)
    dd = dual_descriptor(desc)
    basis = dual_basis(desc)
    rng = np.random.default_rng(4)
    for _ in range(4):
        u = sample_dual_point(dd, basis, rng)
        assert dual_membership_residual(dd, u) <= 1e-10
    eye = np.eye(dd.matrix_size, dtype=complex)
    assert dual_membership_residual(dd, eye) <= 1e-14
    off = eye.copy()
    off[0, 0] = 1.2
    assert dual_membership_residual(dd, off) > 1e-3


def _negated(claims: dict) -> dict:
    return {k: (None if v is None else -v) for k, v in claims.items()}


@pytest.mark.parametrize("name", sorted(CONSTRUCTORS))
def test_families_transport_to_dual(name):
    fam = construct(name, parse_descriptor(DEMO_GROUPS[name]))
    dual = dualize_family(fam)
    rep = verify_dual(dual, samples=8)
    assert rep.ok, (rep.residuals, rep.const_err, rep.membership_err)
    if isinstance(fam, EigenFamily):
        src = {"lambda": complex(fam.lam), "mu": complex(fam.mu)}
    else:
        src = {"lambda1": complex(fam.lam1), "mu1": complex(fam.mu1),
               "lambda2": complex(fam.lam2), "mu2": complex(fam.mu2)}
        if fam.mu_cross is not None:
            src["mu_cross"] = complex(fam.mu_cross)
    assert rep.claimed == _negated(src)
    # pair families keep a measured-only cross diagnostic on the dual too
    if not isinstance(fam, EigenFamily) and fam.mu_cross is None:
        assert rep.cross_diagnostic is not None
    else:
        assert rep.cross_diagnostic is None


def test_sign_table_reports_metric_disagreement():
    # the flat trace pairing on the dual group disagrees with the signs
    # that make the identities hold, exactly on the rotated directions
    fam = construct("glr-isotropic", parse_descriptor("gl_r:4"))
    rep = verify_dual(dualize_family(fam), samples=5)
    herm = sum(1 for row in rep.sign_table if row["eps"] == 1)
    assert herm == 4 * 5 // 2                      # n(n+1)/2 at n = 4
    assert rep.metric_sign_mismatches_on_dual == herm
    for row in rep.sign_table:
        assert row["metric_sign_source"] == row["eps"]
        assert row["metric_sign_dual"] == -1

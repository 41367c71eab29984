"""Family constructors and eigenfamily verification."""

import dataclasses

import numpy as np
import pytest

from liemorph.calculus import Scale
from liemorph.families import (
    CONSTRUCTORS,
    DEMO_GROUPS,
    BiEigenFamily,
    EigenFamily,
    construct,
    family_from_dict,
    family_glr,
    family_to_dict,
    max_isotropic_subspace,
    verify_family,
)
from liemorph.groups import parse_descriptor

# claimed constants per constructor, frozen at the demo sizes
EXPECTED_CONSTANTS = {
    "glr-isotropic": {"lambda": 1.0, "mu": 0.0},
    "ustar-xi": {"lambda": -1.0, "mu": 0.0},
    "ustar-p": {"lambda": -1.0, "mu": 0.0},
    "spr-v": {"lambda": 0.5, "mu": -0.5},
    "spr-ab": {"lambda": 0.5, "mu": -0.5},
    "sostar-bi": {"lambda1": -0.5, "mu1": -0.5, "lambda2": -0.5,
                  "mu2": -0.5, "mu_cross": 0.5},
    "sostar-pair": {"lambda1": -0.5, "mu1": -0.5, "lambda2": -0.5,
                    "mu2": -0.5, "mu_cross": None},
    "upq-bi": {"lambda1": -1.0, "mu1": -1.0, "lambda2": 1.0,
               "mu2": -1.0, "mu_cross": 1.0},
    "upq-pair": {"lambda1": -1.0, "mu1": -1.0, "lambda2": 1.0,
                 "mu2": -1.0, "mu_cross": None},
    "sopq-bi": {"lambda1": -0.5, "mu1": -0.5, "lambda2": 1.5,
                "mu2": -0.5, "mu_cross": 0.5},
    "sopq-pair": {"lambda1": 0.5, "mu1": -0.5, "lambda2": 0.5,
                  "mu2": -0.5, "mu_cross": None},
    "sppq-bi": {"lambda1": -1.5, "mu1": -0.5, "lambda2": 0.5,
                "mu2": -0.5, "mu_cross": 0.5},
}


def _claims(fam):
    if isinstance(fam, EigenFamily):
        return {"lambda": complex(fam.lam), "mu": complex(fam.mu)}
    cross = None if fam.mu_cross is None else complex(fam.mu_cross)
    return {"lambda1": complex(fam.lam1), "mu1": complex(fam.mu1),
            "lambda2": complex(fam.lam2), "mu2": complex(fam.mu2),
            "mu_cross": cross}


@pytest.mark.parametrize("name", sorted(CONSTRUCTORS))
def test_constructor_claims_verify(name):
    desc = parse_descriptor(DEMO_GROUPS[name])
    fam = construct(name, desc)
    got = _claims(fam)
    want = {k: (None if v is None else complex(v))
            for k, v in EXPECTED_CONSTANTS[name].items()}
    assert got == want
    rep = verify_family(fam, samples=8)
    assert rep.ok, (rep.residuals, rep.const_err)
    assert rep.n_generators >= 2


def test_pair_families_have_no_cross_constant():
    for name in ("sostar-pair", "upq-pair", "sopq-pair"):
        fam = construct(name, parse_descriptor(DEMO_GROUPS[name]))
        assert fam.mu_cross is None
        rep = verify_family(fam, samples=8)
        diag = rep.cross_diagnostic
        assert set(diag) == {"best_fit", "max_rel_deviation_from_fit",
                             "max_abs_cross"}
        # the cross pairing is genuinely non-proportional, not just noisy
        assert diag["max_rel_deviation_from_fit"] > 1e-3
        assert diag["max_abs_cross"] > 1e-6
        assert "cross" not in rep.residuals


def test_bi_families_report_cross_residual():
    fam = construct("upq-bi", parse_descriptor("u_pq:2,1"))
    rep = verify_family(fam, samples=8)
    assert "cross" in rep.residuals
    assert rep.residuals["cross"] <= rep.tol
    assert rep.cross_diagnostic is None


def test_construct_rejects_wrong_group():
    with pytest.raises(ValueError):
        construct("glr-isotropic", parse_descriptor("sl_r:3"))
    with pytest.raises(ValueError):
        construct("upq-bi", parse_descriptor("so_pq:2,2"))
    with pytest.raises(ValueError):
        construct("no-such-family", parse_descriptor("gl_r:3"))


def test_max_isotropic_subspace():
    for n in (2, 3, 4, 7):
        v = max_isotropic_subspace(n)
        assert v.shape == (n // 2, n)
        assert np.max(np.abs(v @ v.T)) == 0.0


def test_glr_rejects_non_isotropic_vectors():
    with pytest.raises(ValueError):
        family_glr(3, np.array([[1.0, 0.0, 0.0]]))       # (v,v) = 1
    with pytest.raises(ValueError):
        family_glr(4, np.array([[1.0, 1.0j, 0.0, 0.0],
                                [1.0, -1.0j, 0.0, 0.0]]))  # cross dot = 2
    with pytest.raises(ValueError):
        family_glr(3, np.zeros((0, 3)))


def test_glr_accepts_custom_isotropic_plane():
    v = np.array([[0.0, 0.0, 1.0, 1.0j]])
    fam = family_glr(4, v)
    assert len(fam.generators) == 4
    rep = verify_family(fam, samples=6)
    assert rep.ok


@pytest.mark.parametrize("name", ["spr-v", "sostar-bi", "upq-pair"])
def test_family_serialization_round_trip(name):
    fam = construct(name, parse_descriptor(DEMO_GROUPS[name]))
    back = family_from_dict(family_to_dict(fam))
    assert type(back) is type(fam)
    assert back.name == fam.name
    assert back.descriptor == fam.descriptor
    assert _claims(back) == _claims(fam)
    assert verify_family(back, samples=6).ok


def test_tampered_constant_fails_verification():
    fam = construct("upq-bi", parse_descriptor("u_pq:2,1"))
    bad = dataclasses.replace(fam, lam1=fam.lam1 + 0.25)
    rep = verify_family(bad, samples=6)
    assert not rep.ok
    assert rep.const_err["lambda1"] > 0.2


def test_generic_jet_path_agrees_with_vectorised():
    # Scale(1.0, f) defeats the TraceForm fast path without changing values
    fam = construct("spr-ab", parse_descriptor("sp_r:2"))
    slow = dataclasses.replace(
        fam, generators=[Scale(1.0, f) for f in fam.generators])
    a = verify_family(fam, samples=5)
    b = verify_family(slow, samples=5)
    assert b.ok
    for key in a.measured:
        assert abs(a.measured[key] - b.measured[key]) <= 1e-12


def test_bifamily_generic_path():
    fam = construct("sostar-bi", parse_descriptor("so_star:3"))
    slow = dataclasses.replace(fam, e1=[Scale(1.0, f) for f in fam.e1])
    assert verify_family(slow, samples=4).ok


def test_demo_groups_cover_every_constructor():
    assert set(DEMO_GROUPS) == set(CONSTRUCTORS)
    for name, text in DEMO_GROUPS.items():
        fam = construct(name, parse_descriptor(text))
        if isinstance(fam, BiEigenFamily):
            assert len(fam.e1) >= 1 and len(fam.e2) >= 1

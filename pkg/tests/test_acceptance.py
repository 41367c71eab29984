"""End-to-end acceptance battery.

Every check here restates a headline guarantee of the package at its
contract tolerance: the matrix identity battery, the coordinate law
battery, family and morphism verification for every constructor, the
half-plane quotient, the product and triple-equality laws, dual
transport, oracle agreement, and byte-determinism of the full run.
"""

import time

import numpy as np
import pytest

from liemorph.calculus import (
    battery_descriptors,
    fd_oracle,
    jet_eval,
    verify_lemma,
)
from liemorph.cli import main as cli_main
from liemorph.duality import dualize_family, verify_dual
from liemorph.families import (
    CONSTRUCTORS,
    DEMO_GROUPS,
    BiEigenFamily,
    EigenFamily,
    construct,
    verify_family,
)
from liemorph.groups import (
    GroupDescriptor,
    parse_descriptor,
    random_algebra_element,
    sample_point,
)
from liemorph.linalg import check_identities
from liemorph.morphisms import (
    build_morphism,
    halfplane_quotient,
    random_morphism,
    verify_appendix_lemmas,
    verify_morphism,
)
from liemorph.report import body_bytes, load_report
from liemorph.calculus import coordinate_field

ALL_NAMES = sorted(CONSTRUCTORS)


def _demo(name):
    return construct(name, parse_descriptor(DEMO_GROUPS[name]))


def _degrees(fam):
    if isinstance(fam, EigenFamily):
        return [(1, 0), (2, 0), (3, 0)]
    if fam.mu_cross is not None:
        return [(1, 1), (2, 1), (1, 2)]
    # no cross constant: quotients stay inside one block
    return [(1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3)]


def test_identity_battery_exact_and_fast():
    t0 = time.monotonic()
    rep = check_identities(max_size=8)
    elapsed = time.monotonic() - t0
    assert rep.all_hold
    held = [r for r in rep.results if r.expected]
    assert all(r.exact for r in held)
    assert all(r.max_abs_err <= 1e-14 for r in held)
    # all sizes and all splits are covered
    assert {r.n for r in rep.results} == set(range(1, 9))
    assert elapsed < 5.0


def test_coordinate_law_battery_every_group():
    t0 = time.monotonic()
    for desc in battery_descriptors():
        assert desc.matrix_size <= 6
        rep = verify_lemma(desc, samples=20, tol=1e-9)
        assert rep.ok, (desc.text, rep.failures())
    assert time.monotonic() - t0 < 60.0


@pytest.mark.parametrize("name", ALL_NAMES)
def test_every_family_verifies_with_claimed_constants(name):
    fam = _demo(name)
    rep = verify_family(fam, samples=20, tol=1e-9, const_tol=1e-8)
    assert rep.ok, (name, rep.residuals, rep.const_err)
    for key, claim in rep.claimed.items():
        assert abs(rep.measured[key] - claim) <= 1e-8, (name, key)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_random_quotients_are_harmonic_morphisms(name):
    fam = _demo(name)
    rng = np.random.default_rng(101)
    for degree in _degrees(fam):
        for _ in range(3):
            morph = random_morphism(fam, degree, rng)
            rep = verify_morphism(morph, samples=50, tol=1e-8)
            assert rep.max_abs_tau <= 1e-8, (name, degree, rep.max_abs_tau)
            assert rep.max_abs_kappa <= 1e-8, (name, degree, rep.max_abs_kappa)
            # triple-equality criterion holds for every constructed quotient
            assert rep.max_triple_dev <= 1e-8, (name, degree)
            assert rep.ok


def test_halfplane_quotient_and_target_sign():
    fam, morph = halfplane_quotient()
    rep = verify_morphism(morph, samples=100, tol=1e-10)
    assert rep.ok, rep
    rng = np.random.default_rng(11)
    signs = []
    for _ in range(100):
        g = sample_point(fam.descriptor, rng)
        signs.append(np.sign(morph.phi.value(g).imag))
    assert set(signs) == {-1.0}


@pytest.mark.parametrize("name", ALL_NAMES)
def test_product_and_power_laws(name):
    rep = verify_appendix_lemmas(_demo(name), ks=(1, 2, 3), samples=8,
                                 tol=1e-8)
    assert rep.ok, (name, rep.residuals)


def test_triple_criterion_rejects_coordinate_quotient():
    desc = GroupDescriptor("gl_r", 2)
    fam = EigenFamily(
        descriptor=desc, name="coordinate-pair",
        generators=[coordinate_field(desc, "x", 1, 1),
                    coordinate_field(desc, "x", 2, 2)],
        labels=["x11", "x22"], lam=1.0, mu=0.0)
    morph = build_morphism(fam, [((1, 0), 1.0)], [((0, 1), 1.0)])
    rep = verify_morphism(morph, samples=20)
    assert rep.max_triple_dev > 0.1
    assert not rep.ok


@pytest.mark.parametrize("name", ALL_NAMES)
def test_dual_transport_flips_constants(name):
    fam = _demo(name)
    dual = dualize_family(fam)
    assert dual.dual.matrix_size <= 6
    rep = verify_dual(dual, samples=20, tol=1e-8, membership_tol=1e-10)
    assert rep.ok, (name, rep.residuals, rep.const_err)
    assert rep.membership_err <= 1e-10
    if isinstance(fam, EigenFamily):
        assert rep.claimed["lambda"] == -complex(fam.lam)
        assert rep.claimed["mu"] == -complex(fam.mu)
    else:
        assert rep.claimed["lambda1"] == -complex(fam.lam1)
        assert rep.claimed["lambda2"] == -complex(fam.lam2)
        if fam.mu_cross is not None:
            assert rep.claimed["mu_cross"] == -complex(fam.mu_cross)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_jets_match_independent_oracle(name):
    fam = _demo(name)
    desc = fam.descriptor
    gens = (fam.generators if isinstance(fam, EigenFamily)
            else list(fam.e1) + list(fam.e2))
    rng = np.random.default_rng(23)
    for i in range(50):
        f = gens[i % len(gens)]
        g = sample_point(desc, rng)
        z = random_algebra_element(desc, rng)
        jet = jet_eval(f, g, z)
        d1, d2 = fd_oracle(f, g, z)
        assert abs(jet.d1 - d1) <= 1e-5 * max(1.0, abs(d1))
        assert abs(jet.d2 - d2) <= 1e-5 * max(1.0, abs(d2))


def test_quotient_rule_matches_direct_jets():
    rng = np.random.default_rng(31)
    for name in ("glr-isotropic", "spr-ab", "upq-bi", "sostar-pair"):
        fam = _demo(name)
        degree = _degrees(fam)[1]
        morph = random_morphism(fam, degree, rng)
        rep = verify_morphism(morph, samples=25, formula_tol=1e-10)
        assert rep.max_route_dev <= 1e-10, (name, rep.max_route_dev)
        assert rep.routes_agree


def test_run_all_is_deterministic(tmp_path, capsys):
    t0 = time.monotonic()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["run-all", "--seed", "7", "--samples", "10"]
    assert cli_main(argv + ["--out", str(a)]) == 0
    assert cli_main(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    elapsed = time.monotonic() - t0
    ra, rb = load_report(a), load_report(b)
    assert ra["body"]["ok"] is True
    # identical bodies byte for byte; only the meta timestamp may differ
    assert body_bytes(ra) == body_bytes(rb)
    assert ra["meta"]["body_sha256"] == rb["meta"]["body_sha256"]
    assert elapsed < 600.0

"""Jets, scalar field trees, tau/kappa, and the coordinate law battery."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from liemorph.calculus import (
    Const,
    Jet2,
    PoleError,
    Quotient,
    Scale,
    TraceForm,
    battery_descriptors,
    coordinate_field,
    entry_jets,
    fd_oracle,
    field_from_dict,
    jet_eval,
    kappa,
    tension,
    trace_form,
    verify_lemma,
)
from liemorph.groups import algebra_basis, parse_descriptor, sample_point

finite = st.floats(min_value=-1e3, max_value=1e3,
                   allow_nan=False, allow_infinity=False)
cpx = st.builds(complex, finite, finite)
jets = st.builds(Jet2, cpx, cpx, cpx)


def _mag(j: Jet2) -> float:
    return abs(j.v) + abs(j.d1) + abs(j.d2)


def _jets_close(a: Jet2, b: Jet2, scale: float) -> bool:
    # roundoff is bounded by eps times the intermediate magnitudes, which
    # can dwarf the outputs when the sums cancel; an algebraic mistake
    # deviates on the order of the scale itself
    tol = 1e-12 * (1.0 + scale)
    for x, y in ((a.v, b.v), (a.d1, b.d1), (a.d2, b.d2)):
        if abs(x - y) > tol:
            return False
    return True


@given(jets, jets, jets)
def test_jet_product_distributes(a, b, c):
    assert _jets_close((a + b) * c, a * c + b * c,
                       (_mag(a) + _mag(b)) * _mag(c))


@given(jets, jets, jets)
def test_jet_product_associates(a, b, c):
    assert _jets_close((a * b) * c, a * (b * c), _mag(a) * _mag(b) * _mag(c))


@given(jets, jets)
@settings(max_examples=200)
def test_jet_divide_inverts_product(f, g):
    assume(abs(g.v) > 1e-3)
    h = f.divide(g)
    assert _jets_close(h * g, f, _mag(h) * _mag(g) + _mag(f))


def test_jet_divide_at_pole_raises():
    with pytest.raises(PoleError):
        Jet2(1.0, 0.0, 0.0).divide(Jet2(1e-9, 1.0, 1.0))


def test_product_jet_leibniz_literal():
    a = Jet2(2.0, 3.0, 4.0)
    b = Jet2(5.0, 7.0, 11.0)
    p = a * b
    assert p.v == 10.0
    assert p.d1 == 2 * 7 + 3 * 5
    assert p.d2 == 2 * 11 + 2 * 3 * 7 + 4 * 5


def test_entry_jets_definition():
    rng = np.random.default_rng(0)
    p = rng.normal(size=(3, 3))
    z = rng.normal(size=(3, 3))
    m0, m1, m2 = entry_jets(p, z)
    assert np.array_equal(m0, p)
    assert np.allclose(m1, p @ z)
    assert np.allclose(m2, p @ z @ z)


@pytest.mark.parametrize("text", ["gl_r:3", "u_star:2", "sp_pq:2,1"])
def test_jets_match_finite_differences(text):
    desc = parse_descriptor(text)
    rng = np.random.default_rng(2)
    letter = {"gl_r": "x", "u_star": "z", "sp_pq": "w"}[desc.family]
    coeff = rng.normal(size=(desc.n, desc.n)) + 1j * rng.normal(size=(desc.n, desc.n))
    f = trace_form(desc, letter, coeff)
    h = f * f + 2.0 * f + Const(1.0)
    for _ in range(5):
        g = sample_point(desc, rng)
        z = rng.normal(size=(desc.matrix_size, desc.matrix_size))
        z = z + z.T          # any direction works; jets are curve-local
        j = jet_eval(h, g, z)
        d1, d2 = fd_oracle(h, g, z)
        assert abs(j.d1 - d1) <= 1e-5 * (1 + abs(d1))
        assert abs(j.d2 - d2) <= 1e-5 * (1 + abs(d2))


def test_coordinate_field_block_placement():
    desc = parse_descriptor("u_star:2")
    g = np.arange(16, dtype=complex).reshape(4, 4)
    assert coordinate_field(desc, "z", 1, 2).value(g) == g[0, 1]
    assert coordinate_field(desc, "w", 2, 1).value(g) == g[1, 2]
    desc = parse_descriptor("sp_r:2")
    assert coordinate_field(desc, "y", 1, 1).value(g) == g[0, 2]


def test_block_coordinate_validation():
    desc = parse_descriptor("u_star:2")
    with pytest.raises(ValueError):
        coordinate_field(desc, "z", 3, 1)     # outside the 2x2 block
    with pytest.raises(ValueError):
        trace_form(desc, "y", np.eye(2))      # no such coordinate letter
    with pytest.raises(ValueError):
        trace_form(desc, "z", np.eye(3))      # wrong coefficient shape


def test_operator_sugar_builds_expected_tree():
    desc = parse_descriptor("gl_r:2")
    f = coordinate_field(desc, "x", 1, 1)
    g = coordinate_field(desc, "x", 2, 2)
    expr = 2 * f + g * g - f / 2
    pt = np.array([[3.0, 0.0], [0.0, 5.0]], dtype=complex)
    assert expr.value(pt) == 2 * 3 + 25 - 1.5
    assert (-f).value(pt) == -3.0
    assert (f / g).value(pt) == 3.0 / 5.0
    assert isinstance(f / g, Quotient)


def test_field_serialization_round_trip():
    desc = parse_descriptor("sp_r:2")
    f = trace_form(desc, "x", np.array([[1.0, 2.0j], [0.0, 1.0]]))
    g = trace_form(desc, "w", np.eye(2))
    expr = Scale(0.5, f * g) + Const(1 + 2j) + f / g
    d = expr.to_dict()
    back = field_from_dict(d)
    rng = np.random.default_rng(4)
    pt = sample_point(desc, rng)
    assert np.isclose(back.value(pt), expr.value(pt))
    d_bad = dict(d)
    d_bad["kind"] = "mystery"
    with pytest.raises(ValueError):
        field_from_dict(d_bad)


def test_kappa_closed_form_on_gl():
    # for trace forms on gl(n,R) the first-derivative pairing collapses to
    # einsum over g g^T; checks tau/kappa wiring against a hand derivation
    desc = parse_descriptor("gl_r:3")
    basis = algebra_basis(desc)
    rng = np.random.default_rng(6)
    a = rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3))
    fa = trace_form(desc, "x", a)
    fb = trace_form(desc, "x", b)
    for _ in range(3):
        g = sample_point(desc, rng)
        got = kappa(fa, fb, g, basis)
        want = np.einsum("ab,cb,ac->", a, b, g @ g.T)
        assert abs(got - want) <= 1e-10 * (1 + abs(want))


def test_tension_of_constant_vanishes():
    desc = parse_descriptor("sp_r:2")
    basis = algebra_basis(desc)
    g = sample_point(desc, np.random.default_rng(8))
    assert tension(Const(3 + 4j), g, basis) == 0


@pytest.mark.parametrize("desc", battery_descriptors(), ids=str)
def test_coordinate_laws_hold(desc):
    rep = verify_lemma(desc, samples=6)
    assert rep.ok, rep.failures()
    assert rep.laws


def test_sign_variant_law_deviates_on_group():
    rep = verify_lemma(parse_descriptor("so_pq:2,2"), samples=6)
    dev = rep.diagnostics["deviation[kappa[x,x]_sign_variant]"]
    assert dev > 0.5
    # and it is excluded from the pass verdict
    assert rep.ok


def test_verify_lemma_rejects_uncovered_family():
    with pytest.raises(ValueError):
        verify_lemma(parse_descriptor("sl_r:3"))

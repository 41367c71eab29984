"""Group descriptors, algebra bases, membership checks."""

import numpy as np
import pytest

from liemorph.groups import (
    FAMILIES,
    GroupDescriptor,
    algebra_basis,
    algebra_residual,
    membership_residual,
    parse_descriptor,
    random_algebra_element,
    sample_point,
    verify_basis,
)

CASES = ["gl_r:3", "sl_r:3", "u_star:2", "sp_r:2", "so_star:3",
         "u_pq:2,1", "so_pq:2,2", "sp_pq:2,1"]

EXPECTED_DIM = {
    "gl_r:3": 9, "sl_r:3": 8, "u_star:2": 16, "sp_r:2": 10,
    "so_star:3": 15, "u_pq:2,1": 9, "so_pq:2,2": 6, "sp_pq:2,1": 21,
}


def test_parse_round_trip():
    for text in CASES:
        desc = parse_descriptor(text)
        assert desc.text == text
        assert str(desc) == text
        assert desc.family in FAMILIES


def test_parse_rejects_malformed():
    for bad in ("gl_r", "gl_r:", "nope:3", "u_pq:2", "gl_r:2,3",
                "gl_r:x", "u_pq:1,2,3", "sl_r:0", "u_pq:2,-1"):
        with pytest.raises(ValueError):
            parse_descriptor(bad)


def test_descriptor_sizes():
    assert GroupDescriptor("u_star", 2).matrix_size == 4
    assert GroupDescriptor("sp_pq", 2, 1).matrix_size == 6
    assert GroupDescriptor("u_pq", 2, 1).matrix_size == 3
    assert GroupDescriptor("gl_r", 4).n == 4
    assert GroupDescriptor("so_pq", 2, 2).n == 4


@pytest.mark.parametrize("text", CASES)
def test_basis_dimension(text):
    desc = parse_descriptor(text)
    basis = algebra_basis(desc)
    assert len(basis) == desc.dim == EXPECTED_DIM[text]
    assert len({b.label for b in basis}) == len(basis)
    for b in basis:
        assert b.matrix.shape == (desc.matrix_size, desc.matrix_size)
        assert b.eps == 1


@pytest.mark.parametrize("text", CASES)
def test_verify_basis(text):
    rep = verify_basis(parse_descriptor(text))
    assert rep.ok, rep
    assert rep.gram_err <= 1e-12
    assert rep.closure_err <= 1e-10


@pytest.mark.parametrize("text", CASES)
def test_sampled_points_satisfy_relations(text):
    desc = parse_descriptor(text)
    rng = np.random.default_rng(3)
    for _ in range(4):
        g = sample_point(desc, rng)
        assert membership_residual(desc, g) <= 1e-10
        z = random_algebra_element(desc, rng)
        assert algebra_residual(desc, z) <= 1e-12


def test_membership_rejects_perturbed_point():
    desc = parse_descriptor("sp_r:2")
    rng = np.random.default_rng(5)
    g = sample_point(desc, rng)
    g2 = g.copy()
    g2[0, 1] += 0.05
    assert membership_residual(desc, g2) > 1e-4


def test_identity_is_a_point_everywhere():
    for text in CASES:
        desc = parse_descriptor(text)
        eye = np.eye(desc.matrix_size, dtype=complex)
        assert membership_residual(desc, eye) <= 1e-15


def test_sl_r_basis_is_traceless():
    for b in algebra_basis(parse_descriptor("sl_r:4")):
        assert abs(np.trace(b.matrix)) <= 1e-14


def test_determinant_constraints():
    rng = np.random.default_rng(11)
    g = sample_point(parse_descriptor("sl_r:3"), rng)
    assert abs(np.linalg.det(g) - 1.0) <= 1e-10
    g = sample_point(parse_descriptor("gl_r:3"), rng)
    assert abs(np.linalg.det(g)) > 1e-8        # invertible, det unconstrained

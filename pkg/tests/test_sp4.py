"""Group layer: certification, generators, Cartan invariants, memberships."""

import random

import pytest

from sp4lab import sp4
from sp4lab.sp4 import (
    GroupElement,
    InternalSoundnessError,
    SymplecticError,
    cartan_from_elementary_divisors,
    cartan_invariants,
    matrix_from_json,
    subgroup_membership,
)
from sp4lab.verifiers import random_k_element
from conftest import FIELD_NAMES


def test_j_is_symplectic_and_involution_facts(fields):
    for name in FIELD_NAMES:
        spec = fields[name]
        jm = sp4.j_form(spec)
        assert sp4.is_symplectic(spec, jm.rows)
        w21 = sp4.weyl_w21(spec)
        assert w21 * w21 == sp4.identity(spec)
        assert sp4.is_symplectic(spec, sp4.identity(spec).rows)


def test_d_matrix_example(fields):
    q3 = fields["Q3"]
    g = sp4.d_matrix(q3, 2, 1)
    assert g.rows[0][0] == q3.pi(-2)
    assert g.rows[1][1] == q3.pi(-1)
    assert g.rows[2][2] == q3.pi(1)
    assert g.rows[3][3] == q3.pi(2)
    assert sp4.is_symplectic(q3, g.rows)


def test_symplectic_check_failure_names_entry(fields):
    q3 = fields["Q3"]
    z, o = q3.zero(), q3.one()
    rows = ((q3.pi(1), z, z, z), (z, o, z, z), (z, z, o, z), (z, z, z, q3.pi(1)))
    with pytest.raises(SymplecticError) as err:
        sp4.symplectic_check(q3, rows)
    assert err.value.row is not None


def test_mu41_conjugation_identity(fields):
    for name in ("Q3", "F4((t))"):
        spec = fields[name]
        for code in range(min(spec.q, 3)):
            a = spec.from_residue_code(code) if code else spec.zero()
            lhs = sp4.mu41(spec, a)
            rhs = sp4.weyl_w21(spec) * sp4.mu32(spec, a) * sp4.weyl_w21(spec)
            assert lhs == rhs
    q3 = fields["Q3"]
    a = q3.pi(1)
    assert sp4.mu41(q3, a) == sp4.weyl_w21(q3) * sp4.mu32(q3, a) * sp4.weyl_w21(q3)


def test_cartan_on_diagonal_cells(fields):
    for name in FIELD_NAMES:
        spec = fields[name]
        for i in range(7):
            for j in range(i + 1):
                g = sp4.d_matrix(spec, i, j)
                (ci, cj), (e1, e2), length = cartan_invariants(g)
                assert (ci, cj) == (i, j)
                assert (e1, e2) == (i, i + j)
                assert length == i + j
                assert cartan_from_elementary_divisors(g) == (i, j)


def test_cartan_examples(fields):
    q3 = fields["Q3"]
    assert cartan_invariants(sp4.identity(q3))[0] == (0, 0)
    (cell, norms, length) = cartan_invariants(sp4.d_matrix(q3, 3, 1))
    assert cell == (3, 1) and norms == (3, 4) and length == 4
    z, o = q3.zero(), q3.one()
    a = q3.pi(-2)
    rows = ((o, z, z, z), (z, o, z, z), (a, z, o, z), (z, a, z, o))
    g = sp4.symplectic_check(q3, rows)
    assert cartan_invariants(g)[0] == (2, 2)
    assert cartan_from_elementary_divisors(g) == (2, 2)


def test_cartan_k_invariance_corpus(fields):
    rnd = random.Random(5)
    for name in ("Q3", "F2((t))"):
        spec = fields[name]
        for _ in range(60):
            k1 = random_k_element(spec, 2, rnd)
            k2 = random_k_element(spec, 2, rnd)
            i, j = rnd.randrange(0, 4), 0
            j = rnd.randrange(0, i + 1)
            g = sp4.d_matrix(spec, i, j)
            assert cartan_invariants(k1 * g * k2)[0] == (i, j)
            assert cartan_invariants((k1 * g * k2).inverse())[0] == (i, j)


def test_length_subadditive(fields):
    rnd = random.Random(11)
    spec = fields["Q3"]
    for _ in range(40):
        k1 = random_k_element(spec, 2, rnd)
        k2 = random_k_element(spec, 2, rnd)
        g = k1 * sp4.d_matrix(spec, rnd.randrange(4), 0) * k2
        h = k2 * sp4.d_matrix(spec, 3, rnd.randrange(3)) * k1
        lg = cartan_invariants(g)[2]
        lh = cartan_invariants(h)[2]
        assert cartan_invariants(g * h)[2] <= lg + lh


def test_wedge_two_routes_agree_on_corpus(fields):
    rnd = random.Random(6)
    for name in ("Q3", "F4((t))"):
        spec = fields[name]
        for _ in range(30):
            k1 = random_k_element(spec, 2, rnd)
            k2 = random_k_element(spec, 2, rnd)
            i = rnd.randrange(0, 4)
            j = rnd.randrange(0, i + 1)
            g = k1 * sp4.d_matrix(spec, i, j) * k2
            assert cartan_invariants(g)[0] == cartan_from_elementary_divisors(g) == (i, j)


def test_memberships(fields):
    q3 = fields["Q3"]
    assert subgroup_membership(sp4.weyl_w21(q3), "K1")
    assert subgroup_membership(sp4.weyl_w21(q3), "K")
    assert subgroup_membership(sp4.weyl_w32(q3), "K2")
    assert not subgroup_membership(sp4.d_matrix(q3, 1, 0), "K")
    assert subgroup_membership(sp4.mu21(q3, q3.pi(1)), "K1")
    b1 = sp4.k1_embed(q3, ((q3.one(), q3.pi(1)), (q3.integer(2), q3.one())))
    assert subgroup_membership(b1, "B1")
    assert not subgroup_membership(b1, "B2")
    low = sp4.mu41(q3, q3.integer(2)) * sp4.mu21(q3, q3.one())
    assert subgroup_membership(low, "Blow")
    assert not subgroup_membership(sp4.weyl_w21(q3), "Blow")


def test_dominance_failure_is_internal_error(fields):
    q3 = fields["Q3"]
    # near-rank-one matrix smuggled past certification: every 2x2 minor is a
    # unit or smaller while one entry is large, so the computed pair leaves
    # the dominant cone and must trip the soundness assertion
    base = q3.pi(-1)
    rows = tuple(tuple(base + (q3.pi(1) if r == c else q3.zero())
                       for c in range(4)) for r in range(4))
    fake = GroupElement(q3, rows, certify=False)
    with pytest.raises(InternalSoundnessError):
        cartan_invariants(fake)


def test_matrix_json_roundtrip(fields):
    rnd = random.Random(8)
    for name in ("Q3", "F4((t))"):
        spec = fields[name]
        g = random_k_element(spec, 2, rnd)
        again = matrix_from_json(spec, g.to_json())
        assert again == g


def test_k1_k2_embed_validation(fields):
    q3 = fields["Q3"]
    with pytest.raises(ValueError):
        sp4.k1_embed(q3, ((q3.pi(1), q3.zero()), (q3.zero(), q3.pi(1))))  # det not unit
    with pytest.raises(ValueError):
        sp4.k2_embed(q3, ((q3.integer(2), q3.zero()), (q3.zero(), q3.integer(2))))
    with pytest.raises(ValueError):
        sp4.mu21(q3, q3.pi(-1))

"""Fourier layer: characters, transform norms, line averaging, type constants."""

import math

import numpy as np
import pytest

from sp4lab.exactfield import residue_ring
from sp4lab.fourier import (
    SpaceSpec,
    c2_constant,
    c2_constant_direct,
    characters_pairing,
    check_fft_lemma,
    estimate_type_constant,
    fft_rhs_coefficient,
    parse_space,
    shifted_rewrite_families,
    transform_matrix,
    transform_norm,
    type_ratio,
)


def test_space_grammar():
    s = parse_space("l2:4")
    assert s.p == 2 and s.d == 4 and s.is_hilbert
    s = parse_space("l1.5:3")
    assert s.p == 1.5 and s.d == 3
    assert parse_space("hilbert:2").p == 2
    with pytest.raises(ValueError):
        parse_space("x2:4")
    with pytest.raises(ValueError):
        SpaceSpec(0.5, 2)


def test_character_orthogonality_grid(fields):
    for name in ("Q2", "Q3", "Q5", "F2((t))", "F3((t))", "F4((t))"):
        spec = fields[name]
        for n in (1, 2, 3):
            if spec.q ** n > 200:
                continue
            table = characters_pairing(spec, n)
            assert table.orthogonality_defect() <= 1e-10 * spec.q ** n
            # rows pairwise distinct
            mat = table.matrix
            for a in range(mat.shape[0]):
                for b in range(a + 1, mat.shape[0]):
                    assert np.abs(mat[a] - mat[b]).max() > 1e-9


def test_character_examples(fields):
    f2 = fields["F2((t))"]
    table = characters_pairing(f2, 1)
    sums = table.matrix.sum(axis=1)
    nontrivial = [abs(s) for s in sums if abs(s) > 1e-9]
    assert len(nontrivial) == 1  # only the trivial character has nonzero sum
    q3 = fields["Q3"]
    table = characters_pairing(q3, 2)
    gram = table.matrix @ table.matrix.conj().T
    assert np.abs(gram - 9 * np.eye(9)).max() < 1e-10
    f4 = fields["F4((t))"]
    characters_pairing(f4, 1)  # perfectness certified at construction


def test_hilbert_norm_exact(fields):
    for name in ("Q2", "Q3"):
        spec = fields[name]
        for h in (1, 2):
            res = transform_norm(spec, h, SpaceSpec(2.0, 1))
            assert res["kind"] == "exact"
            assert abs(res["lower"] - spec.q ** (-h / 2)) <= 1e-9


def test_hilbert_norm_dimension_independent(fields):
    spec = fields["Q2"]
    mat = transform_matrix(spec, 1)
    base = np.linalg.svd(mat, compute_uv=False)[0]
    for d in (1, 2, 4, 8):
        sv = np.linalg.svd(np.kron(mat, np.eye(d)), compute_uv=False)[0]
        assert abs(sv - base) <= 1e-9


def test_l1_witness_reaches_one(fields):
    res = transform_norm(fields["Q2"], 1, SpaceSpec(1.0, 2), strategy="search",
                         iters=300, seed=0)
    assert res["lower"] == pytest.approx(1.0, abs=1e-9)
    assert res["upper"] == 1.0
    assert res["kind"] == "bracket"


def test_lp_bracket_orders(fields):
    res = transform_norm(fields["Q3"], 1, SpaceSpec(1.5, 3), strategy="search",
                         iters=400, seed=1)
    assert res["lower"] <= res["upper"] * (1 + 1e-9)
    assert res["upper"] == pytest.approx(3 ** (-1 / 3))


def test_fft_hilbert_exact_example(fields):
    rep = check_fft_lemma(fields["Q2"], 1, 2, 0, space=SpaceSpec(2.0, 1))
    assert rep.status == "pass"
    assert rep.margins["rhs_coefficient"] == pytest.approx(0.5)
    assert rep.margins["max_ratio"] <= 1 + 1e-8


def test_fft_hilbert_grid(fields):
    for name in ("Q2", "Q3"):
        spec = fields[name]
        for n, k in ((2, 0), (3, 0), (3, 1)):
            rep = check_fft_lemma(spec, 1, n, k, space=SpaceSpec(2.0, 1))
            assert rep.status == "pass", (name, n, k)


def test_fft_rejects_ill_typed_shift(fields):
    with pytest.raises(ValueError):
        check_fft_lemma(fields["Q2"], 1, 2, 1)


def test_fft_lp_random(fields):
    rep = check_fft_lemma(fields["Q2"], 1, 2, 0, space=SpaceSpec(1.5, 2),
                          strategy="random", trials=800, seed=7)
    assert rep.status == "pass"
    assert rep.margins["max_ratio"] <= 1 + 1e-8


def test_rewrite_identity_exact(fields):
    rng = np.random.default_rng(11)
    for name, n, k, eps0 in (("Q3", 3, 1, 2), ("Q2", 3, 1, 1), ("Q2", 4, 1, 1)):
        spec = fields[name]
        ring = residue_ring(spec, n)
        nx = len(ring.pi_multiples(k))
        ny = len(ring.pi_multiples(2 * k))
        xi = rng.standard_normal((nx * ny, 2)) + 1j * rng.standard_normal((nx * ny, 2))
        _, full, reduced = shifted_rewrite_families(spec, n, k, xi, eps0_code=eps0)
        assert abs(full - reduced) <= 1e-12 * max(1.0, abs(full))


def test_c2_bounds_and_agreement(fields):
    for name in ("Q2", "Q3", "Q5", "F4((t))"):
        spec = fields[name]
        q = spec.q
        for eps0 in range(1, q):
            a = c2_constant(spec, eps0)
            b = c2_constant_direct(spec, eps0)
            assert a == pytest.approx(b, abs=1e-9)
            assert a <= (2 * (q - 1)) ** 2 + 1e-9


def test_rhs_coefficient_examples(fields):
    # q=2, h=1, n=2, k=0, hilbert: q^(2h-2) e^(-2(n/h-1) alpha) = 1/2
    coeff = fft_rhs_coefficient(fields["Q2"], 1, 2, 0, SpaceSpec(2.0, 1))
    assert coeff == pytest.approx(0.5)


def test_type_constant_hilbert_is_one():
    res = estimate_type_constant(SpaceSpec(2.0, 5), 2.0, 7, trials=25, seed=0)
    assert res["max_ratio"] == pytest.approx(1.0, abs=1e-9)


def test_type_constant_l1_growth():
    for n in (4, 9):
        vecs = np.eye(n, n, dtype=complex)
        ratio = type_ratio(vecs, 1.0, 2.0)
        assert ratio == pytest.approx(math.sqrt(n))


def test_type_constant_validation():
    with pytest.raises(ValueError):
        estimate_type_constant(SpaceSpec(1.0, 2), 0.5, 3)

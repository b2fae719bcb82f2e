"""Verifier layer: cell suites, identities, decomposition, averaging, parity."""

import random
from fractions import Fraction

import pytest

from sp4lab import lemma_witnesses as lw
from sp4lab import sp4
from sp4lab.exactfield import residue_ring
from sp4lab.verifiers import (
    BudgetExceededError,
    DecompositionError,
    decompose_k1k2,
    dihedral_4_standard,
    enumerate_symplectic_residue,
    invariance_forces_zero,
    lift_symplectic,
    merge_reports,
    parity_depth_profile,
    parity_volumes,
    product_coverage,
    random_k_element,
    sample_symplectic_residue,
    symmetric_3_standard,
    symplectic_group_order,
    verify_averaging,
    verify_cell_lemma,
    verify_witness_identities,
    wedge_valuation,
)


def test_cell_suite_passes_spher01(fields):
    rep = verify_cell_lemma(lw.SPHER01, fields["Q3"], 3, 1)
    assert rep.status == "pass"
    assert rep.cases_run == rep.cases_total == 3 ** 7
    assert not rep.counterexamples


def test_cell_suite_passes_spher1m1_with_cells(fields):
    rep = verify_cell_lemma(lw.SPHER1M1, fields["F3((t))"], 4, 3)
    assert rep.status == "pass" and rep.cases_run == 3 ** 7


def test_cell_suite_boundary_nonspher1m1(fields):
    rep = verify_cell_lemma(lw.NONSPHER1M1, fields["Q3"], 3, 4, k_level=1)
    assert rep.status == "pass"


def test_cell_suite_char2_k1_congruence(fields):
    rep = verify_cell_lemma(lw.CHAR2_02, fields["F2((t))"], 7, 1, k_level=1)
    assert rep.status == "pass"
    rep = verify_cell_lemma(lw.CHAR2_02, fields["F4((t))"], 5, 1)
    assert rep.status == "pass"
    assert "unpinned_eps_cells" in rep.margins  # q=4 has residues beyond {0,1}


def test_budget_enforced(fields):
    with pytest.raises(BudgetExceededError):
        verify_cell_lemma(lw.SPHER01, fields["Q3"], 8, 0, budget=1000)


def test_sample_mode_deterministic(fields):
    a = verify_cell_lemma(lw.SPHER01, fields["Q5"], 3, 1, mode="sample",
                          sample_n=50, seed=123)
    b = verify_cell_lemma(lw.SPHER01, fields["Q5"], 3, 1, mode="sample",
                          sample_n=50, seed=123)
    assert a.to_dict()["cases_run"] == 50
    da, db = a.to_dict(), b.to_dict()
    da.pop("elapsed_ms"), db.pop("elapsed_ms")
    assert da == db


def test_partition_merge_reconstructs_whole(fields):
    whole = verify_cell_lemma(lw.SPHER01, fields["Q3"], 3, 1)
    parts = [verify_cell_lemma(lw.SPHER01, fields["Q3"], 3, 1, partition=(k, 3))
             for k in range(3)]
    merged = merge_reports(merge_reports(parts[0], parts[1]), parts[2])
    assert merged.cases_run == whole.cases_run
    assert merged.status == whole.status == "pass"
    # associativity
    merged2 = merge_reports(parts[0], merge_reports(parts[1], parts[2]))
    assert merged2.cases_run == merged.cases_run
    assert merged2.status == merged.status


def test_identity_suite_passes(fields):
    for lemma, field, i, j in ((lw.SPHER01, "Q3", 4, 1),
                               (lw.SPHER1M1, "Q3", 3, 3),
                               (lw.NONSPHER01, "Q3", 4, 1),
                               (lw.NONSPHER1M1, "Q3", 4, 4),
                               (lw.CHAR2_02, "F2((t))", 6, 2)):
        rep = verify_witness_identities(lemma, fields[field], i, j,
                                        sample_n=120, seed=4)
        assert rep.status == "pass", (lemma, rep.counterexamples[:2])


@pytest.mark.parametrize("mutation,catcher", [
    ("minor-sign-flip", "identities"),
    ("d-scaling-exponent", "cells"),
    ("drop-eps1", "cells"),
    ("wrong-n1", "cells"),
    ("minor-row-pair", "identities"),
])
def test_mutations_detected(fields, mutation, catcher):
    q3 = fields["Q3"]
    if catcher == "cells":
        lemma, i, j, k = (lw.NONSPHER1M1, 4, 4, 1) if mutation == "drop-eps1" \
            else (lw.SPHER01, 3, 1, 0)
        rep = verify_cell_lemma(lemma, q3, i, j, k_level=k, mutation=mutation)
    else:
        rep = verify_witness_identities(lw.SPHER01, q3, 3, 1, sample_n=200,
                                        seed=1, mutation=mutation)
    assert rep.status == "violated", mutation
    assert rep.counterexamples


# ---------------------------------------------------------------------------
# decomposition


def test_decompose_identity_and_mu41(fields):
    q3 = fields["Q3"]
    fl = decompose_k1k2(sp4.identity(q3))
    assert fl.factors == [] and fl.block_count == 0 and fl.route == "identity"
    fl = decompose_k1k2(sp4.mu41(q3, q3.pi(1)))
    assert fl.block_count == 2
    tags = [t for t, _ in fl.factors]
    assert tags == ["K1", "K2", "K1"]
    assert fl.factors[0][1] == sp4.weyl_w21(q3)
    assert fl.factors[1][1] == sp4.mu32(q3, q3.pi(1))


def test_decompose_rejects_non_k(fields):
    with pytest.raises(DecompositionError):
        decompose_k1k2(sp4.d_matrix(fields["Q3"], 1, 0))


def test_decompose_known_bwb_failure_uses_fallback(fields):
    q3 = fields["Q3"]
    g = sp4.k2_embed(q3, ((q3.one(), q3.pi(1)), (q3.zero(), q3.one())))
    fl = decompose_k1k2(g)
    assert fl.route == "fallback"
    assert fl.block_count <= 30


def test_decompose_sweep_sp4_f2(fields):
    f2 = fields["F2((t))"]
    count = 0
    for reps in enumerate_symplectic_residue(f2, 1):
        g = lift_symplectic(f2, 1, reps)
        fl = decompose_k1k2(g)
        assert fl.block_count <= 30
        count += 1
    assert count == 720


def test_decompose_random_corpus(fields, rng):
    for name in ("Q3", "F2((t))"):
        spec = fields[name]
        for _ in range(40):
            g = random_k_element(spec, rng.randrange(1, 4), rng)
            fl = decompose_k1k2(g)
            assert fl.block_count <= 30
            tags = [t for t, _ in fl.factors]
            assert all(a != b for a, b in zip(tags, tags[1:])), "tags must alternate"
            for tag, x in fl.factors:
                assert sp4.subgroup_membership(x, tag)


# ---------------------------------------------------------------------------
# sampling


def test_enumeration_matches_order_formula(fields):
    f2 = fields["F2((t))"]
    assert sum(1 for _ in enumerate_symplectic_residue(f2, 1)) == \
        symplectic_group_order(2) == 720


def test_lift_certifies_and_reduces(fields, rng):
    for name in ("Q3", "F4((t))"):
        spec = fields[name]
        for depth in (1, 2, 3):
            reps = sample_symplectic_residue(spec, depth, rng)
            g = lift_symplectic(spec, depth, reps)
            assert g.is_integral()
            assert g.reduce(depth) == reps


def test_sampling_uniform_level1(fields):
    # support should be essentially complete at 5x the group order draws,
    # and no class should be drawn wildly more often than the mean
    f2 = fields["F2((t))"]
    rnd = random.Random(23)
    counts = {}
    n = 5 * 720
    for _ in range(n):
        reps = sample_symplectic_residue(f2, 1, rnd)
        counts[reps] = counts.get(reps, 0) + 1
    assert len(counts) > 700
    assert max(counts.values()) < 25  # mean 5; a crude uniformity guard


# ---------------------------------------------------------------------------
# averaging


def test_averaging_s3_and_d4():
    rep = verify_averaging(symmetric_3_standard(), trials=300, seed=2)
    assert rep.status == "pass"
    assert rep.margins["max_lhs_over_rhs"] <= 1.0
    rep = verify_averaging(dihedral_4_standard(), trials=300, seed=3)
    assert rep.status == "pass"


def test_averaging_coverage_and_projector():
    g = symmetric_3_standard()
    assert len(product_coverage(g, ("K1", "K2"), 2)) == 6
    assert len(product_coverage(g, ("K1",), 2)) == 2  # K1 alone fails to cover
    assert invariance_forces_zero(g)
    assert invariance_forces_zero(dihedral_4_standard())


def test_averaging_hypothesis_failures_reported():
    from sp4lab.verifiers.averaging import FiniteGroupRep
    import numpy as np
    g = symmetric_3_standard()
    rep = verify_averaging(g, subgroup_names=("K1",), trials=5, seed=0)
    assert rep.status == "violated"
    assert rep.counterexamples[0]["check"] == "coverage"
    # a representation with invariant vectors must be rejected up front
    trivial = FiniteGroupRep("S3-trivial", g.mult,
                             np.stack([np.eye(2)] * g.order), g.subgroups)
    rep = verify_averaging(trivial, trials=5, seed=0)
    assert rep.status == "violated"
    assert rep.counterexamples[0]["check"] == "no-invariant-vectors"


def test_averaging_zero_vector_case():
    # all y_i equal to x forces RHS = 0 only when x is jointly invariant,
    # and joint invariance forces x = 0
    import numpy as np
    g = symmetric_3_standard()
    avg1 = g.matrices[g.subgroups["K1"]].mean(axis=0)
    avg2 = g.matrices[g.subgroups["K2"]].mean(axis=0)
    stack = np.vstack([avg1 - np.eye(2), avg2 - np.eye(2)])
    sv = np.linalg.svd(stack, compute_uv=False)
    assert sv[-1] > 1e-9  # trivial joint fixed space


# ---------------------------------------------------------------------------
# parity volumes


def test_parity_identity_depth1_exact(fields):
    f2 = fields["F2((t))"]
    rep = parity_volumes(sp4.identity(f2), 1, mode="exhaustive")
    assert rep.status == "pass"
    even, odd = rep.margins["decided_even"], rep.margins["decided_odd"]
    und = rep.margins["undecided"]
    assert even + odd + und == 720
    # independent count of wedge-degenerate classes: reduced column pairs of
    # an invertible matrix are independent, so none are degenerate
    ring = residue_ring(f2, 1)
    degenerate = 0
    for reps in enumerate_symplectic_residue(f2, 1):
        minors = []
        for r1 in range(4):
            for r2 in range(r1 + 1, 4):
                m = ring.sub(ring.mul(reps[r1][0], reps[r2][1]),
                             ring.mul(reps[r1][1], reps[r2][0]))
                minors.append(m)
        if all(m == ring.zero for m in minors):
            degenerate += 1
    assert und == degenerate == 0
    a_lo, a_hi = (Fraction(s) for s in rep.margins["alpha_interval"])
    b_lo, b_hi = (Fraction(s) for s in rep.margins["beta_interval"])
    assert a_lo + b_hi == 1 and a_hi + b_lo == 1
    assert a_lo + b_lo <= 1


def test_parity_rejects_wrong_characteristic(fields):
    with pytest.raises(ValueError):
        parity_volumes(sp4.identity(fields["Q3"]), 1)


def test_parity_depth_monotone(fields):
    f2 = fields["F2((t))"]
    g = sp4.d_matrix(f2, 1, 0)
    profile = parity_depth_profile(g, 4, sample_n=250, seed=5)
    assert all(b >= a for a, b in zip(profile, profile[1:]))
    # depth 1 cannot decide anything for i = 1 (threshold 1 - 2 < 0)
    assert profile[0] == 0.0


def test_wedge_valuation_example(fields):
    f2 = fields["F2((t))"]
    g = sp4.d_matrix(f2, 1, 0)
    val = wedge_valuation(g.rows)
    assert val == -1  # columns 1,2 of D(1,0) wedge to pi^(-1)

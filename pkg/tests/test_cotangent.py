"""Cotangent slices, windows, and the normal-form factorization check."""

import math

import pytest

from quotbundle.cotangent import (
    constraint_syzygies,
    index_split,
    normal_form_factorization_report,
    split_case,
    t1_slice,
    t1_window,
    verify_hom_assignment,
)
from quotbundle.grammar import parse_polynomial
from quotbundle.grassmann import bundle_generators, pfaffian_quadruples
from quotbundle.poly import ring


def pattern_assignment(n=5):
    """Images pf(2345)->y1, pf(1345)->-y2, pf(1245)->y3, pf(1235)->-y4,
    pf(1234)->y5, mixed quadrics -> 0."""
    R = ring(n)
    quads = pfaffian_quadruples(n)
    images = [R.zero] * (len(quads) + n)
    for a, quad in enumerate(quads):
        missing = next(i for i in range(1, n + 1) if i not in quad)
        sign = (-1) ** (missing + 1)
        images[a] = parse_polynomial(R, f"y[{missing}]").scale(sign)
    return images


def _proportional(images_a, images_b) -> bool:
    lam = None
    for pa, pb in zip(images_a, images_b):
        if pa.is_zero() != pb.is_zero():
            return False
        if pa.is_zero():
            continue
        if set(pa.monomials()) != set(pb.monomials()):
            return False
        for m, c in pa.items():
            ratio = c / pb.coefficient(m)
            if lam is None:
                lam = ratio
            elif ratio != lam:
                return False
    return lam is not None


def test_slice_n5_dimension_one_with_alternating_pattern():
    s = t1_slice(5, (-2, 1))
    assert (s.hom_space_dim, s.derivation_image_dim, s.t1_dim) == (1, 0, 1)
    assert len(s.basis) == 1
    target = pattern_assignment()
    assert verify_hom_assignment(5, target)
    assert _proportional(s.basis[0], target)


def test_pattern_is_not_a_hom_for_wrong_signs():
    target = pattern_assignment()
    broken = list(target)
    broken[0] = -broken[0]
    assert not verify_hom_assignment(5, broken)


def test_slice_n6_at_the_n5_shift_vanishes():
    s = t1_slice(6, (-2, 1))
    assert s.t1_dim == 0


def test_slice_with_all_negative_targets_is_empty():
    s = t1_slice(5, (-3, -2))
    assert (s.hom_space_dim, s.derivation_image_dim, s.t1_dim) == (0, 0, 0)


def test_window_n5_has_exactly_one_nonzero_slice():
    w = t1_window(5, (2, 2))
    nonzero = [(s.delta, s.t1_dim) for s in w.slices if s.t1_dim]
    assert nonzero == [((-2, 1), 1)]
    assert not w.all_zero
    assert w.coverage == "window"
    assert "window" in w.to_dict()["note"]


def test_constraint_sets_agree_on_small_slices():
    # dropping the coprime-pair (Koszul) traces changes nothing
    for delta in [(-2, 1), (-1, 0), (0, 0)]:
        a = t1_slice(5, delta, constraint_pairs="noncoprime")
        b = t1_slice(5, delta, constraint_pairs="all")
        assert (a.hom_space_dim, a.derivation_image_dim, a.t1_dim) == (
            b.hom_space_dim,
            b.derivation_image_dim,
            b.t1_dim,
        )


def test_slice_invariant_dimension_arithmetic():
    for delta in [(-2, 1), (-1, 1), (0, 0)]:
        s = t1_slice(5, delta)
        assert s.t1_dim == s.hom_space_dim - s.derivation_image_dim
        assert s.t1_dim >= 0


def test_slice_deterministic_across_thread_counts():
    base = t1_slice(5, (-2, 1), threads=1)
    for threads in (2, 4):
        other = t1_slice(5, (-2, 1), threads=threads)
        assert other.to_dict() == base.to_dict()


def test_constraint_syzygies_cached_and_nontrivial():
    syz = constraint_syzygies(5)
    gens = bundle_generators(5)
    assert syz
    for s in syz:
        assert s.dot(gens).is_zero()


# -- normal-form factorization ------------------------------------------------


def test_index_split():
    inner, outer = index_split(6, 2, 5)
    assert inner == [2, 3, 4, 5]
    assert outer == [1, 2, 5, 6]
    with pytest.raises(ValueError):
        index_split(6, 4, 2)


def test_split_case_worked_example():
    R = ring(6)
    z_c = R.monomial({R.xvar(2, 4): 1, R.xvar(3, 5): 1})
    z_d = R.monomial({R.xvar(1, 6): 1})
    res = split_case(6, 2, 5, z_c, z_d)
    expected = parse_polynomial(
        R, "x[1,6]*x[2,3]*x[4,5] + x[1,6]*x[2,5]*x[3,4]"
    )
    assert res["normal_form"] == expected
    assert res["ok"]


def test_split_case_already_normal_is_identity():
    R = ring(6)
    z_c = R.monomial({R.xvar(2, 3): 1})
    z_d = R.monomial({R.xvar(1, 6): 1})
    res = split_case(6, 2, 5, z_c, z_d)
    assert res["normal_form"] == R.term(1, z_c.mul(z_d))
    assert res["ok"]


def test_split_case_rejects_bad_hypotheses():
    R = ring(6)
    with pytest.raises(ValueError):
        split_case(6, 2, 5, R.monomial({R.xvar(1, 6): 1}), R.one_monomial)
    with pytest.raises(ValueError):
        # crossing support: not in normal form
        split_case(
            6, 3, 4, R.monomial({R.xvar(3, 4): 1}),
            R.monomial({R.xvar(1, 5): 1, R.xvar(2, 6): 1}),
        )


@pytest.mark.parametrize("n", [6, 7])
def test_factorization_trials_smoke(n):
    rep = normal_form_factorization_report(n, trials=40, seed=7)
    assert rep.passed
    assert rep.trials == 40

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfef import bounds
from qfef.bounds import BoundReport, BoundsError, find_threshold
from qfef.entropy import EntropyKind, cond_entropy
from qfef.states import StateError, StateSpec, make_state


def by_name(reports):
    return {r.theorem: r for r in reports}


def halving_root(f, lo, hi, n=200):
    flo = f(lo)
    for _ in range(n):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_report_vacuous_flag_and_json():
    r = BoundReport("x", 1.0, 2.0, False, False)
    assert r.vacuous and r.sound
    assert BoundReport("x", 1.0, 2.0, True, False).sound is False
    js = BoundReport("x", math.nan, 2.0, True, True).to_json()
    assert js["lhs"] is None
    assert set(js) >= {"theorem", "lhs", "rhs", "hypothesis", "conclusion", "vacuous"}


def test_thm1_examples():
    r = bounds.thm1_werner2(0.8)
    assert r.rhs == pytest.approx(3 * 0.05 * math.log2(10), abs=1e-12)
    assert r.rhs == pytest.approx(0.498289, abs=1e-6)
    assert r.hypothesis and r.conclusion
    assert r.lhs == pytest.approx(cond_entropy(make_state(StateSpec("werner2", (0.8,)))), abs=1e-12)
    assert bounds.thm1_werner2(0.2).vacuous
    edge = bounds.thm1_werner2(1 / 3 + 1e-6)
    assert edge.hypothesis and edge.conclusion


def test_thm1_rejects_out_of_range():
    with pytest.raises(BoundsError):
        bounds.thm1_werner2(1.5)


def test_thm2_thm3_examples():
    t2, t3 = bounds.thm2_thm3_werner2(0.9, 2.0)
    assert t2.hypothesis
    assert t2.rhs == pytest.approx(math.sqrt(0.5 - 3 * 0.025**2), abs=1e-12)
    assert t2.rhs == pytest.approx(0.705780, abs=1e-6)
    assert t2.lhs == pytest.approx(0.925)
    assert t2.conclusion and t3.conclusion
    crae = cond_entropy(make_state(StateSpec("werner2", (0.9,))), EntropyKind.renyi(2.0))
    assert crae == pytest.approx(-0.77821, abs=1e-5)
    assert bounds.thm3_delta_bound(2.0) == pytest.approx(math.sqrt(1 / 12))
    assert all(r.vacuous for r in bounds.thm2_thm3_werner2(0.1, 2.0))
    with pytest.raises(BoundsError):
        bounds.thm2_thm3_werner2(0.5, 1.0)


def test_thm4_thm5_examples():
    t4, t5 = bounds.thm4_thm5_weyl2((0.8, -0.5, 0.4))
    assert bounds.weyl2_cr2e((0.8, -0.5, 0.4)) == pytest.approx(-0.035624, abs=1e-6)
    assert t4.hypothesis and t4.conclusion and t4.lhs == pytest.approx(0.675)
    assert bounds.weyl2_R((0.8, -0.5, 0.4)) == pytest.approx(0.92)
    assert t5.rhs == pytest.approx(math.log2(12.5))
    assert t5.hypothesis and t5.conclusion
    assert bounds.thm4_thm5_weyl2((0.3, 0.2, 0.1))[0].vacuous


def test_thm4_thm5_pure_bell_and_premises():
    assert bounds.weyl2_cr2e((1.0, -1.0, 1.0)) == pytest.approx(-1.0)
    t4, t5 = bounds.thm4_thm5_weyl2((1.0, -1.0, 1.0))
    assert t4.lhs == pytest.approx(1.0)
    assert t4.note  # |t_i| are not distinct
    assert t5.vacuous and "premise" in t5.note  # R = 3
    with pytest.raises(StateError):
        bounds.thm4_thm5_weyl2((0.9, 0.9, 0.9))


def test_thm6_thm7_examples():
    assert bounds.thm7_threshold(2) == pytest.approx((1 + math.sqrt(3)) / 4)
    assert bounds.thm7_threshold(2) == pytest.approx(0.683013, abs=1e-6)
    assert bounds.thm7_threshold(6) == pytest.approx((1 + math.sqrt(175)) / 36)
    assert bounds.thm7_threshold(6) == pytest.approx(0.395243, abs=1e-6)
    assert bounds.thm6_bound(3) == pytest.approx(math.log(8 / 3) / math.log(8))
    reps = by_name(bounds.thm6_thm7_isotropic(3, 0.9))
    assert reps["thm6"].hypothesis and reps["thm6"].conclusion
    assert set(reps) == {"thm6", "cor6.1", "thm7", "thm7_converse"}


def test_thm7_biconditional_grid():
    for d in (2, 3, 5):
        thr = bounds.thm7_threshold(d)
        for F in np.linspace(0, 1, 201):
            reps = by_name(bounds.thm6_thm7_isotropic(d, float(F)))
            assert reps["thm7"].sound and reps["thm7_converse"].sound
            if abs(F - thr) > 1e-9:
                assert reps["thm7"].hypothesis == (F > thr)


def test_werner_d_identity_examples():
    r = by_name(bounds.werner_d_identities(2, 0.8))
    assert r["thm8"].residual < 1e-9
    r = by_name(bounds.werner_d_identities(4, 0.0, 2.0))
    assert r["thm13"].residual < 1e-9
    note = by_name(bounds.werner_d_identities(2, 1.0))["note_x=1"]
    assert note.residual is not None
    with pytest.raises(BoundsError):
        bounds.werner_d_identities(3, 0.0)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6]), st.floats(-1, 1), st.sampled_from([1.5, 2.0, 3.0]))
def test_werner_d_identities_hold(d, x, alpha):
    if d % 2 and x < 1 / d:
        return
    for r in bounds.werner_d_identities(d, x, alpha):
        assert r.residual <= 1e-9


def test_rank_deficient_thresholds():
    assert bounds.rank_deficient_thresholds(2).p_cvne == pytest.approx(2 / 3, abs=1e-9)
    assert bounds.rank_deficient_thresholds(3).p_cvne == pytest.approx(0.241217, abs=1e-4)
    assert bounds.rank_deficient_thresholds(5).p_cvne == pytest.approx(0.00433229, abs=1e-5)
    th = bounds.rank_deficient_thresholds(4)
    assert th.p_cr2e == pytest.approx(0.4)
    assert th.p_tele == 0.0
    assert bounds.rank_deficient_thresholds(3).p_tele == pytest.approx(1 / 3)


def test_rank_deficient_threshold_matches_spectral_halving():
    for d in (2, 3, 4):
        def f(p, d=d):
            return cond_entropy(make_state(StateSpec("rank_deficient", (p,), d)))
        root = halving_root(f, 1e-6, 1.0, 60)
        assert bounds.rank_deficient_thresholds(d).p_cvne == pytest.approx(root, abs=1e-8)


def test_genbell_examples():
    r = by_name(bounds.genbell_bounds(2, (0.9, 0.05, 0.03, 0.02)))
    assert r["thm16"].hypothesis
    # F^F * d * beta, frozen from a 30-digit mpmath evaluation
    assert r["thm16"].lhs == pytest.approx(1.3035598989878134, abs=1e-12)
    assert r["gbdst1"].lhs == pytest.approx(-0.382457, abs=1e-6)
    r = by_name(bounds.genbell_bounds(2, (0.8, 0.1, 0.05, 0.05), 2.0))
    assert r["genbell_crae"].hypothesis and r["genbell_crae"].conclusion
    assert math.sqrt(r["genbell_crae"].rhs) == pytest.approx(math.sqrt(0.485), abs=1e-12)
    assert r["genbell_crae_final"].sound


@pytest.mark.parametrize("d", [2, 3])
def test_genbell_uniform_is_vacuous(d):
    probs = (1 / d**2,) * (d * d)
    assert all(r.vacuous for r in bounds.genbell_bounds(d, probs))


def test_genbell_zero_entry_out_of_premise():
    r = by_name(bounds.genbell_bounds(2, (0.7, 0.3, 0.0, 0.0)))
    assert r["thm16"].vacuous and "premise" in r["thm16"].note
    with pytest.raises(BoundsError):
        bounds.genbell_bounds(2, (0.5, 0.5, 0.5, -0.5))


def test_find_threshold_examples():
    def werner(p):
        return cond_entropy(make_state(StateSpec("werner2", (p,))))

    assert find_threshold(werner, 0.5, 0.9) == pytest.approx(0.747614, abs=1e-5)
    assert bounds.isotropic_cvne_threshold(2) == pytest.approx(0.81071, abs=1e-4)
    assert bounds.isotropic_cvne_threshold(6) == pytest.approx(0.673671, abs=1e-4)


def test_find_threshold_errors():
    with pytest.raises(BoundsError):
        find_threshold(lambda x: x * x + 1, -1, 1)
    with pytest.raises(BoundsError):
        find_threshold(lambda x: math.nan, 0, 1)


@settings(max_examples=50, deadline=None)
@given(st.floats(-0.9, 0.9), st.floats(0.5, 3.0))
def test_find_threshold_against_halving(root, slope):
    def f(x):
        return slope * (x - root) + 0.1 * (x - root) ** 3

    got = find_threshold(f, -1.0, 1.0, 1e-10)
    assert got == pytest.approx(halving_root(f, -1.0, 1.0), abs=2e-10)
    assert got == find_threshold(f, -1.0, 1.0, 1e-10)


@pytest.mark.parametrize("d", range(2, 9))
def test_thm7_formula_equals_bisection(d):
    assert bounds.isotropic_cr2e_threshold_bisect(d) == pytest.approx(bounds.thm7_threshold(d), abs=1e-9)

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfef import fef
from qfef.fef import FefError, fef_closed, fef_corr_tensor, fef_optimize, fef_overlap, weyl2_fef
from qfef.linalg import pauli, unitary_exp
from qfef.states import DensityMatrix, StateSpec, make_state, max_entangled, projector
from qfef.verification import _weyl2_draw

SX, SY, SZ = pauli()
seeds = st.integers(0, 2**32 - 1)


def state(family, params, d=2):
    return make_state(StateSpec(family, params, d))


def test_corr_tensor_examples():
    assert fef_corr_tensor(state("werner2", (1 / 3,))).value == pytest.approx(0.5)
    assert fef_corr_tensor(DensityMatrix(np.eye(4) / 4, 2, 2)).value == pytest.approx(0.25)
    # det T < 0 here, so (1 + Tr|T|)/4 applies
    assert fef_corr_tensor(state("weyl2", (0.8, -0.5, 0.4))).value == pytest.approx(0.675)


def test_corr_tensor_positive_determinant():
    # det T > 0: the plain trace-norm expression would give 0.6, above the true maximum
    rho = state("weyl2", (0.3, 0.2, 0.1))
    exact = fef_corr_tensor(rho).value
    assert exact == pytest.approx((1 + 0.3 + 0.2 - 0.1) / 4)
    assert (1 + fef.correlation_norm(rho)) / 4 > exact + 0.04
    assert fef_optimize(rho).value == pytest.approx(exact, abs=1e-9)


def test_corr_tensor_rejects_qutrits():
    with pytest.raises(FefError):
        fef_corr_tensor(state("isotropic", (0.5,), 3))


def test_closed_examples():
    assert fef_closed(StateSpec("werner_d", (1.0,), 2)).value == pytest.approx(1 / 3)
    assert fef_closed(StateSpec("werner_d", (-1.0,), 3)).value == pytest.approx(2 / 9)
    probs = (0.62, 0.1, 0.08, 0.05, 0.05, 0.04, 0.03, 0.02, 0.01)
    assert fef_closed(StateSpec("gen_bell", probs, 3)).value == pytest.approx(0.62)
    assert fef_closed(StateSpec("isotropic", (0.7,), 5)).value == pytest.approx(0.7)
    assert fef_closed(StateSpec("werner2", (0.8,))).value == pytest.approx(0.85)
    with pytest.raises(FefError):
        fef_closed(StateSpec("rank_deficient", (0.5,), 3))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_isotropic_closed_monotone_above_noise_floor(d):
    grid = np.linspace(1 / d**2, 1, 50)
    vals = [fef_closed(StateSpec("isotropic", (F,), d)).value for F in grid]
    assert np.all(np.diff(vals) > 0)


def test_isotropic_closed_below_noise_floor():
    # below F = 1/d^2 a traceless unitary moves the overlap onto the noise part
    d, F = 3, 0.05
    value = fef_closed(StateSpec("isotropic", (F,), d)).value
    assert value == pytest.approx((1 - F) / (d * d - 1))
    clock = np.diag(np.exp(2j * math.pi * np.arange(d) / d))
    assert fef_overlap(state("isotropic", (F,), d), clock) == pytest.approx(value)


def test_overlap_examples():
    for d in (2, 3):
        bell = DensityMatrix(projector(max_entangled(d)), d, d)
        assert fef_overlap(bell, np.eye(d)) == pytest.approx(1.0)
        mixed = DensityMatrix(np.eye(d * d) / d**2, d, d)
        assert fef_overlap(mixed, np.eye(d)) == pytest.approx(1 / d**2)
    phi_plus = state("weyl2", (1.0, -1.0, 1.0))
    assert fef_overlap(phi_plus, SX) == pytest.approx(0.0, abs=1e-12)


def test_overlap_rejects_non_unitary():
    with pytest.raises(FefError):
        fef_overlap(state("werner2", (0.5,)), np.array([[1, 1], [0, 1]]))
    with pytest.raises(FefError):
        fef_overlap(state("werner2", (0.5,)), np.eye(3))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_overlap_in_unit_interval(seed):
    rng = np.random.default_rng(seed)
    rho = state("werner2", (float(rng.uniform()),))
    h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    u = unitary_exp((h + h.conj().T) / 2)
    assert -1e-12 <= fef_overlap(rho, u) <= 1 + 1e-12


def test_optimize_examples():
    assert fef_optimize(state("isotropic", (0.6,), 3), restarts=16).value == pytest.approx(0.6, abs=1e-4)
    assert fef_optimize(state("gen_bell", (0.7, 0.1, 0.1, 0.1))).value == pytest.approx(0.7, abs=1e-5)
    assert fef_optimize(state("werner2", (0.8,))).value == pytest.approx(0.85, abs=1e-5)


def test_optimize_deterministic_and_seeded():
    rho = state("werner_d", (0.1,), 3)
    a = fef_optimize(rho, restarts=4, seed=7)
    b = fef_optimize(rho, restarts=4, seed=7)
    assert a == b
    assert a.restarts_used == 4 and a.method == "optimized"


def test_optimize_thread_count_does_not_change_result(monkeypatch):
    rho = state("gen_bell", (0.05, 0.05, 0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1), 3)
    serial = fef_optimize(rho, restarts=6)
    monkeypatch.setenv("QFEF_THREADS", "3")
    assert fef_optimize(rho, restarts=6) == serial


def test_optimize_rejects_bad_input():
    with pytest.raises(FefError):
        fef_optimize(state("werner2", (0.5,)), restarts=0)


CLOSED_SPECS = [
    StateSpec("werner2", (0.4,)),
    StateSpec("weyl2", (-0.6, -0.3, -0.2)),
    StateSpec("isotropic", (0.3,), 3),
    StateSpec("werner_d", (-0.3,), 3),
    StateSpec("werner_d", (0.6,), 4),
    StateSpec("gen_bell", (0.1, 0.2, 0.3, 0.4), 2),
]


@pytest.mark.parametrize("spec", CLOSED_SPECS, ids=lambda s: s.to_text())
def test_optimizer_is_a_lower_bound_that_reaches_closed_form(spec):
    closed = fef_closed(spec).value
    opt = fef_optimize(make_state(spec), restarts=8).value
    tol = 1e-4 if spec.d <= 3 else 5e-4
    assert closed - tol <= opt <= closed + 1e-6


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_corr_tensor_symmetries(seed):
    t = _weyl2_draw(np.random.default_rng(seed))
    base = weyl2_fef(t)
    assert base == pytest.approx(fef_corr_tensor(state("weyl2", t)).value, abs=1e-12)
    for perm in itertools.permutations(t):
        assert weyl2_fef(perm) == pytest.approx(base, abs=1e-12)
        for i, j in itertools.combinations(range(3), 2):
            flipped = list(perm)
            flipped[i], flipped[j] = -flipped[i], -flipped[j]
            assert weyl2_fef(flipped) == pytest.approx(base, abs=1e-12)


def test_single_sign_flip_changes_value():
    # one flip maps the tensor to a different local-unitary class
    assert weyl2_fef((0.3, 0.2, 0.1)) != pytest.approx(weyl2_fef((0.3, 0.2, -0.1)))


def test_result_json():
    r = fef_closed(StateSpec("isotropic", (0.5,), 2))
    assert r.to_json() == {"value": 0.5, "method": "closed", "restarts_used": 0, "converged": True}

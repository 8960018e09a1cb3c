"""Work-gain bounds from conditional von Neumann entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import werner2_delta

BOLTZMANN_SI = 1.380649e-23  # J/K


class WorkCostError(ValueError):
    pass


@dataclass(frozen=True)
class ThermoContext:
    temperature: float
    boltzmann: float = BOLTZMANN_SI

    def __post_init__(self):
        if not (math.isfinite(self.temperature) and self.temperature > 0):
            raise WorkCostError(f"temperature must be positive, got {self.temperature!r}")
        if not (math.isfinite(self.boltzmann) and self.boltzmann > 0):
            raise WorkCostError(f"Boltzmann constant must be positive, got {self.boltzmann!r}")

    @classmethod
    def natural(cls, temperature: float = 1.0) -> "ThermoContext":
        """k = 1, so energies are in units of the temperature."""
        return cls(temperature, 1.0)

    @property
    def kT(self) -> float:
        return self.boltzmann * self.temperature


@dataclass(frozen=True)
class WorkGain:
    """A work-gain lower bound, or ``value=None`` with the violated premise."""

    value: float | None
    in_premise: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"value": self.value, "in_premise": self.in_premise, "note": self.note}


def work_gain_lower(s_cond: float, ctx: ThermoContext) -> float:
    """W_g >= -S(A|B) k T ln 2."""
    return -s_cond * ctx.kT * math.log(2.0)


def werner2_work_gain(p: float, ctx: ThermoContext) -> WorkGain:
    """k T 3 delta ln(2 delta), valid once the Werner state's FEF exceeds 1/2."""
    if not 0.0 <= p <= 1.0:
        raise WorkCostError(f"p={p!r} outside [0, 1]")
    if not p > 1.0 / 3.0:
        return WorkGain(None, False, f"out of premise: FEF={(1 + 3 * p) / 4!r} <= 1/2")
    delta = werner2_delta(p)
    value = 0.0 if delta == 0.0 else ctx.kT * 3.0 * delta * math.log(2.0 * delta)
    return WorkGain(value, True)


def genbell_work_gain(d: int, probs, ctx: ThermoContext) -> WorkGain:
    """k T ln(beta / d^(F-1)), beta the product of p_i^p_i over non-maximal entries."""
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (d * d,) or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-10:
        raise WorkCostError(f"need {d * d} non-negative probabilities summing to 1")
    k = int(np.argmax(probs))
    F = float(probs[k])
    rest = np.delete(probs, k)
    if not F > 1.0 / d:
        return WorkGain(None, False, f"out of premise: F={F!r} <= 1/d")
    if np.any(rest <= 0):
        return WorkGain(None, False, "out of premise: a non-maximal p_i is zero")
    log_beta = float(np.sum(rest * np.log(rest)))
    return WorkGain(ctx.kT * (log_beta - (F - 1.0) * math.log(d)), True)

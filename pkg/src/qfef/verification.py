"""Seeded verification suites with a deterministic machine-readable report.

Every check ends as ``pass``, ``fail`` or ``info``. Info checks record known
disagreements between printed reference values and literal evaluation and
never fail a run.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import bounds, multicopy
from . import entropy as ent
from .entropy import EntropyKind
from .fef import DEFAULT_SEED, fef_closed, fef_corr_tensor, fef_optimize
from .linalg import hermitian_eig
from .states import StateSpec, make_state, weyl2_eigenvalues
from .workcost import ThermoContext, genbell_work_gain, werner2_work_gain, work_gain_lower

SUITES = ("table1", "thresholds", "theorems", "identities", "fef_oracle", "entropy", "workcost")

DRAWS = 10_000

# printed reference values
RANK_DEFICIENT_CVNE = {2: 0.666667, 3: 0.241217, 4: 0.0409511, 5: 0.00433229, 6: 0.000349461}
WERNER2_CVNE = 0.747614
ISOTROPIC_CVNE = {2: 0.81071, 6: 0.673671}
ISOTROPIC_CR2E = {2: 0.683013, 6: 0.395243}
NOISY = {
    3: (0.263305, 0.516398, 0.728901),
    4: (0.206292, 0.45399, 0.699086),
    5: (0.174342, 0.415577, 0.685898),
}
STEER_PRINTED = {(2, 7): 0.600034, (6, 2): 0.257221}


@dataclass
class Check:
    suite: str
    name: str
    status: str
    value: object = None
    expected: object = None
    tol: float | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "status": self.status,
            "value": _clean(self.value),
            "expected": _clean(self.expected),
            "tol": self.tol,
            "detail": self.detail,
        }


def _clean(v):
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def _close(suite: str, name: str, value: float, expected: float, tol: float, detail: str = "") -> Check:
    ok = abs(value - expected) <= tol
    return Check(suite, name, "pass" if ok else "fail", value, expected, tol, detail)


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(stream))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QFEF_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    """Ordered map; runs on a thread pool when QFEF_THREADS > 1."""
    items = list(items)
    n = min(_threads(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# rank-deficient thresholds


def suite_table1(seed: int) -> list[Check]:
    out = []
    kind = EntropyKind.renyi(2.0)
    for d, ref in RANK_DEFICIENT_CVNE.items():
        th = bounds.rank_deficient_thresholds(d)
        tol = 1e-5 if d >= 5 else 1e-4
        out.append(_close("table1", f"rank_deficient_cvne_d{d}", th.p_cvne, ref, tol))
        root = bounds.find_threshold(
            lambda p: ent.cond_entropy_closed(StateSpec("rank_deficient", (p,), d), kind), 1e-6, 1.0, 1e-12
        )
        out.append(_close("table1", f"rank_deficient_cr2e_d{d}", root, th.p_cr2e, 1e-9, "bisection vs 2/(d+1)"))
    return out


# ---------------------------------------------------------------------------
# thresholds


def harmonic_oracle(n: int) -> mpmath.mpf:
    with mpmath.workdps(40):
        return mpmath.harmonic(n)


def steer_rhs_oracle(d: int, k: int) -> float:
    with mpmath.workdps(40):
        n = mpmath.mpf(d) ** k
        return float(((1 + n) * (harmonic_oracle(d**k) - 1) - n) / n**2)


def suite_thresholds(seed: int) -> list[Check]:
    s = "thresholds"
    out = [_close(s, "werner2_cvne", bounds.werner2_cvne_threshold(), WERNER2_CVNE, 1e-5)]
    for d, ref in ISOTROPIC_CVNE.items():
        out.append(_close(s, f"isotropic_cvne_d{d}", bounds.isotropic_cvne_threshold(d), ref, 1e-4))
    for d, ref in ISOTROPIC_CR2E.items():
        out.append(_close(s, f"isotropic_cr2e_formula_d{d}", bounds.thm7_threshold(d), ref, 1e-6))
    for d in range(2, 9):
        out.append(
            _close(s, f"thm7_formula_vs_bisection_d{d}", bounds.isotropic_cr2e_threshold_bisect(d), bounds.thm7_threshold(d), 1e-9)
        )
    for d, (ref_nl, ref_r2, ref_vn) in NOISY.items():
        lam = multicopy.schmidt_from_squares(multicopy.REFERENCE_SCHMIDT_SQUARES[d])
        th = multicopy.noisy_thresholds(lam)
        out.append(_close(s, f"noisy_nonlocal_d{d}", th.p_nonlocal, ref_nl, 1e-6))
        out.append(_close(s, f"noisy_cr2e_d{d}", th.p_cr2e, ref_r2, 1e-5))
        out.append(_close(s, f"noisy_cvne_d{d}", th.p_cvne, ref_vn, 1e-4))
        root = bounds.find_threshold(
            lambda p: multicopy.noisy_cond_entropy(lam, p, EntropyKind.renyi(2.0)), 0.0, 1.0, 1e-13
        )
        out.append(_close(s, f"noisy_cr2e_formula_vs_bisection_d{d}", th.p_cr2e, root, 1e-9))
        out.append(
            Check(s, f"noisy_order_d{d}", "pass" if th.p_cvne >= th.p_cr2e >= th.p_nonlocal else "fail",
                  [th.p_nonlocal, th.p_cr2e, th.p_cvne], detail="p_nonlocal <= p_cr2e <= p_cvne")
        )
    for x_name, x in (("pi/16", math.pi / 16), ("pi/8", math.pi / 8), ("pi/4", math.pi / 4)):
        root = bounds.find_threshold(lambda p: multicopy.nonweyl_cr2e(x, p), 0.01, 1.0, 1e-12)
        out.append(_close(s, f"nonweyl_cr2e_x={x_name}", root, 1.0 / math.sqrt(3.0), 1e-6))
    out.append(
        Check(s, "nonweyl_x_star", "info", multicopy.X_STAR, detail="0.5*asin((sqrt(3)-1)/2) in radians")
    )
    worst = 0.0
    for d in range(2, 7):
        for k in range(1, 9):
            got = multicopy.steer_rhs(d, k)
            ref = steer_rhs_oracle(d, k)
            worst = max(worst, abs(got - ref) / abs(ref))
    out.append(Check(s, "steer_rhs_vs_exact_harmonic", "pass" if worst <= 1e-9 else "fail", worst, 0.0, 1e-9,
                     "max relative error, d=2..6, k=1..8"))
    for (d, k), printed in STEER_PRINTED.items():
        val = multicopy.kcopy_steer_threshold(d, k).value
        diff = abs(val - printed)
        out.append(
            Check(s, f"steer_threshold_printed_d{d}_k{k}", "info" if diff <= 7e-3 else "fail", val, printed, 7e-3,
                  "documented discrepancy between literal evaluation and the printed value")
        )
    literal = [multicopy.kcopy_steer_threshold(2, k).value for k in range(1, 11)]
    out.append(Check(s, "steer_min_k_claim_d2", "info", literal,
                     detail="printed claim: k=7 is the minimum number of copies for d=2; literal thresholds for k=1..10"))
    for which in ("cvne", "cr2e"):
        for d, k in ((2, 7), (6, 2)):
            v = multicopy.isotropic_kcopy_verdict(d, k, which)
            out.append(Check(s, f"isotropic_{which}_implies_steer_d{d}_k{k}", "pass" if v.implication_holds else "fail",
                             [v.threshold_F, v.entropy_threshold_F]))
    return out


# ---------------------------------------------------------------------------
# theorems


def _weyl2_draw(rng) -> tuple[float, float, float]:
    while True:
        t = tuple(rng.uniform(-1.0, 1.0, 3).tolist())
        if min(weyl2_eigenvalues(t).values()) >= 0.0:
            return t


def _genbell_draw(rng):
    d = int(rng.integers(2, 5))
    conc = float(rng.uniform(0.05, 1.0))
    probs = rng.dirichlet(np.full(d * d, conc))
    return d, probs


def _group_werner2(rng, n):
    for _ in range(n):
        p = float(rng.uniform(0.0, 1.0))
        alpha = 1.0 + float(rng.uniform(1e-3, 4.0))
        yield bounds.thm1_werner2(p)
        yield from bounds.thm2_thm3_werner2(p, alpha)


def _group_weyl2(rng, n):
    for _ in range(n):
        t = _weyl2_draw(rng)
        yield from bounds.thm4_thm5_weyl2(t)
        yield multicopy.weyl2_kcopy_nonlocal(t)


def _group_isotropic(rng, n):
    for _ in range(n):
        d = int(rng.integers(2, 9))
        yield from bounds.thm6_thm7_isotropic(d, float(rng.uniform(0.0, 1.0)))


def _group_genbell(rng, n):
    for _ in range(n):
        d, probs = _genbell_draw(rng)
        yield from bounds.genbell_bounds(d, probs, 1.0 + float(rng.uniform(1e-3, 3.0)))


def _group_nonweyl(rng, n):
    for _ in range(n):
        x = float(rng.uniform(0.0, math.pi / 4))
        if x == 0.0:
            x = math.pi / 4
        yield multicopy.nonweyl_implication(x, float(rng.uniform(0.0, 1.0)))


def _group_noisy(rng, n):
    vectors = [multicopy.schmidt_from_squares(v) for v in multicopy.REFERENCE_SCHMIDT_SQUARES.values()]
    for i in range(n):
        yield from multicopy.noisy_implications(vectors[i % 3], float(rng.uniform(0.0, 1.0)))


THEOREM_GROUPS = (
    ("werner2", _group_werner2),
    ("weyl2", _group_weyl2),
    ("isotropic", _group_isotropic),
    ("gen_bell", _group_genbell),
    ("non_weyl", _group_nonweyl),
    ("noisy", _group_noisy),
)


def theorem_sweep(seed: int, draws: int = DRAWS) -> dict[str, dict[str, int]]:
    """Per theorem: draws evaluated, hypotheses that held, counterexamples."""

    def run(item):
        idx, (_, gen) = item
        tally: dict[str, dict[str, int]] = {}
        for rep in gen(_rng(seed, 100 + idx), draws):
            t = tally.setdefault(rep.theorem, {"draws": 0, "hypothesis": 0, "counterexamples": 0})
            t["draws"] += 1
            t["hypothesis"] += rep.hypothesis
            t["counterexamples"] += not rep.sound
        return tally

    merged: dict[str, dict[str, int]] = {}
    for tally in _pmap(run, enumerate(THEOREM_GROUPS)):
        merged.update(tally)
    return merged


def suite_theorems(seed: int, draws: int = DRAWS) -> list[Check]:
    out = []
    for name, t in theorem_sweep(seed, draws).items():
        ok = t["counterexamples"] == 0 and t["hypothesis"] > 0
        out.append(Check("theorems", name, "pass" if ok else "fail", t, detail="zero counterexamples, hypothesis exercised"))
    return out


# ---------------------------------------------------------------------------
# identities


def identity_grid(d: int) -> dict[str, list[float]]:
    grids = {"case1": np.linspace(1.0 / d, 1.0, 100).tolist()}
    if d % 2 == 0:
        grids["case2"] = np.linspace(-1.0, 1.0 / d, 100, endpoint=False).tolist()
    return grids


def suite_identities(seed: int) -> list[Check]:
    out = []
    for d in range(2, 7):
        worst: dict[str, float] = {}
        notes: dict[str, float] = {}
        for xs in identity_grid(d).values():
            for x in xs:
                for alpha in (1.5, 2.0, 3.0):
                    for rep in bounds.werner_d_identities(d, x, alpha):
                        bucket = notes if rep.theorem.startswith("note") else worst
                        bucket[rep.theorem] = max(bucket.get(rep.theorem, 0.0), rep.residual)
        for thm in sorted(worst):
            r = worst[thm]
            out.append(Check("identities", f"{thm}_d{d}", "pass" if r <= bounds.IDENTITY_TOL else "fail", r, 0.0,
                             bounds.IDENTITY_TOL, "max residual over the x-grid, alpha in {1.5, 2, 3}"))
        for note in sorted(notes):
            out.append(Check("identities", f"{note}_d{d}", "info", notes[note], 0.0, None,
                             "F = 2^(-S(A|B))/d at the endpoint"))
        if d % 2 == 1:
            try:
                bounds.werner_d_identities(d, 0.0, 2.0)
                status = "fail"
            except bounds.BoundsError:
                status = "pass"
            out.append(Check("identities", f"odd_case2_rejected_d{d}", status))
    return out


# ---------------------------------------------------------------------------
# fef oracle


FEF_FIXTURES = (
    StateSpec("werner2", (0.2,)),
    StateSpec("werner2", (0.8,)),
    StateSpec("werner2", (1.0,)),
    StateSpec("weyl2", (0.8, -0.5, 0.4)),
    StateSpec("weyl2", (0.3, 0.2, 0.1)),
    StateSpec("weyl2", (-0.6, -0.3, -0.2)),
    StateSpec("weyl2", (0.5, 0.3, 0.1)),
    StateSpec("isotropic", (0.9,), 2),
    StateSpec("gen_bell", (0.7, 0.1, 0.1, 0.1), 2),
    StateSpec("gen_bell", (0.1, 0.2, 0.3, 0.4), 2),
    StateSpec("werner_d", (-0.4,), 2),
    StateSpec("werner_d", (0.6,), 2),
    StateSpec("isotropic", (0.6,), 3),
    StateSpec("isotropic", (0.05,), 3),
    StateSpec("werner_d", (-1.0,), 3),
    StateSpec("werner_d", (0.0,), 3),
    StateSpec("werner_d", (0.7,), 3),
    StateSpec("gen_bell", (0.62, 0.1, 0.08, 0.05, 0.05, 0.04, 0.03, 0.02, 0.01), 3),
    StateSpec("gen_bell", (0.05, 0.05, 0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1), 3),
    StateSpec("isotropic", (0.45,), 4),
    StateSpec("isotropic", (0.02,), 4),
    StateSpec("werner_d", (-0.5,), 4),
    StateSpec("werner_d", (0.8,), 4),
    StateSpec("gen_bell", tuple([0.4] + [0.04] * 15), 4),
    StateSpec("isotropic", (0.3,), 5),
    StateSpec("werner_d", (-0.7,), 5),
    StateSpec("werner_d", (0.1,), 5),
    StateSpec("werner_d", (0.5,), 5),
    StateSpec("gen_bell", tuple([0.28] + [0.03] * 24), 5),
    StateSpec("gen_bell", tuple([0.01] * 12 + [0.76] + [0.01] * 12), 5),
)


def fef_tolerance(d: int) -> float:
    return 1e-4 if d <= 3 else 5e-4


def random_weyl2(seed: int, n: int = 50) -> list[tuple[float, float, float]]:
    rng = _rng(seed, 7)
    return [_weyl2_draw(rng) for _ in range(n)]


def suite_fef_oracle(seed: int) -> list[Check]:
    s = "fef_oracle"

    def fixture(spec):
        closed = fef_closed(spec).value
        opt = fef_optimize(make_state(spec), seed=seed)
        tol = fef_tolerance(spec.d)
        ok = closed - tol <= opt.value <= closed + 1e-6
        return Check(s, spec.to_text(), "pass" if ok else "fail", opt.value, closed, tol,
                     f"optimizer restarts={opt.restarts_used} converged={opt.converged}")

    out = _pmap(fixture, FEF_FIXTURES)

    ts = random_weyl2(seed)

    def weyl(t):
        rho = make_state(StateSpec("weyl2", t))
        return fef_corr_tensor(rho).value, fef_optimize(rho, seed=seed).value, t

    worst, plain_over, positive = 0.0, 0.0, 0
    for ct, opt, t in _pmap(weyl, ts):
        worst = max(worst, abs(ct - opt))
        if t[0] * t[1] * t[2] > 0:
            positive += 1
        plain_over = max(plain_over, (1.0 + sum(abs(x) for x in t)) / 4.0 - opt)
    out.append(Check(s, "weyl2_corr_tensor_vs_optimizer", "pass" if worst <= 1e-4 else "fail", worst, 0.0, 1e-4,
                     f"{len(ts)} random positive weyl2 states"))
    out.append(Check(s, "weyl2_plain_trace_norm_overshoot", "info", plain_over, detail=(
        f"(1 + Tr|T|)/4 minus optimum, max over the same draws; {positive} draws have det T > 0")))

    # states with non-zero local Bloch vectors
    worst_nw = 0.0
    for x in (math.pi / 16, math.pi / 8, math.pi / 4):
        for p in (0.3, 0.7, 1.0):
            rho = make_state(StateSpec("non_weyl", (x, p)))
            worst_nw = max(worst_nw, abs(fef_corr_tensor(rho).value - fef_optimize(rho, seed=seed).value))
    out.append(Check(s, "non_weyl_corr_tensor_vs_optimizer", "pass" if worst_nw <= 1e-4 else "fail", worst_nw, 0.0, 1e-4))
    return out


# ---------------------------------------------------------------------------
# entropy


def random_family_spec(rng) -> StateSpec:
    fam = ("werner2", "weyl2", "isotropic", "werner_d", "rank_deficient", "gen_bell", "non_weyl", "noisy_schmidt")
    f = fam[int(rng.integers(len(fam)))]
    d = int(rng.integers(2, 5))
    if f == "werner2":
        return StateSpec(f, (float(rng.uniform()),))
    if f == "weyl2":
        return StateSpec(f, _weyl2_draw(rng))
    if f == "isotropic":
        return StateSpec(f, (float(rng.uniform()),), d)
    if f == "werner_d":
        return StateSpec(f, (float(rng.uniform(-1, 1)),), d)
    if f == "rank_deficient":
        return StateSpec(f, (float(rng.uniform(1e-3, 1.0)),), d)
    if f == "gen_bell":
        return StateSpec(f, tuple(rng.dirichlet(np.full(d * d, 0.5)).tolist()), d)
    if f == "non_weyl":
        return StateSpec(f, (float(rng.uniform(1e-3, math.pi / 4)), float(rng.uniform())))
    lam = rng.uniform(0.1, 1.0, d)
    lam = lam / np.linalg.norm(lam)
    return StateSpec(f, tuple(lam.tolist()) + (float(rng.uniform()),), d)


CLOSED_PAIRS = (
    ("werner2", EntropyKind.von_neumann()),
    ("werner2", EntropyKind.renyi(2.5)),
    ("weyl2", EntropyKind.renyi(2.0)),
    ("isotropic", EntropyKind.von_neumann()),
    ("isotropic", EntropyKind.renyi(2.0)),
    ("werner_d", EntropyKind.von_neumann()),
    ("werner_d", EntropyKind.renyi(1.7)),
    ("rank_deficient", EntropyKind.von_neumann()),
    ("rank_deficient", EntropyKind.renyi(2.0)),
    ("gen_bell", EntropyKind.von_neumann()),
    ("gen_bell", EntropyKind.renyi(3.0)),
)


def _closed_family_spec(rng, family: str) -> StateSpec:
    while True:
        spec = random_family_spec(rng)
        if spec.family == family:
            return spec


def suite_entropy(seed: int, n_states: int = 1000, n_closed: int = 20) -> list[Check]:
    s = "entropy"
    out = []
    rng = _rng(seed, 200)
    specs = [random_family_spec(rng) for _ in range(n_states)]

    def spectra(spec):
        rho = make_state(spec)
        return rho.spectrum(), hermitian_eig(rho.reduced("B"))

    pairs = _pmap(spectra, specs)
    mismatches = 0
    for w_ab, w_b in pairs:
        for a in (1.5, 2.0, 3.0):
            r = ent.cond_entropy_from_spectra(w_ab, w_b, EntropyKind.renyi(a))
            t = ent.cond_entropy_from_spectra(w_ab, w_b, EntropyKind.tsallis(a))
            sr = 0 if abs(r) <= 1e-12 else (1 if r > 0 else -1)
            st = 0 if abs(t) <= 1e-12 else (1 if t > 0 else -1)
            mismatches += sr != st
    out.append(Check(s, "renyi_tsallis_sign_agreement", "pass" if mismatches == 0 else "fail", mismatches, 0, None,
                     f"{n_states} random states, alpha in (1.5, 2, 3)"))

    gap = 0.0
    for w_ab, _ in pairs[:200]:
        vn = ent.spectrum_entropy(w_ab)
        for a in (1.0 - 1e-4, 1.0 + 1e-4):
            gap = max(gap, abs(ent.spectrum_entropy(w_ab, EntropyKind.renyi(a)) - vn))
    out.append(Check(s, "renyi_vn_limit", "pass" if gap <= 1e-3 else "fail", gap, 0.0, 1e-3, "alpha = 1 +/- 1e-4"))

    rng2 = _rng(seed, 201)
    for fam, kind in CLOSED_PAIRS:
        worst = 0.0
        for _ in range(n_closed):
            spec = _closed_family_spec(rng2, fam)
            worst = max(worst, abs(ent.cond_entropy_closed(spec, kind) - ent.cond_entropy(make_state(spec), kind)))
        label = kind.kind if kind.kind == "vonNeumann" else f"renyi{kind.alpha:g}"
        out.append(Check(s, f"closed_vs_spectral_{fam}_{label}", "pass" if worst <= 1e-9 else "fail", worst, 0.0, 1e-9))
    return out


# ---------------------------------------------------------------------------
# workcost


def suite_workcost(seed: int, n: int = 1000) -> list[Check]:
    s = "workcost"
    ctx = ThermoContext.natural()
    worst = -math.inf
    for p in np.linspace(1.0 / 3.0, 1.0, n + 1)[1:]:
        p = float(p)
        wg = werner2_work_gain(p, ctx).value
        chain = work_gain_lower(ent.cond_entropy_closed(StateSpec("werner2", (p,))), ctx)
        worst = max(worst, wg - chain)
    out = [Check(s, "werner2_chain", "pass" if worst <= 1e-9 else "fail", worst, 0.0, 1e-9,
                 f"max of bound minus -CVNE kT ln2 over {n} points in (1/3, 1]")]
    rng = _rng(seed, 300)
    worst, used = -math.inf, 0
    while used < n:
        d, probs = _genbell_draw(rng)
        res = genbell_work_gain(d, probs, ctx)
        if not res.in_premise:
            continue
        used += 1
        chain = work_gain_lower(ent.cond_entropy_closed(StateSpec("gen_bell", tuple(probs), d)), ctx)
        worst = max(worst, res.value - chain)
    out.append(Check(s, "genbell_chain", "pass" if worst <= 1e-9 else "fail", worst, 0.0, 1e-9,
                     f"{n} random simplex draws with F > 1/d"))
    return out


SUITE_FUNCS = {
    "table1": suite_table1,
    "thresholds": suite_thresholds,
    "theorems": suite_theorems,
    "identities": suite_identities,
    "fef_oracle": suite_fef_oracle,
    "entropy": suite_entropy,
    "workcost": suite_workcost,
}


@dataclass
class Report:
    seed: int
    suites: list[str]
    checks: list[Check] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        c = {"pass": 0, "fail": 0, "info": 0}
        for ch in self.checks:
            c[ch.status] += 1
        return c

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "suites": self.suites,
            "ok": self.ok,
            "summary": self.counts,
            "checks": [c.to_json() for c in self.checks],
        }


def run_suites(suite: str = "all", seed: int = DEFAULT_SEED) -> Report:
    names = list(SUITES) if suite == "all" else [suite]
    for n in names:
        if n not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {n!r}; expected one of {', '.join(SUITES)} or all")
    report = Report(seed, names)
    for n in names:
        report.checks.extend(SUITE_FUNCS[n](seed))
    return report

"""Command-line front end: analyze, sweep, fef and verify."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import bounds, fef, multicopy, workcost
from . import entropy as ent
from .bounds import BoundsError
from .entropy import EntropyKind
from .states import FAMILIES, QUBIT_FAMILIES, StateError, StateSpec, make_state, param_names, parse_params
from .verification import DEFAULT_SEED, SUITES, run_suites

EXIT_OK = 0
EXIT_INVALID_STATE = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

SEED_MAX = 2**64 - 1
SIG_DIGITS = 17
STEER_KMAX = 10

SWEEP_HEADER = (
    "param",
    "cvne",
    "crae_alpha",
    "cr2e",
    "fef",
    "fef_gt_half",
    "fef_gt_inv_d",
    "cvne_cross",
    "cr2e_cross",
    "fef_cross",
)


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v <= SEED_MAX:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2^64 - 1], got {v}")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _alpha(text: str) -> float:
    v = float(text)
    if not math.isfinite(v) or v <= 0 or v == 1.0:
        raise argparse.ArgumentTypeError(f"alpha must be > 0 and != 1, got {text}")
    return v


def _num(x):
    """JSON-safe float: non-finite values become null."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def spec_from_args(args) -> StateSpec:
    if args.spec:
        if args.family or args.params:
            raise UsageError("--spec cannot be combined with --family/--params")
        try:
            return StateSpec.parse(args.spec)
        except StateError as exc:
            raise UsageError(str(exc)) from exc
    if not args.family or args.params is None:
        raise UsageError("need --family and --params, or --spec")
    d = args.d if args.d is not None else 2
    if args.family in QUBIT_FAMILIES and d != 2:
        raise UsageError(f"family {args.family!r} is two-qubit only")
    try:
        params = parse_params(args.params)
    except StateError as exc:
        raise UsageError(str(exc)) from exc
    return StateSpec(args.family, params, d)


# ---------------------------------------------------------------------------
# analyze


def entropies(rho, alpha: float) -> dict:
    return {
        "cvne": ent.cond_entropy(rho),
        "crae_alpha": ent.cond_entropy(rho, EntropyKind.renyi(alpha)),
        "cr2e": ent.cond_entropy(rho, EntropyKind.renyi(2.0)),
        "ctae_alpha": ent.cond_entropy(rho, EntropyKind.tsallis(alpha)),
        "alpha": alpha,
    }


def fef_values(spec: StateSpec, rho, seed: int, restarts: int) -> dict:
    out = {}
    try:
        out["closed"] = fef.fef_closed(spec).value
    except fef.FefError:
        pass
    if rho.dims == (2, 2):
        out["corr_tensor"] = fef.fef_corr_tensor(rho).value
    if rho.dA == rho.dB:
        res = fef.fef_optimize(rho, restarts=restarts, seed=seed)
        out["optimized"] = res.value
        out["optimized_converged"] = res.converged
        out["restarts"] = res.restarts_used
    return out


def _best_fef(values: dict) -> float | None:
    for key in ("closed", "corr_tensor", "optimized"):
        if key in values:
            return values[key]
    return None


def bound_reports(spec: StateSpec, alpha: float) -> list:
    f, d, ps = spec.family, spec.d, spec.params
    if f == "werner2":
        return [bounds.thm1_werner2(ps[0]), *bounds.thm2_thm3_werner2(ps[0], alpha)]
    if f == "weyl2":
        return [*bounds.thm4_thm5_weyl2(ps), multicopy.weyl2_kcopy_nonlocal(ps)]
    if f == "isotropic":
        return bounds.thm6_thm7_isotropic(d, ps[0])
    if f == "werner_d":
        try:
            return bounds.werner_d_identities(d, ps[0], alpha)
        except BoundsError:
            return []
    if f == "gen_bell":
        return bounds.genbell_bounds(d, ps, alpha)
    if f == "non_weyl":
        return [multicopy.nonweyl_implication(ps[0], ps[1])]
    if f == "noisy_schmidt":
        return multicopy.noisy_implications(ps[:-1], ps[-1])
    return []


def multicopy_info(spec: StateSpec, fef_value: float | None) -> dict:
    f, d, ps = spec.family, spec.d, spec.params
    out: dict = {}
    if fef_value is not None:
        out["min_k_steerable"] = multicopy.min_k_steerable(d, min(max(fef_value, 0.0), 1.0), STEER_KMAX)
        out["steer_thresholds"] = [
            {"k": k, "value": t.value, "rhs": t.rhs, "informative": t.informative}
            for k in range(1, 4)
            for t in [multicopy.kcopy_steer_threshold(d, k)]
        ]
    if f == "isotropic":
        out["verdicts"] = [
            multicopy.isotropic_kcopy_verdict(d, k, which).to_json() for which in ("cvne", "cr2e") for k in (1, 2, 3)
        ]
    elif f == "non_weyl":
        out["nonweyl_thresholds"] = multicopy.nonweyl_thresholds(ps[0])._asdict()
    elif f == "noisy_schmidt":
        out["noisy_thresholds"] = multicopy.noisy_thresholds(ps[:-1])._asdict()
    elif f == "rank_deficient":
        th = bounds.rank_deficient_thresholds(d)
        out["rank_deficient_thresholds"] = {"p_cvne": th.p_cvne, "p_cr2e": th.p_cr2e, "p_tele": th.p_tele}
    return out


def workcost_info(spec: StateSpec, cvne: float) -> dict:
    ctx = workcost.ThermoContext.natural()
    out = {"units": "natural (k = T = 1)", "lower": workcost.work_gain_lower(cvne, ctx)}
    if spec.family == "werner2":
        out["werner2"] = workcost.werner2_work_gain(spec.params[0], ctx).to_json()
    elif spec.family == "gen_bell":
        out["gen_bell"] = workcost.genbell_work_gain(spec.d, spec.params, ctx).to_json()
    return out


def analyze(spec: StateSpec, alpha: float = 2.0, seed: int = DEFAULT_SEED, restarts: int = fef.DEFAULT_RESTARTS) -> dict:
    rho = make_state(spec)
    ents = entropies(rho, alpha)
    fv = fef_values(spec, rho, seed, restarts)
    return {
        "spec": spec.to_text(),
        "eigenvalues": [float(w) for w in rho.spectrum()],
        "entropies": ents,
        "fef": fv,
        "bounds": [b.to_json() for b in bound_reports(spec, alpha)],
        "multicopy": multicopy_info(spec, _best_fef(fv)),
        "workcost": workcost_info(spec, ents["cvne"]),
    }


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2) + "\n"


def _text_lines(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines += _text_lines(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines += _text_lines(v, f"{prefix}{i}.")
    else:
        v = format(obj, f".{SIG_DIGITS}g") if isinstance(obj, float) else obj
        lines.append(f"{prefix.rstrip('.')}: {v}")
    return lines


def render(obj, fmt: str) -> str:
    if fmt == "json":
        return dumps(obj)
    return "\n".join(_text_lines(_clean(obj))) + "\n"


# ---------------------------------------------------------------------------
# sweep


def sweep_spec(template: StateSpec, name: str, value: float) -> StateSpec:
    names = param_names(template.family, template.d)
    if name not in names:
        raise UsageError(f"family {template.family!r} has parameters {names}, not {name!r}")
    params = list(template.params)
    params[names.index(name)] = value
    return StateSpec(template.family, tuple(params), template.d)


def sweep_fef(spec: StateSpec, rho, seed: int, restarts: int) -> float:
    try:
        return fef.fef_closed(spec).value
    except fef.FefError:
        pass
    if rho.dims == (2, 2):
        return fef.fef_corr_tensor(rho).value
    return fef.fef_optimize(rho, restarts=restarts, seed=seed).value


def sweep(template: StateSpec, name: str, lo: float, hi: float, steps: int, alpha: float = 2.0,
          seed: int = DEFAULT_SEED, restarts: int = fef.DEFAULT_RESTARTS) -> list[tuple]:
    """Rows in SWEEP_HEADER order; the cross flags mark a change from the previous row."""
    if steps < 2:
        raise UsageError(f"steps must be >= 2, got {steps}")
    if not lo < hi:
        raise UsageError(f"need from < to, got {lo} and {hi}")
    d = template.d
    rows = []
    prev = None
    for value in np.linspace(lo, hi, steps):
        spec = sweep_spec(template, name, float(value))
        rho = make_state(spec)
        cvne = ent.cond_entropy(rho)
        crae = ent.cond_entropy(rho, EntropyKind.renyi(alpha))
        cr2e = ent.cond_entropy(rho, EntropyKind.renyi(2.0))
        fv = sweep_fef(spec, rho, seed, restarts)
        flags = (cvne < 0, cr2e < 0, fv > 1.0 / d)
        cross = (0, 0, 0) if prev is None else tuple(int(a != b) for a, b in zip(flags, prev))
        prev = flags
        rows.append((float(value), cvne, crae, cr2e, fv, int(fv > 0.5), int(flags[2]), *cross))
    return rows


def _cell(x) -> str:
    return format(x, f".{SIG_DIGITS}g") if isinstance(x, float) else str(x)


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for r in rows:
        w.writerow([_cell(x) for x in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# verify


def verify_text(report) -> str:
    lines = [f"seed {report.seed}; suites {', '.join(report.suites)}"]
    for c in report.checks:
        lines.append(f"{c.status.upper():4} {c.suite}/{c.name}: {_cell(c.value) if c.value is not None else '-'}")
    counts = report.counts
    lines.append(f"pass {counts['pass']}, fail {counts['fail']}, info {counts['info']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _state_args(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--d", type=int, default=None, help="local dimension (default 2)")
    p.add_argument("--params", help="comma-separated parameters")
    p.add_argument("--spec", help="full state spec, e.g. 'isotropic:d=3:params=[0.6]'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfef", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--out", help="write output here instead of stdout")

    a = sub.add_parser("analyze", parents=[common], help="full report for one state")
    _state_args(a)
    a.add_argument("--alpha", type=_alpha, default=2.0)
    a.add_argument("--restarts", type=_positive_int, default=fef.DEFAULT_RESTARTS)
    a.add_argument("--format", choices=("json", "text"), default="json")

    s = sub.add_parser("sweep", parents=[common], help="CSV of entropies and FEF along one parameter")
    _state_args(s)
    s.add_argument("--param", required=True)
    s.add_argument("--from", dest="lo", type=float, required=True)
    s.add_argument("--to", dest="hi", type=float, required=True)
    s.add_argument("--steps", type=int, default=101)
    s.add_argument("--alpha", type=_alpha, default=2.0)
    s.add_argument("--restarts", type=_positive_int, default=fef.DEFAULT_RESTARTS)

    f = sub.add_parser("fef", parents=[common], help="fully entangled fraction by each available method")
    _state_args(f)
    f.add_argument("--restarts", type=_positive_int, default=fef.DEFAULT_RESTARTS)
    f.add_argument("--format", choices=("json", "text"), default="json")

    v = sub.add_parser("verify", parents=[common], help="run the verification suites")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _run(args) -> int:
    if args.command == "verify":
        report = run_suites(args.suite, args.seed)
        text = dumps(report.to_json()) if args.format == "json" else verify_text(report)
        _emit(text, args.out)
        return EXIT_OK if report.ok else EXIT_VERIFY_FAILED

    spec = spec_from_args(args)
    if args.command == "analyze":
        _emit(render(analyze(spec, args.alpha, args.seed, args.restarts), args.format), args.out)
    elif args.command == "fef":
        rho = make_state(spec)
        _emit(render({"spec": spec.to_text(), "fef": fef_values(spec, rho, args.seed, args.restarts)}, args.format),
              args.out)
    else:
        rows = sweep(spec, args.param, args.lo, args.hi, args.steps, args.alpha, args.seed, args.restarts)
        _emit(sweep_csv(rows), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except StateError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

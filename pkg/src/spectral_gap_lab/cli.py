"""spectral-gap-lab: solve, quantization, sweep, verify-bounds, fit-exponent.

Exit codes: 0 ok, 2 invalid config, 3 hypothesis violation, 4 convergence
failure, 5 bound violation (verify-bounds only).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import stepsolver
from .bounds import fit_exponent
from .eigensolver import ConvergenceError, solve_extrapolated
from .potentials import InvalidSpecError, PotentialSpec, validate_hypotheses, validate_shape
from .svgplot import loglog_svg
from .sweep import default_jobs, geometric_grid, run_sweep, write_csv

EXIT_OK, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_CONVERGENCE, EXIT_VIOLATION = 0, 2, 3, 4, 5

SPEC_KEYS = ("kind", "b", "height", "eps", "gamma")
DEFAULTS = {"kind": "step", "b": 0.5, "height": 1.0, "eps": None, "gamma": None,
            "L": 50.0, "L_min": 50.0, "L_max": 1600.0, "points": 9, "tol": 1e-9}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    spec: PotentialSpec
    L: float
    L_min: float
    L_max: float
    points: int
    tol: float
    jobs: int

    @property
    def L_values(self) -> list[float]:
        return geometric_grid(self.L_min, self.L_max, self.points)


def _merged(args) -> dict:
    values = dict(DEFAULTS)
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        unknown = set(data) - set(DEFAULTS) - {"jobs"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for key in list(DEFAULTS) + ["jobs"]:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return values


def build_config(args) -> RunConfig:
    v = _merged(args)
    try:
        kind = str(v["kind"]).lower()
        height = 0.0 if kind == "zero" else float(v["height"])
        gamma = v["gamma"]
        if gamma is None:
            gamma = height / 2 if height > 0 else 0.5
        spec = PotentialSpec.from_dict({"kind": kind, "b": v["b"], "height": height,
                                        "eps": v["eps"], "gamma": gamma})
        validate_shape(spec)
        L, L_min, L_max = float(v["L"]), float(v["L_min"]), float(v["L_max"])
        points, tol = int(v["points"]), float(v["tol"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if not (L > 0 and math.isfinite(L)):
        raise ConfigError("L must be positive")
    if not 0 < L_min < L_max:
        raise ConfigError("need 0 < L_min < L_max")
    if points < 2:
        raise ConfigError("points must be at least 2")
    if not tol > 0:
        raise ConfigError("tol must be positive")
    jobs = v.get("jobs")
    jobs = default_jobs() if jobs is None else int(jobs)
    return RunConfig(spec, L, L_min, L_max, points, tol, max(1, jobs))


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_solve(cfg: RunConfig) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = solve_extrapolated(cfg.spec, cfg.L, cfg.tol)
    out = {"L": cfg.L, "potential": cfg.spec.to_dict(), **res.to_dict()}
    _emit(out)
    if not res.converged:
        print("error: extrapolation did not converge", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_quantization(cfg: RunConfig) -> int:
    try:
        prob = stepsolver.StepProblem(cfg.L, cfg.spec.b, cfg.spec.height)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    try:
        root = stepsolver.solve_ground(prob)
    except stepsolver.BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    _emit({"L": cfg.L, "c": prob.c, "vtilde": prob.vtilde, "l1": prob.l1, "l2": prob.l2,
           "separation": math.pi / 2 - root.omega0 * prob.l1, **root.to_dict()})
    return EXIT_OK


def _sweep(cfg: RunConfig):
    return run_sweep(cfg.spec, cfg.L_values, cfg.tol, cfg.jobs)


def cmd_sweep(cfg: RunConfig, out: str | None, svg: str | None) -> int:
    rows = _sweep(cfg)
    records = [rec for rec, _ in rows]
    if out:
        write_csv(records, out)
    else:
        from .sweep import records_to_csv
        sys.stdout.write(records_to_csv(records))
    if svg:
        Ls = [r.L for r in records]
        series = {"gap": [r.gap for r in records],
                  "kirsch": [r.kirsch_rhs for r in records],
                  "lemma": [r.lemma_rhs for r in records],
                  "theorem": [r.theorem_rhs for r in records]}
        text = loglog_svg({k: (Ls, ys) for k, ys in series.items()},
                          title=f"{cfg.spec.kind.value} potential", xlabel="L",
                          ylabel="gap and lower bounds")
        Path(svg).write_text(text, encoding="utf-8")
    return EXIT_OK if all(r.converged for r in records) else EXIT_CONVERGENCE


def cmd_verify_bounds(cfg: RunConfig) -> int:
    hyp = validate_hypotheses(cfg.spec)
    rows = _sweep(cfg)
    checked = dominated = gated_out = 0
    violations = []
    for rec, rep in rows:
        if rep.lemma_rhs is None:
            gated_out += 1
        else:
            checked += 1
            if rep.violations:
                violations.append({"L": rec.L, "failed": rep.violations})
            else:
                dominated += 1
    summary = {"potential": cfg.spec.to_dict(), "hypotheses": hyp.to_dict(),
               "rows": len(rows), "checked": checked, "dominated": dominated,
               "gated_out": gated_out, "violations": violations,
               "kirsch_violations": sum(not rep.dominated_kirsch for _, rep in rows),
               "converged": all(rec.converged for rec, _ in rows)}
    _emit(summary)
    if not hyp.lemma_ok:
        print("error: potential does not satisfy the bound hypotheses", file=sys.stderr)
        return EXIT_HYPOTHESIS
    if violations or summary["kirsch_violations"]:
        return EXIT_VIOLATION
    if not summary["converged"]:
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_fit_exponent(cfg: RunConfig) -> int:
    rows = _sweep(cfg)
    try:
        fit = fit_exponent([rec for rec, _ in rows])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _emit(fit.to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spectral-gap-lab",
                                 description="Neumann spectral gap of 1D Schrodinger operators.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--kind", choices=["step", "trapezoid", "bump", "zero"])
    common.add_argument("--b", type=float)
    common.add_argument("--height", type=float)
    common.add_argument("--eps", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--jobs", type=int, help="worker threads (default: $SGL_JOBS or cores)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common])
    p.add_argument("--L", type=float)
    p = sub.add_parser("quantization", parents=[common])
    p.add_argument("--L", type=float)
    for name in ("sweep", "verify-bounds", "fit-exponent"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--L-min", dest="L_min", type=float)
        p.add_argument("--L-max", dest="L_max", type=float)
        p.add_argument("--points", type=int)
        if name == "sweep":
            p.add_argument("--out", help="CSV path (default: stdout)")
            p.add_argument("--svg", help="optional log-log plot path")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = build_config(args)
        if args.command == "solve":
            return cmd_solve(cfg)
        if args.command == "quantization":
            return cmd_quantization(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.out, args.svg)
        if args.command == "verify-bounds":
            return cmd_verify_bounds(cfg)
        return cmd_fit_exponent(cfg)
    except (ConfigError, InvalidSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())

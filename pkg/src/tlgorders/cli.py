"""Command-line entry point.

Exit status: 0 when every check passes, 1 when a property suite or figure
disagrees with its expected outcome, 2 on usage or configuration errors.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .errors import DomainError
from .harness.config import COMMANDS, RunConfig
from .harness.figures import FIGURE_IDS, reproduce_figure
from .harness.gof import monte_carlo_gof
from .harness.suites import THEOREM_IDS, implication_audit, theorem_property_suite
from .orders import build_grid, check_hazard_rate, check_likelihood_ratio, check_usual_stochastic
from .systems import SystemSpec, make_system, system_cdf, system_hazard, system_pdf, system_survival
from .baseline import exponential
from .tlg import TLGParams

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# flags whose CLI value overrides the config file when given
_OVERRIDES = {
    "id": None,
    "trials": "trials",
    "seed": "seed",
    "grid_count": "grid_count",
    "q_lo": "q_lo",
    "q_hi": "q_hi",
    "out": "output_path",
    "n_samples": "n_samples",
    "x": "x",
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlgorders", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, grid=True):
        p.add_argument("--config", help="JSON RunConfig file; explicit flags override it")
        p.add_argument("--out", help="output file")
        if grid:
            p.add_argument("--grid-count", type=int)
            p.add_argument("--q-lo", type=float)
            p.add_argument("--q-hi", type=float)

    p = sub.add_parser("figure", help="write the data behind one figure as CSV")
    p.add_argument("--id", choices=FIGURE_IDS)
    common(p)

    p = sub.add_parser("theorem", help="run a seeded randomized property suite")
    p.add_argument("--id", choices=THEOREM_IDS + ("all",))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    common(p, grid=False)

    p = sub.add_parser("gof", help="Monte-Carlo goodness of fit of a system cdf")
    p.add_argument("--n-samples", type=int)
    p.add_argument("--seed", type=int)
    common(p, grid=False)

    p = sub.add_parser("eval", help="evaluate cdf/survival/pdf/hazard of a system")
    p.add_argument("--x", type=float, nargs="+")
    common(p, grid=False)

    p = sub.add_parser("compare", help="check st/hr/lr orders between two systems")
    common(p)
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig(command=args.command)
    if cfg.command != args.command:
        raise DomainError(f"config is for {cfg.command!r}, not {args.command!r}")
    for flag, attr in _OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is None:
            continue
        if flag == "id":
            attr = "figure_id" if args.command == "figure" else "theorem_id"
        setattr(cfg, attr, value)
    return cfg.validate()


def _system(data) -> SystemSpec:
    if data is None:
        return make_system([1.0, 1.0], 1.0, exponential(1.0), "series")
    if "components" in data:
        return SystemSpec.from_dict(data)
    return SystemSpec((TLGParams.from_dict(data),), "series")


def _write(path, text, out) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if cfg.command == "figure":
        fig = reproduce_figure(cfg.figure_id, grid_count=cfg.grid_count, q_lo=cfg.q_lo, q_hi=cfg.q_hi)
        _write(cfg.output_path, fig.to_csv(), out)
        status = "matches" if fig.matches_expected else "CONTRADICTS"
        print(f"{fig.figure_id}: {status} expected shape; verdict={json.dumps(fig.verdict.to_dict())}",
              file=sys.stderr)
        return EXIT_OK if fig.matches_expected else EXIT_FAIL

    if cfg.command == "theorem":
        ids = THEOREM_IDS if cfg.theorem_id == "all" else (cfg.theorem_id,)
        print(f"seed={cfg.seed}", file=out)
        reports = [theorem_property_suite(t, trials=cfg.trials, seed=cfg.seed) for t in ids]
        for rep in reports:
            print(rep.summary(), file=out)
        audit = implication_audit(reports)
        print(f"implication audit: {'PASS' if not audit else 'FAIL'} ({len(audit)} inconsistent records)", file=out)
        if cfg.output_path:
            payload = {"config": cfg.to_dict(), "version": __version__,
                       "suites": [r.to_dict() for r in reports], "implication_audit": audit}
            _write(cfg.output_path, json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
        return EXIT_OK if all(r.passed for r in reports) and not audit else EXIT_FAIL

    if cfg.command == "gof":
        s = _system(cfg.system)
        rep = monte_carlo_gof(s, n_samples=cfg.n_samples, seed=cfg.seed)
        print(f"seed={cfg.seed}", file=out)
        text = json.dumps({"system": s.to_dict(), **rep.to_dict()}, indent=2, sort_keys=True) + "\n"
        _write(cfg.output_path, text, out)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if cfg.command == "eval":
        s = _system(cfg.system)
        x = np.asarray(cfg.x or [0.5, 1.0, 2.0], dtype=float)
        buf = io.StringIO()
        buf.write("x,cdf,survival,pdf,hazard\n")
        cols = [system_cdf(s, x), system_survival(s, x), system_pdf(s, x), system_hazard(s, x)]
        for row in zip(x.tolist(), *(np.asarray(c).tolist() for c in cols)):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        _write(cfg.output_path, buf.getvalue(), out)
        return EXIT_OK

    # compare
    sx, sy = _system(cfg.system), _system(cfg.system_y)
    grid = build_grid([sx, sy], q_lo=cfg.q_lo, q_hi=cfg.q_hi, count=cfg.grid_count)
    verdicts = {
        "st": check_usual_stochastic(sx, sy, grid).to_dict(),
        "hr": check_hazard_rate(sx, sy, grid).to_dict(),
        "lr": check_likelihood_ratio(sx, sy, grid).to_dict(),
    }
    payload = {"grid": grid.metadata(), "verdicts": verdicts}
    _write(cfg.output_path, json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = _config(args)
        return run(cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

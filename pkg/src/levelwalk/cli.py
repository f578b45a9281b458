"""Command line: ``levelwalk {two-level,multi,simulate,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import multi_level as ml
from . import two_level as tl
from .errors import RangeError, SimulationError, WalkError
from .oracle.dp import ModelTag
from .oracle.mc import mc_simulate
from .oracle.verify import verify
from .params import validate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_params(parser: argparse.ArgumentParser) -> None:
    for name in ("p", "q", "r", "s"):
        parser.add_argument(f"--{name}", type=float, required=True)


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")


def _add_range(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-min", type=int, default=-20)
    parser.add_argument("--n-max", type=int, default=20)


def _model(text: str) -> ModelTag:
    if text == "multi":
        return ModelTag.MULTI_LEVEL
    try:
        return ModelTag(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown model {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="levelwalk", description="Absorbing multi-level lattice walks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    two = sub.add_parser("two-level", help="closed forms for the two-level walk")
    _add_params(two)
    _add_range(two)
    _add_format(two)

    multi = sub.add_parser("multi", help="closed forms for the unbounded ladder")
    _add_params(multi)
    _add_range(multi)
    multi.add_argument("--m-max", type=int, default=10)
    _add_format(multi)

    sim = sub.add_parser("simulate", help="seeded Monte Carlo absorption tally")
    sim.add_argument("--model", type=_model, default=ModelTag.TWO_LEVEL,
                     help="two-level or multi-level (alias: multi)")
    _add_params(sim)
    sim.add_argument("--trials", type=int, default=1_000_000)
    sim.add_argument("--seed", type=int, default=42)
    sim.add_argument("--workers", type=int, default=1)
    _add_format(sim)

    ver = sub.add_parser("verify", help="check every closed form against both oracles")
    _add_params(ver)
    ver.add_argument("--tol-abs", type=float, default=1e-8)
    ver.add_argument("--tol-rel", type=float, default=1e-6)
    ver.add_argument("--trials", type=int, default=1_000_000)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--workers", type=int, default=1)
    return parser


def _sites(args) -> range:
    if args.n_min > args.n_max:
        raise RangeError(f"--n-min {args.n_min} exceeds --n-max {args.n_max}")
    return range(args.n_min, args.n_max + 1)


def _csv(header: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(row[h]) for h in header])
    return buf.getvalue()


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def two_level_document(params, sites) -> dict:
    rows = []
    for n in sites:
        f = tl.visit_count(params, 0, n)
        g = tl.visit_count(params, 1, n)
        rows.append({"n": n, "f": f, "g": g, "sf": params.s * f, "sg": params.s * g})
    split = tl.layer_absorption(params)
    paper, gf = tl.layer_value_paper(params), tl.layer_value_gf(params)
    summary = {
        "pi0": split.pi0,
        "pi1": split.pi1,
        "F1": tl.gf_F(params, 1.0),
        "G1": tl.gf_G(params, 1.0),
        "v_paper": {"v0": paper.v0, "v1": paper.v1},
        "v_gf": {"v0": gf.v0, "v1": gf.v1},
        "payoff_paper": tl.payoff_paper(params),
        "payoff_printed": tl.payoff_printed(params),
    }
    return {"params": params.as_dict(), "summary": summary, "rows": rows}


def multi_document(params, sites, m_max: int) -> dict:
    if not 0 <= m_max <= ml.MAX_VISIT_LAYER:
        raise RangeError(f"--m-max {m_max} outside [0, {ml.MAX_VISIT_LAYER}]")
    rows = []
    for m in range(m_max + 1):
        for n in sites:
            f = ml.visit_count_multi(params, n, m)
            rows.append({"n": n, "m": m, "f": f, "sf": params.s * f})
    layers = range(m_max + 1)
    summary = {
        "pi_m": [ml.pi_m(params, m) for m in layers],
        "alpha_m": [ml.alpha_m(params, m) for m in layers],
        "v_paper": [ml.v_m_paper(params, m).value for m in layers],
        "v_gf": [ml.v_m_gf(params, m).value for m in layers],
        "payoff_paper": ml.payoff_paper_multi(params),
    }
    return {"params": params.as_dict(), "summary": summary, "rows": rows}


def simulate_document(params, result) -> dict:
    summary = {
        "model": result.model.value,
        "trials": result.trials,
        "seed": result.seed,
        "mean_position": result.mean_position,
        "mean_layer": result.mean_layer,
    }
    rows = [{"n": n, "m": m, "count": c} for (n, m), c in result.absorption_counts.items()]
    return {"params": params.as_dict(), "summary": summary, "rows": rows}


def verify_document(report) -> dict:
    summary = {
        "overall_pass": report.overall_pass,
        "n_checks": len(report.checks),
        "n_match": len(report.checks) - len(report.failures()),
        "n_mismatch": len(report.failures()),
        "n_informational": len(report.informational),
        **report.meta,
    }
    return {
        "params": report.params.as_dict(),
        "summary": summary,
        "checks": [r.as_dict() for r in report.checks],
        "informational": [r.as_dict() for r in report.informational],
    }


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        params = validate(args.p, args.q, args.r, args.s)
        if args.command == "two-level":
            doc = two_level_document(params, _sites(args))
            header = ["n", "f", "g", "sf", "sg"]
        elif args.command == "multi":
            doc = multi_document(params, _sites(args), args.m_max)
            header = ["n", "m", "f", "sf"]
        elif args.command == "simulate":
            result = mc_simulate(args.model, params, args.trials, args.seed, workers=args.workers)
            doc = simulate_document(params, result)
            header = ["n", "m", "count"]
        else:
            report = verify(params, args.tol_abs, args.tol_rel, args.trials, args.seed, workers=args.workers)
            out.write(_json(verify_document(report)))
            return EXIT_OK if report.overall_pass else EXIT_FAIL
    except WalkError as exc:
        print(f"levelwalk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimulationError as exc:
        print(f"levelwalk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    if args.format == "csv":
        out.write(_csv(header, doc["rows"]))
    else:
        out.write(_json(doc))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

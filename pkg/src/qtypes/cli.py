"""Command-line entry point: ``qtypes <command> [options] [files]``.

Exit codes: 0 success, 1 other error, 2 parse error, 3 degenerate sampling,
4 a law failed under ``verify``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .catlin import build_cylinder, catlin_q_estimate, catlin_q_hypersurface, slice_cylinder, tau_slice
from .contact import LinearSlice, q_positivity
from .dangelo import delta1_bounds, delta1_monomial, deltaq_sampled_inf, tilde_deltaq
from .errors import DegenerateSamplingError, QTypesError
from .local import is_zero_dimensional, multiplicity, standard_basis
from .parse import ParseError, parse, parse_poly, parse_vector
from .report import SCHEMA_VERSION, dumps
from .sampling import SliceSampler
from .verify import verify_corpus

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_DEGENERATE, EXIT_VIOLATION = 0, 1, 2, 3, 4

COMMANDS = ("mult", "delta1", "deltaq", "tdeltaq", "catlinq", "cylinder", "slice", "qpos", "verify")


@dataclass(frozen=True)
class SessionConfig:
    seed: int = 0
    samples: int = 100
    truncation: int = 64
    budget: int = 8
    coefficient_range: int = 10000
    output_format: str = "structured"

    def __post_init__(self):
        for name in ("samples", "truncation", "budget", "coefficient_range"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.output_format not in ("text", "structured"):
            raise ValueError("format must be 'text' or 'structured'")

    def sampler(self, q: int = 2) -> SliceSampler:
        return SliceSampler(self.seed, self.samples, self.coefficient_range, q)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _doc(path: str):
    return parse(_read(path))


def _need_q(args) -> int:
    if args.q is None:
        raise ValueError("this command needs --q")
    return args.q


def _slice(args, variables) -> LinearSlice:
    if not args.forms:
        raise ValueError("this command needs at least one --forms expression")
    return LinearSlice(tuple(parse_poly(f, variables) for f in args.forms))


def _directrix(args, n: int):
    if not args.directrix:
        raise ValueError("this command needs at least one --directrix column")
    cols = [parse_vector(v) for v in args.directrix]
    if any(len(c) != n for c in cols):
        raise ValueError(f"directrix columns need {n} entries")
    return [[c[i] for c in cols] for i in range(n)]


def run(command: str, args, config: SessionConfig) -> tuple[dict, int]:
    """Dispatch one command; returns the result payload and the exit status."""
    if command == "mult":
        I = _doc(args.inputs[0]).ideal()
        sb = standard_basis(I)
        return {
            "invariant": "multiplicity",
            "value": multiplicity(I),
            "zero_dimensional": is_zero_dimensional(I),
            "standard_basis": [str(b) for b in sb.basis],
            "order": sb.order_spec,
        }, EXIT_OK
    if command == "delta1":
        I = _doc(args.inputs[0]).ideal()
        if I.is_monomial():
            budget = max(config.budget, max(g.degree for g in I.local_generators))
            report, method = delta1_monomial(I, budget), "monomial"
        else:
            report, method = delta1_bounds(I, config.budget), "bounds"
        return {"invariant": "delta1", "method": method, "value": report.lower, "report": report}, EXIT_OK
    if command in ("deltaq", "tdeltaq"):
        I = _doc(args.inputs[0]).ideal()
        q = _need_q(args)
        fn = deltaq_sampled_inf if command == "deltaq" else tilde_deltaq
        report = fn(I, q, config.sampler(q), config.budget, workers=args.workers)
        name = "deltaq_sampled_inf" if command == "deltaq" else "tilde_deltaq"
        return {"invariant": name, "q": q, "value": report.value, "report": report}, EXIT_OK
    if command == "catlinq":
        doc = _doc(args.inputs[0])
        q = _need_q(args)
        if doc.kind == "hypersurface":
            report = catlin_q_hypersurface(doc.hypersurface(), q, config.sampler(q), min(config.budget, 4))
        else:
            report = catlin_q_estimate(doc.ideal(), q, config.sampler(q), config.budget, workers=args.workers)
        return {"invariant": "catlin_q_estimate", "q": q, "value": report.value, "report": report}, EXIT_OK
    if command == "cylinder":
        curve = _doc(args.inputs[0]).curve(config.truncation)
        U = _directrix(args, curve.nvars)
        q = args.q if args.q is not None else len(U[0]) + 1
        C = build_cylinder(curve, U, q)
        return {"invariant": "cylinder", "cylinder": C, "postconditions": C.postconditions()}, EXIT_OK
    if command == "slice":
        doc = _doc(args.inputs[0])
        curve = doc.curve(config.truncation)
        U = _directrix(args, curve.nvars)
        C = build_cylinder(curve, U, len(U[0]) + 1)
        S = _slice(args, doc.variables)
        out = {"invariant": "slice", "intersection": slice_cylinder(C, S)}
        if args.ideal:
            tau = tau_slice(_doc(args.ideal).ideal(), C, S)
            out["tau"] = tau
            out["value"] = tau.tau_ideal
        return out, EXIT_OK
    if command == "qpos":
        if len(args.inputs) != 2:
            raise ValueError("qpos needs a curve file and a hypersurface file")
        cdoc, hdoc = _doc(args.inputs[0]), _doc(args.inputs[1])
        report = q_positivity(cdoc.curve(config.truncation), hdoc.hypersurface(), _slice(args, hdoc.variables))
        return {"invariant": "q_positivity", "report": report}, EXIT_OK
    if command == "verify":
        if not args.corpus:
            raise ValueError("verify needs --corpus")
        report = verify_corpus(args.corpus, config.sampler(), config.budget)
        return {"invariant": "verify", "report": report}, EXIT_OK if report.ok else EXIT_VIOLATION
    raise ValueError(f"unknown command {command!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtypes", description="Finite-type invariants of ideals and hypersurfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="input documents ('-' reads standard input)")
    p.add_argument("--q", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--truncation", type=int, default=64)
    p.add_argument("--range", dest="coefficient_range", type=int, default=10000)
    p.add_argument("--format", dest="output_format", choices=("text", "structured"), default="structured")
    p.add_argument("--corpus")
    p.add_argument("--directrix", action="append", help="a directrix column such as '0,0,1' (repeatable)")
    p.add_argument("--forms", action="append", help="a slice form such as 'z3 - z1' (repeatable)")
    p.add_argument("--ideal", help="ideal document for 'slice' to measure tau")
    p.add_argument("--workers", type=int, default=1, help="worker processes for per-sample work")
    return p


def _text(payload: dict) -> str:
    result = payload.get("result", {})
    if "error" in payload:
        err = payload["error"]
        return f"error [{err['code']}]: {err['message']}"
    lines = []
    if "value" in result:
        lines.append(f"{result['invariant']}: {result['value']}")
    report = result.get("report")
    if report is not None and hasattr(report, "frequency"):
        lines.append(
            f"statistic={report.statistic} frequency={report.frequency} samples={report.samples_used} "
            f"rejected={report.rejected} exact={report.exact}"
        )
    if result.get("invariant") == "verify":
        r = report.to_json()
        for row in r["results"]:
            lines.append(f"{row['status']:8} {row['law']:28} {row['instance']}")
        for row in r["excluded"]:
            lines.append(f"{'excluded':8} {row['law']:28} {row['reason']}")
        lines.append(f"counts: {r['counts']}")
    if not lines:
        lines.append(dumps(result))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    payload = {"schema": SCHEMA_VERSION, "command": args.command}
    try:
        config = SessionConfig(
            args.seed, args.samples, args.truncation, args.budget, args.coefficient_range, args.output_format
        )
        payload["config"] = asdict(config)
        if args.command != "verify" and not args.inputs:
            raise ValueError(f"{args.command} needs an input document")
        result, status = run(args.command, args, config)
        payload["result"] = result
    except ParseError as exc:
        payload["error"] = {"code": exc.code, "message": exc.message, "line": exc.line, "column": exc.column}
        status = EXIT_PARSE
    except DegenerateSamplingError as exc:
        payload["error"] = {"code": exc.code, "message": str(exc)}
        status = EXIT_DEGENERATE
    except (QTypesError, ValueError, OSError) as exc:
        payload["error"] = {"code": getattr(exc, "code", "error"), "message": str(exc)}
        status = EXIT_ERROR
    if args.output_format == "text":
        print(_text(payload))
    else:
        print(dumps(payload))
    return status


if __name__ == "__main__":
    sys.exit(main())

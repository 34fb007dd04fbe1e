"""Command-line interface: ``cubecover <subcommand> ...``.

Exit codes: 0 success, 1 negative mathematical result (not a cover, not a
tautology, search failed), 2 input error, 3 unsupported case, 4 capacity.
With ``--json`` every result (and every error) is a single JSON object on
stdout that embeds a run manifest.  Input files may be ``-`` for stdin.
"""

from __future__ import annotations

import argparse
import enum
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .boolean import (
    boolean_mndr_check,
    bound_table,
    dnf_coverage,
    format_dnf,
    is_distinct_dnf,
    is_exact_dnf,
    is_tautology,
    parse_dnf,
    pigeonhole_tautology,
)
from .boxcover import ComparisonMode, box_cover_check, max_feasible_codimension, parse_box_file, symmetric_tail
from .congruence import (
    density,
    is_distinct,
    is_exact,
    parse_system,
    top_moduli_check,
    verify_cover,
    znam_multiplicity_check,
)
from .crt import class_to_subbox, factorize, system_cover_equivalence
from .errors import DEFAULT_LCM_CAP, CapacityError, ContractViolation, ParseError, UnsupportedCase
from .search import SearchConfig, Status, certify, search_distinct, search_uniform

OK, NEGATIVE, INPUT_ERROR, UNSUPPORTED, CAPACITY = 0, 1, 2, 3, 4
TEXT_UNCOVERED_SHOWN = 20


@dataclass
class RunManifest:
    subcommand: str
    args: dict
    inputs: dict = field(default_factory=dict)
    version: str = __version__
    seed: int | None = None
    elapsed_s: float = 0.0


class _Run:
    """Per-invocation state: the manifest and the input reader that digests files."""

    def __init__(self, args):
        self.args = args
        self.manifest = RunManifest(args.command, _jsonable_args(args), seed=getattr(args, "seed", None))

    def read(self, path):
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            data = Path(path).read_bytes()
        self.manifest.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")


def _jsonable_args(args):
    out = {}
    for key, value in vars(args).items():
        if key in ("func", "command"):
            continue
        out[key] = value.value if isinstance(value, enum.Enum) else value
    return out


def _fraction(q):
    return str(q)


# -- subcommands ----------------------------------------------------------------

def cmd_verify_covsys(run):
    a = run.args
    system = parse_system(run.read(a.path), lcm_cap=a.max_lcm)
    report = verify_cover(system)
    exact, distinct = is_exact(system), is_distinct(system)
    top = znam = None
    if report.is_cover and exact:
        top = top_moduli_check(system)._asdict()
        if system.lcm > 1:
            znam = znam_multiplicity_check(system)._asdict()
    payload = {
        "classes": len(system),
        "report": report.to_json(),
        "is_exact": exact,
        "is_distinct": distinct,
        "density": density(system),
        "top_moduli": top,
        "znam": znam,
    }
    lines = [
        f"system: {system}",
        f"lcm: {system.lcm}",
        f"covering: {'yes' if report.is_cover else 'no'}",
        f"distinct moduli: {'yes' if distinct else 'no'}",
        f"exact: {'yes' if exact else 'no'}",
        f"density sum M/m_i: {payload['density']} (M = {system.lcm})",
        "multiplicity histogram: " + ", ".join(
            f"{k}:{v}" for k, v in sorted(report.multiplicity_histogram.items())),
    ]
    if not report.is_cover:
        shown = ", ".join(str(int(x)) for x in report.uncovered[:TEXT_UNCOVERED_SHOWN])
        more = " ..." if report.uncovered_total > TEXT_UNCOVERED_SHOWN else ""
        lines.append(f"uncovered ({report.uncovered_total}): {shown}{more}")
    if report.duplicate_classes:
        lines.append(f"duplicate classes: {report.duplicate_classes}")
    if top is not None:
        lines.append(f"two largest moduli equal: {top['holds']}"
                     + (f" ({top['degenerate']})" if top["degenerate"] else ""))
    if znam is not None:
        lines.append(f"largest modulus occurs {znam['multiplicity']} times, "
                     f"smallest prime of lcm {znam['p']}: {'holds' if znam['holds'] else 'fails'}")
    return (OK if report.is_cover else NEGATIVE), payload, lines


def cmd_crt_map(run):
    a = run.args
    system = parse_system(run.read(a.path), lcm_cap=a.max_lcm)
    fac = factorize(system.lcm)
    fac.require_squarefree()
    rows, lines = [], [f"M = {fac.value} = {fac}", f"box radices: {list(fac.primes)}"]
    for cls in system.classes:
        sb = class_to_subbox(cls, fac)
        by_prime = {str(fac.primes[i]): v for i, v in sb.fixed}
        rows.append({
            "residue": cls.residue,
            "modulus": cls.modulus,
            "fixed": sb.to_json()["fixed"],
            "fixed_by_prime": by_prime,
            "points": sb.point_count,
        })
        pins = ", ".join(f"p={p}->{v}" for p, v in by_prime.items()) or "(full box)"
        lines.append(f"{cls.residue} mod {cls.modulus}: {pins}")
    equivalent = system_cover_equivalence(system) if a.check else None
    if equivalent is not None:
        lines.append(f"integer scan and box scan agree: {equivalent}")
    code = OK if equivalent in (None, True) else NEGATIVE
    return code, {"M": fac.value, "radices": list(fac.primes), "subboxes": rows,
                  "equivalent": equivalent}, lines


def cmd_dnf_check(run):
    dnf = parse_dnf(run.read(run.args.path))
    _, missing = dnf_coverage(dnf)
    taut, exact, distinct = missing == 0, is_exact_dnf(dnf), is_distinct_dnf(dnf)
    mndr = boolean_mndr_check(dnf)._asdict() if (taut and exact) else None
    payload = {
        "n": dnf.n,
        "terms": len(dnf),
        "is_tautology": taut,
        "is_exact": exact,
        "is_distinct": distinct,
        "min_size": dnf.min_size,
        "uncovered_count": missing,
        "mndr": mndr,
    }
    lines = [
        f"n = {dnf.n}, {len(dnf)} terms, min size {dnf.min_size}",
        f"tautology: {'yes' if taut else 'no'} ({missing} of {1 << dnf.n} vertices uncovered)",
        f"distinct supports: {'yes' if distinct else 'no'}",
        f"exact: {'yes' if exact else 'no'}",
    ]
    if mndr is not None:
        lines.append(f"largest term size {mndr['max_size']} occurs {mndr['multiplicity']} times")
    return (OK if taut else NEGATIVE), payload, lines


def cmd_dnf_construct(run):
    a = run.args
    dnf = pigeonhole_tautology(a.n, a.t)
    text = format_dnf(dnf)
    if a.out:
        Path(a.out).write_text(text)
    payload = {"n": a.n, "t": a.t, "terms": len(dnf), "min_size": dnf.min_size,
               "output": a.out, "dnf": dnf.to_json()}
    lines = [f"wrote {len(dnf)} terms to {a.out}"] if a.out else text.splitlines()
    return OK, payload, lines


def cmd_bounds(run):
    a = run.args
    table = bound_table(a.table, a.max_n, a.mode)
    rows = [{"n": n, "value": v, "tail": _fraction(t), "tail_float": float(t)}
            for n, v, t in table.rows()]
    notes = []
    if table.kind == "A" and a.max_n >= 1:
        notes.append("n = 1 is reported as 0: at k = 1 the tail is 1/2 and fails; "
                     "tables listing 1 there count x1 | !x1, whose two terms share a support")
    label = "k" if table.kind == "A" else "m"
    lines = [f"table {table.kind} ({table.mode.value} comparison)", f"{'n':>3} {label:>3}  tail"]
    lines += [f"{r['n']:>3} {r['value']:>3}  {r['tail']}" for r in rows]
    lines += [f"note: {s}" for s in notes]
    return OK, {"table": table.kind, "mode": table.mode.value, "rows": rows, "notes": notes}, lines


def cmd_search(run):
    a = run.args
    uniform = a.uniform is not None
    config = SearchConfig(
        n=a.n,
        size=a.uniform if uniform else a.min_size,
        uniform=uniform,
        strategy=a.strategy,
        time_limit=a.budget,
        node_limit=a.node_limit,
        seed=a.seed,
        workers=a.workers,
        force_search=a.force_search,
    )
    outcome = (search_uniform if uniform else search_distinct)(config)
    certified = certify(outcome) if outcome.status is Status.TAUTOLOGY else None
    if a.witness:
        Path(a.witness).write_text(format_dnf(outcome.best))
    payload = {"outcome": outcome.to_json(), "certified": certified,
               "witness_path": a.witness, "outcome_path": a.outcome}
    problem = f"uniform size {config.size}" if uniform else f"min size {config.size}"
    lines = [
        f"n = {config.n}, {problem}, strategy {config.strategy.value}",
        f"status: {outcome.status.value}" + (f" ({outcome.proof})" if outcome.proof else ""),
        f"uncovered: {outcome.uncovered_count} of {1 << config.n}",
        f"terms: {len(outcome.best)}, nodes: {outcome.nodes_explored}, "
        f"time: {outcome.elapsed:.3f} s, source: {outcome.source}",
    ]
    if a.witness:
        lines.append(f"witness written to {a.witness}")
    return (OK if outcome.status is Status.TAUTOLOGY else NEGATIVE), payload, lines


def cmd_box_check(run):
    a = run.args
    box, subboxes = parse_box_file(run.read(a.path))
    report = box_cover_check(box, subboxes)
    tail = clears = None
    if report.min_fixed is not None:
        value, clears = symmetric_tail(box, report.min_fixed, a.mode)
        tail = _fraction(value)
    codim = max_feasible_codimension(box, a.mode)
    payload = {
        "radices": list(box.radices),
        "subboxes": len(subboxes),
        "report": report.to_json(),
        "mode": ComparisonMode.coerce(a.mode).value,
        "density_tail": tail,
        "density_clears": clears,
        "max_feasible_codimension": codim,
    }
    lines = [
        f"box {list(box.radices)}, {len(subboxes)} sub-boxes",
        f"covering: {'yes' if report.is_cover else 'no'} ({report.uncovered_count} points uncovered)",
        f"non-parallel: {'yes' if report.non_parallel else 'no'}",
    ]
    if report.parallel_violations:
        lines.append(f"parallel pairs: {report.parallel_violations}")
    if tail is not None:
        lines.append(f"min fixed coordinates {report.min_fixed}, density tail {tail} "
                     f"({'clears' if clears else 'fails'} 1)")
    lines.append(f"largest feasible codimension for a non-parallel cover: {codim}")
    return (OK if report.is_cover else NEGATIVE), payload, lines


# -- argument parsing -----------------------------------------------------------

def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object on stdout")

    lcm = argparse.ArgumentParser(add_help=False)
    lcm.add_argument("--max-lcm", type=_positive_int, default=DEFAULT_LCM_CAP,
                     help="refuse systems whose lcm exceeds this (default 2^32)")

    parser = argparse.ArgumentParser(prog="cubecover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-covsys", parents=[common, lcm],
                       help="decide whether a congruence system covers the integers")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify_covsys)

    p = sub.add_parser("crt-map", parents=[common, lcm],
                       help="translate a square-free system into sub-boxes of a prime box")
    p.add_argument("path")
    p.add_argument("--check", action="store_true", help="cross-check coverage in both pictures")
    p.set_defaults(func=cmd_crt_map)

    p = sub.add_parser("dnf-check", parents=[common], help="analyse a DNF file")
    p.add_argument("path")
    p.set_defaults(func=cmd_dnf_check)

    p = sub.add_parser("dnf-construct", parents=[common],
                       help="write the threshold construction for (n, t)")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_dnf_construct)

    p = sub.add_parser("bounds", parents=[common], help="print the A or B density bound table")
    p.add_argument("--table", choices=["A", "B", "a", "b"], required=True)
    p.add_argument("--max-n", type=_positive_int, default=14)
    p.add_argument("--mode", choices=["weak", "strict"], default="weak")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", parents=[common], help="search for a distinct DNF tautology")
    p.add_argument("--n", type=_positive_int, required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--min-size", type=int, help="every term has at least this many literals")
    target.add_argument("--uniform", type=int, help="every term has exactly this many literals")
    p.add_argument("--budget", type=float, default=60.0, help="wall-clock limit in seconds")
    p.add_argument("--node-limit", type=_positive_int, default=10_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=["greedy", "backtracking", "exhaustive"],
                   default="backtracking")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--force-search", action="store_true",
                   help="search even when the threshold construction already meets the target")
    p.add_argument("--witness", help="write the best DNF found to this file")
    p.add_argument("--outcome", help="write the outcome JSON to this file")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("box-check", parents=[common], help="check a sub-box cover file")
    p.add_argument("path")
    p.add_argument("--mode", choices=["weak", "strict"], default="weak")
    p.set_defaults(func=cmd_box_check)
    return parser


def _error_code(exc):
    if isinstance(exc, CapacityError):
        return CAPACITY
    if isinstance(exc, UnsupportedCase):
        return UNSUPPORTED
    if isinstance(exc, (ParseError, ContractViolation, ValueError, OSError)):
        return INPUT_ERROR
    return None


def _emit(obj, stream=None):
    json.dump(obj, stream or sys.stdout, indent=2)
    (stream or sys.stdout).write("\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    run = _Run(args)
    start = time.perf_counter()
    try:
        code, payload, lines = args.func(run)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        code = _error_code(exc)
        if code is None:
            raise
        run.manifest.elapsed_s = time.perf_counter() - start
        print(f"cubecover {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        if args.json:
            _emit({"manifest": asdict(run.manifest), "error": {
                "type": type(exc).__name__,
                "message": str(exc),
                "exit_code": code,
                "line": getattr(exc, "lineno", None),
            }})
        return code
    run.manifest.elapsed_s = time.perf_counter() - start
    document = {"manifest": asdict(run.manifest), **payload}
    outcome_path = getattr(args, "outcome", None)
    if outcome_path:
        with open(outcome_path, "w") as fh:
            _emit(document, fh)
    if args.json:
        _emit(document)
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    raise SystemExit(main())

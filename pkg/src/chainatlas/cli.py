"""Command line interface.

Subcommands::

    component      invariants, weight table and classification of one component
    enumerate      all valid components for fixed (n, d, g)
    multiplicity   closed-form multiplicity report for one component
    euler-pairing  restriction pairing of a full-flag chain against a component
    sweep          stream records over ranges of (n, d, g)
    selftest       run the acceptance criteria

Exit codes: 0 success, 1 invalid input or I/O failure, 2 selftest
failure.  Worker count for ``sweep`` comes from the ``CHAINATLAS_WORKERS``
environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext
from typing import Optional

from .components import (
    classification_to_json,
    classify,
    delta_bounds,
    descriptor_to_json,
    dim_fixed,
    dim_z,
    enumerate_components,
    generic_h0,
    in_wobbly_divisor_range,
    is_valid,
    make_component,
    toledo_bound_check,
    weight_table,
    wobbly_divisor_range,
)
from .euler import (
    ChainPoint,
    W0_MODES,
    epsilon,
    fiber_weight,
    m_EF,
    m_FE,
)
from .exactpoly import (
    eval_at_one,
    expand,
    factored_from_json,
    factored_to_json,
    format_factored,
)
from .multiplicity import mult_report_row
from .selftest import format_result, run_all
from .sweep import SweepConfig, render_expansion, sweep, write_records

FORMATS = ("json", "csv", "md")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here is 1
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_chain(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"chain must be a comma-separated integer list, got {text!r}")


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected INT or LO:HI, got {text!r}")


def _component_from_args(p: _Parser, args: argparse.Namespace):
    """Build and validate a component from --n0/--n1/--delta/--g [--d]."""
    n = args.n0 + args.n1
    if args.d is not None:
        # recover d0 from the requested total degree
        base = 2 * args.n0 * args.n1 * (args.g - 1)
        num = args.delta + args.n0 * args.d - base
        if num % n != 0:
            p.error(
                f"delta={args.delta} is not realized at degree d={args.d}: "
                f"no integer splitting exists"
            )
        d0 = num // n
        c = make_component(args.n0, args.n1, d0, args.d - d0, args.g)
    else:
        from .components import component_with_delta

        try:
            c = component_with_delta(args.n0, args.n1, args.delta, args.g)
        except ValueError as exc:
            p.error(str(exc))
    if not is_valid(c):
        lo, hi = delta_bounds(*(sorted((args.n0, args.n1), reverse=True)), args.g)
        p.error(
            f"no valid component with (n0,n1)=({args.n0},{args.n1}), delta={args.delta}, "
            f"g={args.g}; the delta window is [{lo}, {hi}]"
        )
    return c


def _out_stream(path: Optional[str]):
    if path is None:
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8")


def _emit(records: list[dict], fmt: str, path: Optional[str]) -> None:
    with _out_stream(path) as stream:
        write_records(iter(records), fmt, stream)


def _add_component_flags(p: _Parser) -> None:
    p.add_argument("--n0", type=int, required=True, help="rank of the lower summand")
    p.add_argument("--n1", type=int, required=True, help="rank of the upper summand")
    p.add_argument("--delta", type=int, required=True, help="component invariant delta")
    p.add_argument("--g", type=int, required=True, help="genus, at least 2")
    p.add_argument("--d", type=int, default=None, help="optional total degree to realize")


def _add_output_flags(p: _Parser) -> None:
    p.add_argument("--format", choices=FORMATS, default="json", help="output format")
    p.add_argument("--out", default=None, metavar="PATH", help="write to PATH instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="chainatlas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("component", help="describe one component")
    _add_component_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("enumerate", help="list valid components at fixed (n, d, g)")
    p.add_argument("--n", type=int, required=True, help="total rank")
    p.add_argument("--d", type=int, required=True, help="total degree")
    p.add_argument("--g", type=int, required=True, help="genus, at least 2")
    _add_output_flags(p)

    p = sub.add_parser("multiplicity", help="closed-form multiplicity report")
    _add_component_flags(p)
    p.add_argument(
        "--max-expanded-terms",
        type=int,
        default=10_000,
        help="suppress the expanded form above this many terms",
    )
    _add_output_flags(p)

    p = sub.add_parser("euler-pairing", help="pair a full-flag chain against a component")
    _add_component_flags(p)
    p.add_argument(
        "--chain",
        type=_parse_chain,
        required=True,
        metavar="m0,m1,...",
        help="divisor degrees of the chain, one entry per rank step",
    )
    p.add_argument("--w0-mode", choices=W0_MODES, default="equation", dest="w0_mode")
    p.add_argument(
        "--mf",
        default=None,
        metavar="PATH",
        help="factored multiplicity document for the chain side of the reverse pairing",
    )
    p.add_argument("--max-expanded-terms", type=int, default=10_000)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="stream records over ranges of (n, d, g)")
    p.add_argument("--n", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--d", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--g", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument(
        "--outputs",
        default="classification",
        help="comma-separated subset of classification,multiplicity,euler",
    )
    p.add_argument(
        "--chain",
        type=_parse_chain,
        action="append",
        default=None,
        metavar="m0,m1,...",
        help="chain to pair in euler output; repeatable, matched by length to the rank",
    )
    p.add_argument("--w0-mode", choices=W0_MODES, default="equation", dest="w0_mode")
    p.add_argument("--max-expanded-terms", type=int, default=10_000)
    p.add_argument("--start-index", type=int, default=0, help="resume from this record index")
    _add_output_flags(p)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument(
        "--only",
        default=None,
        metavar="LIST",
        help="comma-separated criterion numbers, default all",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, metavar="PATH")

    return parser


def cmd_component(p: _Parser, args: argparse.Namespace) -> int:
    c = _component_from_args(p, args)
    wt = weight_table(c)
    record = {
        "component": descriptor_to_json(c),
        "toledo_bound_ok": toledo_bound_check(c),
        "dim_fixed": dim_fixed(c),
        "dim_down": dim_z(c),
        "generic_h0": generic_h0(c),
        "wobbly_divisor_range": list(wobbly_divisor_range(*_std_pair(c), c.g)),
        "in_wobbly_divisor_range": in_wobbly_divisor_range(c),
        "weight_table": {
            "t_plus": [list(pair) for pair in wt.t_plus],
            "base": [list(pair) for pair in wt.base],
        },
        "classification": classification_to_json(classify(c)),
    }
    _emit([record], args.format, args.out)
    return 0


def _std_pair(c) -> tuple[int, int]:
    s = c.standard()
    return s.n0, s.n1


def cmd_enumerate(p: _Parser, args: argparse.Namespace) -> int:
    if args.n < 2:
        p.error("--n must be at least 2")
    if args.g < 2:
        p.error("--g must be at least 2")
    records = [{"component": descriptor_to_json(c)} for c in enumerate_components(args.n, args.d, args.g)]
    _emit(records, args.format, args.out)
    return 0


def cmd_multiplicity(p: _Parser, args: argparse.Namespace) -> int:
    c = _component_from_args(p, args)
    row = mult_report_row(c)
    from .multiplicity import m_E_closed

    row["m_E_expanded"] = render_expansion(expand(m_E_closed(c)), args.max_expanded_terms)
    _emit([row], args.format, args.out)
    return 0


def cmd_euler_pairing(p: _Parser, args: argparse.Namespace) -> int:
    c = _component_from_args(p, args)
    n = c.n
    if len(args.chain) != n:
        p.error(f"--chain needs exactly {n} entries for rank {n}, got {len(args.chain)}")
    if any(v < 0 for v in args.chain):
        p.error("--chain entries must be nonnegative")
    F = ChainPoint(n, c.g, args.chain)
    pairing = m_FE(c, F, args.w0_mode)
    n0 = _std_pair(c)[0]
    at_one = eval_at_one(pairing)
    record = {
        "component": descriptor_to_json(c),
        "chain": list(args.chain),
        "w0_mode": args.w0_mode,
        "epsilon": str(epsilon(c, F, args.w0_mode)),
        "fiber_weights": [str(fiber_weight(i, n, n0, args.w0_mode)) for i in range(n)],
        "m_FE": format_factored(pairing),
        "m_FE_expanded": render_expansion(expand(pairing), args.max_expanded_terms),
        "m_FE_at_1": None if at_one is None else str(at_one),
    }
    if args.mf is not None:
        try:
            with open(args.mf, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            m_F = factored_from_json(doc)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            p.error(f"cannot read factored multiplicity from {args.mf}: {exc}")
        reverse = m_EF(c, F, m_F, args.w0_mode)
        record["m_F"] = format_factored(m_F)
        record["m_EF"] = format_factored(reverse)
        record["m_EF_expanded"] = render_expansion(expand(reverse), args.max_expanded_terms)
        record["m_EF_factored"] = factored_to_json(reverse)
    _emit([record], args.format, args.out)
    return 0


def cmd_sweep(p: _Parser, args: argparse.Namespace) -> int:
    outputs = tuple(s.strip() for s in args.outputs.split(",") if s.strip())
    chains = tuple(args.chain) if args.chain else ()
    if "euler" in outputs and not chains:
        p.error("--outputs euler requires at least one --chain")
    try:
        cfg = SweepConfig(
            n_range=args.n,
            d_range=args.d,
            g_range=args.g,
            outputs=outputs,
            chains=chains,
            w0_mode=args.w0_mode,
            max_expanded_terms=args.max_expanded_terms,
        )
        records = sweep(cfg, start_index=args.start_index)
        with _out_stream(args.out) as stream:
            write_records(records, args.format, stream)
    except ValueError as exc:
        p.error(str(exc))
    return 0


def cmd_selftest(p: _Parser, args: argparse.Namespace) -> int:
    numbers: Optional[tuple[int, ...]] = None
    if args.only:
        try:
            numbers = tuple(int(s) for s in args.only.split(","))
        except ValueError:
            p.error(f"--only must be a comma-separated list of 1..7, got {args.only!r}")
        if any(k not in range(1, 8) for k in numbers):
            p.error("--only entries must be between 1 and 7")
    results = run_all(numbers)
    with _out_stream(args.out) as stream:
        if args.format == "json":
            payload = [
                {
                    "number": r.number,
                    "name": r.name,
                    "passed": r.passed,
                    "duration_seconds": round(r.duration, 3),
                    "budget_seconds": r.budget,
                    "evidence": r.evidence,
                }
                for r in results
            ]
            json.dump(payload, stream, indent=2, sort_keys=True)
            stream.write("\n")
        else:
            for r in results:
                stream.write(format_result(r) + "\n")
    return 0 if all(r.passed for r in results) else 2


HANDLERS = {
    "component": cmd_component,
    "enumerate": cmd_enumerate,
    "multiplicity": cmd_multiplicity,
    "euler-pairing": cmd_euler_pairing,
    "sweep": cmd_sweep,
    "selftest": cmd_selftest,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.command](parser, args)
    except SystemExit:
        raise
    except ValueError as exc:
        print(f"chainatlas: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"chainatlas: i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

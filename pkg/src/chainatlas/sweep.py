"""Deterministic sweeps over ranges of (n, d, g) with streamed records.

A sweep walks the cells of a rank/degree/genus box in lexicographic
order, enumerates the valid components of each cell, and emits one
record per component per requested output kind.  Records carry a global
``index`` and the stream order never depends on worker count, so a
consumer can resume from any index.

Worker processes are controlled by the ``CHAINATLAS_WORKERS``
environment variable (the only environment knob); cells are distributed
to the pool but emission stays serialized in cell order.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Iterator, Optional

from .components import (
    classification_to_json,
    classify,
    descriptor_to_json,
    enumerate_components,
)
from .euler import ChainPoint, W0_MODES, epsilon, fiber_weight, m_FE
from .exactpoly import Expansion, eval_at_one, expand, format_factored
from .multiplicity import mult_report_row

OUTPUT_KINDS = ("classification", "multiplicity", "euler")

WORKERS_ENV = "CHAINATLAS_WORKERS"


@dataclass(frozen=True)
class SweepConfig:
    """Inclusive ranges and output selection for one sweep."""

    n_range: tuple[int, int]
    d_range: tuple[int, int]
    g_range: tuple[int, int]
    outputs: tuple[str, ...] = ("classification",)
    chains: tuple[tuple[int, ...], ...] = ()
    w0_mode: str = "equation"
    max_expanded_terms: int = 10_000

    def __post_init__(self) -> None:
        for name, (lo, hi) in (
            ("n_range", self.n_range),
            ("d_range", self.d_range),
            ("g_range", self.g_range),
        ):
            if not (isinstance(lo, int) and isinstance(hi, int)):
                raise ValueError(f"{name} bounds must be integers")
            if lo > hi:
                raise ValueError(f"{name} is empty-ordered: {lo} > {hi}")
        if self.n_range[0] < 2:
            raise ValueError("rank range must start at 2 or above")
        if self.g_range[0] < 2:
            raise ValueError("genus range must start at 2 or above")
        for kind in self.outputs:
            if kind not in OUTPUT_KINDS:
                raise ValueError(f"unknown output kind {kind!r}, expected one of {OUTPUT_KINDS}")
        if not self.outputs:
            raise ValueError("at least one output kind is required")
        if self.w0_mode not in W0_MODES:
            raise ValueError(f"w0_mode must be one of {W0_MODES}")
        chains = tuple(tuple(int(v) for v in chain) for chain in self.chains)
        for chain in chains:
            if any(v < 0 for v in chain):
                raise ValueError("chain entries must be nonnegative")
        object.__setattr__(self, "chains", chains)


def render_expansion(ex: Expansion, max_terms: int) -> Optional[str]:
    """Expanded rendering ``t^q·(body)``, or None when unavailable/too large."""
    if not ex.ok or ex.body is None:
        return None
    if len(ex.body.terms) > max_terms:
        return None
    body = str(ex.body)
    if ex.prefix == 0:
        return body
    e = ex.prefix
    tpart = "t" if e == 1 else (f"t^({e})" if e < 0 or getattr(e, "denominator", 1) != 1 else f"t^{e}")
    return f"{tpart}·({body})"


def _cell_records(cfg: SweepConfig, cell: tuple[int, int, int]) -> list[dict]:
    n, d, g = cell
    records: list[dict] = []
    for c in enumerate_components(n, d, g):
        if "classification" in cfg.outputs:
            records.append({"kind": "classification", **classification_to_json(classify(c))})
        if "multiplicity" in cfg.outputs:
            row = mult_report_row(c)
            from .multiplicity import m_E_closed  # local to keep worker imports lean

            ex = expand(m_E_closed(c))
            row["m_E_expanded"] = render_expansion(ex, cfg.max_expanded_terms)
            records.append({"kind": "multiplicity", **row})
        if "euler" in cfg.outputs:
            s = c.standard()
            for chain in cfg.chains:
                if len(chain) != n:
                    continue
                F = ChainPoint(n, g, chain)
                pairing = m_FE(c, F, cfg.w0_mode)
                ex = expand(pairing)
                at_one = eval_at_one(pairing)
                records.append(
                    {
                        "kind": "euler",
                        "component": descriptor_to_json(c),
                        "chain": list(chain),
                        "w0_mode": cfg.w0_mode,
                        "epsilon": str(epsilon(c, F, cfg.w0_mode)),
                        "fiber_weights": [str(fiber_weight(i, n, s.n0, cfg.w0_mode)) for i in range(n)],
                        "m_FE": format_factored(pairing),
                        "m_FE_expanded": render_expansion(ex, cfg.max_expanded_terms),
                        "m_FE_at_1": None if at_one is None else str(at_one),
                    }
                )
    return records


def sweep(cfg: SweepConfig, start_index: int = 0) -> Iterator[dict]:
    """Stream records for the configured box, starting at ``start_index``.

    Cells iterate in (n, d, g) order, components in (n0, delta) order
    and output kinds in the fixed order classification, multiplicity,
    euler, so indices are stable across runs and worker counts.
    """
    if start_index < 0:
        raise ValueError("start_index must be nonnegative")
    cells = [
        (n, d, g)
        for n in range(cfg.n_range[0], cfg.n_range[1] + 1)
        for d in range(cfg.d_range[0], cfg.d_range[1] + 1)
        for g in range(cfg.g_range[0], cfg.g_range[1] + 1)
    ]
    workers = int(os.environ.get(WORKERS_ENV, "1") or "1")
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks: Iterable[list[dict]] = pool.map(partial(_cell_records, cfg), cells)
            yield from _emit(chunks, start_index)
    else:
        yield from _emit((_cell_records(cfg, cell) for cell in cells), start_index)


def _emit(chunks: Iterable[list[dict]], start_index: int) -> Iterator[dict]:
    idx = 0
    for chunk in chunks:
        for rec in chunk:
            if idx >= start_index:
                yield {"index": idx, **rec}
            idx += 1


# ---- rendering of record streams ----------------------------------------


def flatten_record(rec: dict) -> dict[str, str]:
    """Dotted-key flattening with every value as a string (big-int safe)."""

    flat: dict[str, str] = {}

    def visit(prefix: str, value: object) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                visit(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, (list, tuple)):
            flat[prefix] = ";".join(str(v) for v in value)
        elif value is None:
            flat[prefix] = ""
        elif value is True:
            flat[prefix] = "true"
        elif value is False:
            flat[prefix] = "false"
        else:
            flat[prefix] = str(value)

    visit("", rec)
    return flat


def write_records(records: Iterable[dict], fmt: str, stream: io.TextIOBase) -> int:
    """Write a record stream as json-lines, CSV or a markdown table.

    Returns the number of records written.  CSV and markdown need the
    full column set, so those two formats buffer the stream first;
    json-lines stays incremental.
    """
    count = 0
    if fmt == "json":
        for rec in records:
            stream.write(json.dumps(rec, sort_keys=True) + "\n")
            count += 1
        return count
    flat_rows = [flatten_record(rec) for rec in records]
    columns = sorted({k for row in flat_rows for k in row})
    if fmt == "csv":
        writer = csv.writer(stream)
        writer.writerow(columns)
        for row in flat_rows:
            writer.writerow([row.get(col, "") for col in columns])
            count += 1
        return count
    if fmt == "md":
        stream.write("| " + " | ".join(columns) + " |\n")
        stream.write("|" + "|".join(" --- " for _ in columns) + "|\n")
        for row in flat_rows:
            stream.write("| " + " | ".join(row.get(col, "") for col in columns) + " |\n")
            count += 1
        return count
    raise ValueError(f"unknown format {fmt!r}, expected json, csv or md")

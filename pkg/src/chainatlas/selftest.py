"""Acceptance checks: seven exact criteria with timing budgets.

Each criterion returns a `CriterionResult` whose `evidence` dict is
JSON-serializable.  Criteria 1-3 share one component sweep (rank up to
8, genus 2 to 4, every partition in standard orientation, every
admissible delta); the sweep is computed once per process and cached.

All comparisons are exact.  There are no tolerances anywhere in this
module, and a criterion that cannot be met fails loudly with a witness
in its evidence.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Optional

from .components import (
    ComponentDescriptor,
    admissible_deltas,
    component_with_delta,
    enumerate_components,
    is_valid,
    weight_table,
)
from .euler import ChainPoint, epsilon, fiber_weight, m_FE, rank4_consistency
from .exactpoly import FactoredExpression, expand, is_polynomial, q_int
from .multiplicity import (
    detection_partitions,
    e_exponent,
    is_mult_polynomial_analytic,
    m_E_closed,
    m_from_weights,
)

BUDGETS = {1: 10.0, 2: 10.0, 3: 10.0, 4: 5.0, 5: 30.0, 6: 10.0, 7: 5.0}

CRITERION_NAMES = {
    1: "closed-form multiplicity matches the weight-table oracle",
    2: "upward weight dimensions sum to n^2(g-1)+1",
    3: "analytic and algebraic polynomiality verdicts agree",
    4: "detection range matches brute-force search",
    5: "pairing bodies are nonnegative with Vandermonde values at 1",
    6: "rank-4 inferred multiplicities are delta-independent",
    7: "component enumeration matches the degree-scan oracle",
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    duration: float
    budget: float
    evidence: dict


def format_result(r: CriterionResult) -> str:
    verdict = "PASS" if r.passed else "FAIL"
    keys = ", ".join(f"{k}={v}" for k, v in r.evidence.items() if not isinstance(v, (dict, list)))
    return f"[{r.number}/7] {verdict} {r.name} ({keys}; {r.duration:.2f}s, budget {r.budget:.0f}s)"


# ---- shared sweep for criteria 1-3 --------------------------------------

SWEEP_GENERA = (2, 3, 4)
SWEEP_MAX_RANK = 8

_SWEEP_ROWS: Optional[list[dict]] = None


def _sweep_partitions(n: int) -> Iterator[tuple[int, int]]:
    # standard orientation only; the dual partition carries the same data
    for n0 in range((n + 1) // 2, n):
        yield n0, n - n0


def _laurent_of(expansion):
    return expansion.body.shift(expansion.prefix)


def _component_sweep() -> list[dict]:
    """Every valid component in the shared box, with verdicts attached."""
    global _SWEEP_ROWS
    if _SWEEP_ROWS is not None:
        return _SWEEP_ROWS
    rows: list[dict] = []
    for g in SWEEP_GENERA:
        for n in range(2, SWEEP_MAX_RANK + 1):
            for n0, n1 in _sweep_partitions(n):
                for delta in admissible_deltas(n0, n1, g):
                    c = component_with_delta(n0, n1, delta, g)
                    closed = m_E_closed(c)
                    oracle = m_from_weights(weight_table(c))
                    ec = expand(closed)
                    if ec.ok:
                        eo = expand(oracle)
                        equal = eo.ok and _laurent_of(ec) == _laurent_of(eo)
                    else:
                        # clear the pole at t = -1 and compare the regularized
                        # sides; equality there implies equality of the originals
                        k = max(1, -e_exponent(c))
                        clear = FactoredExpression(0, ((q_int(2), k),))
                        ec2, eo2 = expand(closed * clear), expand(oracle * clear)
                        equal = (
                            ec2.ok
                            and eo2.ok
                            and _laurent_of(ec2) == _laurent_of(eo2)
                        )
                    alg_poly = (
                        ec.ok
                        and isinstance(ec.prefix, int)
                        and ec.prefix >= 0
                        and ec.body.is_integral_polynomial()
                    )
                    wt = weight_table(c)
                    rows.append(
                        {
                            "n": n,
                            "g": g,
                            "n0": n0,
                            "n1": n1,
                            "delta": delta,
                            "oracle_equal": equal,
                            "alg_poly": alg_poly,
                            "analytic_poly": is_mult_polynomial_analytic(c),
                            "t_plus_total": wt.t_plus_total,
                            "base_total": wt.base_total,
                            "t_plus_expected": n * n * (g - 1) + 1,
                        }
                    )
    _SWEEP_ROWS = rows
    return rows


def _witness(row: dict) -> dict:
    return {k: row[k] for k in ("n", "g", "n0", "n1", "delta")}


def criterion_1() -> CriterionResult:
    t0 = time.perf_counter()
    rows = _component_sweep()
    bad = [r for r in rows if not r["oracle_equal"]]
    evidence = {
        "components": len(rows),
        "max_rank": SWEEP_MAX_RANK,
        "genera": list(SWEEP_GENERA),
        "failures": len(bad),
        "first_failure": _witness(bad[0]) if bad else None,
    }
    return CriterionResult(
        1, CRITERION_NAMES[1], not bad, time.perf_counter() - t0, BUDGETS[1], evidence
    )


def criterion_2() -> CriterionResult:
    t0 = time.perf_counter()
    rows = _component_sweep()
    bad = [
        r
        for r in rows
        if r["t_plus_total"] != r["t_plus_expected"] or r["base_total"] != r["t_plus_expected"]
    ]
    evidence = {
        "components": len(rows),
        "identity": "sum of upward dimensions = n^2(g-1)+1 = sum of base dimensions",
        "failures": len(bad),
        "first_failure": _witness(bad[0]) if bad else None,
    }
    return CriterionResult(
        2, CRITERION_NAMES[2], not bad, time.perf_counter() - t0, BUDGETS[2], evidence
    )


def criterion_3() -> CriterionResult:
    t0 = time.perf_counter()
    rows = _component_sweep()
    mismatch = [r for r in rows if r["alg_poly"] != r["analytic_poly"]]
    # exercise the public predicate itself on the low-rank slice
    api_bad = []
    api_rows = 0
    for r in rows:
        if r["n"] > 5:
            continue
        api_rows += 1
        c = component_with_delta(r["n0"], r["n1"], r["delta"], r["g"])
        if is_polynomial(m_E_closed(c)) != r["alg_poly"]:
            api_bad.append(_witness(r))
    rows_31 = [r for r in rows if (r["n0"], r["n1"]) == (3, 1)]
    type_31_ok = bool(rows_31) and all(r["alg_poly"] and r["analytic_poly"] for r in rows_31)
    nonpoly_21: dict[int, list[int]] = {g: [] for g in SWEEP_GENERA}
    for r in rows:
        if (r["n0"], r["n1"]) == (2, 1) and not r["alg_poly"]:
            nonpoly_21[r["g"]].append(r["delta"])
    type_21_ok = all(nonpoly_21[g] for g in SWEEP_GENERA)
    passed = not mismatch and not api_bad and type_31_ok and type_21_ok
    evidence = {
        "components": len(rows),
        "mismatches": len(mismatch),
        "first_mismatch": _witness(mismatch[0]) if mismatch else None,
        "predicate_recheck_rows": api_rows,
        "predicate_recheck_failures": len(api_bad),
        "type_31_always_polynomial": type_31_ok,
        "type_21_nonpolynomial_deltas": {str(g): sorted(v) for g, v in nonpoly_21.items()},
    }
    return CriterionResult(
        3, CRITERION_NAMES[3], passed, time.perf_counter() - t0, BUDGETS[3], evidence
    )


# ---- criterion 4: detection range ---------------------------------------


def _brute_detection(n: int, genera: tuple[int, ...] = SWEEP_GENERA) -> list[int]:
    """Partitions of n admitting a non-polynomial valid delta, by search.

    The congruence on delta is relaxed to realizability by some degree,
    so the admissible set is exactly the windowed multiples of
    gcd(n0, n1).
    """
    found = []
    for n1 in range(1, n // 2 + 1):
        n0 = n - n1
        hit = False
        for g in genera:
            for delta in admissible_deltas(n0, n1, g):
                c = component_with_delta(n0, n1, delta, g)
                if not is_mult_polynomial_analytic(c):
                    hit = True
                    break
            if hit:
                break
        if hit:
            found.append(n1)
    return found


def criterion_4() -> CriterionResult:
    t0 = time.perf_counter()
    table = {n: detection_partitions(n) for n in range(2, 13)}
    brute = {n: _brute_detection(n) for n in range(2, 13)}
    bad = {n: (table[n], brute[n]) for n in table if table[n] != brute[n]}
    # rank-4 cutoff: n1 qualifies exactly when (n - n1)^2 < n^2 - 10
    squares_4 = {f"n1={n1}": [(4 - n1) ** 2, 16 - 10] for n1 in (1, 2)}
    square_ok = ((4 - 1) ** 2 >= 6) and ((4 - 2) ** 2 < 6) and table[4] == [2]
    passed = not bad and square_ok
    evidence = {
        "ranks": "2..12",
        "disagreements": {str(n): list(v) for n, v in bad.items()},
        "rank4_squares_vs_bound": squares_4,
        "rank4_partitions": table[4],
    }
    return CriterionResult(
        4, CRITERION_NAMES[4], passed, time.perf_counter() - t0, BUDGETS[4], evidence
    )


# ---- criterion 5: pairing structure -------------------------------------


def _m_vectors(n: int) -> Iterator[tuple[int, ...]]:
    yield (0,) * n
    for k in (1, 2, 3):
        if k > n:
            break
        for slots in combinations(range(n), k):
            for vals in product((1, 2), repeat=k):
                m = [0] * n
                for p, v in zip(slots, vals):
                    m[p] = v
                yield tuple(m)


def criterion_5() -> CriterionResult:
    t0 = time.perf_counter()
    checked = 0
    bad: Optional[dict] = None
    eps_min = None
    for n in range(2, SWEEP_MAX_RANK + 1):
        for n0, n1 in _sweep_partitions(n):
            delta = admissible_deltas(n0, n1, 2)[0]
            E = component_with_delta(n0, n1, delta, 2)
            for m in _m_vectors(n):
                F = ChainPoint(n, 2, m)
                e = epsilon(E, F)
                if eps_min is None or e < eps_min:
                    eps_min = e
                ex = expand(m_FE(E, F))
                body = ex.body
                expected = math.prod(math.comb(n, n - i) ** mi for i, mi in enumerate(m))
                ok = (
                    ex.ok
                    and body.is_integral_polynomial()
                    and all(coeff > 0 for _, coeff in body.terms)
                    and body.value_at_one() == expected
                )
                checked += 1
                if not ok and bad is None:
                    bad = {"n": n, "n0": n0, "m": list(m), "expected_at_1": str(expected)}
    weight_bad = []
    for n in range(2, 11):
        for n0 in range(1, n):
            for i in range(1, n):
                if fiber_weight(i, n, n0) > 0:
                    weight_bad.append({"n": n, "n0": n0, "i": i})
    passed = bad is None and not weight_bad
    # the sign of the monomial prefix is reported, not asserted
    evidence = {
        "pairings_checked": checked,
        "first_failure": bad,
        "fiber_weight_rank_bound": 10,
        "positive_fiber_weights": weight_bad,
        "epsilon_min": str(eps_min),
        "epsilon_always_nonnegative": eps_min is not None and eps_min >= 0,
    }
    return CriterionResult(
        5, CRITERION_NAMES[5], passed, time.perf_counter() - t0, BUDGETS[5], evidence
    )


def criterion_6() -> CriterionResult:
    t0 = time.perf_counter()
    report = rank4_consistency(g_values=(2, 3), m_entries=(0, 1, 2))
    independent = report["delta_independent"]
    passed = (
        independent.get("2,2", False)
        and independent.get("3,1", False)
        and report["status"] in ("consistent", "discrepancy")
        and (report["status"] == "consistent" or report["witness"] is not None)
    )
    return CriterionResult(
        6, CRITERION_NAMES[6], passed, time.perf_counter() - t0, BUDGETS[6], report
    )


# ---- criterion 7: enumeration oracle ------------------------------------


def _brute_components(n: int, d: int, g: int) -> list[tuple[int, int, int, int]]:
    """Scan a generous d0 window for every split and keep the valid ones."""
    out = []
    for n0 in range(1, n):
        n1 = n - n0
        w = 2 * n0 * n1 * g + abs(d) + n + 2
        for d0 in range(-w, w + 1):
            c = ComponentDescriptor(n0, n1, d0, d - d0, g)
            if is_valid(c):
                out.append((n0, n1, d0, d - d0))
    return sorted(out)


def criterion_7() -> CriterionResult:
    t0 = time.perf_counter()
    cells = 0
    bad: Optional[dict] = None
    for n in range(2, 7):
        for d in range(-6, 7):
            for g in range(2, 5):
                cells += 1
                enum = enumerate_components(n, d, g)
                keys = sorted((c.n0, c.n1, c.d0, c.d1) for c in enum)
                if len(set(keys)) != len(keys) or keys != _brute_components(n, d, g):
                    if bad is None:
                        bad = {"n": n, "d": d, "g": g}
    spots = {
        "n=2,d=1,g=2": len(enumerate_components(2, 1, 2)),
        "n=3,d=1,g=2": len(enumerate_components(3, 1, 2)),
    }
    passed = bad is None and spots["n=2,d=1,g=2"] == 1 and spots["n=3,d=1,g=2"] == 2
    evidence = {"cells": cells, "first_disagreement": bad, "spot_counts": spots}
    return CriterionResult(
        7, CRITERION_NAMES[7], passed, time.perf_counter() - t0, BUDGETS[7], evidence
    )


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
}


def run_all(numbers: Optional[tuple[int, ...]] = None) -> list[CriterionResult]:
    selected = sorted(numbers) if numbers else sorted(CRITERIA)
    return [CRITERIA[k]() for k in selected]

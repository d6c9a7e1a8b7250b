"""Range-scan orchestration: deterministic, worker-count independent reports.

Each scan maps a keyed input list through a pure per-item worker, optionally on
a process pool, then sorts records by input key, so report bodies cannot depend
on the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from . import chains, cubic, ell2
from .arith import jacobi, primes_up_to, squarefree_kernel
from .reports import ScanReport


def _run_keyed(worker, items: list, jobs: int) -> list[dict]:
    if jobs <= 1 or len(items) < 4:
        out = [worker(x) for x in items]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(worker, items, chunksize=max(1, len(items) // (4 * jobs))))
    out.sort(key=lambda r: r["key"])
    for r in out:
        r.pop("key")
    return out


def _finish(command: str, params: dict, records: list[dict], violations: list, t0: float) -> tuple[list[dict], ScanReport]:
    report = ScanReport(
        command=command,
        parameters=params,
        total=len(records),
        violations=violations,
        elapsed_ms=int((time.time() - t0) * 1000),
    )
    return records, report


def _pairs_1mod4(bound: int) -> list[tuple[int, int]]:
    ps = [p for p in primes_up_to(bound) if p % 4 == 1]
    return [(p, q) for i, p in enumerate(ps) for q in ps[i + 1 :]]


# each worker returns a dict including a "key" used for deterministic ordering


def _reciprocity_worker(pq: tuple[int, int]) -> dict:
    p, q = pq
    r = ell2.scholz_reciprocity_check(p, q)
    return {
        "key": (p, q), "p": p, "q": q,
        "lhs": int(r.lhs), "rhs": int(r.rhs), "lhs_swapped": int(r.lhs_swapped),
        "equal": r.equal,
    }


def reciprocity_scan(bound: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    t0 = time.time()
    pairs = [(p, q) for (p, q) in _pairs_1mod4(bound) if jacobi(p, q) == 1]
    records = _run_keyed(_reciprocity_worker, pairs, jobs)
    violations = [r for r in records if not r["equal"]]
    return _finish("reciprocity", {"max": bound}, records, violations, t0)


def _pell_worker(pq: tuple[int, int]) -> dict:
    p, q = pq
    pred = ell2.negative_pell_classify(p, q)
    truth = ell2.pell_ground_truth(p, q)
    match = ell2.pell_prediction_matches(pred, truth)
    return {
        "key": (p, q), "p": p, "q": q, "case": pred.case,
        "predicted_norm": pred.predicted_norm,
        "norm": truth.norm,
        "cl2": list(truth.cl2), "cl2_plus": list(truth.cl2_plus),
        "match": match,
    }


def pell_scan(bound: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    t0 = time.time()
    records = _run_keyed(_pell_worker, _pairs_1mod4(bound), jobs)
    violations = [r for r in records if not r["match"]]
    return _finish("pell", {"max": bound}, records, violations, t0)


def _reflection_worker(m: int) -> dict:
    try:
        r = ell2.reflection_check(m)
    except ell2.DegeneratePartnerError as e:
        return {"key": m, "m": m, "skipped": str(e), "ok": True, "special": True}
    return {
        "key": m, "m": m, "partner": r.partner,
        "r_plus": r.r_plus, "r_minus": r.r_minus,
        "ok": r.ok, "special": r.special_units,
    }


def reflection_scan(lo: int, hi: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    """Reflection inequality over squarefree m with lo <= |m| <= hi."""
    t0 = time.time()
    ms = []
    for a in range(max(lo, 2), hi + 1):
        if squarefree_kernel(a) == a:
            ms.extend([a, -a])
    records = _run_keyed(_reflection_worker, ms, jobs)
    violations = [r for r in records if not r["ok"] and not r.get("special")]
    return _finish("reflect", {"lo": lo, "hi": hi}, records, violations, t0)


def _knot_worker(pq: tuple[int, int]) -> dict:
    p, q = pq
    k = ell2.knot_report(p, q)
    consistent = True
    if k.unit_knot_order == 2:
        consistent = k.quartic_product is not None and int(k.quartic_product) == -1
    return {
        "key": (p, q), "p": p, "q": q,
        "unit_knot_order": k.unit_knot_order,
        "redei": k.redei,
        "number_knot_nontrivial": k.number_knot_nontrivial,
        "quartic_product": None if k.quartic_product is None else int(k.quartic_product),
        "consistent": consistent,
    }


def knot_scan(bound: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    t0 = time.time()
    records = _run_keyed(_knot_worker, _pairs_1mod4(bound), jobs)
    violations = [r for r in records if not r["consistent"]]
    return _finish("knot", {"max": bound}, records, violations, t0)


def _recip3_worker(pq: tuple[int, int]) -> dict:
    p, q = pq
    try:
        r = cubic.l3_reciprocity_check(p, q)
    except cubic.SplittingError as e:
        return {"key": (p, q), "p": p, "q": q, "skipped": f"splitting: {e}", "holds": True}
    except (cubic.UnitSearchError, cubic.SaturationError) as e:
        return {"key": (p, q), "p": p, "q": q, "skipped": f"units: {e}", "holds": True}
    return {
        "key": (p, q), "p": p, "q": q,
        "level_pq": r.class_pq.level, "level_qp": r.class_qp.level,
        "holds": r.biconditional_holds,
    }


def recip3_scan(bound: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    """Degree-3 reciprocity over mutually split pairs p < q <= bound."""
    t0 = time.time()
    ps = [p for p in primes_up_to(bound) if p % 3 == 1]
    pairs = [
        (p, q)
        for i, p in enumerate(ps)
        for q in ps[i + 1 :]
        if pow(p, (q - 1) // 3, q) == 1 and pow(q, (p - 1) // 3, p) == 1
    ]
    records = _run_keyed(_recip3_worker, pairs, jobs)
    violations = [r for r in records if not r["holds"]]
    return _finish("recip3", {"max": bound}, records, violations, t0)


def _primary2_worker(dp: tuple[int, int]) -> dict:
    d, p = dp
    w = ell2.is_2_primary(d, p)
    return {
        "key": (d, p), "d": d, "p": p,
        "root": w.root,
        "singular": list(w.singular_text),
        "residues": list(w.residues),
        "characters": [int(c) for c in w.character_values],
        "primary": w.primary,
    }


def primary2_scan(d: int, bound: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    """2-primary verdicts for all split primes p <= bound of the imaginary field d."""
    t0 = time.time()
    items = []
    for p in primes_up_to(bound):
        if p == 2 or d % p == 0:
            continue
        if jacobi(d % p, p) == 1:
            items.append((d, p))
    records = _run_keyed(_primary2_worker, items, jobs)
    return _finish("primary2", {"d": d, "max": bound}, records, [], t0)


def addchain_scan(bound: int, jobs: int = 1) -> tuple[list[dict], ScanReport]:
    t0 = time.time()

    records = _run_keyed(_addchain_worker, list(range(1, bound + 1)), jobs)
    violations = [r for r in records if not r["valid"]]
    return _finish("addchain", {"max": bound}, records, violations, t0)


def _addchain_worker(n: int) -> dict:
    chain, length = chains.optimal_chain(n)
    return {
        "key": n, "n": n, "length": length,
        "chain": list(chain.terms), "valid": chain.is_valid(),
    }

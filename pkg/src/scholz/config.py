"""Search-bound configuration: env default plus optional JSON override file."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

ENV_BUDGET = "SCHOLZ_SCAN_BOUND"


@dataclass(frozen=True)
class Bounds:
    class_group_bound: int = 10**8       # max |d| accepted by class group computations
    factor_budget: int = 1 << 24         # rho iteration cap
    square_search_digits: int = 400      # working precision margin for unit squareness tests
    unit_height_bound: int = 50          # initial cubic unit enumeration box
    unit_height_retries: int = 3         # doubling retries for the box
    chain_bound: int = 2**20             # max n for optimal_chain
    witness_search_bound: int = 50_000   # largest auxiliary prime a planner will try
    generator_norm_bound: int = 10**6    # singular-number generator search cap


_SECTION_KEYS = {
    "core_arith": ("factor_budget",),
    "quad_field": ("class_group_bound", "square_search_digits"),
    "cyclic_cubic": ("unit_height_bound", "unit_height_retries"),
    "construction": ("witness_search_bound",),
    "scholz_ell2": ("generator_norm_bound",),
    "addchain": ("chain_bound",),
}


def load_bounds(config_path: str | None = None) -> Bounds:
    """Bounds from defaults, then ENV, then an optional JSON file.

    Unknown keys in the file are ignored (documented policy); sections follow
    module names, see README.
    """
    b = Bounds()
    env = os.environ.get(ENV_BUDGET)
    if env:
        b = replace(b, class_group_bound=int(env))
    if config_path:
        with open(config_path) as fh:
            raw = json.load(fh)
        known = {f.name for f in fields(Bounds)}
        updates = {}
        for section, entries in raw.items():
            if section not in _SECTION_KEYS or not isinstance(entries, dict):
                continue
            for key, val in entries.items():
                if key in _SECTION_KEYS[section] and key in known:
                    updates[key] = int(val)
        if updates:
            b = replace(b, **updates)
    return b

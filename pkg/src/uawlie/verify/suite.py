"""Suite runner and report."""

from __future__ import annotations

import builtins
import fnmatch
import itertools
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..linalg import ALLOWED_CYCLOTOMIC_ORDERS
from ..uaw import UAW
from .registry import REGISTRY, CheckResult, run_check


@dataclass
class Report:
    results: list
    range: int
    elapsed: float

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def factor_report(self) -> dict:
        """Cyclotomic orders and foreign factors over every elimination pivot."""
        orders, foreign = set(), []
        for r in self.results:
            pf = (r.witness or {}).get("pivot_factors")
            if pf is None:
                continue
            orders.update(pf["cyclotomic_orders"])
            foreign += [{"check": r.name, **f} for f in pf["foreign"]]
        return {"cyclotomic_orders": sorted(orders),
                "allowed": list(ALLOWED_CYCLOTOMIC_ORDERS),
                "foreign": foreign}

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "range": self.range,
            "total": len(self.results),
            "failures": len(self.failures),
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "factor_report": self.factor_report(),
            "results": [r.to_json() for r in self.results],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def text(self) -> str:
        lines = []
        for r in self.results:
            params = ",".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            tag = "PASS" if r.passed else "FAIL"
            lines.append(f"{tag} {r.name}({params}) {r.elapsed * 1000:.1f} ms")
            if not r.passed:
                lines.append("     " + json.dumps(r.witness, sort_keys=True))
        fr = self.factor_report()
        orders = " ".join(map(str, fr["cyclotomic_orders"])) or "none"
        lines.append(f"pivot cyclotomic orders: {orders}; foreign factors: {len(fr['foreign'])}")
        lines.append(f"status: {self.status} ({len(self.results) - len(self.failures)}"
                     f"/{len(self.results)} passed, range {self.range}, {self.elapsed:.1f} s)")
        return "\n".join(lines)


def suite_jobs(pattern: str | None = None, range: int = 4) -> list:
    """``(name, params)`` pairs for every matching check over ``[1, range]``."""
    if range < 1:
        raise ValueError("range must be at least 1")
    jobs = []
    for name in sorted(REGISTRY):
        if pattern and not fnmatch.fnmatchcase(name, pattern):
            continue
        check = REGISTRY[name]
        axes = check.grid
        span = builtins.range(1, range + 1)
        for values in itertools.product(*(span for _ in axes)):
            jobs.append((name, dict(zip(axes, values))))
    return jobs


def _sort_key(r: CheckResult):
    return r.name, sorted(r.params.items())


def run_suite(pattern: str | None = None, range: int = 4, alg: UAW | None = None,
              workers: int | None = None) -> Report:
    jobs = suite_jobs(pattern, range)
    workers = workers or min(8, os.cpu_count() or 1)
    start = time.perf_counter()
    # expensive checks first so they overlap with the cheap ones
    order = sorted(jobs, key=lambda j: j[0] not in _SLOW)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda j: run_check(j[0], j[1], alg), order))
    results.sort(key=_sort_key)
    return Report(results, range, time.perf_counter() - start)


_SLOW = {"L5_rank", "L5_basis", "replacement_chain", "aux_independence"}


# Checks covering the reduction rules, Casimir, confluence, Hall machinery,
# non-freeness and the identities of lengths 4 and 5.
CORE_CHECKS = (
    "reduction_rules", "casimir_six_equal", "confluence", "hall_machinery",
    "free_I0_identity", "I0_nonzero_hall", "delta_six_identities",
    "seven_H5b_H6a", "rel5_four_relations",
)


def mutation_sweep(delta=1, checks=CORE_CHECKS) -> dict:
    """Perturb each reduction-rule coefficient by ``delta`` in turn.

    Returns ``{"PAIR.slot": [failing check names]}``; an empty list means the
    core checks did not notice the planted error.
    """
    from ..uaw import DEFAULT_RULES

    out = {}
    for pair, slot in DEFAULT_RULES.slots():
        alg = UAW(DEFAULT_RULES.perturbed(pair, slot, delta))
        out[f"{pair}.{slot}"] = [name for name in checks if not run_check(name, alg=alg).passed]
    return out

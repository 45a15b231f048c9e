"""Named, parameterized checks and the single-check runner."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from ..uaw import UAW
from .context import context_for


class UnknownCheck(KeyError):
    pass


class BadParams(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: dict
    passed: bool
    witness: Optional[dict]
    elapsed: float = field(compare=False)

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError(f"failing check {self.name} must carry a witness")

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "params": dict(self.params),
            "passed": self.passed,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "witness": self.witness,
        }


@dataclass(frozen=True)
class Check:
    """``grid`` names the parameters the suite sweeps over ``[1, range]``;
    ``bounds`` gives the accepted interval of every parameter."""

    name: str
    fn: Callable
    statement: str
    bounds: Mapping[str, tuple] = field(default_factory=dict)
    grid: tuple = ()
    defaults: Mapping[str, int] = field(default_factory=dict)


REGISTRY: dict = {}


def register(name: str, statement: str, bounds=None, grid=(), defaults=None):
    def deco(fn):
        REGISTRY[name] = Check(name, fn, statement, dict(bounds or {}), tuple(grid),
                               dict(defaults or {}))
        return fn
    return deco


def check_names() -> list:
    return sorted(REGISTRY)


def _validate(check: Check, params: Mapping) -> dict:
    unknown = set(params) - set(check.bounds)
    if unknown:
        raise BadParams(f"{check.name}: unknown parameters {sorted(unknown)}")
    out = dict(check.defaults)
    out.update(params)
    for key, (lo, hi) in check.bounds.items():
        if key not in out:
            raise BadParams(f"{check.name}: missing parameter {key}")
        v = out[key]
        if isinstance(v, bool) or not isinstance(v, int) or not lo <= v <= hi:
            raise BadParams(f"{check.name}: {key}={v!r} outside [{lo}, {hi}]")
    return out


def run_check(name: str, params: Mapping | None = None, alg: UAW | None = None) -> CheckResult:
    check = REGISTRY.get(name)
    if check is None:
        raise UnknownCheck(name)
    full = _validate(check, params or {})
    ctx = context_for(alg)
    start = time.perf_counter()
    passed, witness = check.fn(ctx, **full)
    elapsed = time.perf_counter() - start
    return CheckResult(name, full, bool(passed), witness, elapsed)

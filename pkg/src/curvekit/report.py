"""Curvature reports: values keyed by labelled objects plus the model record."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

KINDS = ("vertex", "edge", "simplex", "triple")


@dataclass
class CurvatureReport:
    """Real values keyed by vertex label, edge pair, simplex tuple or vertex triple."""

    model: str
    kind: str
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")

    def __getitem__(self, key):
        return self.values[key]

    def __len__(self) -> int:
        return len(self.values)

    def items(self):
        return self.values.items()

    def param_string(self) -> str:
        return ";".join(f"{k}={self.params[k]}" for k in sorted(self.params))


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CURVEKIT_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Order-preserving map, threaded when ``CURVEKIT_THREADS`` > 1."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))

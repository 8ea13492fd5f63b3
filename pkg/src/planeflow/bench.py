"""Wall-clock scaling of the max-flow pipeline on generated families.

``k`` here is the target edge-outerplanarity; each family is built with
the generator parameter that lands on it (the generators add one layer).
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .generators import generate_instance
from .network import FlowNetwork
from .outerplanarity import edge_outerplanarity
from .preprocess import _reachable
from .typings import max_flow_value

__all__ = ["BenchRow", "BenchTable", "bench", "fit_exponent", "instance_for_size"]


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    seconds: float
    times: tuple[float, ...]


@dataclass
class BenchTable:
    family: str
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def exponent(self) -> float | None:
        return fit_exponent([r.n for r in self.rows], [r.seconds for r in self.rows])

    def ratios(self) -> list[tuple[int, int, float, float]]:
        """(n_a, n_b, time ratio, linear reference n_b / n_a) for consecutive rows."""
        out = []
        for a, b in zip(self.rows, self.rows[1:]):
            out.append((a.n, b.n, b.seconds / a.seconds if a.seconds else float("inf"), b.n / a.n))
        return out

    def as_json(self) -> dict:
        return {
            "family": self.family,
            "rows": [{"n": r.n, "k": r.k, "median_s": r.seconds, "times_s": list(r.times)} for r in self.rows],
            "exponent": self.exponent,
            "ratios": [
                {"n_from": a, "n_to": b, "time_ratio": t, "linear_reference": ref}
                for a, b, t, ref in self.ratios()
            ],
        }

    def format(self) -> str:
        lines = [f"family {self.family}", f"{'n':>8} {'k':>3} {'median s':>10}"]
        lines += [f"{r.n:>8} {r.k:>3} {r.seconds:>10.4f}" for r in self.rows]
        for a, b, t, ref in self.ratios():
            lines.append(f"  {a} -> {b}: time x{t:.2f} (linear x{ref:.2f})")
        if self.exponent is not None:
            lines.append(f"fitted exponent {self.exponent:.3f}")
        return "\n".join(lines)


def fit_exponent(ns: Sequence[int], times: Sequence[float]) -> float | None:
    """Least-squares slope of log(time) against log(n)."""
    if len(ns) < 2:
        return None
    slope, _ = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(times, float)), 1)
    return float(slope)


def _ell_for(family: str, kg: int, n: int) -> int:
    per_ring = {"nested-prisms": 2 * kg, "nested-cycles": 4 * kg - 2, "random-cubic-plane": 2.5 * kg}
    return max(3, round(n / per_ring[family]))


def instance_for_size(family: str, k: int, n: int, seed: int = 0, tries: int = 50) -> FlowNetwork:
    """An instance of about ``n`` vertices whose sink is reachable from its source."""
    kg = max(1, k - 1)
    ell = _ell_for(family, kg, n)
    for s in range(seed, seed + tries):
        N = generate_instance(family, kg, ell, s)
        if _reachable(N.G, N.s, N.t):
            return N
    return N


def bench(family: str, k: int, ns: Sequence[int], reps: int = 3, seed: int = 0) -> BenchTable:
    table = BenchTable(family)
    for n in ns:
        N = instance_for_size(family, k, n, seed)
        measured_k = edge_outerplanarity(N.G).k
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            max_flow_value(N)
            times.append(time.perf_counter() - t0)
        table.rows.append(BenchRow(N.G.n, measured_k, statistics.median(times), tuple(times)))
    return table

"""Exhaustive decision of K_N ->_r S_{n,m} (and K_{N,N} ->_r S_{n,m}).

Depth-first over the edges in lexicographic order.  A color may be used only
if every smaller color is already in use (first-use order), which removes the
r! relabelings of each coloring.  After coloring uv with c, only central edges
at u or v in color c can have become hosts, so only those are re-tested.

Because colors are tried in increasing order, the first complete coloring
reached is the lexicographically least avoiding coloring; the parallel mode
splits the tree at a fixed depth and reduces in prefix order, so it returns the
same witness and the same node count as the sequential run.
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .constructions import verify_witness
from .detect import edge_hosts, find_mono_double_star
from .graph import (
    BipartiteColoring,
    Claim,
    CompleteColoring,
    DoubleStarPattern,
    Provenance,
    Witness,
    iter_bits,
)

__all__ = [
    "ArrowResult",
    "RamseyScan",
    "SearchConfig",
    "SearchInconclusive",
    "arrows",
    "default_jobs",
    "iter_avoiding_colorings",
    "local_search_witness",
    "ramsey_number",
]

log = logging.getLogger(__name__)

SETTINGS = ("complete", "bipartite")


class SearchInconclusive(RuntimeError):
    """The node budget ran out before the question was decided."""

    def __init__(self, result: ArrowResult):
        super().__init__(f"search inconclusive at N = {result.N} after {result.nodes_explored} nodes")
        self.result = result


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SearchConfig:
    setting: str
    r: int
    pattern: DoubleStarPattern
    max_N: Optional[int] = None
    node_budget: Optional[int] = None
    parallel_width: int = 1
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.setting not in SETTINGS:
            raise ValueError(f"setting must be one of {SETTINGS}, got {self.setting!r}")
        if self.r < 1:
            raise ValueError(f"need r >= 1, got r = {self.r}")
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("node_budget must be non-negative")
        if self.parallel_width < 1 or self.jobs < 1:
            raise ValueError("parallel_width and jobs must be positive")

    def arrows(self, N: int) -> ArrowResult:
        return arrows(self.setting, N, self.r, self.pattern, node_budget=self.node_budget,
                      parallel_width=self.parallel_width, jobs=self.jobs)

    def ramsey_number(self) -> RamseyScan:
        if self.max_N is None:
            raise ValueError("max_N is needed for a scan")
        return ramsey_number(self.setting, self.r, self.pattern, self.max_N,
                             node_budget=self.node_budget, parallel_width=self.parallel_width,
                             jobs=self.jobs)


@dataclass(frozen=True)
class ArrowResult:
    N: int
    arrows: Optional[bool]  # None means inconclusive
    witness: Optional[Witness]
    nodes_explored: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def status(self) -> str:
        return {True: "true", False: "false", None: "inconclusive"}[self.arrows]

    def to_json(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "arrows": self.arrows,
            "status": self.status,
            "nodes_explored": self.nodes_explored,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _layout(setting: str, size: int) -> tuple[int, list[tuple[int, int]]]:
    if setting == "complete":
        return size, [(u, v) for u in range(size) for v in range(u + 1, size)]
    return 2 * size, [(x, size + y) for x in range(size) for y in range(size)]


class _Engine:
    """Mutable DFS state: one adjacency bitset row per (color, vertex)."""

    def __init__(self, setting: str, size: int, r: int, pattern: DoubleStarPattern,
                 budget: Optional[int]):
        self.setting, self.size, self.r = setting, size, r
        self.n, self.m = pattern.n, pattern.m
        self.n_vertices, self.edges = _layout(setting, size)
        self.rows = [[0] * self.n_vertices for _ in range(r + 1)]
        self.colors = [0] * len(self.edges)
        self.budget = budget
        self.nodes = 0

    def place(self, depth: int, c: int) -> bool:
        """Color edge ``depth`` with c; False (and undone) if that creates a copy."""
        u, v = self.edges[depth]
        rows = self.rows[c]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        n, m = self.n, self.m
        ok = not edge_hosts(rows, u, v, n, m)
        if ok:
            for a in (u, v):
                for w in iter_bits(rows[a]):
                    if edge_hosts(rows, a, w, n, m):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            self.colors[depth] = c
            return True
        self.unplace(depth, c)
        return False

    def unplace(self, depth: int, c: int) -> None:
        u, v = self.edges[depth]
        rows = self.rows[c]
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        self.colors[depth] = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted

    def dfs(self, depth: int, used: int) -> bool:
        if depth == len(self.edges):
            return True
        for c in range(1, min(self.r, used + 1) + 1):
            self._tick()
            if self.place(depth, c):
                if self.dfs(depth + 1, max(used, c)):
                    return True
                self.unplace(depth, c)
        return False

    def enumerate_all(self, depth: int, used: int):
        """Every avoiding canonical coloring, in lexicographic order."""
        if depth == len(self.edges):
            yield tuple(self.colors)
            return
        for c in range(1, min(self.r, used + 1) + 1):
            self._tick()
            if self.place(depth, c):
                yield from self.enumerate_all(depth + 1, max(used, c))
                self.unplace(depth, c)

    def prefixes(self, depth: int, used: int, stop: int, out: list) -> None:
        """Collect (prefix, used, shallow nodes so far) for every live node at depth ``stop``."""
        if depth == stop:
            out.append((tuple(self.colors[:stop]), used, self.nodes))
            return
        for c in range(1, min(self.r, used + 1) + 1):
            self._tick()
            if self.place(depth, c):
                self.prefixes(depth + 1, max(used, c), stop, out)
                self.unplace(depth, c)

    def load(self, prefix: tuple[int, ...]) -> None:
        for depth, c in enumerate(prefix):
            placed = self.place(depth, c)
            assert placed, "prefix from the splitter must be avoiding"


def _witness(setting: str, size: int, r: int, pattern: DoubleStarPattern, colors) -> Witness:
    if setting == "complete":
        coloring: Union[CompleteColoring, BipartiteColoring] = CompleteColoring(size, r, tuple(colors))
    else:
        coloring = BipartiteColoring(size, size, r, tuple(colors))
    w = Witness(coloring, Claim.double_star(pattern.n, pattern.m),
                Provenance("search", {"setting": setting, "N": size, "r": r}))
    if not verify_witness(w).valid:
        raise AssertionError("search produced a coloring that fails verification")
    return w


def _run_task(args) -> tuple[bool, int, Optional[tuple[int, ...]]]:
    """Worker: finish the DFS below one prefix.  Returns (found, nodes, coloring)."""
    setting, size, r, n, m, prefix, used, cap = args
    eng = _Engine(setting, size, r, DoubleStarPattern(n, m), cap)
    eng.load(prefix)
    try:
        found = eng.dfs(len(prefix), used)
    except _BudgetExhausted:
        return False, eng.nodes, None
    return found, eng.nodes, tuple(eng.colors) if found else None


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("DSRAMSEY_JOBS", "1")))
    except ValueError:
        return 1


def arrows(setting: str, N: int, r: int, pattern: DoubleStarPattern, *,
           node_budget: Optional[int] = None, parallel_width: int = 1,
           jobs: Optional[int] = None, warm_start: Optional[Witness] = None) -> ArrowResult:
    """Decide whether every r-coloring of K_N (or K_{N,N}) has a monochromatic ``pattern``."""
    if setting not in SETTINGS:
        raise ValueError(f"setting must be one of {SETTINGS}, got {setting!r}")
    if N < 1 or r < 1:
        raise ValueError(f"need N >= 1 and r >= 1, got N = {N}, r = {r}")
    if not isinstance(pattern, DoubleStarPattern):
        raise TypeError("pattern must be a DoubleStarPattern")
    start = time.perf_counter()

    if warm_start is not None and _warm_start_applies(warm_start, setting, N, r, pattern):
        return ArrowResult(N, False, warm_start, 0, time.perf_counter() - start)

    jobs = default_jobs() if jobs is None else jobs
    if parallel_width <= 1:
        eng = _Engine(setting, N, r, pattern, node_budget)
        try:
            found = eng.dfs(0, 0)
        except _BudgetExhausted:
            return ArrowResult(N, None, None, eng.nodes, time.perf_counter() - start)
        witness = _witness(setting, N, r, pattern, eng.colors) if found else None
        return ArrowResult(N, not found, witness, eng.nodes, time.perf_counter() - start)
    return _arrows_split(setting, N, r, pattern, node_budget, parallel_width, jobs, start)


def _warm_start_applies(w: Witness, setting: str, N: int, r: int, pattern: DoubleStarPattern) -> bool:
    c = w.coloring
    size_ok = c.n_vertices == N if setting == "complete" else (c.x_size, c.y_size) == (N, N)
    return (c.setting == setting and size_ok and c.r <= r
            and find_mono_double_star(c, pattern) is None)


def _arrows_split(setting, N, r, pattern, budget, width, jobs, start) -> ArrowResult:
    # pick the shallowest depth with at least ``width`` live prefixes
    # the budget is applied during the ordered replay, never while splitting
    n_edges = len(_layout(setting, N)[1])
    shallow = _Engine(setting, N, r, pattern, None)
    prefixes: list = []
    for depth in range(n_edges + 1):
        shallow.nodes, prefixes = 0, []
        shallow.prefixes(0, 0, depth, prefixes)
        if len(prefixes) >= width or depth == n_edges:
            break
    shallow_total = shallow.nodes

    tasks = [
        (setting, N, r, pattern.n, pattern.m, prefix, used,
         None if budget is None else budget - before)
        for prefix, used, before in prefixes
    ]
    log.debug("split K search into %d tasks at prefix depth %d", len(tasks), depth)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        outcomes = [_run_task(t) for t in tasks]

    # replay in prefix order: the sequential run visits exactly these nodes
    inner = 0
    for (prefix, used, before), (found, nodes, colors) in zip(prefixes, outcomes):
        inner += nodes
        total = before + inner
        if budget is not None and total > budget:
            return ArrowResult(N, None, None, budget + 1, time.perf_counter() - start)
        if found:
            witness = _witness(setting, N, r, pattern, colors)
            return ArrowResult(N, False, witness, total, time.perf_counter() - start)
    total = shallow_total + inner
    if budget is not None and total > budget:
        return ArrowResult(N, None, None, budget + 1, time.perf_counter() - start)
    return ArrowResult(N, True, None, total, time.perf_counter() - start)


def iter_avoiding_colorings(setting: str, N: int, r: int, pattern: DoubleStarPattern):
    """Yield every avoiding coloring with colors in first-use order, lexicographically."""
    eng = _Engine(setting, N, r, pattern, None)
    for colors in eng.enumerate_all(0, 0):
        if setting == "complete":
            yield CompleteColoring(N, r, colors)
        else:
            yield BipartiteColoring(N, N, r, colors)


@dataclass(frozen=True)
class RamseyScan:
    value: Optional[int]
    results: tuple[ArrowResult, ...]

    def to_json(self) -> dict[str, Any]:
        return {"R": self.value, "scan": [res.to_json() for res in self.results]}


def ramsey_number(setting: str, r: int, pattern: DoubleStarPattern, max_N: int, *,
                  node_budget: Optional[int] = None, parallel_width: int = 1,
                  jobs: Optional[int] = None) -> RamseyScan:
    """Scan N = 1, 2, ... up to max_N for the first N that arrows the pattern."""
    results = []
    for N in range(1, max_N + 1):
        res = arrows(setting, N, r, pattern, node_budget=node_budget,
                     parallel_width=parallel_width, jobs=jobs)
        results.append(res)
        log.info("N = %d: %s (%d nodes)", N, res.status, res.nodes_explored)
        if res.arrows is None:
            raise SearchInconclusive(res)
        if res.arrows:
            return RamseyScan(N, tuple(results))
    return RamseyScan(None, tuple(results))


def local_search_witness(setting: str, N: int, r: int, pattern: DoubleStarPattern,
                         seed: int = 0, max_steps: int = 10_000) -> Optional[Witness]:
    """Hill-climb from a random coloring by recoloring an edge of some monochromatic copy.

    Returns a verified witness or None. It never proves that N arrows the pattern.
    """
    if setting not in SETTINGS:
        raise ValueError(f"setting must be one of {SETTINGS}, got {setting!r}")
    rng = random.Random(seed)
    _, edges = _layout(setting, N)
    colors = [rng.randint(1, r) for _ in edges]

    def build(cs: list[int]) -> Union[CompleteColoring, BipartiteColoring]:
        if setting == "complete":
            return CompleteColoring(N, r, tuple(cs))
        return BipartiteColoring(N, N, r, tuple(cs))

    index = {e: k for k, e in enumerate(edges)}
    for _ in range(max_steps + 1):
        coloring = build(colors)
        hit = find_mono_double_star(coloring, pattern)
        if hit is None:
            w = Witness(coloring, Claim.double_star(pattern.n, pattern.m),
                        Provenance("local-search", {"setting": setting, "N": N, "r": r, "seed": seed}))
            return w if verify_witness(w).valid else None
        if r == 1:
            return None
        color, star = hit
        a, b = rng.choice(star.edges)
        k = index[(min(a, b), max(a, b))]
        colors[k] = rng.choice([c for c in range(1, r + 1) if c != color])
    return None

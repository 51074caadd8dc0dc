"""Independent reference implementations used only by the tests.

Nothing here imports the detectors or the search engine; each oracle works
from definitions by brute force.
"""

from __future__ import annotations

import itertools
from decimal import Decimal, localcontext

import networkx as nx


def brute_double_star(adj: dict[int, set[int]], n: int, m: int):
    """Some (u, v, leaves_u, leaves_v) copy of S_{n,m}, by enumerating leaf sets."""
    for u in sorted(adj):
        for v in sorted(adj[u]):
            for lu in itertools.combinations(sorted(adj[u] - {v}), n):
                rest = adj[v] - {u} - set(lu)
                for lv in itertools.combinations(sorted(rest), m):
                    return u, v, lu, lv
    return None


def adjacency(n_vertices: int, edges) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(n_vertices)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def color_classes(setting: str, size: int, colors, r: int) -> list[dict[int, set[int]]]:
    if setting == "complete":
        pairs = [(u, v) for u in range(size) for v in range(u + 1, size)]
        n_vertices = size
    else:
        pairs = [(x, size + y) for x in range(size) for y in range(size)]
        n_vertices = 2 * size
    return [
        adjacency(n_vertices, [p for p, c in zip(pairs, colors) if c == i]) for i in range(1, r + 1)
    ]


def brute_arrows(setting: str, size: int, r: int, n: int, m: int) -> bool:
    """Every r-coloring, unpruned and without symmetry breaking."""
    n_edges = size * (size - 1) // 2 if setting == "complete" else size * size
    for colors in itertools.product(range(1, r + 1), repeat=n_edges):
        if all(brute_double_star(g, n, m) is None for g in color_classes(setting, size, colors, r)):
            return False
    return True


def component_orders(setting: str, size: int, colors, r: int) -> list[int]:
    """Orders of all monochromatic components, through networkx."""
    out = []
    for adj in color_classes(setting, size, colors, r):
        g = nx.Graph()
        g.add_nodes_from(adj)
        g.add_edges_from((a, b) for a in adj for b in adj[a])
        out += [len(c) for c in nx.connected_components(g)]
    return out


def odd_side_size(r: int, n: int) -> int:
    """floor((r - 1 + sqrt(r^2 - 1)/2) n) - (r+1)/2 with 60-digit decimals."""
    with localcontext() as ctx:
        ctx.prec = 60
        alpha = Decimal(r - 1) + Decimal(r * r - 1).sqrt() / 2
        return int((alpha * n).to_integral_value(rounding="ROUND_FLOOR")) - (r + 1) // 2


def decimal_root(coeffs, lo: Decimal, hi: Decimal, digits: int = 30) -> Decimal:
    """Root of a polynomial (highest degree first) in [lo, hi] by bisection."""
    def f(x):
        acc = Decimal(0)
        for c in coeffs:
            acc = acc * x + c
        return acc

    with localcontext() as ctx:
        ctx.prec = digits + 10
        flo = f(lo)
        for _ in range(4 * digits):
            mid = (lo + hi) / 2
            if (f(mid) < 0) == (flo < 0):
                lo = mid
            else:
                hi = mid
        return hi

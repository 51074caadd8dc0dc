"""Double-star detection and the constructive finders behind the degree arguments.

The workhorse is the edge criterion: the edge uv carries S_{n,m} with u taking
the n leaves iff, writing A = N(u) - v and B = N(v) - u,

    |A| >= n,  |B| >= m,  |A | B| >= n + m.

Necessity is counting.  Sufficiency: give u the private part A - B, give v the
private part B - A, then split A & B to cover both deficits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .graph import DoubleStarPattern, Graph, iter_bits

__all__ = [
    "DegreeClassification",
    "DoubleStarWitness",
    "PeelResult",
    "SLReport",
    "classify_degrees",
    "contains_double_star",
    "dense_double_star",
    "degree_peel",
    "double_star_at_edge",
    "edge_hosts",
    "find_mono_double_star",
    "is_double_star_in",
    "monochromatic_components",
    "obs_sl_report",
    "split_patterns",
]


@dataclass(frozen=True)
class DoubleStarWitness:
    center_u: int
    center_v: int
    leaves_u: tuple[int, ...]
    leaves_v: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center_u, self.center_v) + self.leaves_u + self.leaves_v

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = [(self.center_u, self.center_v)]
        out += [(self.center_u, w) for w in self.leaves_u]
        out += [(self.center_v, w) for w in self.leaves_v]
        return out

    def to_json(self) -> dict:
        return {
            "center_u": self.center_u,
            "center_v": self.center_v,
            "leaves_u": list(self.leaves_u),
            "leaves_v": list(self.leaves_v),
        }


def is_double_star_in(g: Graph, w: DoubleStarWitness, pattern: DoubleStarPattern) -> bool:
    """Re-check a witness against its host graph and the pattern sizes."""
    if len(w.leaves_u) != pattern.n or len(w.leaves_v) != pattern.m:
        return False
    if len(set(w.vertices)) != pattern.order:
        return False
    return all(g.has_edge(a, b) for a, b in w.edges)


def edge_hosts(adj: Sequence[int], u: int, v: int, n: int, m: int) -> bool:
    """Whether the edge uv (either orientation) is the central edge of some S_{n,m}.

    Raw bitset form; the search engine calls this on its working rows.
    """
    a_set = adj[u] & ~(1 << v)
    b_set = adj[v] & ~(1 << u)
    a = a_set.bit_count()
    b = b_set.bit_count()
    if a < m or b < m or (a < n and b < n):
        return False
    return (a_set | b_set).bit_count() >= n + m


def _lowest(bits: int, k: int) -> tuple[int, ...]:
    out = []
    for w in iter_bits(bits):
        if len(out) == k:
            break
        out.append(w)
    return tuple(out)


def double_star_at_edge(g: Graph, u: int, v: int, n: int, m: int) -> Optional[DoubleStarWitness]:
    """S_{n,m} on the edge uv with u taking n leaves, allocated lowest index first."""
    if not g.has_edge(u, v):
        return None
    a_set = g.adj[u] & ~(1 << v)
    b_set = g.adj[v] & ~(1 << u)
    if a_set.bit_count() < n or b_set.bit_count() < m or (a_set | b_set).bit_count() < n + m:
        return None
    shared = a_set & b_set
    leaves_u = _lowest(a_set & ~shared, n)
    leaves_v = _lowest(b_set & ~shared, m)
    need_u = n - len(leaves_u)
    extra = _lowest(shared, need_u + m - len(leaves_v))
    leaves_u = tuple(sorted(leaves_u + extra[:need_u]))
    leaves_v = tuple(sorted(leaves_v + extra[need_u:]))
    return DoubleStarWitness(u, v, leaves_u, leaves_v)


def contains_double_star(g: Graph, pattern: DoubleStarPattern) -> Optional[DoubleStarWitness]:
    """First copy of ``pattern`` in ``g``, or ``None``.

    Central edges are scanned lexicographically; on each edge (u, v) with u < v
    the orientation giving u the n leaves is tried first.
    """
    n, m = pattern.n, pattern.m
    adj = g.adj
    for u in range(g.n_vertices):
        du = adj[u].bit_count()
        if du <= m:
            continue
        for v in iter_bits(adj[u] >> (u + 1) << (u + 1)):
            if not edge_hosts(adj, u, v, n, m):
                continue
            found = double_star_at_edge(g, u, v, n, m)
            if found is None:
                found = double_star_at_edge(g, v, u, n, m)
            return found
    return None


def find_mono_double_star(coloring, pattern: DoubleStarPattern):
    """``(color, witness)`` for the lowest color containing ``pattern``, else ``None``."""
    for color in range(1, coloring.r + 1):
        found = contains_double_star(coloring.color_graph(color), pattern)
        if found is not None:
            return color, found
    return None


def split_patterns(order: int) -> list[DoubleStarPattern]:
    """Every S_{n1,n2} with n1 >= n2 >= 1 on ``order`` vertices."""
    total = order - 2
    return [DoubleStarPattern(total - k, k) for k in range(1, total // 2 + 1)]


@dataclass(frozen=True)
class PeelResult:
    vertices: frozenset[int]
    graph: Graph

    @property
    def min_degree(self) -> int:
        return min(self.graph.degree(v) for v in self.vertices)

    @property
    def average_degree(self) -> Fraction:
        return Fraction(2 * self.graph.num_edges, len(self.vertices))


def _as_fraction(d) -> Fraction:
    # floats such as 1.8 are meant as the nearby short decimal, not the binary value
    if isinstance(d, float):
        return Fraction(d).limit_denominator(10**9)
    return Fraction(d)


def degree_peel(g: Graph, d) -> PeelResult:
    """Delete the lowest-index vertex of degree <= d/2 until none is left.

    Requires average degree >= d.  Each deletion removes at most d/2 edges, so
    the average degree never drops below d and the result is never empty.
    """
    d = _as_fraction(d)
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    if g.n_vertices == 0 or Fraction(2 * g.num_edges, g.n_vertices) < d:
        raise ValueError(f"average degree of G is below d = {d}")
    alive = (1 << g.n_vertices) - 1
    rows = list(g.adj)
    half = d / 2
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if (rows[v] & alive).bit_count() <= half:
                alive &= ~(1 << v)
                changed = True
                break
    kept = frozenset(iter_bits(alive))
    result = PeelResult(kept, g.induced(kept))
    assert kept and result.min_degree > half and result.average_degree >= d
    return result


def dense_double_star(g: Graph, r: int, n: int) -> DoubleStarWitness:
    """Constructive S_{n,n} in a graph on r*2n+2 vertices with >= C(r*2n+2, 2)/r edges."""
    size = r * 2 * n + 2
    if g.n_vertices != size:
        raise ValueError(f"expected {size} vertices, got {g.n_vertices}")
    if r * g.num_edges * 2 < size * (size - 1):
        raise ValueError(f"need at least C({size},2)/{r} edges, got {g.num_edges}")
    peeled = degree_peel(g, Fraction(2 * n) + Fraction(1, r)).graph
    u = next(v for v in range(size) if peeled.degree(v) >= 2 * n + 1)
    v = next(iter_bits(peeled.adj[u]))
    found = double_star_at_edge(peeled, u, v, n, n)
    assert found is not None
    return found


@dataclass(frozen=True)
class DegreeClassification:
    large: frozenset[int]
    medium: frozenset[int]
    small: frozenset[int]


def classify_degrees(g: Graph, n: int) -> DegreeClassification:
    """Split vertices by degree: >= 2n+1, in [n+1, 2n], and <= n."""
    large, medium, small = set(), set(), set()
    for v in range(g.n_vertices):
        d = g.degree(v)
        (large if d >= 2 * n + 1 else medium if d >= n + 1 else small).add(v)
    return DegreeClassification(frozenset(large), frozenset(medium), frozenset(small))


@dataclass(frozen=True)
class SLReport:
    classification: DegreeClassification
    has_L_to_LM_edge: bool
    sum_L_degrees: int
    e_L_S: int


def obs_sl_report(g: Graph, n: int) -> SLReport:
    """Large-vertex bookkeeping: an L to L-or-M edge, or all L edges going to S."""
    if g.n_vertices < 2 * n + 2:
        raise ValueError(f"need at least {2 * n + 2} vertices")
    cls = classify_degrees(g, n)
    lm = sum(1 << v for v in cls.large | cls.medium)
    s_mask = sum(1 << v for v in cls.small)
    has_edge = any(g.adj[v] & lm for v in cls.large)
    return SLReport(
        cls,
        has_edge,
        sum(g.degree(v) for v in cls.large),
        sum((g.adj[v] & s_mask).bit_count() for v in cls.large),
    )


def monochromatic_components(coloring) -> dict[int, list[tuple[int, ...]]]:
    """Connected components of each color class, including isolated vertices."""
    out: dict[int, list[tuple[int, ...]]] = {}
    for color in range(1, coloring.r + 1):
        rows = coloring.color_graph(color).adj
        unseen = (1 << coloring.num_vertices) - 1
        comps = []
        while unseen:
            start = unseen & -unseen
            comp = frontier = start
            while frontier:
                reach = 0
                for w in iter_bits(frontier):
                    reach |= rows[w]
                frontier = reach & ~comp
                comp |= frontier
            unseen &= ~comp
            comps.append(tuple(iter_bits(comp)))
        out[color] = comps
    return out

"""Edge-colored complete and complete-bipartite graphs, plus the witness format.

Vertices are 0-based.  Colors are 1-based (``1..r``).  A bipartite coloring on
parts of sizes ``x_size`` and ``y_size`` numbers its vertices globally: the
x-side is ``0..x_size-1`` and the y-side is ``x_size..x_size+y_size-1``.

Adjacency rows are Python ints used as bitsets (bit ``w`` set means ``w`` is a
neighbor), so neighborhood unions and sizes are single ``|`` and
``bit_count()`` calls.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Union

__all__ = [
    "BipartiteColoring",
    "Claim",
    "ColorSubgraphView",
    "ColoringError",
    "CompleteColoring",
    "DoubleStarPattern",
    "Graph",
    "Provenance",
    "Witness",
    "WitnessFormatError",
    "color_degree",
    "deserialize_witness",
    "iter_bits",
    "pair_index",
    "serialize_witness",
]


class ColoringError(ValueError):
    """A coloring violates its type invariants."""


class WitnessFormatError(ValueError):
    """Witness bytes could not be parsed or validated."""


def iter_bits(x: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class DoubleStarPattern:
    """The double star S_{n,m}: centers joined by an edge, with n and m leaves."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise TypeError("double star leaf counts must be integers")
        if self.m < 1:
            raise ValueError(f"S_{{{self.n},{self.m}}}: m must be at least 1")
        if self.n < self.m:
            raise ValueError(f"S_{{{self.n},{self.m}}}: need n >= m")

    @property
    def order(self) -> int:
        return self.n + self.m + 2

    def __str__(self) -> str:
        return f"S_{{{self.n},{self.m}}}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n_vertices-1`` with bitset rows."""

    n_vertices: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n_vertices
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge {(u, v)} out of range for {n_vertices} vertices")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n_vertices, tuple(rows))

    @classmethod
    def complete(cls, n_vertices: int) -> Graph:
        full = (1 << n_vertices) - 1
        return cls(n_vertices, tuple(full & ~(1 << v) for v in range(n_vertices)))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.adj):
            yield from ((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Subgraph induced on ``vertices``; other vertices stay as isolated labels."""
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return Graph(
            self.n_vertices,
            tuple(row & mask if mask >> v & 1 else 0 for v, row in enumerate(self.adj)),
        )


def pair_index(u: int, v: int, n_vertices: int) -> int:
    """Position of the pair {u, v} in row-major upper-triangular order."""
    if u > v:
        u, v = v, u
    return u * (2 * n_vertices - u - 1) // 2 + (v - u - 1)


def _check_colors(colors: tuple[int, ...], r: int, describe) -> None:
    for k, c in enumerate(colors):
        if type(c) is not int or not 1 <= c <= r:
            raise ColoringError(f"edge {describe(k)} has color {c!r}, expected 1..{r}")


@dataclass(frozen=True)
class CompleteColoring:
    """An r-coloring of the edges of K_N, stored upper-triangular row-major."""

    n_vertices: int
    r: int
    colors: tuple[int, ...]

    setting = "complete"

    def __post_init__(self) -> None:
        if self.n_vertices < 1 or self.r < 1:
            raise ColoringError("need at least one vertex and one color")
        object.__setattr__(self, "colors", tuple(self.colors))
        expected = self.n_vertices * (self.n_vertices - 1) // 2
        if len(self.colors) != expected:
            raise ColoringError(
                f"K_{self.n_vertices} has {expected} edges but {len(self.colors)} colors were given"
            )
        _check_colors(self.colors, self.r, lambda k: self.pairs[k])

    @classmethod
    def from_function(cls, n_vertices: int, r: int, color_of) -> CompleteColoring:
        return cls(
            n_vertices,
            r,
            tuple(color_of(u, v) for u in range(n_vertices) for v in range(u + 1, n_vertices)),
        )

    @classmethod
    def monochromatic(cls, n_vertices: int, r: int = 1, color: int = 1) -> CompleteColoring:
        return cls(n_vertices, r, (color,) * (n_vertices * (n_vertices - 1) // 2))

    @property
    def num_vertices(self) -> int:
        return self.n_vertices

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        n = self.n_vertices
        return tuple((u, v) for u in range(n) for v in range(u + 1, n))

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no edge from a vertex to itself")
        return self.colors[pair_index(u, v, self.n_vertices)]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), c in zip(self.pairs, self.colors):
            yield u, v, c

    @cached_property
    def _rows(self) -> tuple[tuple[int, ...], ...]:
        rows = [[0] * self.n_vertices for _ in range(self.r + 1)]
        for (u, v), c in zip(self.pairs, self.colors):
            row = rows[c]
            row[u] |= 1 << v
            row[v] |= 1 << u
        return tuple(tuple(row) for row in rows)

    def color_graph(self, i: int) -> Graph:
        """The spanning subgraph formed by the edges of color ``i``."""
        return Graph(self.n_vertices, self._rows[i])

    def view(self, i: int) -> ColorSubgraphView:
        return ColorSubgraphView(self, i)

    def host_degree(self, v: int) -> int:
        return self.n_vertices - 1


@dataclass(frozen=True)
class BipartiteColoring:
    """An r-coloring of K_{Nx,Ny}, stored as a row-major Nx-by-Ny matrix."""

    x_size: int
    y_size: int
    r: int
    colors: tuple[int, ...]

    setting = "bipartite"

    def __post_init__(self) -> None:
        if self.x_size < 0 or self.y_size < 0 or self.r < 1:
            raise ColoringError("part sizes must be non-negative and r positive")
        object.__setattr__(self, "colors", tuple(self.colors))
        expected = self.x_size * self.y_size
        if len(self.colors) != expected:
            raise ColoringError(
                f"K_{{{self.x_size},{self.y_size}}} has {expected} edges "
                f"but {len(self.colors)} colors were given"
            )
        _check_colors(
            self.colors, self.r, lambda k: (f"x{k // self.y_size}", f"y{k % self.y_size}")
        )

    @classmethod
    def from_function(cls, x_size: int, y_size: int, r: int, color_of) -> BipartiteColoring:
        return cls(
            x_size, y_size, r, tuple(color_of(x, y) for x in range(x_size) for y in range(y_size))
        )

    @classmethod
    def monochromatic(cls, x_size: int, y_size: int, r: int = 1, color: int = 1) -> BipartiteColoring:
        return cls(x_size, y_size, r, (color,) * (x_size * y_size))

    @property
    def num_vertices(self) -> int:
        return self.x_size + self.y_size

    def y_vertex(self, y: int) -> int:
        """Global vertex id of the y-side vertex with local index ``y``."""
        return self.x_size + y

    def color(self, x: int, y: int) -> int:
        """Color of the edge between x-side index ``x`` and y-side index ``y``."""
        return self.colors[x * self.y_size + y]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Edges as (global x id, global y id, color), row-major."""
        it = iter(self.colors)
        for x in range(self.x_size):
            for y in range(self.x_size, self.x_size + self.y_size):
                yield x, y, next(it)

    @cached_property
    def _rows(self) -> tuple[tuple[int, ...], ...]:
        rows = [[0] * self.num_vertices for _ in range(self.r + 1)]
        for x, y, c in self.edges():
            row = rows[c]
            row[x] |= 1 << y
            row[y] |= 1 << x
        return tuple(tuple(row) for row in rows)

    def color_graph(self, i: int) -> Graph:
        return Graph(self.num_vertices, self._rows[i])

    def view(self, i: int) -> ColorSubgraphView:
        return ColorSubgraphView(self, i)

    def host_degree(self, v: int) -> int:
        return self.y_size if v < self.x_size else self.x_size

    def restrict(self, xs: Iterable[int], ys: Iterable[int]) -> BipartiteColoring:
        """Sub-coloring induced on the given local x and y indices (in that order)."""
        xs, ys = list(xs), list(ys)
        return BipartiteColoring(
            len(xs), len(ys), self.r, tuple(self.color(x, y) for x in xs for y in ys)
        )


Coloring = Union[CompleteColoring, BipartiteColoring]


def _resolve_vertex(c: Coloring, v) -> int:
    if isinstance(v, tuple):
        side, k = v
        if not isinstance(c, BipartiteColoring) or side not in ("x", "y"):
            raise ValueError(f"bad vertex {v!r}")
        limit = c.x_size if side == "x" else c.y_size
        if not 0 <= k < limit:
            raise ValueError(f"vertex {v!r} out of range")
        return k if side == "x" else c.x_size + k
    if not 0 <= v < c.num_vertices:
        raise ValueError(f"vertex {v} out of range 0..{c.num_vertices - 1}")
    return v


def color_degree(c: Coloring, v, i: int) -> int:
    """Number of edges of color ``i`` at ``v``.

    For bipartite colorings ``v`` is a global id or a ``("x"|"y", index)`` pair.
    """
    if not 1 <= i <= c.r:
        raise ValueError(f"color {i} out of range 1..{c.r}")
    return c.color_graph(i).degree(_resolve_vertex(c, v))


class ColorSubgraphView:
    """Read-only view of one color class of a coloring."""

    def __init__(self, coloring: Coloring, color: int):
        if not 1 <= color <= coloring.r:
            raise ValueError(f"color {color} out of range 1..{coloring.r}")
        self.coloring = coloring
        self.color = color
        self.graph = coloring.color_graph(color)

    def degree(self, v) -> int:
        return self.graph.degree(_resolve_vertex(self.coloring, v))

    def adjacent(self, u, v) -> bool:
        return self.graph.has_edge(_resolve_vertex(self.coloring, u), _resolve_vertex(self.coloring, v))

    def neighbors(self, v) -> list[int]:
        return self.graph.neighbors(_resolve_vertex(self.coloring, v))

    def __repr__(self) -> str:
        return f"ColorSubgraphView(color={self.color}, n_vertices={self.graph.n_vertices})"


# --- witness format -------------------------------------------------------

CLAIM_KINDS = ("double_star", "all_double_stars_on", "component_of_order")


@dataclass(frozen=True)
class Claim:
    """What a witness coloring is claimed to avoid."""

    avoids: str
    n: int | None = None
    m: int | None = None
    order: int | None = None

    def __post_init__(self) -> None:
        if self.avoids not in CLAIM_KINDS:
            raise ValueError(f"unknown claim kind {self.avoids!r}")
        if self.avoids == "double_star":
            DoubleStarPattern(self.n, self.m)
            if self.order is not None:
                raise ValueError("double_star claims carry n and m, not order")
        else:
            if not isinstance(self.order, int) or self.order < 2:
                raise ValueError(f"{self.avoids} claim needs an integer order >= 2")
            if self.n is not None or self.m is not None:
                raise ValueError(f"{self.avoids} claims carry only an order")

    @classmethod
    def double_star(cls, n: int, m: int) -> Claim:
        return cls("double_star", n=n, m=m)

    @classmethod
    def all_double_stars_on(cls, order: int) -> Claim:
        return cls("all_double_stars_on", order=order)

    @classmethod
    def component_of_order(cls, order: int) -> Claim:
        return cls("component_of_order", order=order)

    @property
    def pattern(self) -> DoubleStarPattern:
        return DoubleStarPattern(self.n, self.m)

    def to_json(self) -> dict[str, Any]:
        if self.avoids == "double_star":
            return {"avoids": self.avoids, "n": self.n, "m": self.m}
        return {"avoids": self.avoids, "order": self.order}


@dataclass(frozen=True)
class Provenance:
    construction: str
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Witness:
    """A coloring together with the structure it is claimed to avoid.

    A witness is only trustworthy after ``constructions.verify_witness`` accepts it.
    """

    coloring: Coloring
    claim: Claim
    provenance: Provenance = field(default_factory=lambda: Provenance("unknown"))

    def to_json(self) -> dict[str, Any]:
        c = self.coloring
        doc: dict[str, Any] = {"setting": c.setting, "r": c.r}
        if isinstance(c, CompleteColoring):
            doc["n_vertices"] = c.n_vertices
        else:
            doc["x_size"] = c.x_size
            doc["y_size"] = c.y_size
        doc["colors"] = list(c.colors)
        doc["claim"] = self.claim.to_json()
        doc["provenance"] = {
            "construction": self.provenance.construction,
            "params": dict(self.provenance.params),
        }
        return doc


def serialize_witness(w: Witness) -> bytes:
    return (json.dumps(w.to_json()) + "\n").encode("utf-8")


def _require_int(doc: dict, key: str, minimum: int = 0) -> int:
    if key not in doc:
        raise WitnessFormatError(f"missing field {key!r}")
    value = doc[key]
    if type(value) is not int or value < minimum:
        raise WitnessFormatError(f"field {key!r} must be an integer >= {minimum}, got {value!r}")
    return value


def deserialize_witness(data: bytes | str) -> Witness:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise WitnessFormatError(f"witness is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise WitnessFormatError("witness must be a JSON object")

    setting = doc.get("setting")
    r = _require_int(doc, "r", 1)
    colors = doc.get("colors")
    if not isinstance(colors, list):
        raise WitnessFormatError("field 'colors' must be a list")

    if setting == "complete":
        n_vertices = _require_int(doc, "n_vertices", 1)
        expected = n_vertices * (n_vertices - 1) // 2
        kind = f"K_{n_vertices}"
    elif setting == "bipartite":
        x_size = _require_int(doc, "x_size")
        y_size = _require_int(doc, "y_size")
        expected = x_size * y_size
        kind = f"K_{{{x_size},{y_size}}}"
    else:
        raise WitnessFormatError(f"unknown setting {setting!r}")

    if len(colors) < expected:
        raise WitnessFormatError(
            f"incomplete coloring: {kind} has {expected} edges, only {len(colors)} colors listed"
        )
    if len(colors) > expected:
        raise WitnessFormatError(
            f"size mismatch: {kind} has {expected} edges, {len(colors)} colors listed"
        )

    try:
        if setting == "complete":
            coloring: Coloring = CompleteColoring(n_vertices, r, tuple(colors))
        else:
            coloring = BipartiteColoring(x_size, y_size, r, tuple(colors))
    except ColoringError as exc:
        raise WitnessFormatError(str(exc)) from exc

    raw_claim = doc.get("claim")
    if not isinstance(raw_claim, dict):
        raise WitnessFormatError("missing or malformed 'claim'")
    try:
        claim = Claim(
            raw_claim.get("avoids"),
            n=raw_claim.get("n"),
            m=raw_claim.get("m"),
            order=raw_claim.get("order"),
        )
    except (TypeError, ValueError) as exc:
        raise WitnessFormatError(f"bad claim: {exc}") from exc

    raw_prov = doc.get("provenance", {"construction": "unknown", "params": {}})
    if not isinstance(raw_prov, dict) or not isinstance(raw_prov.get("params", {}), dict):
        raise WitnessFormatError("malformed 'provenance'")
    provenance = Provenance(str(raw_prov.get("construction", "unknown")), dict(raw_prov.get("params", {})))
    return Witness(coloring, claim, provenance)

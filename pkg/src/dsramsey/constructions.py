"""Explicit lower-bound colorings, each returned as a :class:`Witness`.

None of these generators is trusted on its own: :func:`verify_witness` re-checks
the claim of every witness with the detectors in :mod:`dsramsey.detect`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Any, Optional

from .detect import find_mono_double_star, monochromatic_components, split_patterns
from .geometry import affine_plane, affine_plane_available
from .graph import (
    BipartiteColoring,
    Claim,
    CompleteColoring,
    Provenance,
    Witness,
)

__all__ = [
    "ConstructionError",
    "Part",
    "PartSpec",
    "VerificationReport",
    "affine_blowup_coloring",
    "audit_labels",
    "bipartite_like_coloring",
    "lemma_2col",
    "lemma_2col_witness",
    "proper_blowup_bipartite",
    "small_even",
    "small_odd",
    "small_odd_sizes",
    "verify_witness",
]


class ConstructionError(ValueError):
    """Parameters outside a construction's range, or an infeasible size split."""


# --- complete-graph constructions ------------------------------------------


def affine_blowup_coloring(r: int, n: int) -> Witness:
    """r-coloring of K_{(r-1)2n+1} with every monochromatic component of order <= 2n+1.

    Each point of AG(2, r-1) becomes a blob of 2n/(r-1) vertices (point 0 gets
    one extra).  Edges between blobs take the parallel class of the line through
    their points; edges inside a blob take class 0, the class of color 1.
    """
    if r < 3 or n < 1:
        raise ConstructionError("affine blowup needs r >= 3 and n >= 1")
    q = r - 1
    if not affine_plane_available(q):
        raise ConstructionError(f"no affine plane available of order {q}")
    if (2 * n) % q:
        raise ConstructionError(f"r-1 = {q} must divide 2n = {2 * n}")
    plane = affine_plane(q)
    blob = 2 * n // q
    point_of = [0] * (blob + 1)
    for p in range(1, q * q):
        point_of += [p] * blob
    size = len(point_of)
    assert size == q * 2 * n + 1

    def color(u: int, v: int) -> int:
        a, b = point_of[u], point_of[v]
        return 1 if a == b else plane.class_of(a, b) + 1

    coloring = CompleteColoring.from_function(size, r, color)
    return Witness(
        coloring,
        Claim.component_of_order(2 * n + 2),
        Provenance("affine-blowup", {"r": r, "n": n, "plane_order": q, "blob_size": blob}),
    )


def bipartite_like_coloring(r: int, n: int) -> Witness:
    """r-coloring of K_{(r-1)2n} built from 2r-2 sets of order n.

    Color r fills each X_i u X_{i+r-1}.  Color i joins X_i to the next r-2 sets
    and X_{i+r-1} to the r-2 sets after it (indices mod 2r-2).  Every color
    class is then a union of K_{2n}'s or of K_{n,(r-2)n}'s.
    """
    if r < 3 or n < 1:
        raise ConstructionError("the 2r-2 set construction needs r >= 3 and n >= 1")
    sets = 2 * r - 2

    def wrap(a: int) -> int:
        return (a - 1) % sets + 1

    rule: dict[tuple[int, int], int] = {}

    def assign(a: int, b: int, c: int) -> None:
        key = (min(a, b), max(a, b))
        if key in rule:
            raise ConstructionError(f"internal: set pair {key} colored twice")
        rule[key] = c

    for i in range(1, r):
        assign(i, i, r)
        assign(i + r - 1, i + r - 1, r)
        assign(i, i + r - 1, r)
        for step in range(1, r - 1):
            assign(i, wrap(i + step), i)
            assign(i + r - 1, wrap(i + r - 1 + step), i)
    if len(rule) != sets * (sets + 1) // 2:
        raise ConstructionError("internal: some set pair received no color")

    size = sets * n
    coloring = CompleteColoring.from_function(
        size, r, lambda u, v: rule[u // n + 1, v // n + 1]
    )
    return Witness(
        coloring,
        Claim.double_star(n, n),
        Provenance("two-r-minus-two", {"r": r, "n": n}),
    )


# --- bipartite constructions -----------------------------------------------


def proper_blowup_bipartite(r: int, n: int) -> Witness:
    """Blow up the proper r-edge-coloring (i + j) mod r of K_{r,r} by a factor n."""
    if r < 1 or n < 1:
        raise ConstructionError("proper blowup needs r >= 1 and n >= 1")
    size = r * n
    coloring = BipartiteColoring.from_function(
        size, size, r, lambda x, y: (x // n + y // n) % r + 1
    )
    return Witness(coloring, Claim.double_star(n, 1), Provenance("proper-blowup", {"r": r, "n": n}))


def _two_color_rows(t: int, s: int, n: int) -> list[list[int]]:
    # y_i sends color 2 to x_{(i-1)n+1}, ..., x_{in}, indices mod t
    rows = [[1] * s for _ in range(t)]
    for i in range(s):
        for j in range(n):
            rows[(i * n + j) % t][i] = 2
    return rows


def lemma_2col(t: int, s: int, n: int) -> BipartiteColoring:
    """Two-coloring of K_{t,s} with d_1 <= n on the t-side and d_2 <= n on the s-side."""
    if n < 2:
        raise ConstructionError(f"need n >= 2, got n = {n}")
    if not s > n:
        raise ConstructionError(f"need s > n, got s = {s}, n = {n}")
    if not t >= s:
        raise ConstructionError(f"need t >= s, got t = {t}, s = {s}")
    if s - s * n // t > n:
        raise ConstructionError(
            f"need s - floor(s*n/t) <= n, got {s} - {s * n // t} = {s - s * n // t} > {n}"
        )
    rows = _two_color_rows(t, s, n)
    return BipartiteColoring(t, s, 2, tuple(c for row in rows for c in row))


def lemma_2col_witness(t: int, s: int, n: int) -> Witness:
    # a center of a color-i S_{n,n} needs color-i degree n+1 on both sides
    return Witness(lemma_2col(t, s, n), Claim.double_star(n, n),
                   Provenance("lemma-2col", {"t": t, "s": s, "n": n}))


@dataclass(frozen=True)
class Part:
    name: str
    side: str
    labels: tuple[int, ...]
    size: int

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "side": self.side, "labels": list(self.labels), "size": self.size}


@dataclass(frozen=True)
class PartSpec:
    """Named vertex parts of both sides; vertices are laid out part by part."""

    x_parts: tuple[Part, ...]
    y_parts: tuple[Part, ...]

    def __post_init__(self) -> None:
        if sum(p.size for p in self.x_parts) != sum(p.size for p in self.y_parts):
            raise ConstructionError("part sizes of the two sides differ")

    @property
    def side_size(self) -> int:
        return sum(p.size for p in self.x_parts)

    def labels_by_vertex(self) -> list[tuple[int, ...]]:
        """Labels of every global vertex id (x side first)."""
        out: list[tuple[int, ...]] = []
        for part in self.x_parts + self.y_parts:
            out += [part.labels] * part.size
        return out

    def to_json(self) -> list[dict[str, Any]]:
        return [p.to_json() for p in self.x_parts + self.y_parts]

    @classmethod
    def from_json(cls, doc) -> PartSpec:
        parts = [Part(d["name"], d["side"], tuple(d["labels"]), d["size"]) for d in doc]
        return cls(
            tuple(p for p in parts if p.side == "x"), tuple(p for p in parts if p.side == "y")
        )


def _small_parts(r: int, top_a: int, x_singles: list[int], x_doubles: list[int],
                 y_singles: list[int], y_doubles: list[int]) -> PartSpec:
    # colors split into A = 1..top_a and B = top_a+1..r
    a_colors = range(1, top_a + 1)
    b_colors = range(top_a + 1, r + 1)
    x_parts = [Part(f"X_{i}", "x", (i,), size) for i, size in zip(a_colors, x_singles)]
    x_parts += [Part(f"X_{j},{r}", "x", (j, r), size) for j, size in zip(b_colors[:-1], x_doubles)]
    y_parts = [Part(f"Y_{j}", "y", (j,), size) for j, size in zip(b_colors, y_singles)]
    y_parts += [Part(f"Y_{i},{top_a}", "y", (i, top_a), size) for i, size in zip(a_colors[:-1], y_doubles)]
    return PartSpec(tuple(x_parts), tuple(y_parts))


def _assemble_small(r: int, n: int, top_a: int, layout: PartSpec) -> BipartiteColoring:
    size = layout.side_size
    matrix = [[0] * size for _ in range(size)]
    x0 = 0
    for xp in layout.x_parts:
        y0 = 0
        for yp in layout.y_parts:
            if len(xp.labels) == 1 and len(yp.labels) == 1:
                i, j = xp.labels[0], yp.labels[0]
                # lemma color 1 -> j (at most n at X_i), lemma color 2 -> i (at most n at Y_j)
                block = _two_color_rows(xp.size, yp.size, n)
                if any(row.count(1) > n for row in block) or any(
                    sum(row[c] == 2 for row in block) > n for c in range(yp.size)
                ):
                    raise ConstructionError(
                        f"block {xp.name} x {yp.name} of sizes {xp.size} x {yp.size} breaks the degree bound"
                    )
                for a, row in enumerate(block):
                    for b, c in enumerate(row):
                        matrix[x0 + a][y0 + b] = j if c == 1 else i
            else:
                if len(xp.labels) == 2 and len(yp.labels) == 1:
                    j, j2 = xp.labels[0], yp.labels[0]
                    color = r if j == j2 else j
                elif len(xp.labels) == 1 and len(yp.labels) == 2:
                    i, j = xp.labels[0], yp.labels[0]
                    color = top_a if j == i else j
                else:
                    color = yp.labels[0]
                for a in range(xp.size):
                    matrix[x0 + a][y0:y0 + yp.size] = [color] * yp.size
            y0 += yp.size
        x0 += xp.size
    return BipartiteColoring(size, size, r, tuple(c for row in matrix for c in row))


def _spread(total: int, parts: int) -> list[int]:
    """Split ``total`` into ``parts`` near-equal shares, larger shares first."""
    if parts == 0:
        return []
    q, rem = divmod(total, parts)
    return [q + 1 if i < rem else q for i in range(parts)]


def small_even(r: int, n: int) -> Witness:
    """K_{(3k-1)n,(3k-1)n} colored with r = 2k colors and no monochromatic S_{n,n}."""
    if r < 4 or r % 2:
        raise ConstructionError(f"small-even needs an even r >= 4, got r = {r}")
    if n < 2:
        raise ConstructionError(f"small-even needs n >= 2 (two-color blocks), got n = {n}")
    k = r // 2
    layout = _small_parts(r, k, [2 * n] * k, [n] * (k - 1), [2 * n] * k, [n] * (k - 1))
    coloring = _assemble_small(r, n, k, layout)
    return Witness(
        coloring,
        Claim.double_star(n, n),
        Provenance("small-even", {"r": r, "n": n, "N": layout.side_size, "parts": layout.to_json()}),
    )


def _ceil_sqrt_ratio(num: int, den: int) -> int:
    # smallest c >= 0 with c^2 * den >= num
    c = isqrt(num // den)
    while c * c * den < num:
        c += 1
    return c


def _floor_sqrt_ratio(num: int, den: int) -> int:
    # largest c >= 0 with c^2 * den <= num
    c = isqrt(num // den) + 1
    while c * c * den > num:
        c -= 1
    return c


def small_odd_sizes(r: int, n: int) -> dict[str, Any]:
    """Side size and part sizes for the odd construction, in exact integer arithmetic.

    N = floor(alpha*n) - k with alpha = r - 1 + sqrt(r^2-1)/2 and r = 2k-1.  The
    single-colored parts start at ceil((1 + sqrt(k/(k-1)))n) on X and
    floor((1 + sqrt((k-1)/k))n) on Y.  Their totals are then reduced by the
    fewest vertices (Y first) such that each side sums to N with every
    double-colored part of order at most n, and every two-color block keeps its
    degree bounds.  Single parts of one side differ in size by at most one.
    """
    k = (r + 1) // 2
    big_n = (r - 1) * n + isqrt((r * r - 1) * n * n) // 2 - k
    x_nominal = n + _ceil_sqrt_ratio(k * n * n, k - 1)
    y_nominal = n + _floor_sqrt_ratio((k - 1) * n * n, k)
    x_count, y_count = k - 1, k
    x_doubles, y_doubles = k - 1, k - 2

    def blocks_ok(xs: list[int], ys: list[int]) -> bool:
        for t in set(xs):
            for s in set(ys):
                if any(row.count(1) > n for row in _two_color_rows(t, s, n)):
                    return False
        return True

    def attempt(sx: int, sy: int):
        rest_x, rest_y = big_n - sx, big_n - sy
        if not (0 <= rest_x <= x_doubles * n and 0 <= rest_y <= y_doubles * n):
            return None
        xs, ys = _spread(sx, x_count), _spread(sy, y_count)
        if min(xs) < 1 or min(ys) < 1 or not blocks_ok(xs, ys):
            return None
        return xs, ys, _spread(rest_x, x_doubles), _spread(rest_y, y_doubles)

    sx0, sy0 = x_count * x_nominal, y_count * y_nominal
    for shrink in range(sx0 + sy0):
        for dx in range(shrink + 1):
            found = attempt(sx0 - dx, sy0 - (shrink - dx))
            if found:
                xs, ys, xd, yd = found
                return {"N": big_n, "k": k, "x_nominal": x_nominal, "y_nominal": y_nominal,
                        "x_singles": xs, "y_singles": ys, "x_doubles": xd, "y_doubles": yd}
    raise ConstructionError(f"small-odd: no feasible part sizes for r = {r}, n = {n}")


def small_odd(r: int, n: int) -> Witness:
    """K_{N,N} with N = floor(alpha*n) - k, r = 2k-1 colors and no monochromatic S_{n,n}."""
    if r < 3 or r % 2 == 0:
        raise ConstructionError(f"small-odd needs an odd r >= 3, got r = {r}")
    if n < 2:
        raise ConstructionError(f"small-odd needs n >= 2 (two-color blocks), got n = {n}")
    sizes = small_odd_sizes(r, n)
    k = sizes["k"]
    layout = _small_parts(r, k - 1, sizes["x_singles"], sizes["x_doubles"],
                        sizes["y_singles"], sizes["y_doubles"])
    assert layout.side_size == sizes["N"]
    coloring = _assemble_small(r, n, k - 1, layout)
    params = {"r": r, "n": n, "N": sizes["N"],
              "nominal_single_sizes": [sizes["x_nominal"], sizes["y_nominal"]],
              "parts": layout.to_json()}
    return Witness(coloring, Claim.double_star(n, n), Provenance("small-odd", params))


def audit_labels(coloring: BipartiteColoring, layout: PartSpec, n: int) -> list[tuple[int, int, int]]:
    """Vertices whose color-degree exceeds n in a color outside their labels.

    Returns ``(vertex, color, degree)`` triples; empty when the layout behaves
    as intended.
    """
    bad = []
    labels = layout.labels_by_vertex()
    for color in range(1, coloring.r + 1):
        g = coloring.color_graph(color)
        for v, own in enumerate(labels):
            d = g.degree(v)
            if d > n and color not in own:
                bad.append((v, color, d))
    return bad


# --- verification ------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    claim: Claim
    counterexample: Optional[dict[str, Any]] = None

    def to_json(self) -> dict[str, Any]:
        return {"valid": self.valid, "claim": self.claim.to_json(), "counterexample": self.counterexample}


def verify_witness(w: Witness) -> VerificationReport:
    claim = w.claim
    if claim.avoids == "component_of_order":
        for color, comps in monochromatic_components(w.coloring).items():
            for comp in comps:
                if len(comp) >= claim.order:
                    return VerificationReport(
                        False, claim, {"color": color, "component": list(comp)}
                    )
        return VerificationReport(True, claim)

    patterns = [claim.pattern] if claim.avoids == "double_star" else split_patterns(claim.order)
    for pattern in patterns:
        hit = find_mono_double_star(w.coloring, pattern)
        if hit is not None:
            color, star = hit
            return VerificationReport(
                False,
                claim,
                {"color": color, "pattern": [pattern.n, pattern.m], "double_star": star.to_json()},
            )
    return VerificationReport(True, claim)

"""Degree-profile and important-edge diagnostics on concrete colorings.

Everything here is exact: sigma^2 is the rational share of non-important edges
and alpha = N/n is rational.  Inequalities that involve sigma itself are
compared after squaring both sides, so no floating point enters a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .detect import DoubleStarWitness, find_mono_double_star, split_patterns
from .graph import BipartiteColoring, CompleteColoring, DoubleStarPattern

__all__ = [
    "BipStats",
    "ClaimCheck",
    "ClaimsReport",
    "DegreeProfileReport",
    "bip_stats",
    "check_claims",
    "degree_profile",
]

DOUBLE_STAR_FOUND = "double_star_found"
DEGREES_IN_WINDOW = "degrees_in_window"
LEMMA_VIOLATION = "lemma_violation"
NO_CONCLUSION = "no_conclusion"


def _color_degrees(coloring) -> tuple[tuple[int, ...], ...]:
    graphs = [coloring.color_graph(i) for i in range(1, coloring.r + 1)]
    return tuple(tuple(g.degree(v) for g in graphs) for v in range(coloring.num_vertices))


# --- complete colorings ----------------------------------------------------


@dataclass(frozen=True)
class DegreeProfileReport:
    n: int
    r: int
    n_vertices: int
    degrees: tuple[tuple[int, ...], ...]  # degrees[v][i-1] = d_i(v)
    hypothesis_holds: bool  # N >= (r - 1/2)(2n) + 2
    verdict: str
    stars: tuple[tuple[DoubleStarPattern, int, DoubleStarWitness], ...] = ()
    offending: Optional[tuple[int, int, int]] = None  # (vertex, color, degree)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "r": self.r,
            "n_vertices": self.n_vertices,
            "hypothesis_holds": self.hypothesis_holds,
            "verdict": self.verdict,
            "degrees": [list(row) for row in self.degrees],
            "double_stars": [
                {"pattern": [p.n, p.m], "color": c, "witness": w.to_json()} for p, c, w in self.stars
            ],
            "offending": list(self.offending) if self.offending else None,
        }


def degree_profile(c: CompleteColoring, n: int) -> DegreeProfileReport:
    """Either every double star on 2n+2 vertices is monochromatic somewhere, or
    (when N is large enough) every color-degree lies in [n+1, 2n]."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n = {n}")
    hypothesis = c.n_vertices >= (2 * c.r - 1) * n + 2
    degrees = _color_degrees(c)
    stars = []
    for pattern in split_patterns(2 * n + 2):
        hit = find_mono_double_star(c, pattern)
        if hit is None:
            break
        stars.append((pattern, hit[0], hit[1]))
    else:
        return DegreeProfileReport(n, c.r, c.n_vertices, degrees, hypothesis, DOUBLE_STAR_FOUND,
                                   tuple(stars))
    offending = next(
        ((v, i + 1, d) for v, row in enumerate(degrees) for i, d in enumerate(row)
         if not n + 1 <= d <= 2 * n),
        None,
    )
    if offending is None:
        verdict = DEGREES_IN_WINDOW
    else:
        verdict = LEMMA_VIOLATION if hypothesis else NO_CONCLUSION
    return DegreeProfileReport(n, c.r, c.n_vertices, degrees, hypothesis, verdict,
                               tuple(stars), offending)


# --- bipartite colorings ---------------------------------------------------


@dataclass(frozen=True)
class BipStats:
    n: int
    r: int
    N: int
    vertex_colors: tuple[frozenset[int], ...]  # by global vertex id, X first
    z: tuple[int, ...]  # z[i] = vertices with exactly i colors, i = 0..r
    x_sets: dict[frozenset[int], int]  # x_S for nonempty S, sparse
    y_sets: dict[frozenset[int], int]
    x_carrying: tuple[int, ...]  # |calX_i| for i = 1..r
    y_carrying: tuple[int, ...]
    important: int  # e*
    non_important: int
    doubly_important: int  # edges whose color both endpoints carry
    has_double_star: bool
    double_star: Optional[tuple[int, DoubleStarWitness]] = field(default=None, compare=False)

    @property
    def sigma_sq(self) -> Fraction:
        return Fraction(self.non_important, self.N * self.N)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.N, self.n)

    def x_single(self, i: int) -> int:
        return self.x_sets.get(frozenset((i,)), 0)

    def y_single(self, i: int) -> int:
        return self.y_sets.get(frozenset((i,)), 0)

    def to_json(self) -> dict[str, Any]:
        def sets(d):
            return [{"colors": sorted(s), "size": k} for s, k in sorted(d.items(), key=lambda e: sorted(e[0]))]

        return {
            "n": self.n,
            "r": self.r,
            "N": self.N,
            "z": list(self.z),
            "x_sets": sets(self.x_sets),
            "y_sets": sets(self.y_sets),
            "x_carrying": list(self.x_carrying),
            "y_carrying": list(self.y_carrying),
            "important_edges": self.important,
            "non_important_edges": self.non_important,
            "doubly_important_edges": self.doubly_important,
            "sigma_sq": str(self.sigma_sq),
            "alpha": str(self.alpha),
            "has_monochromatic_double_star": self.has_double_star,
        }


def bip_stats(c: BipartiteColoring, n: int) -> BipStats:
    """Vertex colors (color-degree >= n+1), their class sizes, and important-edge counts."""
    if c.x_size != c.y_size:
        raise ValueError(f"need a balanced host, got {c.x_size} x {c.y_size}")
    if n < 1:
        raise ValueError(f"need n >= 1, got n = {n}")
    N, r = c.x_size, c.r
    degrees = _color_degrees(c)
    vcolors = tuple(frozenset(i + 1 for i, d in enumerate(row) if d >= n + 1) for row in degrees)
    z = [0] * (r + 1)
    for s in vcolors:
        z[len(s)] += 1
    x_sets: dict[frozenset[int], int] = {}
    y_sets: dict[frozenset[int], int] = {}
    for v, s in enumerate(vcolors):
        if s:
            target = x_sets if v < N else y_sets
            target[s] = target.get(s, 0) + 1
    x_carrying = tuple(sum(1 for v in range(N) if i in vcolors[v]) for i in range(1, r + 1))
    y_carrying = tuple(sum(1 for v in range(N, 2 * N) if i in vcolors[v]) for i in range(1, r + 1))

    important = non_important = doubly = 0
    for x, y, color in c.edges():
        at_x, at_y = color in vcolors[x], color in vcolors[y]
        if at_x or at_y:
            important += 1
            doubly += at_x and at_y
        else:
            non_important += 1

    hit = find_mono_double_star(c, DoubleStarPattern(n, n))
    return BipStats(n, r, N, vcolors, tuple(z), x_sets, y_sets, x_carrying, y_carrying,
                    important, non_important, doubly, hit is not None, hit)


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    passed: bool
    lhs: str
    rhs: str
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "lhs": self.lhs, "rhs": self.rhs,
                "detail": self.detail}


@dataclass(frozen=True)
class ClaimsReport:
    applicable: bool
    reason: str
    C: str
    checks: tuple[ClaimCheck, ...] = ()

    @property
    def passed(self) -> bool:
        return self.applicable and all(ch.passed for ch in self.checks)

    def to_json(self) -> dict[str, Any]:
        return {"applicable": self.applicable, "reason": self.reason, "C": self.C,
                "passed": self.passed, "checks": [ch.to_json() for ch in self.checks]}


def _le(lhs, rhs, name: str, detail: str = "") -> ClaimCheck:
    return ClaimCheck(name, lhs <= rhs, str(lhs), str(rhs), detail)


def _le_plus_sqrt(rational: Fraction, coeff: Fraction, sq: Fraction) -> bool:
    """Exactly decide rational <= coeff * sqrt(sq) with coeff >= 0, sq >= 0."""
    if rational <= 0:
        return True
    return rational * rational <= coeff * coeff * sq


def check_claims(stats: BipStats, C: Union[int, Fraction, str] = 1) -> ClaimsReport:
    """Evaluate the counting inequalities behind the bipartite upper bound.

    ``C`` is a positive rational or ``"auto"`` for C = (alpha - (r-1)) sigma.
    """
    s = stats
    N, n, r = s.N, s.n, s.r
    label = "auto" if C == "auto" else str(Fraction(C))
    if s.has_double_star:
        return ClaimsReport(False, "coloring contains a monochromatic S_{n,n}", label)
    if N < r * n + 1:
        return ClaimsReport(False, f"needs N >= rn+1 = {r * n + 1}, got N = {N}", label)
    if C != "auto" and Fraction(C) <= 0:
        raise ValueError(f"C must be positive, got {C}")

    alpha, sig2 = s.alpha, s.sigma_sq
    gap = alpha - (r - 1)  # > 1 by the gate
    NN = N * N
    cap = N / gap
    checks = [
        ClaimCheck("every vertex receives a color", s.z[0] == 0, str(s.z[0]), "0"),
        ClaimCheck("important + non-important = N^2", s.important + s.non_important == NN,
                   str(s.important + s.non_important), str(NN)),
        ClaimCheck("no edge is important at both ends", s.doubly_important == 0,
                   str(s.doubly_important), "0"),
        _le(sum(s.z[i] * (N - (r - i) * n) for i in range(1, r + 1)), s.important,
            "sum_i z_i (N - (r-i)n) <= e*"),
        ClaimCheck("e* = (1 - sigma^2) N^2", Fraction(s.important) == (1 - sig2) * NN,
                   str(s.important), str((1 - sig2) * NN)),
        ClaimCheck("sigma^2 N^2 >= sum_i x_i y_i",
                   sig2 * NN >= sum(s.x_single(i) * s.y_single(i) for i in range(1, r + 1)),
                   str(sig2 * NN), str(sum(s.x_single(i) * s.y_single(i) for i in range(1, r + 1)))),
        _le(sum((i - 1) * s.z[i] for i in range(2, r + 1)), (2 * r - 2 - alpha * (1 + sig2)) * N,
            "sum_i (i-1) z_i <= (2r-2-alpha(1+sigma^2))N"),
        _le(sum(s.z[2:]), (2 * r - 2 - alpha * (1 + sig2)) * N,
            "sum_{i>=2} z_i <= (2r-2-alpha(1+sigma^2))N"),
    ]
    for i in range(1, r + 1):
        checks.append(_le(s.x_single(i), cap, f"x_{i} <= N/(alpha-(r-1))"))
        checks.append(_le(s.y_single(i), cap, f"y_{i} <= N/(alpha-(r-1))"))
        checks.append(_le(s.x_single(i), (N - s.y_carrying[i - 1]) / gap,
                          f"x_{i} <= (N - |calY_{i}|)/(alpha-(r-1))"))
        checks.append(_le(s.y_single(i), (N - s.x_carrying[i - 1]) / gap,
                          f"y_{i} <= (N - |calX_{i}|)/(alpha-(r-1))"))

    z1 = sum(s.x_single(i) + s.y_single(i) for i in range(1, r + 1))
    checks.append(ClaimCheck("z_1 = sum_i (x_i + y_i)", s.z[1] == z1, str(s.z[1]), str(z1)))
    biggest = [max(s.x_single(i), s.y_single(i)) for i in range(1, r + 1)]
    if sig2 == 0:
        # every index clears the zero threshold, so t = r and the bound is r N/(alpha-(r-1))
        checks.append(_le(s.z[1], r * cap, "z_1 <= (t/(alpha-(r-1)) + ...)N", "sigma = 0, t = r"))
    elif C == "auto":
        # sigma N / C = N/(alpha-(r-1)), sigma / C = 1/(alpha-(r-1)), C sigma = (alpha-(r-1)) sigma^2
        t = sum(1 for b in biggest if b >= cap)
        bound = (Fraction(t) / gap + Fraction(r - t) / gap + gap * sig2) * N
        checks.append(_le(s.z[1], bound, "z_1 <= (t/(alpha-(r-1)) + (r-t)sigma/C + C sigma)N",
                          f"C = (alpha-(r-1))sigma, t = {t}"))
    else:
        cq = Fraction(C)
        # max >= sigma N / C  <=>  (C max)^2 >= sigma^2 N^2
        t = sum(1 for b in biggest if (cq * b) ** 2 >= sig2 * NN)
        rational = s.z[1] - Fraction(t) / gap * N
        coeff = (Fraction(r - t) / cq + cq) * N
        ok = _le_plus_sqrt(rational, coeff, sig2)
        checks.append(ClaimCheck(
            "z_1 <= (t/(alpha-(r-1)) + (r-t)sigma/C + C sigma)N", ok, str(s.z[1]),
            f"{Fraction(t) / gap * N} + {coeff} * sqrt({sig2})", f"C = {cq}, t = {t}",
        ))
    return ClaimsReport(True, "gate passed", label, tuple(checks))


"""Small finite fields and the affine planes AG(2, q) built from them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

__all__ = [
    "AffinePlane",
    "FiniteField",
    "NoAffinePlaneError",
    "affine_plane",
    "affine_plane_available",
    "is_prime",
    "is_prime_power",
]

# Irreducible polynomials for the non-prime orders we ship, low coefficient first.
_IRREDUCIBLE = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1 over GF(2)
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1 over GF(2)
    9: (3, (1, 0, 1)),  # x^2 + 1 over GF(3)
}


class NoAffinePlaneError(ValueError):
    pass


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(f for f in range(2, q + 1) if q % f == 0)
    while q % p == 0:
        q //= p
    return q == 1


def affine_plane_available(q: int) -> bool:
    """Whether :func:`affine_plane` can build AG(2, q)."""
    return is_prime(q) or q in _IRREDUCIBLE


class FiniteField:
    """GF(q) with elements encoded as integers 0..q-1 (base-p digit vectors)."""

    def __init__(self, q: int):
        if is_prime(q):
            self.p, self.k, poly = q, 1, None
        elif q in _IRREDUCIBLE:
            self.p, poly = _IRREDUCIBLE[q]
            self.k = len(poly) - 1
        else:
            raise NoAffinePlaneError(f"no field table for order {q}")
        self.q = q
        self._poly = poly
        self.add = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul = [[self._mul(a, b) for b in range(q)] for a in range(q)]

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def _add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._encode([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(self._digits(a)):
            for j, y in enumerate(self._digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with the monic modulus: x^k = -(lower terms)
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, coef in enumerate(self._poly[:k]):
                    prod[deg - k + i] = (prod[deg - k + i] - c * coef) % p
        return self._encode(prod[:k])


@dataclass(frozen=True)
class AffinePlane:
    """AG(2, q).  Point (x, y) has index x*q + y.

    Classes 0..q-1 hold the lines y = a*x + b of slope a; class q holds the
    vertical lines x = c.
    """

    order: int
    parallel_classes: tuple[tuple[frozenset[int], ...], ...]

    @property
    def points(self) -> range:
        return range(self.order * self.order)

    def coords(self, p: int) -> tuple[int, int]:
        return divmod(p, self.order)

    @cached_property
    def _pair_class(self) -> dict[tuple[int, int], int]:
        table = {}
        for k, cls in enumerate(self.parallel_classes):
            for line in cls:
                for a, b in combinations(sorted(line), 2):
                    table[a, b] = k
        return table

    def class_of(self, p1: int, p2: int) -> int:
        """Index of the parallel class containing the line through two distinct points."""
        if p1 > p2:
            p1, p2 = p2, p1
        return self._pair_class[p1, p2]

    def line_through(self, p: int, k: int) -> frozenset[int]:
        return next(line for line in self.parallel_classes[k] if p in line)


def affine_plane(q: int) -> AffinePlane:
    if not affine_plane_available(q):
        raise NoAffinePlaneError(f"no affine plane available of order {q}")
    f = FiniteField(q)
    classes = []
    for a in range(q):
        lines = []
        for b in range(q):
            lines.append(frozenset(x * q + f.add[f.mul[a][x]][b] for x in range(q)))
        classes.append(tuple(lines))
    classes.append(tuple(frozenset(c * q + y for y in range(q)) for c in range(q)))
    plane = AffinePlane(q, tuple(classes))
    assert len(plane._pair_class) == q * q * (q * q - 1) // 2, "pair coverage failed"
    return plane

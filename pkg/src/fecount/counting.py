"""Exact counts of complete exceptional sequences, three independent ways.

For a Dynkin type the count has a closed form (mu!/(d1...d_mu) * h^mu, with
per-family evaluations) and a vertex-deletion recursion scaled by h/2.  For
an orbifold triple with positive Euler number the count has a closed form,
a deletion recursion whose first term is scaled by 1/chi, and a product
formula for the degree of the Lyashko-Looijenga map.  All three agree; the
test suite insists on it.

Every routine works in exact integers/rationals and asserts integrality of
rational totals (raising :class:`fecount.arith.NonIntegralError` rather than
rounding).  The recursion over triples is memoized through
:class:`CountCache`, which may be shared between threads and persisted to a
small text file.
"""
from __future__ import annotations

import logging
import math
import threading
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .arith import as_natural, binomial, factorial, multinomial
from .diagrams import (
    DynkinForest,
    DynkinType,
    OrbifoldTriple,
    classify_forest,
    delete_vertex,
    dynkin_diagram,
    extended_diagram,
)

log = logging.getLogger(__name__)

# Degrees of the basic polynomial invariants of each Weyl group.  A_n and D_n
# follow the classical patterns; the E values are fixed data.  Their product
# ties the closed form to the LL degree and is cross-checked in tests.
_E_DEGREES = {
    6: (2, 5, 6, 8, 9, 12),
    7: (2, 6, 8, 10, 12, 14, 18),
    8: (2, 8, 12, 14, 18, 20, 24, 30),
}

_E_COUNTS = {6: 2**9 * 3**4, 7: 2 * 3**12, 8: 2 * 3**5 * 5**7}


def coxeter_number(dtype: DynkinType) -> int:
    """Coxeter number h: A_n -> n+1, D_n -> 2(n-1), E6/E7/E8 -> 12/18/30."""
    if dtype.family == "A":
        return dtype.rank + 1
    if dtype.family == "D":
        return 2 * (dtype.rank - 1)
    return {6: 12, 7: 18, 8: 30}[dtype.rank]


def invariant_degrees(dtype: DynkinType) -> tuple[int, ...]:
    """Sorted degrees d1 <= ... <= d_n of the invariant ring, with d_n = h."""
    n = dtype.rank
    if dtype.family == "A":
        return tuple(range(2, n + 2))
    if dtype.family == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    return _E_DEGREES[n]


def e_dynkin_closed(dtype: DynkinType) -> int:
    """Closed-form count for one Dynkin type.

    >>> e_dynkin_closed(DynkinType("A", 3))
    16
    >>> e_dynkin_closed(DynkinType("E", 6))
    41472
    """
    n = dtype.rank
    if dtype.family == "A":
        return (n + 1) ** (n - 1)
    if dtype.family == "D":
        return 2 * (n - 1) ** n
    return _E_COUNTS[n]


def deg_ll_dynkin(dtype: DynkinType) -> int:
    """Lyashko-Looijenga degree n!/(d1...d_n) * h^n, from the degree data.

    Computed independently of :func:`e_dynkin_closed` so the two act as
    cross-checks on each other.
    """
    n = dtype.rank
    h = coxeter_number(dtype)
    val = Fraction(factorial(n), math.prod(invariant_degrees(dtype))) * h**n
    return as_natural(val, f"LL degree of {dtype}")


def e_forest(forest: DynkinForest) -> int:
    """Count for a disjoint union: shuffle the blocks, multiply the counts.

    The multinomial in the block ranks counts the interleavings of the
    blocks' sequences; the empty forest counts 1.

    >>> e_forest(DynkinForest.of([DynkinType("A", 1), DynkinType("A", 1)]))
    2
    """
    shuffle = multinomial(c.rank for c in forest.components)
    return shuffle * math.prod(e_dynkin_closed(c) for c in forest.components)


def e_dynkin_recursive(dtype: DynkinType) -> int:
    """Vertex-deletion recursion: (h/2) * sum over deleted vertices.

    Each deletion leaves a forest of strictly smaller Dynkin trees whose
    count comes from :func:`e_forest`.  The h/2 scaling is applied as an
    exact rational and the total must come out integral.

    >>> e_dynkin_recursive(DynkinType("A", 2))
    3
    """
    graph = dynkin_diagram(dtype)
    total = sum(
        e_forest(classify_forest(delete_vertex(graph, v))) for v in graph.vertices
    )
    val = Fraction(coxeter_number(dtype), 2) * total
    return as_natural(val, f"recursion total for {dtype}")


class CountCache:
    """Memo for the triple recursion plus a side table for Dynkin counts.

    Reads are lock-free (a plain dict lookup); writes are serialized, so
    concurrent use is safe and always yields the same values as a fresh
    cache.  ``hits``/``misses`` only count triple lookups.
    """

    def __init__(self) -> None:
        self._affine: dict[OrbifoldTriple, int] = {}
        self._dynkin: dict[DynkinType, int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get_affine(self, triple: OrbifoldTriple) -> int | None:
        value = self._affine.get(triple)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
            log.debug("cache hit: %s -> %d", triple, value)
        return value

    def put_affine(self, triple: OrbifoldTriple, value: int) -> None:
        with self._lock:
            self._affine[triple] = value

    def dynkin_count(self, dtype: DynkinType) -> int:
        value = self._dynkin.get(dtype)
        if value is None:
            value = e_dynkin_closed(dtype)
            with self._lock:
                self._dynkin[dtype] = value
        return value

    def items(self) -> list[tuple[OrbifoldTriple, int]]:
        return sorted(self._affine.items(), key=lambda kv: kv[0].orders)

    def __len__(self) -> int:
        return len(self._affine)


def save_cache(cache: CountCache, path: str | Path) -> None:
    """Write triple counts as lines "a1,a2,a3 -> count"."""
    lines = [
        "{},{},{} -> {}".format(*t.orders, v)
        for t, v in cache.items()
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def load_cache(path: str | Path) -> CountCache:
    """Read a cache file written by :func:`save_cache`.

    Blank lines and lines starting with '#' are ignored.
    """
    cache = CountCache()
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            key, _, value = line.partition("->")
            a1, a2, a3 = (int(x) for x in key.strip().split(","))
            cache.put_affine(OrbifoldTriple.of(a1, a2, a3), int(value.strip()))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad cache line {raw!r}") from exc
    return cache


def e_affine(triple: OrbifoldTriple, cache: CountCache | None = None) -> int:
    """Deletion recursion for an orbifold triple with positive Euler number.

    First term: 1/chi times the sum, over vertices of the extended diagram,
    of the forest counts after deletion.  Second term: for each orbifold
    point of order a_i and each 1 <= j <= a_i - 1, the point contributes
    a_i * C(mu-1, a_i-j-1) times the count for the triple with a_i lowered
    to j times the count for a path on a_i-j-1 vertices (1 when empty).
    The recursion bottoms out at (1,1,1), where the value is 1.

    Only the grand total is required to be integral; the 1/chi term alone
    happens to be integral on every admissible triple we have checked, but
    that is observed (logged if ever violated), not assumed.

    >>> e_affine(OrbifoldTriple.of(2, 3, 3))
    1224720
    """
    if cache is None:
        cache = CountCache()
    return _e_affine(triple, cache)


def _e_affine(triple: OrbifoldTriple, cache: CountCache) -> int:
    memo = cache.get_affine(triple)
    if memo is not None:
        return memo

    graph = extended_diagram(triple)
    deletion_sum = sum(
        e_forest(classify_forest(delete_vertex(graph, v))) for v in graph.vertices
    )
    first = Fraction(deletion_sum) / triple.chi
    if first.denominator != 1:
        log.info("deletion term for %s is non-integral on its own: %s", triple, first)

    mu = triple.mu
    second = 0
    for i, a_i in enumerate(triple.orders):
        for j in range(1, a_i):
            tail_rank = a_i - j - 1
            tail = 1 if tail_rank == 0 else cache.dynkin_count(DynkinType("A", tail_rank))
            sub = _e_affine(triple.with_order(i, j), cache)
            second += a_i * binomial(mu - 1, tail_rank) * sub * tail

    value = as_natural(first + second, f"recursion total for {triple}")
    cache.put_affine(triple, value)
    return value


def e_affine_closed(triple: OrbifoldTriple) -> int:
    """Closed form mu!/(a1! a2! a3! chi) * a1^a1 a2^a2 a3^a3.

    >>> e_affine_closed(OrbifoldTriple.of(2, 3, 4))
    46448640
    """
    a1, a2, a3 = triple.orders
    val = Fraction(
        factorial(triple.mu), factorial(a1) * factorial(a2) * factorial(a3)
    ) / triple.chi
    val *= a1**a1 * a2**a2 * a3**a3
    return as_natural(val, f"closed form for {triple}")


def deg_ll_affine(triple: OrbifoldTriple) -> int:
    """Lyashko-Looijenga degree mu! / (chi * prod_{i,j} (a_i - j)/a_i).

    Same value as :func:`e_affine_closed`, but evaluated through the product
    over i and 1 <= j <= a_i - 1 so it serves as a redundant check.

    >>> deg_ll_affine(OrbifoldTriple.of(1, 1, 1))
    1
    """
    denom = triple.chi
    for a_i in triple.orders:
        for j in range(1, a_i):
            denom *= Fraction(a_i - j, a_i)
    return as_natural(factorial(triple.mu) / denom, f"LL degree of {triple}")


def admissible_triples(max_mu: int) -> Iterator[OrbifoldTriple]:
    """All canonical triples with positive Euler number and mu <= max_mu.

    >>> [str(t) for t in admissible_triples(3)]
    ['(1,1,1)', '(1,1,2)']
    """
    found = []
    for a1 in range(1, max_mu + 1):
        for a2 in range(a1, max_mu + 1):
            for a3 in range(a2, max_mu + 2 - a1 - a2):
                chi = Fraction(1, a1) + Fraction(1, a2) + Fraction(1, a3) - 1
                if chi > 0:
                    found.append(OrbifoldTriple((a1, a2, a3)))
    return iter(sorted(found, key=lambda t: (t.mu, t.orders)))

"""Brute-force cross-check in the Weyl group of a Dynkin type.

The number being verified — complete exceptional sequences up to shifts —
equals the number of maximal chains in the noncrossing partition lattice of
the Weyl group, i.e. the number of ways to write a Coxeter element as an
ordered product of rank-many reflections.  This module counts those
factorizations directly, with no input from the closed formulas.

Representations:

* A root is kept in two coordinate systems: integer coordinates over the
  simple roots (used for all linear algebra, always exact) and ambient
  rational coordinates in the classical models (A_n inside Q^{n+1} as
  e_i - e_{i+1} differences, D_n as +-e_i +- e_j, the E series inside the
  even-coordinate Q^8 model with half-integer entries).
* A group element is the permutation it induces on the root list; the
  reflection representation is faithful, so the permutation is the element.
* Absolute (reflection) length is rank(M - I) for the matrix M of the
  element in the simple-root basis, computed by exact rational elimination.

The factorization count is a descent through the absolute order: a
reflection t shortens w exactly when its root lies in the moved space
im(w - 1), equivalently is orthogonal to the fixed space ker(w - 1); the
walk from the Coxeter element to the identity, one reflection at a time,
is tallied level by level with the level dictionaries acting as the memo of
the usual recursive formulation.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .counting import coxeter_number
from .diagrams import DynkinType, dynkin_diagram

log = logging.getLogger(__name__)

MAX_ORACLE_RANK = 9

# Simple roots of the even-coordinate model, in this package's vertex order:
# the long chain first, the short branch vertex last.
_E_CHAIN = [
    (Fraction(1, 2),) + (Fraction(-1, 2),) * 6 + (Fraction(1, 2),),
    (-1, 1, 0, 0, 0, 0, 0, 0),
    (0, -1, 1, 0, 0, 0, 0, 0),
    (0, 0, -1, 1, 0, 0, 0, 0),
    (0, 0, 0, -1, 1, 0, 0, 0),
    (0, 0, 0, 0, -1, 1, 0, 0),
    (0, 0, 0, 0, 0, -1, 1, 0),
]
_E_BRANCH = (1, 1, 0, 0, 0, 0, 0, 0)


class UnsupportedRankError(ValueError):
    """The requested rank is beyond what the brute force is built for."""


class OracleBudgetExceeded(RuntimeError):
    """The factorization count ran past its time budget."""


@dataclass(frozen=True)
class RootSystem:
    """All roots of a Dynkin type plus the data the counting walk needs."""

    dtype: DynkinType
    rank: int
    roots: tuple[tuple[Fraction, ...], ...]       # ambient coordinates
    simple_roots: tuple[int, ...]                 # indices into roots
    positive_roots: tuple[int, ...]               # indices into roots
    coords: tuple[tuple[int, ...], ...]           # simple-root-basis coordinates
    cartan: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class GroupElement:
    """A Weyl group element as its permutation of the root index set."""

    perm: tuple[int, ...]

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))


def _ambient_simple_roots(dtype: DynkinType) -> list[tuple[Fraction, ...]]:
    n = dtype.rank
    if dtype.family == "A":
        return [
            tuple(Fraction(1 if k == i else (-1 if k == i + 1 else 0)) for k in range(n + 1))
            for i in range(n)
        ]
    if dtype.family == "D":
        simples = [
            tuple(Fraction(1 if k == i else (-1 if k == i + 1 else 0)) for k in range(n))
            for i in range(n - 1)
        ]
        simples.append(tuple(Fraction(1 if k in (n - 2, n - 1) else 0) for k in range(n)))
        return simples
    chain = [tuple(Fraction(x) for x in v) for v in _E_CHAIN[: n - 1]]
    return chain + [tuple(Fraction(x) for x in _E_BRANCH)]


def _cartan_matrix(dtype: DynkinType) -> tuple[tuple[int, ...], ...]:
    graph = dynkin_diagram(dtype)
    n = dtype.rank
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for u, v in graph.edges:
        cartan[u - 1][v - 1] = cartan[v - 1][u - 1] = -1
    return tuple(tuple(row) for row in cartan)


_EXPECTED_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
}


def build_root_system(dtype: DynkinType) -> RootSystem:
    """Generate all roots from the simple ones by reflection closure.

    >>> len(build_root_system(DynkinType("A", 2)))
    6
    """
    n = dtype.rank
    if n > MAX_ORACLE_RANK:
        raise UnsupportedRankError(
            f"brute force supports rank <= {MAX_ORACLE_RANK}, got {dtype}"
        )
    cartan = _cartan_matrix(dtype)

    simple_coords = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    closure = set(simple_coords)
    frontier = list(simple_coords)
    while frontier:
        fresh = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                image = beta[:i] + (beta[i] - pairing,) + beta[i + 1:]
                if image not in closure:
                    closure.add(image)
                    fresh.append(image)
        frontier = fresh
    coords = tuple(sorted(closure))
    assert len(coords) == _EXPECTED_ROOT_COUNT[dtype.family](n)

    ambient_simple = _ambient_simple_roots(dtype)
    # The ambient model must present the same diagram as the Cartan matrix.
    dim = len(ambient_simple[0])
    for i in range(n):
        for j in range(n):
            gram = sum(ambient_simple[i][k] * ambient_simple[j][k] for k in range(dim))
            assert gram == cartan[i][j]
    roots = tuple(
        tuple(
            sum(c * ambient_simple[i][k] for i, c in enumerate(vec))
            for k in range(dim)
        )
        for vec in coords
    )

    index = {vec: i for i, vec in enumerate(coords)}
    simple_idx = tuple(index[s] for s in simple_coords)
    positive_idx = tuple(i for i, vec in enumerate(coords) if all(c >= 0 for c in vec))
    return RootSystem(
        dtype=dtype,
        rank=n,
        roots=roots,
        simple_roots=simple_idx,
        positive_roots=positive_idx,
        coords=coords,
        cartan=cartan,
    )


def _reflection_perm(rs: RootSystem, root_coords: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation of the root list induced by reflecting in one root."""
    n = rs.rank
    paired = [sum(rs.cartan[i][j] * root_coords[j] for j in range(n)) for i in range(n)]
    index = {vec: i for i, vec in enumerate(rs.coords)}
    out = []
    for beta in rs.coords:
        s = sum(paired[j] * beta[j] for j in range(n))
        out.append(index[tuple(beta[j] - s * root_coords[j] for j in range(n))])
    return tuple(out)


def identity_element(rs: RootSystem) -> GroupElement:
    return GroupElement(tuple(range(len(rs))))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as h first, then g."""
    return GroupElement(tuple(g.perm[i] for i in h.perm))


def reflection(rs: RootSystem, root_index: int) -> GroupElement:
    """The reflection in the hyperplane of the given root."""
    return GroupElement(_reflection_perm(rs, rs.coords[root_index]))


def coxeter_element(rs: RootSystem, index_order: Sequence[int] | None = None) -> GroupElement:
    """Product of the simple reflections, by default in index order.

    Any ordering gives a conjugate element, so the factorization count does
    not depend on the choice; callers may pass another order to spot-check
    exactly that.  The multiplicative order of the result is checked against
    the Coxeter number before returning.
    """
    order = list(index_order) if index_order is not None else list(range(rs.rank))
    if sorted(order) != list(range(rs.rank)):
        raise ValueError(f"index_order must permute 0..{rs.rank - 1}, got {order}")
    element = identity_element(rs)
    for i in order:
        element = compose(element, reflection(rs, rs.simple_roots[i]))
    assert element_order(rs, element) == coxeter_number(rs.dtype)
    return element


def element_order(rs: RootSystem, g: GroupElement) -> int:
    """Multiplicative order of the element (the Coxeter number, for a
    Coxeter element)."""
    power, order = g, 1
    while not power.is_identity():
        power = compose(g, power)
        order += 1
    return order


def matrix_in_root_basis(rs: RootSystem, g: GroupElement) -> list[list[int]]:
    """Integer matrix of the element on the root lattice (simple-root basis)."""
    n = rs.rank
    cols = [rs.coords[g.perm[rs.simple_roots[j]]] for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form plus pivot column list, exact over Q."""
    rows = [row[:] for row in rows]
    m = len(rows)
    width = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def _kernel_basis(matrix: list[list[int]]) -> list[tuple[int, ...]]:
    """Integer basis of the rational kernel of a square integer matrix."""
    n = len(matrix)
    rows, pivots = _rref([[Fraction(x) for x in row] for row in matrix])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        scale = 1
        for x in vec:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        basis.append(tuple(int(x * scale) for x in vec))
    return basis


def absolute_length(rs: RootSystem, g: GroupElement) -> int:
    """Reflection length: rank of (M - I) over Q, i.e. codimension of the
    fixed space.  Exact rational elimination, no floating point.

    >>> rs = build_root_system(DynkinType("A", 3))
    >>> absolute_length(rs, coxeter_element(rs))
    3
    """
    n = rs.rank
    m = matrix_in_root_basis(rs, g)
    for i in range(n):
        m[i][i] -= 1
    return n - len(_kernel_basis(m))


def count_reflection_factorizations(
    rs: RootSystem,
    budget_ms: float | None = None,
    coxeter: GroupElement | None = None,
) -> int:
    """Number of ways to write a Coxeter element as a product of rank-many
    reflections — the maximal-chain count of the noncrossing partition
    lattice, found by exhaustive descent.

    Starting from the Coxeter element, repeatedly multiply by every
    reflection that shortens the element, accumulating multiplicities per
    element in a level dictionary; after rank steps all mass sits on the
    identity and its multiplicity is the answer.  ``budget_ms`` aborts the
    walk with :class:`OracleBudgetExceeded` when exceeded.

    >>> rs = build_root_system(DynkinType("A", 2))
    >>> count_reflection_factorizations(rs)
    3
    """
    n = rs.rank
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    top = coxeter if coxeter is not None else coxeter_element(rs)
    assert absolute_length(rs, top) == n

    # Pair each reflection's permutation with its root paired through the
    # invariant form: the shortening test is "orthogonal to the fixed space".
    reflections = []
    for idx in rs.positive_roots:
        rho = rs.coords[idx]
        paired = tuple(
            sum(rs.cartan[i][j] * rho[j] for j in range(n)) for i in range(n)
        )
        reflections.append((_reflection_perm(rs, rho), paired))

    simple = rs.simple_roots
    coords = rs.coords
    level: dict[tuple[int, ...], int] = {top.perm: 1}
    elements_seen = 1
    for length in range(n, 0, -1):
        descended: dict[tuple[int, ...], int] = {}
        for perm, ways in level.items():
            if deadline is not None and time.monotonic() > deadline:
                raise OracleBudgetExceeded(
                    f"factorization count for {rs.dtype} exceeded {budget_ms} ms"
                )
            m_minus_i = [[coords[perm[simple[j]]][i] for j in range(n)] for i in range(n)]
            for i in range(n):
                m_minus_i[i][i] -= 1
            fixed = _kernel_basis(m_minus_i)
            assert len(fixed) == n - length  # descent keeps lengths exact
            for refl_perm, paired in reflections:
                if all(
                    sum(p * f for p, f in zip(paired, vec)) == 0 for vec in fixed
                ):
                    child = tuple(refl_perm[i] for i in perm)
                    descended[child] = descended.get(child, 0) + ways
        level = descended
        elements_seen += len(level)

    log.debug(
        "%s: %d elements visited below the Coxeter element", rs.dtype, elements_seen
    )
    identity = tuple(range(len(rs)))
    assert set(level) == {identity}
    return level[identity]

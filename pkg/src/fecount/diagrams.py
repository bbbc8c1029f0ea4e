"""Dynkin and extended Dynkin diagrams as plain undirected graphs.

Orientation is dropped throughout: every count in this package depends only
on the underlying graph, so a diagram is a set of integer vertex labels plus
a set of undirected edges.  Vertex numbering of the extended diagrams is
fixed once and for all (see :func:`extended_diagram`) so that golden tables
can be checked row by row.

Component classification normalizes the two degenerate D shapes: a
two-vertex "fork" is the forest A1 | A1 and a three-vertex one is A3, so
:class:`DynkinType` only ever carries D with rank >= 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

ADMISSIBLE_FAMILIES = "(1,p,q), (2,2,r), (2,3,3), (2,3,4), (2,3,5)"

_E_RANKS = (6, 7, 8)


class ClassificationError(ValueError):
    """A graph component is not a simply-laced Dynkin tree."""


@total_ordering
@dataclass(frozen=True)
class DynkinType:
    """A simply-laced type: family 'A' (rank >= 1), 'D' (>= 4) or 'E' (6..8)."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family == "A":
            ok = self.rank >= 1
        elif self.family == "D":
            ok = self.rank >= 4
        elif self.family == "E":
            ok = self.rank in _E_RANKS
        else:
            ok = False
        if not ok:
            raise ValueError(f"no simply-laced type {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def _key(self) -> tuple[str, int]:
        return (self.family, self.rank)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, DynkinType):
            return NotImplemented
        return self._key() < other._key()

    @classmethod
    def parse(cls, token: str) -> "DynkinType":
        """Parse a token like "A5", "D7" or "E8".

        >>> DynkinType.parse("d7")
        DynkinType(family='D', rank=7)
        """
        t = token.strip().upper()
        if len(t) < 2 or t[0] not in "ADE" or not t[1:].isdigit():
            raise ValueError(f"cannot parse Dynkin token {token!r}")
        return cls(t[0], int(t[1:]))


@dataclass(frozen=True)
class DynkinForest:
    """A multiset of Dynkin types, stored as a sorted tuple; may be empty."""

    components: tuple[DynkinType, ...]

    @classmethod
    def of(cls, components) -> "DynkinForest":
        return cls(tuple(sorted(components)))

    @property
    def total_rank(self) -> int:
        return sum(c.rank for c in self.components)

    def __str__(self) -> str:
        return " | ".join(str(c) for c in self.components) or "(empty)"


@dataclass(frozen=True)
class OrbifoldTriple:
    """Orbifold point orders (a1 <= a2 <= a3) with positive Euler number.

    Construction sorts, so permuted inputs are one value; everything computed
    from a triple is symmetric in the orders anyway.
    """

    orders: tuple[int, int, int]

    def __post_init__(self) -> None:
        a = self.orders
        if len(a) != 3 or any(not isinstance(x, int) or x < 1 for x in a):
            raise ValueError(f"orders must be three positive integers, got {a}")
        if tuple(sorted(a)) != a:
            raise ValueError(f"orders must be sorted ascending, got {a}; use OrbifoldTriple.of")
        if self.chi <= 0:
            raise ValueError(
                f"orders {a} have non-positive Euler number {self.chi}; "
                f"admissible families are {ADMISSIBLE_FAMILIES}"
            )

    @classmethod
    def of(cls, a1: int, a2: int, a3: int) -> "OrbifoldTriple":
        return cls(tuple(sorted((a1, a2, a3))))  # type: ignore[arg-type]

    @property
    def chi(self) -> Fraction:
        """Orbifold Euler number 1/a1 + 1/a2 + 1/a3 - 1."""
        a1, a2, a3 = self.orders
        return Fraction(1, a1) + Fraction(1, a2) + Fraction(1, a3) - 1

    @property
    def mu(self) -> int:
        """Length of a complete collection: a1 + a2 + a3 - 1."""
        return sum(self.orders) - 1

    def with_order(self, i: int, j: int) -> "OrbifoldTriple":
        """Replace the i-th order (0-based) by j and re-canonicalize.

        >>> OrbifoldTriple.of(2, 3, 5).with_order(2, 1).orders
        (1, 2, 3)
        """
        a = list(self.orders)
        a[i] = j
        return OrbifoldTriple.of(*a)

    def __str__(self) -> str:
        return "({},{},{})".format(*self.orders)


@dataclass(frozen=True)
class MarkedGraph:
    """A finite simple graph: integer vertex labels, undirected edges."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge {(u, v)} not stored low-high")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {(u, v)} leaves the vertex set")

    @classmethod
    def of(cls, vertices, edges) -> "MarkedGraph":
        norm = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return cls(frozenset(vertices), norm)

    def neighbors(self, v: int) -> set[int]:
        return {u if w == v else w for u, w in self.edges if v in (u, w)}

    def __len__(self) -> int:
        return len(self.vertices)


def extended_diagram(triple: OrbifoldTriple) -> MarkedGraph:
    """The extended (affine) diagram attached to an orbifold triple.

    Numbering conventions, with mu = a1+a2+a3-1 vertices in every case:

    * (1,p,q): the cycle visiting 1, 2, ..., p, p+q, p+q-1, ..., p+1.  For
      p = q = 1 the honest diagram is a double edge on two vertices; the
      returned simple graph keeps the single underlying edge, which is all
      vertex deletion ever looks at.
    * (2,2,r), r >= 2: vertices 1,2 hang off 3, a path runs 3..r+1, and
      vertices r+2, r+3 hang off r+1 (a star for r = 2).
    * (2,3,3)/(2,3,4)/(2,3,5): the three exceptional affine trees, numbered
      along the long path with the short branch attached (vertices 7, 8 and
      9 ends respectively).
    """
    a1, a2, a3 = triple.orders
    if a1 == 1:
        p, q = a2, a3
        n = p + q
        cycle = list(range(1, p + 1)) + [n] + list(range(n - 1, p, -1))
        edges = set()
        for i, u in enumerate(cycle):
            v = cycle[(i + 1) % len(cycle)]
            if u != v:
                edges.add((u, v))
        return MarkedGraph.of(range(1, n + 1), edges)
    if (a1, a2) == (2, 2):
        r = a3
        edges = [(1, 3), (2, 3), (r + 1, r + 2), (r + 1, r + 3)]
        edges += [(i, i + 1) for i in range(3, r + 1)]
        return MarkedGraph.of(range(1, r + 4), edges)
    exceptional = {
        (2, 3, 3): [(1, 2), (2, 5), (3, 4), (4, 5), (5, 6), (6, 7)],
        (2, 3, 4): [(1, 5), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
        (2, 3, 5): [(1, 4), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)],
    }
    edges = exceptional[(a1, a2, a3)]
    return MarkedGraph.of(range(1, triple.mu + 1), edges)


def dynkin_diagram(dtype: DynkinType) -> MarkedGraph:
    """The (finite) tree of a Dynkin type, vertices 1..rank.

    A is the path 1..n; D and E are the path 1..n-1 with vertex n attached
    at position n-2 (D) or 3 (E).
    """
    n = dtype.rank
    if dtype.family == "A":
        return MarkedGraph.of(range(1, n + 1), [(i, i + 1) for i in range(1, n)])
    fork_at = n - 2 if dtype.family == "D" else 3
    edges = [(i, i + 1) for i in range(1, n - 1)] + [(fork_at, n)]
    return MarkedGraph.of(range(1, n + 1), edges)


def delete_vertex(graph: MarkedGraph, v: int) -> MarkedGraph:
    """Induced subgraph on everything except v.

    >>> g = dynkin_diagram(DynkinType("A", 3))
    >>> sorted(delete_vertex(g, 2).vertices)
    [1, 3]
    """
    if v not in graph.vertices:
        raise ValueError(f"vertex {v} is not in the graph")
    return MarkedGraph(
        graph.vertices - {v},
        frozenset(e for e in graph.edges if v not in e),
    )


def connected_components(graph: MarkedGraph) -> list[MarkedGraph]:
    """Connected components, each as its induced subgraph, in label order."""
    adj: dict[int, set[int]] = {v: set() for v in graph.vertices}
    for u, v in graph.edges:
        adj[u].add(v)
        adj[v].add(u)
    out = []
    seen: set[int] = set()
    for start in sorted(graph.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(MarkedGraph(
            frozenset(comp),
            frozenset(e for e in graph.edges if e[0] in comp),
        ))
    return out


def classify_component(component: MarkedGraph) -> DynkinType:
    """Recognize one connected tree as a Dynkin type.

    Paths are A_n.  A unique degree-3 vertex with sorted branch sizes
    (1,1,m) gives D_{m+3}, and (1,2,2)/(1,2,3)/(1,2,4) give E6/E7/E8.
    Everything else (degree >= 4, two forks, a cycle, longer branch
    profiles) raises :class:`ClassificationError`; such shapes cannot arise
    from deleting a vertex of an extended diagram, so the error only guards
    misuse.
    """
    n = len(component)
    if n == 0:
        raise ClassificationError("empty component")
    if len(component.edges) != n - 1:
        raise ClassificationError("component is not a tree")
    adj = {v: component.neighbors(v) for v in component.vertices}
    if any(len(nb) > 3 for nb in adj.values()):
        raise ClassificationError("vertex of degree >= 4")
    forks = [v for v, nb in adj.items() if len(nb) == 3]
    if not forks:
        return DynkinType("A", n)
    if len(forks) > 1:
        raise ClassificationError("two fork vertices")
    fork = forks[0]
    branches = []
    for nb in adj[fork]:
        size, prev, cur = 1, fork, nb
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            size += 1
        branches.append(size)
    branches.sort()
    if branches[0] == 1 and branches[1] == 1:
        return DynkinType("D", branches[2] + 3)
    if branches[0] == 1 and branches[1] == 2 and branches[2] in (2, 3, 4):
        return DynkinType("E", branches[2] + 4)
    raise ClassificationError(f"branch profile {tuple(branches)} is not Dynkin")


def classify_forest(graph: MarkedGraph) -> DynkinForest:
    """Classify every component; the empty graph is the empty forest.

    >>> g = extended_diagram(OrbifoldTriple.of(2, 3, 3))
    >>> str(classify_forest(delete_vertex(g, 5)))
    'A2 | A2 | A2'
    """
    return DynkinForest.of(classify_component(c) for c in connected_components(graph))

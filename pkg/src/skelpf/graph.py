"""Rooted multigraphs on the dense vertex set {0, ..., n}.

A graph is an immutable symmetric matrix of edge multiplicities with a
distinguished root.  The non-root vertices, in increasing order, index the
variables x_1, ..., x_n of the polynomial ring used by :mod:`skelpf.ideals`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from skelpf.errors import DomainError

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RootedMultigraph:
    n: int
    adjacency: Matrix
    root: int = 0

    def __post_init__(self):
        adj = tuple(tuple(int(x) for x in row) for row in self.adjacency)
        object.__setattr__(self, "adjacency", adj)
        size = self.n + 1
        if self.n < 0 or len(adj) != size or any(len(row) != size for row in adj):
            raise DomainError(f"adjacency must be {size}x{size}")
        if not 0 <= self.root <= self.n:
            raise DomainError(f"root {self.root} outside 0..{self.n}")
        for i in range(size):
            if adj[i][i] != 0:
                raise DomainError(f"loop at vertex {i}")
            for j in range(i + 1, size):
                if adj[i][j] != adj[j][i]:
                    raise DomainError(f"adjacency not symmetric at ({i}, {j})")
                if adj[i][j] < 0:
                    raise DomainError(f"negative multiplicity at ({i}, {j})")

    @property
    def vertices(self) -> range:
        return range(self.n + 1)

    @cached_property
    def nonroot(self) -> tuple[int, ...]:
        """Non-root vertices in increasing order (the variable order)."""
        return tuple(v for v in self.vertices if v != self.root)

    def mult(self, i: int, j: int) -> int:
        return self.adjacency[i][j]

    def degree(self, i: int) -> int:
        return sum(self.adjacency[i])

    def neighbors(self, i: int) -> list[int]:
        return [j for j, a in enumerate(self.adjacency[i]) if a > 0]

    @property
    def is_simple(self) -> bool:
        return all(a <= 1 for row in self.adjacency for a in row)

    @property
    def num_edges(self) -> int:
        return sum(self.adjacency[i][j] for i in self.vertices for j in range(i))

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, multiplicity) for i < j with at least one edge."""
        return [
            (i, j, self.adjacency[i][j])
            for i in self.vertices
            for j in range(i + 1, self.n + 1)
            if self.adjacency[i][j]
        ]

    def with_root(self, root: int) -> RootedMultigraph:
        return RootedMultigraph(self.n, self.adjacency, root)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "root": self.root,
            "adjacency": [a for row in self.adjacency for a in row],
        }

    @classmethod
    def from_dict(cls, data: dict) -> RootedMultigraph:
        n = int(data["n"])
        flat = data["adjacency"]
        if flat and isinstance(flat[0], (list, tuple)):
            flat = [a for row in flat for a in row]
        size = n + 1
        if len(flat) != size * size:
            raise DomainError(f"expected {size * size} adjacency entries, got {len(flat)}")
        rows = tuple(tuple(flat[i * size:(i + 1) * size]) for i in range(size))
        return cls(n, rows, int(data.get("root", 0)))

    @classmethod
    def load(cls, path) -> RootedMultigraph:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def from_edges(n: int, edges: Iterable[tuple[int, int]], root: int = 0) -> RootedMultigraph:
    """Build a graph from an edge list; repeated pairs add multiplicity."""
    adj = [[0] * (n + 1) for _ in range(n + 1)]
    for i, j in edges:
        if i == j:
            raise DomainError("loops are not allowed")
        adj[i][j] += 1
        adj[j][i] += 1
    return RootedMultigraph(n, _freeze(adj), root)


def _freeze(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def _thaw(G: RootedMultigraph) -> list[list[int]]:
    return [list(r) for r in G.adjacency]


def complete(n: int) -> RootedMultigraph:
    """K_{n+1} on {0, ..., n} rooted at 0."""
    return complete_ab(n, 1, 1)


def complete_ab(n: int, a: int, b: int) -> RootedMultigraph:
    """Complete multigraph: a edges root-to-vertex, b edges between other vertices."""
    if n < 1 or a < 1 or b < 1:
        raise DomainError("complete_ab needs n, a, b >= 1")
    adj = [[0 if i == j else (a if 0 in (i, j) else b) for j in range(n + 1)]
           for i in range(n + 1)]
    return RootedMultigraph(n, _freeze(adj), 0)


def complete_bipartite_ab(m: int, n: int, a: int = 1, b: int = 1) -> RootedMultigraph:
    """K_{m+1,n}^{a,b} on {0..m} + {m+1..m+n}.

    The root 0 sits in the first part; it has a edges to each vertex of the
    second part, and every i in 1..m has b edges to each vertex of the second
    part.  There are no edges inside a part.
    """
    if m < 1 or n < 1 or a < 1 or b < 1:
        raise DomainError("complete_bipartite_ab needs m, n, a, b >= 1")
    size = m + n + 1
    adj = [[0] * size for _ in range(size)]
    for j in range(m + 1, size):
        for i in range(m + 1):
            mult = a if i == 0 else b
            adj[i][j] = adj[j][i] = mult
    return RootedMultigraph(m + n, _freeze(adj), 0)


def delete_edge(G: RootedMultigraph, i: int, j: int) -> RootedMultigraph:
    if i == j or G.mult(i, j) < 1:
        raise DomainError(f"no edge between {i} and {j}")
    adj = _thaw(G)
    adj[i][j] -= 1
    adj[j][i] -= 1
    return RootedMultigraph(G.n, _freeze(adj), G.root)


def add_edge(G: RootedMultigraph, i: int, j: int) -> RootedMultigraph:
    if i == j:
        raise DomainError("loops are not allowed")
    adj = _thaw(G)
    adj[i][j] += 1
    adj[j][i] += 1
    return RootedMultigraph(G.n, _freeze(adj), G.root)


def delete_all_between(G: RootedMultigraph, i: int, j: int) -> RootedMultigraph:
    if i == j or G.mult(i, j) < 1:
        raise DomainError(f"no edge between {i} and {j}")
    adj = _thaw(G)
    adj[i][j] = adj[j][i] = 0
    return RootedMultigraph(G.n, _freeze(adj), G.root)


def delete_vertex(G: RootedMultigraph, v: int, root: int | None = None) -> RootedMultigraph:
    """Remove v and renumber the vertices above it downward.

    ``root`` names the root of the result in the *original* labelling.  It
    defaults to G's root, so deleting the root itself requires choosing one.
    """
    if not 0 <= v <= G.n:
        raise DomainError(f"vertex {v} outside 0..{G.n}")
    if G.n == 0:
        raise DomainError("cannot delete the only vertex")
    if root is None:
        if v == G.root:
            raise DomainError("deleting the root needs an explicit new root")
        root = G.root
    if root == v or not 0 <= root <= G.n:
        raise DomainError(f"invalid new root {root}")
    keep = [u for u in G.vertices if u != v]
    adj = [[G.adjacency[i][j] for j in keep] for i in keep]
    return RootedMultigraph(G.n - 1, _freeze(adj), keep.index(root))


def delete_root_edges(G: RootedMultigraph) -> RootedMultigraph:
    adj = _thaw(G)
    r = G.root
    for j in G.vertices:
        adj[r][j] = adj[j][r] = 0
    return RootedMultigraph(G.n, _freeze(adj), r)


def edges_leaving(G: RootedMultigraph, A: Iterable[int], i: int) -> int:
    """Number of edges from i to vertices outside A (the exponent d_A(i))."""
    A = set(A)
    if i not in A:
        raise DomainError(f"{i} is not in A")
    if G.root in A:
        raise DomainError("A must not contain the root")
    return sum(a for j, a in enumerate(G.adjacency[i]) if j not in A)


def genus(G: RootedMultigraph) -> int:
    """|E| - |V| + 1."""
    return G.num_edges - G.n


def is_connected(G: RootedMultigraph) -> bool:
    seen = {G.root}
    stack = [G.root]
    while stack:
        u = stack.pop()
        for w in G.neighbors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n + 1


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    A = [list(row) for row in M]
    size = len(A)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if A[k][k] == 0:
            for r in range(k + 1, size):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def _truncated(G: RootedMultigraph, sign: int) -> list[list[int]]:
    idx = G.nonroot
    return [
        [G.degree(i) if i == j else sign * G.mult(i, j) for j in idx]
        for i in idx
    ]


def laplacian_det(G: RootedMultigraph) -> int:
    """Determinant of the reduced Laplacian: the number of spanning trees."""
    return bareiss_det(_truncated(G, -1))


def signless_laplacian_det(G: RootedMultigraph) -> int:
    """det(D + A) with the root's row and column removed."""
    return bareiss_det(_truncated(G, 1))

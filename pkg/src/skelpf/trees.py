"""Rooted labelled trees and the families built from them.

Covers spanning trees of a rooted multigraph, uprooted trees (the root is
larger than each of its children), trees with a non-root leaf 1, and the
bijection psi between the latter two families.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from skelpf.errors import DomainError
from skelpf.graph import RootedMultigraph, is_connected


@dataclass(frozen=True)
class RootedLabelledTree:
    """A tree given by its root and a child -> parent map.

    ``parents`` is stored as (child, parent) pairs sorted by child so that
    equality and hashing are structural.  ``edge_labels`` (child -> label of
    the edge to its parent) is set for trees produced on multigraphs, and
    ``root_weight`` for weighted uprooted trees.
    """

    root: int
    parents: tuple[tuple[int, int], ...] = ()
    edge_labels: tuple[tuple[int, int], ...] | None = None
    root_weight: int | None = None

    def __post_init__(self):
        parents = tuple(sorted((int(c), int(p)) for c, p in dict(self.parents).items()))
        if len(parents) != len(self.parents):
            raise DomainError("a vertex has two parents")
        object.__setattr__(self, "parents", parents)
        if self.edge_labels is not None:
            labels = tuple(sorted((int(c), int(l)) for c, l in dict(self.edge_labels).items()))
            if {c for c, _ in labels} != {c for c, _ in parents}:
                raise DomainError("edge labels must cover exactly the tree edges")
            object.__setattr__(self, "edge_labels", labels)
        par = dict(parents)
        if self.root in par:
            raise DomainError("the root cannot have a parent")
        for c in par:
            seen = {c}
            v = c
            while v != self.root:
                if v not in par:
                    raise DomainError(f"{c} is not connected to the root")
                v = par[v]
                if v in seen:
                    raise DomainError("parent map has a cycle")
                seen.add(v)

    @classmethod
    def from_parent_map(cls, root: int, parent: Mapping[int, int], edge_label=None,
                        root_weight=None) -> RootedLabelledTree:
        labels = None if edge_label is None else tuple(edge_label.items())
        return cls(root, tuple(parent.items()), labels, root_weight)

    @cached_property
    def parent(self) -> dict[int, int]:
        return dict(self.parents)

    @cached_property
    def labels(self) -> frozenset[int]:
        return frozenset([self.root, *self.parent])

    @cached_property
    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.labels}
        for c, p in self.parents:
            ch[p].append(c)
        return ch

    @property
    def edge_label(self) -> dict[int, int]:
        return dict(self.edge_labels or ())

    def ancestors(self, v: int) -> list[int]:
        """Strict ancestors of v, nearest first."""
        out = []
        par = self.parent
        while v in par:
            v = par[v]
            out.append(v)
        return out

    def descendants(self, v: int) -> set[int]:
        out = set()
        stack = list(self.children[v])
        while stack:
            w = stack.pop()
            out.add(w)
            stack.extend(self.children[w])
        return out

    def adjacent(self, u: int, v: int) -> bool:
        par = self.parent
        return par.get(u) == v or par.get(v) == u

    def edges(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.parents}

    def relabel(self, mapping: Mapping[int, int]) -> RootedLabelledTree:
        labels = None
        if self.edge_labels is not None:
            labels = tuple((mapping[c], l) for c, l in self.edge_labels)
        return RootedLabelledTree(
            mapping[self.root],
            tuple((mapping[c], mapping[p]) for c, p in self.parents),
            labels,
            self.root_weight,
        )

    def to_dict(self) -> dict:
        out = {"root": self.root, "parents": [list(e) for e in self.parents]}
        if self.edge_labels is not None:
            out["edge_labels"] = [list(e) for e in self.edge_labels]
        if self.root_weight is not None:
            out["root_weight"] = self.root_weight
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> RootedLabelledTree:
        labels = data.get("edge_labels")
        return cls(
            int(data["root"]),
            tuple(tuple(e) for e in data.get("parents", ())),
            None if labels is None else tuple(tuple(e) for e in labels),
            data.get("root_weight"),
        )


# -- enumeration ---------------------------------------------------------


def _parent_vectors(order, options, root) -> Iterator[dict[int, tuple[int, int]]]:
    """Backtrack over parent choices, rejecting cycles as they appear.

    ``options[v]`` lists (parent, edge label) pairs for v, in the order they
    are tried.
    """
    assigned: dict[int, tuple[int, int]] = {}

    def closes_cycle(v, p):
        while p != root:
            if p == v:
                return True
            if p not in assigned:
                return False
            p = assigned[p][0]
        return False

    def rec(idx):
        if idx == len(order):
            # acyclic with only the root lacking a parent: a spanning tree
            yield dict(assigned)
            return
        v = order[idx]
        for p, lab in options[v]:
            if closes_cycle(v, p):
                continue
            assigned[v] = (p, lab)
            yield from rec(idx + 1)
            del assigned[v]

    yield from rec(0)


def spanning_trees(G: RootedMultigraph, root: int | None = None) -> list[RootedLabelledTree]:
    """All spanning trees of G oriented away from the root.

    Parallel edges give distinct trees, told apart by their edge labels;
    labels are only attached when G has parallel edges.
    """
    root = G.root if root is None else root
    if not is_connected(G.with_root(root)):
        raise DomainError("spanning trees need a connected graph")
    order = [v for v in G.vertices if v != root]
    options = {
        v: [(p, lab) for p in G.vertices for lab in range(G.mult(v, p))]
        for v in order
    }
    multi = not G.is_simple
    out = []
    for assign in _parent_vectors(order, options, root):
        parent = {v: p for v, (p, _) in assign.items()}
        labels = {v: lab for v, (_, lab) in assign.items()} if multi else None
        out.append(RootedLabelledTree.from_parent_map(root, parent, labels))
    return out


def rooted_trees(labels: Iterable[int], root: int | None = None,
                 uprooted: bool = False) -> list[RootedLabelledTree]:
    """All rooted trees on a label set, optionally only the uprooted ones.

    Ordered by root, then by the parent vector lexicographically.
    """
    labels = sorted(labels)
    roots = labels if root is None else [root]
    out = []
    for r in roots:
        order = [v for v in labels if v != r]
        options = {
            v: [(p, 0) for p in labels if p != v and not (uprooted and p == r and v > r)]
            for v in order
        }
        for assign in _parent_vectors(order, options, r):
            out.append(RootedLabelledTree(r, tuple((v, p) for v, (p, _) in assign.items())))
    return out


def is_uprooted(T: RootedLabelledTree) -> bool:
    return all(c < T.root for c in T.children[T.root])


def uprooted_trees(n: int) -> list[RootedLabelledTree]:
    if n < 2:
        raise DomainError("uprooted trees need n >= 2")
    return rooted_trees(range(1, n + 1), uprooted=True)


def uprooted_avoiding(n: int, i: int, j: int) -> list[RootedLabelledTree]:
    if i == j:
        raise DomainError("i and j must differ")
    return [T for T in uprooted_trees(n) if not T.adjacent(i, j)]


def has_nonroot_leaf_one(T: RootedLabelledTree) -> bool:
    return T.root != 1 and 1 in T.labels and not T.children[1]


def leaf_one_trees(n: int) -> list[RootedLabelledTree]:
    """Rooted trees on [n] in which 1 is a leaf and not the root."""
    return [T for T in rooted_trees(range(1, n + 1)) if has_nonroot_leaf_one(T)]


def leaf_one_avoiding(n: int, i: int, j: int) -> list[RootedLabelledTree]:
    return [T for T in leaf_one_trees(n) if not T.adjacent(i, j)]


# -- the bijection psi ---------------------------------------------------


def max_increasing_subtree(T: RootedLabelledTree, v: int) -> RootedLabelledTree:
    """Grow from v along T's own edges, taking a child w of u whenever w > u."""
    if v not in T.labels:
        raise DomainError(f"{v} is not a vertex of the tree")
    parent = {}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in T.children[u]:
            if w > u:
                parent[w] = u
                stack.append(w)
    return RootedLabelledTree.from_parent_map(v, parent)


def _order_relabel(T0: RootedLabelledTree, new_labels: Iterable[int]) -> RootedLabelledTree:
    """Move T0 onto new_labels via the order-preserving bijection."""
    mapping = dict(zip(sorted(T0.labels), sorted(new_labels)))
    return T0.relabel(mapping)


def _graft(base: RootedLabelledTree, extra_parents: Iterable[tuple[int, int]]) -> RootedLabelledTree:
    return RootedLabelledTree(base.root, base.parents + tuple(extra_parents))


def psi(T: RootedLabelledTree) -> RootedLabelledTree:
    """Map an uprooted tree on [n] to a tree with non-root leaf 1."""
    if not is_uprooted(T) or 1 not in T.labels or T.root == 1:
        raise DomainError("psi expects an uprooted tree containing 1 as a non-root")
    T0 = max_increasing_subtree(T, 1)
    inside = T0.edges()
    # edges of T outside T0 are kept verbatim: they form T_j (hanging from
    # the root r, with 1 as a leaf) and the T_i hanging from vertices of T0
    rest = [(c, p) for c, p in T.parents if frozenset((c, p)) not in inside]
    relabelled = _order_relabel(T0, (T0.labels - {1}) | {T.root})
    return _graft(relabelled, rest)


def psi_inverse(Tp: RootedLabelledTree) -> RootedLabelledTree:
    """Inverse of :func:`psi` on trees whose non-root leaf is 1."""
    if not has_nonroot_leaf_one(Tp):
        raise DomainError("psi_inverse expects 1 to be a non-root leaf")
    T0t = max_increasing_subtree(Tp, Tp.root)
    S0bar = T0t.labels
    r = next(a for a in Tp.ancestors(1) if a in S0bar)
    inside = T0t.edges()
    rest = [(c, p) for c, p in Tp.parents if frozenset((c, p)) not in inside]
    T0 = _order_relabel(T0t, (S0bar - {r}) | {1})
    return RootedLabelledTree(r, T0.parents + tuple(rest))


def lemma4_classify(Tp: RootedLabelledTree, n: int | None = None) -> str:
    """Sort a tree with non-root leaf 1 and no edge 1-n into A, B', B'' or outside.

    A: root is n.  B': root is adjacent to n and 1 descends from n.
    B'': root is not adjacent to n.
    """
    n = max(Tp.labels) if n is None else n
    if not has_nonroot_leaf_one(Tp) or Tp.adjacent(1, n):
        raise DomainError("expected a tree with non-root leaf 1 and no edge 1-n")
    if Tp.root == n:
        return "A"
    if not Tp.adjacent(Tp.root, n):
        return "B_double_prime"
    if n in Tp.ancestors(1):
        return "B_prime"
    return "outside"


def reroot(T: RootedLabelledTree, new_root: int) -> RootedLabelledTree:
    """Same undirected tree, oriented away from new_root."""
    if new_root not in T.labels:
        raise DomainError(f"{new_root} is not a vertex of the tree")
    parent = dict(T.parent)
    path = [new_root, *T.ancestors(new_root)]
    for child, par in zip(path, path[1:]):
        parent[par] = child
    parent.pop(new_root, None)
    return RootedLabelledTree.from_parent_map(new_root, parent)


def reroot_toward_leaf_one(Tp: RootedLabelledTree) -> RootedLabelledTree:
    """Re-root a tree of class A at the child of n on the path to leaf 1."""
    path = [1, *Tp.ancestors(1)]
    return reroot(Tp, path[-2])

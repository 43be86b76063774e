"""Depth-first burning on rooted multigraphs.

Fire starts at the root.  From the vertex on top of the DFS stack it tries
the largest unburnt neighbour j still joined to it by live edges.  The value
P(j) counts water droplets at j: with P(j) < a_ij the P(j) highest-labelled
edges are dampened and j burns through the edge labelled a_ij - P(j) - 1;
otherwise all a_ij edges are dampened and P(j) drops by a_ij.  A vertex
with no live edge to an unburnt vertex is popped.  On a simple graph this
is the single-droplet rule: burn when P(j) = 0, else spend one droplet.

The run completes (burns every vertex) exactly on G-parking functions, and
the tree edges give the spanning tree phi(P).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from skelpf.errors import DomainError, NotParkingFunctionError, PhiUndefinedError
from skelpf.graph import RootedMultigraph, delete_vertex
from skelpf.ideals import full_set_generator
from skelpf.parking import is_gpf, is_spherical
from skelpf.trees import RootedLabelledTree


@dataclass(frozen=True)
class BurnOutcome:
    burnt: tuple[int, ...]
    tree: RootedLabelledTree
    residual: tuple[tuple[int, int], ...]
    events: tuple[tuple, ...]

    @property
    def complete(self) -> bool:
        return len(self.burnt) == len(self.residual) + 1

    def to_dict(self) -> dict:
        return {
            "burnt": list(self.burnt),
            "complete": self.complete,
            "tree": self.tree.to_dict(),
            "residual": [list(r) for r in self.residual],
            "events": [list(e) for e in self.events],
        }


def _as_values(G: RootedMultigraph, root: int, P) -> dict[int, int]:
    others = [v for v in G.vertices if v != root]
    if isinstance(P, Mapping):
        values = {int(k): int(v) for k, v in P.items()}
        if sorted(values) != others:
            raise DomainError("P must be defined exactly on the non-root vertices")
    else:
        if len(P) != len(others):
            raise DomainError(f"expected {len(others)} values, got {len(P)}")
        values = dict(zip(others, (int(p) for p in P)))
    if any(p < 0 for p in values.values()):
        raise DomainError("P must be nonnegative")
    return values


def burn(G: RootedMultigraph, root: int | None = None, P=()) -> BurnOutcome:
    """Run the DFS burning algorithm.

    P is a mapping vertex -> droplets or a sequence over the non-root
    vertices in increasing order.  The event log records
    ("burn", i, j, label), ("dampen", i, j, count) and ("backtrack", i).
    """
    root = G.root if root is None else root
    water = _as_values(G, root, P)
    adj = G.adjacency
    multi = not G.is_simple
    burnt = [root]
    is_burnt = [False] * (G.n + 1)
    is_burnt[root] = True
    # live[i][j]: edges between burnt i and unburnt j not yet dampened
    live = [list(row) for row in adj]
    parent: dict[int, int] = {}
    label: dict[int, int] = {}
    events: list[tuple] = []
    stack = [root]
    while stack:
        i = stack[-1]
        j = next(
            (j for j in range(G.n, -1, -1) if not is_burnt[j] and live[i][j] > 0),
            None,
        )
        if j is None:
            events.append(("backtrack", i))
            stack.pop()
            continue
        a = live[i][j]
        if water[j] < a:
            if water[j]:
                events.append(("dampen", i, j, water[j]))
            lab = a - water[j] - 1
            water[j] = 0
            live[i][j] = live[j][i] = 0
            is_burnt[j] = True
            burnt.append(j)
            parent[j] = i
            label[j] = lab
            events.append(("burn", i, j, lab))
            stack.append(j)
        else:
            events.append(("dampen", i, j, a))
            water[j] -= a
            live[i][j] = live[j][i] = 0
    tree = RootedLabelledTree.from_parent_map(root, parent, label if multi else None)
    residual = tuple(sorted(water.items()))
    return BurnOutcome(tuple(burnt), tree, residual, tuple(events))


def phi(G: RootedMultigraph, root: int | None = None, P=()) -> RootedLabelledTree:
    """The spanning tree of a G-parking function."""
    out = burn(G, root, P)
    if len(out.burnt) != G.n + 1:
        raise NotParkingFunctionError(
            f"fire reached {len(out.burnt)} of {G.n + 1} vertices"
        )
    return out.tree


def inversions(T: RootedLabelledTree) -> int:
    """Pairs (i, j) with i a non-root ancestor of j and i > j."""
    return sum(
        1 for j in T.parent for i in T.ancestors(j) if i != T.root and i > j
    )


def kappa(G: RootedMultigraph, T: RootedLabelledTree) -> int:
    """Sum of |E(par(i), j)| over inversions (i, j) with i not the root."""
    if T.labels != set(G.vertices):
        raise DomainError("tree labels do not match the graph's vertices")
    par = T.parent
    adj = G.adjacency
    total = 0
    for j in par:
        for i in T.ancestors(j):
            if i != T.root and i > j:
                total += adj[par[i]][j]
    return total


def label_sum(T: RootedLabelledTree) -> int:
    return sum(l for _, l in T.edge_labels or ())


def _max_nonroot_multiplicity(G: RootedMultigraph) -> int:
    return max(
        (G.mult(i, j) for i, j, _ in G.edges() if G.root not in (i, j)),
        default=1,
    )


@dataclass(frozen=True)
class SphericalImage:
    """Result of the spherical construction, with the intermediate data."""

    tree: RootedLabelledTree
    reduced: tuple[int, ...]
    base: RootedMultigraph
    base_tree: RootedLabelledTree

    def to_dict(self) -> dict:
        return {"tree": self.tree.to_dict(), "reduced": list(self.reduced)}


def phi_spherical_full(G: RootedMultigraph, P: Sequence[int],
                       check_reduced_pf: bool | None = None) -> SphericalImage:
    """Map a spherical G-parking function to an uprooted tree on G - {root}.

    Subtract m_[n] to get the reduced function, take the largest vertex r
    whose reduced value is below b (b = 1 on simple graphs, else the largest
    multiplicity away from the root), and burn G - {root} from r with the
    remaining values.  The root weight is the reduced value at r, recorded
    only on multigraphs.

    check_reduced_pf (default: on for simple graphs) additionally requires
    the reduced function to be a G-parking function.  On multigraphs it
    usually is not, and only the burn of G - {root} decides.
    """
    if G.root != 0:
        raise DomainError("the spherical construction expects root 0")
    P = tuple(int(p) for p in P)
    if not is_spherical(G, P):
        raise PhiUndefinedError(f"{P} is not spherical")
    reduced = tuple(p - d for p, d in zip(P, full_set_generator(G)))
    if check_reduced_pf is None:
        check_reduced_pf = G.is_simple
    if check_reduced_pf and not is_gpf(G, reduced):
        raise PhiUndefinedError(f"reduced function {reduced} is not a G-parking function")
    b = _max_nonroot_multiplicity(G)
    candidates = [v for v, q in zip(G.nonroot, reduced) if q < b]
    if not candidates:
        raise PhiUndefinedError("no vertex has reduced value below b")
    r = max(candidates)
    base = delete_vertex(G, 0, root=r)
    values = {v - 1: q for v, q in zip(G.nonroot, reduced) if v != r}
    out = burn(base, base.root, values)
    if len(out.burnt) != base.n + 1:
        raise PhiUndefinedError("the restricted function does not burn G - {0}")
    weight = reduced[r - 1] if not G.is_simple else None
    shifted = out.tree.relabel({v: v + 1 for v in base.vertices})
    tree = RootedLabelledTree(shifted.root, shifted.parents, shifted.edge_labels, weight)
    return SphericalImage(tree, reduced, base, out.tree)


def phi_spherical(G: RootedMultigraph, P: Sequence[int]) -> RootedLabelledTree:
    return phi_spherical_full(G, P).tree

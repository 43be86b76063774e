from collections import Counter
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings

from skelpf.burning import (
    burn,
    inversions,
    kappa,
    label_sum,
    phi,
    phi_spherical,
    phi_spherical_full,
)
from skelpf.errors import DomainError, NotParkingFunctionError, PhiUndefinedError
from skelpf.graph import complete, complete_ab, delete_edge
from skelpf.ideals import parking_ideal
from skelpf.parking import enumerate_pf, enumerate_spf, is_gpf, rsum
from skelpf.trees import RootedLabelledTree, spanning_trees, uprooted_avoiding, uprooted_trees

from graph_strategies import connected_graphs


def path(root, *chain):
    parents = {}
    prev = root
    for v in chain:
        parents[v] = prev
        prev = v
    return RootedLabelledTree.from_parent_map(root, parents)


def test_burn_k3_zero():
    out = burn(complete(2), 0, (0, 0))
    assert out.burnt == (0, 2, 1)
    assert out.tree == path(0, 2, 1)
    assert out.complete


def test_burn_multigraph_labels():
    for a, b in ((2, 3), (3, 2), (1, 2)):
        T = burn(complete_ab(2, a, b), 0, (0, 0)).tree
        assert T.parent == {2: 0, 1: 2}
        assert T.edge_label == {2: a - 1, 1: b - 1}


def test_burn_all_dampened():
    out = burn(complete(2), 0, (5, 5))
    assert out.burnt == (0,)
    assert not out.complete
    assert out.residual == ((1, 4), (2, 4))


def test_burn_event_log():
    out = burn(complete(2), 0, (1, 0))
    assert out.events == (
        ("burn", 0, 2, 0),
        ("dampen", 2, 1, 1),
        ("backtrack", 2),
        ("burn", 0, 1, 0),
        ("backtrack", 1),
        ("backtrack", 0),
    )
    assert burn(complete(2), 0, (1, 0)) == out


def test_burn_accepts_mapping():
    assert burn(complete(2), 0, {1: 0, 2: 0}) == burn(complete(2), 0, (0, 0))
    with pytest.raises(DomainError):
        burn(complete(2), 0, {1: 0})
    with pytest.raises(DomainError):
        burn(complete(2), 0, (0,))


def test_phi():
    assert phi(complete(2), 0, (0, 0)) == path(0, 2, 1)
    with pytest.raises(NotParkingFunctionError):
        phi(complete(2), 0, (1, 1))


def test_phi_bijection_k4():
    G = complete(3)
    trees = [phi(G, 0, P) for P in enumerate_pf(G)]
    assert len(set(trees)) == 16
    assert set(trees) == set(spanning_trees(G))


def test_kappa_examples():
    assert kappa(complete(2), path(0, 2, 1)) == 1
    star = RootedLabelledTree.from_parent_map(0, {1: 0, 2: 0, 3: 0})
    assert inversions(star) == 0
    with pytest.raises(DomainError):
        kappa(complete(3), path(0, 2, 1))


def test_kappa_is_inversions_on_complete():
    for n in range(1, 5):
        G = complete(n)
        for T in spanning_trees(G):
            assert kappa(G, T) == inversions(T)


def test_rsum_equals_kappa_multigraph():
    for n in range(1, 4):
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                G = complete_ab(n, a, b)
                for P in enumerate_pf(G):
                    T = phi(G, 0, P)
                    assert rsum(G, P) == kappa(G, T) + label_sum(T)


@given(connected_graphs(max_n=4, max_mult=2))
@settings(max_examples=60, deadline=None)
def test_burn_completes_exactly_on_parking(G):
    for P in product(*(range(d) for d in parking_ideal(G).pure_powers())):
        out = burn(G, 0, P)
        assert out.complete == is_gpf(G, P)
        if out.complete:
            assert out.tree.edges() <= {frozenset((i, j)) for i, j, _ in G.edges()}
            assert rsum(G, P) == kappa(G, out.tree) + label_sum(out.tree)


def test_inversion_enumerator():
    for n in range(1, 6):
        G = complete(n)
        lhs = Counter(rsum(G, P) for P in enumerate_pf(G))
        rhs = Counter(inversions(T) for T in spanning_trees(G))
        assert lhs == rhs


def test_phi_spherical_k3():
    T = phi_spherical(complete(2), (1, 1))
    assert T == path(2, 1)
    assert sum((1, 1)) == comb(2, 2) - 0 + 1


def test_phi_spherical_complete():
    for n in range(2, 6):
        G = complete(n)
        images = []
        for P in enumerate_spf(G):
            S = phi_spherical_full(G, P)
            images.append(S.tree)
            assert sum(P) == comb(n, 2) - kappa(S.base, S.base_tree) + 1
        assert len(set(images)) == len(images)
        assert set(images) == set(uprooted_trees(n))


def test_phi_spherical_multigraph_statistic():
    for n in range(2, 4):
        for a in (1, 2):
            for b in (1, 2, 3):
                G = complete_ab(n, a, b)
                spf = enumerate_spf(G)
                images = set()
                for P in spf:
                    S = phi_spherical_full(G, P)
                    w = S.tree.root_weight or 0
                    assert 0 <= w < b
                    assert rsum(G, P) + w + 1 == kappa(S.base, S.base_tree) + label_sum(S.base_tree)
                    images.add(S.tree)
                assert len(images) == len(spf) == b ** n * (n - 1) ** (n - 1)


def test_phi_spherical_deleted_edge():
    H = delete_edge(complete(3), 1, 3)
    images = [phi_spherical(H, P) for P in enumerate_spf(H)]
    assert images == uprooted_avoiding(3, 1, 3)


def test_phi_spherical_rejects_non_spherical():
    with pytest.raises(PhiUndefinedError):
        phi_spherical(complete(2), (0, 0))

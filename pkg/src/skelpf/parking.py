"""G-parking, lambda-parking and spherical G-parking functions.

A parking function is a tuple P of length n whose k-th entry is the value
at the k-th non-root vertex of G (vertex k when the root is 0).
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, combinations_with_replacement, product
from math import factorial
from typing import Sequence

from skelpf.errors import DomainError, NotSphericalError
from skelpf.graph import RootedMultigraph, genus
from skelpf.ideals import (
    contains,
    dim_quotient,
    divides,
    full_set_generator,
    parking_ideal,
    skeleton_ideal,
    standard_monomials,
)


def _check_length(G: RootedMultigraph, P: Sequence[int]) -> tuple[int, ...]:
    P = tuple(int(p) for p in P)
    if len(P) != G.n:
        raise DomainError(f"expected {G.n} values, got {len(P)}")
    if any(p < 0 for p in P):
        raise DomainError("parking function values must be nonnegative")
    return P


def is_gpf(G: RootedMultigraph, P: Sequence[int]) -> bool:
    return not contains(parking_ideal(G), _check_length(G, P))


def is_gpf_by_subsets(G: RootedMultigraph, P: Sequence[int]) -> bool:
    """Every nonempty A has some i in A with P(i) < d_A(i).

    Evaluated straight from the definition, without building any ideal.
    """
    P = _check_length(G, P)
    verts = G.nonroot
    value = dict(zip(verts, P))
    adj = G.adjacency
    for size in range(1, G.n + 1):
        for A in combinations(verts, size):
            inside = set(A)
            if not any(
                value[i] < sum(a for j, a in enumerate(adj[i]) if j not in inside)
                for i in A
            ):
                return False
    return True


def enumerate_pf(G: RootedMultigraph) -> list[tuple[int, ...]]:
    return standard_monomials(parking_ideal(G))


def count_pf(G: RootedMultigraph) -> int:
    return dim_quotient(parking_ideal(G))


def check_lambda(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if not lam:
        raise DomainError("lambda must be nonempty")
    if any(x < 0 for x in lam) or any(x < y for x, y in zip(lam, lam[1:])):
        raise DomainError("lambda must be nonincreasing and nonnegative")
    return lam


def is_lambda_pf(lam: Sequence[int], P: Sequence[int]) -> bool:
    lam = check_lambda(lam)
    if len(P) != len(lam):
        raise DomainError("length mismatch between lambda and P")
    return all(p < t for p, t in zip(sorted(P), reversed(lam)))


def enumerate_lambda_pf(lam: Sequence[int]) -> list[tuple[int, ...]]:
    lam = check_lambda(lam)
    return [P for P in product(range(lam[0]), repeat=len(lam)) if is_lambda_pf(lam, P)]


def count_lambda_pf(lam: Sequence[int]) -> int:
    """Count by scanning sorted value multisets, weighting each by its
    number of distinct rearrangements."""
    lam = check_lambda(lam)
    n = len(lam)
    thresholds = lam[::-1]
    total = 0
    for s in combinations_with_replacement(range(lam[0]), n):
        if all(p < t for p, t in zip(s, thresholds)):
            ways = factorial(n)
            for c in Counter(s).values():
                ways //= factorial(c)
            total += ways
    return total


def _spherical_box_ideal(G: RootedMultigraph):
    if G.n < 2:
        raise DomainError("spherical parking functions need n >= 2")
    return skeleton_ideal(G, G.n - 2)


def is_spherical(G: RootedMultigraph, P: Sequence[int]) -> bool:
    P = _check_length(G, P)
    return contains(parking_ideal(G), P) and not contains(_spherical_box_ideal(G), P)


def enumerate_spf(G: RootedMultigraph) -> list[tuple[int, ...]]:
    """Standard monomials of the (n-2)-skeleton that lie in M_G.

    Outside the skeleton, membership in M_G reduces to divisibility by
    m_[n], the only generator the skeleton lacks.
    """
    low = _spherical_box_ideal(G)
    top = full_set_generator(G)
    return [b for b in standard_monomials(low) if divides(top, b)]


def reduce_spf(G: RootedMultigraph, P: Sequence[int]) -> tuple[int, ...]:
    """Divide x^P by m_[n]."""
    P = _check_length(G, P)
    if not is_spherical(G, P):
        raise NotSphericalError(f"{P} is not a spherical G-parking function")
    return tuple(p - d for p, d in zip(P, full_set_generator(G)))


def rsum(G: RootedMultigraph, P: Sequence[int]) -> int:
    return genus(G) - sum(P)

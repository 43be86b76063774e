"""Monomial ideals over exponent vectors.

Monomials are plain tuples of nonnegative integers.  A :class:`MonomialIdeal`
keeps its generators minimal and sorted, so two ideals are equal exactly
when their generator tuples are equal.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

from skelpf.errors import DomainError, NotArtinianError
from skelpf.graph import RootedMultigraph

Monomial = tuple[int, ...]


def divides(g: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(g, b))


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[Monomial, ...]:
    # sorting by total degree first means a divisor is always seen before
    # anything it divides
    kept: list[Monomial] = []
    for g in sorted({tuple(g) for g in gens}, key=lambda m: (sum(m), m)):
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    ambient_n: int
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        gens = [tuple(int(x) for x in g) for g in self.generators]
        for g in gens:
            if len(g) != self.ambient_n or min(g, default=0) < 0:
                raise DomainError(f"bad exponent vector {g} for n={self.ambient_n}")
        object.__setattr__(self, "generators", minimalize(gens))

    def __contains__(self, b) -> bool:
        return contains(self, b)

    def __len__(self) -> int:
        return len(self.generators)

    def pure_powers(self) -> tuple[int, ...]:
        """Smallest d_i with x_i^{d_i} in the ideal, per coordinate."""
        return _pure_powers(self)

    def to_strings(self) -> list[str]:
        return [monomial_str(g) for g in self.generators]


def monomial_str(b: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(b, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


def contains(I: MonomialIdeal, b: Sequence[int]) -> bool:
    if len(b) != I.ambient_n:
        raise DomainError("ambient dimension mismatch")
    return any(divides(g, b) for g in I.generators)


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True when I is contained in J."""
    return all(contains(J, g) for g in I.generators)


def _subset_generator(G: RootedMultigraph, A: Sequence[int]) -> Monomial:
    vars_ = G.nonroot
    A = set(A)
    exps = [0] * G.n
    for pos, v in enumerate(vars_):
        if v in A:
            exps[pos] = sum(a for j, a in enumerate(G.adjacency[v]) if j not in A)
    return tuple(exps)


@lru_cache(maxsize=512)
def skeleton_ideal(G: RootedMultigraph, k: int) -> MonomialIdeal:
    """Subideal generated by m_A for nonempty A with |A| <= k + 1."""
    if not 0 <= k <= G.n - 1:
        raise DomainError(f"k={k} outside 0..{G.n - 1}")
    gens = [
        _subset_generator(G, A)
        for size in range(1, k + 2)
        for A in combinations(G.nonroot, size)
    ]
    return MonomialIdeal(G.n, tuple(gens))


def parking_ideal(G: RootedMultigraph) -> MonomialIdeal:
    return skeleton_ideal(G, G.n - 1)


@lru_cache(maxsize=512)
def full_set_generator(G: RootedMultigraph) -> Monomial:
    """m_[n]: the exponent of each vertex is its number of root edges."""
    return _subset_generator(G, G.nonroot)


def colon_var(I: MonomialIdeal, i: int) -> MonomialIdeal:
    """(I : x_i), with i a 1-based variable index."""
    if not 1 <= i <= I.ambient_n:
        raise DomainError(f"variable {i} outside 1..{I.ambient_n}")
    gens = []
    for g in I.generators:
        g = list(g)
        if g[i - 1] > 0:
            g[i - 1] -= 1
        gens.append(tuple(g))
    return MonomialIdeal(I.ambient_n, tuple(gens))


def multipermutohedron_ideal(u: Sequence[int]) -> MonomialIdeal:
    u = tuple(int(x) for x in u)
    if any(x < 0 for x in u) or list(u) != sorted(u):
        raise DomainError("u must be nondecreasing and nonnegative")
    return MonomialIdeal(len(u), tuple(set(permutations(u))))


def _box(a: Sequence[int]) -> Iterator[Monomial]:
    return product(*(range(x + 1) for x in a))


def alexander_dual(I: MonomialIdeal, a: Sequence[int]) -> MonomialIdeal:
    """Dual of I with respect to x^a: x^b is in it iff x^(a - b) is not in I.

    The minimal members are a - c for the maximal standard monomials c of I
    inside the box 0 <= c <= a, so only that order ideal is walked.
    """
    a = _check_dual_bound(I, a)
    n = I.ambient_n
    gens = []
    for prefix, t in _walk_standard(I, tuple(x + 1 for x in a)):
        if t == 0:
            continue
        c = prefix + (t - 1,)
        # c + e_n is already outside the box or in I; test the other directions
        if all(
            c[i] == a[i] or contains(I, c[:i] + (c[i] + 1,) + c[i + 1:])
            for i in range(n - 1)
        ):
            gens.append(tuple(x - y for x, y in zip(a, c)))
    return MonomialIdeal(n, tuple(gens))


def alexander_dual_bruteforce(I: MonomialIdeal, a: Sequence[int]) -> MonomialIdeal:
    """Same ideal by scanning every point of the box; used as an oracle."""
    a = _check_dual_bound(I, a)
    members = [
        b for b in _box(a)
        if not contains(I, tuple(x - y for x, y in zip(a, b)))
    ]
    return MonomialIdeal(I.ambient_n, tuple(members))


def _check_dual_bound(I: MonomialIdeal, a: Sequence[int]) -> Monomial:
    a = tuple(int(x) for x in a)
    if len(a) != I.ambient_n:
        raise DomainError("ambient dimension mismatch")
    for g in I.generators:
        if not divides(g, a):
            raise DomainError(f"generator {g} does not divide x^{a}")
    return a


def _pure_powers(I: MonomialIdeal) -> tuple[int, ...]:
    n = I.ambient_n
    bounds: list[int | None] = [None] * n
    for g in I.generators:
        support = [i for i, e in enumerate(g) if e]
        if not support:
            return (0,) * n
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or g[i] < bounds[i]:
                bounds[i] = g[i]
    missing = [i + 1 for i, d in enumerate(bounds) if d is None]
    if missing:
        raise NotArtinianError(f"no pure power of x{missing[0]} in the ideal")
    return tuple(bounds)


def _walk_standard(I: MonomialIdeal, box: Sequence[int] | None = None) -> Iterator[tuple[Monomial, int]]:
    """Yield (prefix, t) where prefix + (c,) is standard exactly for c < t.

    The standard monomials form an order ideal, so a prefix is abandoned as
    soon as prefix + zeros falls into I, and the last coordinate is read off
    as a threshold instead of being scanned.  Without ``box`` the walk is
    bounded by the pure powers (I must be Artinian); with it, coordinate i
    is also capped below box[i].
    """
    n = I.ambient_n
    if box is None:
        box = _pure_powers(I)
    if n == 0 or box[0] == 0 or any(not any(g) for g in I.generators):
        return

    def rec(depth, prefix, active):
        if depth == n - 1:
            t = box[-1]
            for g in active:
                if g[-1] < t:
                    t = g[-1]
            yield prefix, t
            return
        for v in range(box[depth]):
            nxt = [g for g in active if g[depth] <= v]
            # prefix + (v, 0, ..., 0) in I: every larger v is too
            if any(not any(g[depth + 1:]) for g in nxt):
                break
            yield from rec(depth + 1, prefix + (v,), nxt)

    yield from rec(0, (), list(I.generators))


def standard_monomials(I: MonomialIdeal) -> list[Monomial]:
    """All exponent vectors outside I, in lexicographic order."""
    return [prefix + (c,) for prefix, t in _walk_standard(I) for c in range(t)]


def dim_quotient(I: MonomialIdeal) -> int:
    return sum(t for _, t in _walk_standard(I))


def standard_monomials_bruteforce(I: MonomialIdeal) -> list[Monomial]:
    """Plain scan of the full box; slow, used as an oracle."""
    return [b for b in product(*(range(d) for d in _pure_powers(I))) if not contains(I, b)]


def _add(poly, b, c):
    poly[b] += c
    if poly[b] == 0:
        del poly[b]


def kpolynomial_check(I: MonomialIdeal, betti_table: Iterable[tuple[int, Sequence[int], int]]) -> bool:
    """Compare a multigraded Betti table of I with the Hilbert series of R/I.

    Entries are (i, b, beta) with beta = beta_{i, b}(I).  The check is the
    exact polynomial identity

        sum_{b standard} x^b * prod_j (1 - x_j) = 1 - sum (-1)^i beta x^b.
    """
    n = I.ambient_n
    lhs: dict[Monomial, int] = defaultdict(int)
    signs = []
    for S in product((0, 1), repeat=n):
        signs.append((S, -1 if sum(S) % 2 else 1))
    for b in standard_monomials(I):
        for S, s in signs:
            _add(lhs, tuple(x + y for x, y in zip(b, S)), s)
    rhs: dict[Monomial, int] = defaultdict(int)
    _add(rhs, (0,) * n, 1)
    for i, b, beta in betti_table:
        b = tuple(b)
        if len(b) != n:
            raise DomainError("multidegree of wrong length in Betti table")
        _add(rhs, b, -beta if i % 2 == 0 else beta)
    return dict(lhs) == dict(rhs)

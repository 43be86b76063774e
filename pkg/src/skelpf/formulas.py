"""Closed forms and determinantal formulas, all in exact arithmetic.

* Steck determinants and lambda-parking counts,
* the polynomials f_n and g_{n;k} and the standard-monomial counts of
  skeleton ideals of complete multigraphs,
* multigraded Betti numbers of skeleton ideals of K_{n+1} through dual
  isolated subsets,
* the alternating-sum count of spherical parking functions of complete
  bipartite graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial, prod
from typing import Iterator, Sequence

from skelpf.errors import DomainError
from skelpf.parking import check_lambda

Number = int | Fraction


def rational_det(M: Sequence[Sequence[Number]]) -> Fraction:
    """Determinant over the rationals by Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    size = len(A)
    det = Fraction(1)
    for k in range(size):
        pivot = next((r for r in range(k, size) if A[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            A[k], A[pivot] = A[pivot], A[k]
            det = -det
        det *= A[k][k]
        for r in range(k + 1, size):
            if A[r][k]:
                f = A[r][k] / A[k][k]
                for c in range(k, size):
                    A[r][c] -= f * A[k][c]
    return det


def steck_matrix(lam: Sequence[Number]) -> list[list[Fraction]]:
    """Entry (i, j), 1-based: lam_{n-i+1}^{j-i+1} / (j-i+1)!, zero below the subdiagonal."""
    n = len(lam)
    M = []
    for i in range(1, n + 1):
        base = Fraction(lam[n - i])
        row = []
        for j in range(1, n + 1):
            e = j - i + 1
            row.append(Fraction(0) if e < 0 else base ** e / factorial(e))
        M.append(row)
    return M


def steck_det(lam: Sequence[int]) -> Fraction:
    return rational_det(steck_matrix(check_lambda(lam)))


def lambda_pf_count_steck(lam: Sequence[int]) -> int:
    lam = check_lambda(lam)
    count = factorial(len(lam)) * steck_det(lam)
    if count.denominator != 1:
        raise ArithmeticError(f"n! * det = {count} is not an integer")
    return count.numerator


def skeleton_lambda(n: int, k: int, a: int = 1, b: int = 1) -> tuple[int, ...]:
    """Thresholds whose lambda-parking functions count R / M^(k) of K_{n+1}^{a,b}."""
    if not 0 <= k <= n - 1:
        raise DomainError(f"k={k} outside 0..{n - 1}")
    return tuple(a + (n - i) * b if i <= k else a + (n - k - 1) * b for i in range(1, n + 1))


# -- f_n and g_{n;k} -----------------------------------------------------


def f_poly_det(n: int, b: int, x: Number) -> Fraction:
    return rational_det(steck_matrix([x + (n - i) * b for i in range(1, n + 1)]))


def g_poly_det(n: int, k: int, b: int, x: Number) -> Fraction:
    lam = [x + (k - i + 1) * b if i <= k else x for i in range(1, n + 1)]
    return rational_det(steck_matrix(lam))


def f_poly_eval(n: int, b: int, x: Number) -> Fraction:
    if n < 1:
        raise DomainError("n must be >= 1")
    x = Fraction(x)
    return x * (x + n * b) ** (n - 1) / factorial(n)


def g_poly_eval(n: int, k: int, b: int, x: Number) -> Fraction:
    if not 1 <= k <= n - 2:
        raise DomainError(f"k={k} outside 1..{n - 2}")
    x = Fraction(x)
    return sum(
        (Fraction(1, factorial(j)) * x ** (n - j) / factorial(n - j)
         * (k - j + 1) * Fraction(k + 1) ** (j - 1) * b ** j
         for j in range(k + 1)),
        Fraction(0),
    )


def g_top_closed(n: int, b: int, x: Number) -> Fraction:
    """g_{n;n-2} in product form."""
    x = Fraction(x)
    return ((x - b) * (x + (n - 1) * b) ** (n - 1) + (n - 1) ** (n - 1) * b ** n) / factorial(n)


def dim_skeleton_closed(n: int, k: int, a: int = 1, b: int = 1) -> int:
    """Number of standard monomials of R / M^(k) for K_{n+1}^{a,b}."""
    if n < 1 or a < 1 or b < 1:
        raise DomainError("need n, a, b >= 1")
    if not 0 <= k <= n - 1:
        raise DomainError(f"k={k} outside 0..{n - 1}")
    if k == n - 1:
        return a * (a + n * b) ** (n - 1)
    if k == 0:
        return (a + (n - 1) * b) ** n
    base = a + (n - k - 1) * b
    total = sum(
        comb(n, j) * Fraction(base) ** (n - j) * (k - j + 1) * Fraction(k + 1) ** (j - 1) * b ** j
        for j in range(k + 1)
    )
    assert total.denominator == 1
    return total.numerator


# -- Betti numbers of skeleton ideals of K_{n+1} ---------------------------


@dataclass(frozen=True)
class IsolatedSubset:
    """A dual isolated subset J = {j_1 < ... < j_t} of [n] for the k-skeleton.

    type 1: J inside [k+1], dual weight t - 1.
    type 2: J minus its largest element inside [k], k+1 < j_t <= n,
            dual weight (t - 1) + (j_t - k - 1).
    """

    elements: tuple[int, ...]
    kind: int
    n: int
    k: int

    @property
    def dual_weight(self) -> int:
        t = len(self.elements)
        if self.kind == 1:
            return t - 1
        return (t - 1) + (self.elements[-1] - self.k - 1)

    def thresholds(self) -> tuple[int, ...]:
        return skeleton_lambda(self.n, self.k)

    def multidegree(self) -> tuple[int, ...]:
        """b(J): coordinates j_{a-1}+1 .. j_a get lambda_{j_a}, the rest 0."""
        lam = self.thresholds()
        b = [0] * self.n
        prev = 0
        for j in self.elements:
            for pos in range(prev, j):
                b[pos] = lam[j - 1]
            prev = j
        return tuple(b)

    def multiplicity(self) -> int:
        if self.kind == 1:
            return 1
        jt = self.elements[-1]
        jprev = self.elements[-2] if len(self.elements) > 1 else 0
        return comb(jt - jprev - 1, self.k - jprev)

    def orbit_size(self) -> int:
        """Number of distinct coordinate permutations of b(J)."""
        cuts = (0, *self.elements, self.n)
        return factorial(self.n) // prod(factorial(y - x) for x, y in zip(cuts, cuts[1:]))


def _all_isolated_subsets(n: int, k: int) -> Iterator[IsolatedSubset]:
    if not 0 <= k <= n - 1:
        raise DomainError(f"k={k} outside 0..{n - 1}")
    top = min(k + 1, n)
    for t in range(1, top + 1):
        for J in combinations(range(1, top + 1), t):
            yield IsolatedSubset(J, 1, n, k)
    for jt in range(k + 2, n + 1):
        for t in range(0, k + 1):
            for head in combinations(range(1, k + 1), t):
                yield IsolatedSubset((*head, jt), 2, n, k)


def isolated_subsets(n: int, k: int, i: int) -> list[IsolatedSubset]:
    """Subsets indexing the multigraded Betti numbers beta_{i-1}(M^(k))."""
    return [J for J in _all_isolated_subsets(n, k) if J.dual_weight == i - 1]


def betti_multidegree(J: IsolatedSubset) -> tuple[tuple[int, ...], int]:
    return J.multidegree(), J.multiplicity()


def betti_total(n: int, k: int, i: int) -> int:
    """beta_{i-1} of the k-skeleton ideal of K_{n+1}; i runs over 1..n."""
    return sum(J.multiplicity() * J.orbit_size() for J in isolated_subsets(n, k, i))


def betti_table(n: int, k: int) -> list[tuple[int, tuple[int, ...], int]]:
    """All nonzero (i, b, beta_{i,b}) for the k-skeleton ideal, i from 0."""
    table = []
    for i in range(1, n + 1):
        for J in isolated_subsets(n, k, i):
            b, beta = betti_multidegree(J)
            if beta == 0:
                continue
            for pb in sorted(set(permutations(b))):
                table.append((i - 1, pb, beta))
    return table


def betti_k1_closed(n: int, i: int) -> int:
    return i * comb(n + 1, i + 1)


def _compositions(n: int, parts: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Chains 0 < c_1 < ... < c_parts < bound."""
    return combinations(range(1, bound), parts)


def _multinomial_chain(n: int, chain: Sequence[int]) -> int:
    cuts = (0, *chain, n)
    return factorial(n) // prod(factorial(y - x) for x, y in zip(cuts, cuts[1:]))


def betti_top_closed(n: int, i: int) -> int:
    """beta_{i-1} of the (n-2)-skeleton ideal of K_{n+1} as a sum over chains.

    Type-2 subsets here are {l_1 < ... < l_{i-2} < n} with l's at most n-2.
    """
    first = sum(_multinomial_chain(n, c) for c in _compositions(n, i, n))
    second = 0
    if i >= 2:
        for c in _compositions(n, i - 2, n - 1):
            last = c[-1] if c else 0
            second += _multinomial_chain(n, c) * (n - last - 1)
    return first + second


# -- complete bipartite graphs -------------------------------------------


def gamma_pairs(m: int, n: int, i: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of nondecreasing i-tuples s <= m, t <= n, ending at (m, n),
    whose sums s_j + t_j strictly increase from 0."""

    def rec(s, t):
        ps = s[-1] if s else 0
        pt = t[-1] if t else 0
        if len(s) == i:
            if ps == m and pt == n:
                yield tuple(s), tuple(t)
            return
        for ns in range(ps, m + 1):
            for nt in range(pt, n + 1):
                if ns + nt > ps + pt:
                    yield from rec(s + [ns], t + [nt])

    yield from rec([], [])


def _mu(m: int, n: int, s, t) -> int:
    out = 1
    ps = pt = 0
    for sj, tj in zip(s, t):
        if sj < m and tj < n:
            out *= (n - tj) ** (sj - ps) * (m - sj) ** (tj - pt)
        ps, pt = sj, tj
    return out


@lru_cache(maxsize=None)
def spf_bipartite_count(m: int, n: int) -> int:
    """Spherical parking functions of K_{m+1,n} as an alternating sum over
    chain types (s, t) of subsets of the two vertex classes."""
    if m < 1 or n < 1:
        raise DomainError("m and n must be >= 1")
    total = 0
    for i in range(1, m + n + 1):
        sign = -1 if (m + n - i) % 2 else 1
        for s, t in gamma_pairs(m, n, i):
            total += sign * _multinomial_chain(m, s[:-1]) * _multinomial_chain(n, t[:-1]) \
                * _mu(m, n, s, t)
    return total


# -- identity report -----------------------------------------------------


def un_prime_count(n: int) -> int:
    """(n-1)^(n-3) (n-2)^2 uprooted trees on [n] with no edge 1-n."""
    if n < 3:
        raise DomainError("n must be >= 3")
    return (n - 1) ** (n - 3) * (n - 2) ** 2


def identity_checks(n: int, a: int = 1, b: int = 1, trees_up_to: int = 7) -> list[dict]:
    """Evaluate both sides of the dimension identities; never raises on mismatch."""
    if n < 2 or a < 1 or b < 1:
        raise DomainError("need n >= 2 and a, b >= 1")
    reports = []
    lhs = sum(
        comb(n, j) * Fraction(a + b) ** (n - j) * (n - j - 1) * Fraction(n - 1) ** (j - 1) * b ** j
        for j in range(n - 1)
    )
    rhs = a * (a + n * b) ** (n - 1) + (n - 1) ** (n - 1) * b ** n
    reports.append(_report(f"top skeleton sum identity n={n} a={a} b={b}", lhs, rhs))
    if a == b == 1:
        lhs1 = sum(
            comb(n, j) * Fraction(2) ** (n - j) * (n - j - 1) * Fraction(n - 1) ** (j - 1)
            for j in range(n - 1)
        )
        reports.append(_report(f"a=b=1 identity n={n}", lhs1, (n + 1) ** (n - 1) + (n - 1) ** (n - 1)))
    reports.append(_report(
        f"g_(n;n-2) closed vs sum n={n} b={b} at x=a+b",
        g_top_closed(n, b, a + b) * factorial(n) if n >= 2 else None,
        rhs,
    ))
    if 3 <= n <= trees_up_to:
        from skelpf.trees import uprooted_avoiding

        reports.append(_report(
            f"|U'_{n}| = (n-1)^(n-3)(n-2)^2",
            len(uprooted_avoiding(n, 1, n)),
            un_prime_count(n),
        ))
    return reports


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _report(claim: str, lhs, rhs) -> dict:
    return {"claim": claim, "lhs": _fmt(lhs), "rhs": _fmt(rhs), "pass": lhs == rhs}

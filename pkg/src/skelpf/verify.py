"""Batch verification of the counting identities and bijections.

Each check takes a size cap ``max_n`` and returns a list of reports
``{claim, lhs, rhs, pass}``.  Checks are independent, so they may run in
worker processes; results are always collected in the fixed order of
:data:`CHECKS`, which keeps the output byte-identical across worker counts.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb

from skelpf import formulas as fm
from skelpf.burning import burn, inversions, kappa, label_sum, phi, phi_spherical, phi_spherical_full
from skelpf.graph import (
    RootedMultigraph,
    complete,
    complete_ab,
    complete_bipartite_ab,
    delete_edge,
    delete_root_edges,
    is_connected,
)
from skelpf.ideals import (
    alexander_dual,
    colon_var,
    dim_quotient,
    kpolynomial_check,
    multipermutohedron_ideal,
    parking_ideal,
    skeleton_ideal,
)
from skelpf.parking import count_pf, enumerate_lambda_pf, enumerate_spf, is_gpf, rsum
from skelpf.trees import (
    leaf_one_avoiding,
    leaf_one_trees,
    lemma4_classify,
    psi,
    psi_inverse,
    reroot_toward_leaf_one,
    spanning_trees,
    uprooted_avoiding,
    uprooted_trees,
)

WORKERS_ENV = "SKELPF_WORKERS"
# the full-box burning scan and the duality checks grow too fast past this
HEAVY_CAP = 5
SEED = 20240611


def report(claim: str, lhs, rhs, ok: bool | None = None) -> dict:
    return {
        "claim": claim,
        "lhs": fm._fmt(lhs),
        "rhs": fm._fmt(rhs),
        "pass": bool(lhs == rhs) if ok is None else bool(ok),
    }


# -- graph fixtures --------------------------------------------------------


def random_connected_graph(rng: random.Random, n: int, max_mult: int = 1,
                           p: float = 0.6, need_root_edge_to_n: bool = False) -> RootedMultigraph:
    """A random connected multigraph on {0..n}, resampled until connected.

    With need_root_edge_to_n the graph also has a_{0n} >= 1 and stays
    connected once one of those edges is removed.
    """
    while True:
        adj = [[0] * (n + 1) for _ in range(n + 1)]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                if rng.random() < p:
                    adj[i][j] = adj[j][i] = rng.randint(1, max_mult)
        G = RootedMultigraph(n, tuple(tuple(r) for r in adj))
        if not is_connected(G):
            continue
        if need_root_edge_to_n:
            if adj[0][n] == 0 or not is_connected(delete_edge(G, 0, n)):
                continue
        return G


def minus_random_edges(G: RootedMultigraph, rng: random.Random, count: int) -> RootedMultigraph:
    """Delete up to ``count`` single edges while keeping G connected."""
    for _ in range(count):
        edges = [(i, j) for i, j, _ in G.edges()]
        rng.shuffle(edges)
        for i, j in edges:
            H = delete_edge(G, i, j)
            if is_connected(H):
                G = H
                break
    return G


def burning_test_graphs(max_n: int, seed: int = SEED) -> list[tuple[str, RootedMultigraph]]:
    rng = random.Random(seed)
    out = []
    for n in range(1, max_n + 1):
        out.append((f"K_{n + 1}", complete(n)))
        out.append((f"K_{n + 1} minus edges", minus_random_edges(complete(n), rng, 2)))
        for a in (1, 2):
            for b in (1, 2):
                if a == b == 1:
                    continue
                G = complete_ab(n, a, b)
                out.append((f"K_{n + 1}^({a},{b})", G))
                out.append((f"K_{n + 1}^({a},{b}) minus edges", minus_random_edges(G, rng, 2)))
        for m in range(1, n):
            G = complete_bipartite_ab(m, n - m)
            out.append((f"K_({m + 1},{n - m})", G))
            out.append((f"K_({m + 1},{n - m}) minus edges", minus_random_edges(G, rng, 1)))
    return out


def _box(G: RootedMultigraph):
    from itertools import product

    return product(*(range(d) for d in parking_ideal(G).pure_powers()))


# -- checks ------------------------------------------------------------------


def check_counts(max_n: int) -> list[dict]:
    out = []
    for n in range(1, max_n + 1):
        G = complete(n)
        out.append(report(f"|PF(K_{n + 1})| = (n+1)^(n-1)", count_pf(G), (n + 1) ** (n - 1)))
        out.append(report(f"|SPT(K_{n + 1})| = (n+1)^(n-1)", len(spanning_trees(G)), (n + 1) ** (n - 1)))
    for n in range(2, max_n + 1):
        G = complete(n)
        out.append(report(f"|sPF(K_{n + 1})| = (n-1)^(n-1)", len(enumerate_spf(G)), (n - 1) ** (n - 1)))
        out.append(report(f"dim R/M^(1) of K_{n + 1} = (2n-1)(n-1)^(n-1)",
                          dim_quotient(skeleton_ideal(G, 1)), (2 * n - 1) * (n - 1) ** (n - 1)))
        out.append(report(f"dim R/M^(0) of K_{n + 1} = n^n", dim_quotient(skeleton_ideal(G, 0)), n ** n))
    return out


def check_skeleton_dims(max_n: int) -> list[dict]:
    out = []
    for n in range(1, max_n + 1):
        for a in (1, 2):
            for b in (1, 2):
                for k in range(n):
                    out.append(report(
                        f"dim R/M^({k}) of K_{n + 1}^({a},{b}) closed form",
                        dim_quotient(skeleton_ideal(complete_ab(n, a, b), k)),
                        fm.dim_skeleton_closed(n, k, a, b),
                    ))
    return out


def random_lambdas(count: int, max_n: int, seed: int = SEED) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        out.append(tuple(sorted((rng.randint(0, n + 2) for _ in range(n)), reverse=True)))
    return out


def check_steck(max_n: int, count: int = 50) -> list[dict]:
    return [
        report(f"n! det Steck{lam} = |PF{lam}|", fm.lambda_pf_count_steck(lam), len(enumerate_lambda_pf(lam)))
        for lam in random_lambdas(count, max_n)
    ]


def check_polynomials(max_n: int, max_b: int = 3) -> list[dict]:
    out = []
    for n in range(1, max_n + 1):
        points = [Fraction(2 * j + 1, j + 2) for j in range(n + 1)]
        for b in range(1, max_b + 1):
            ok_f = all(fm.f_poly_det(n, b, x) == fm.f_poly_eval(n, b, x) for x in points)
            out.append(report(f"f_{n} determinant = closed form, b={b}", ok_f, True))
            for k in range(1, n - 1):
                ok_g = all(fm.g_poly_det(n, k, b, x) == fm.g_poly_eval(n, k, b, x) for x in points)
                out.append(report(f"g_({n};{k}) determinant = closed form, b={b}", ok_g, True))
            if n >= 3:
                ok_top = all(fm.g_poly_eval(n, n - 2, b, x) == fm.g_top_closed(n, b, x) for x in points)
                out.append(report(f"g_({n};{n - 2}) product form, b={b}", ok_top, True))
    return out


def check_burning(max_n: int) -> list[dict]:
    out = []
    max_n = min(max_n, HEAVY_CAP)
    for name, G in burning_test_graphs(max_n):
        agree = stat = 0
        bad_agree = bad_stat = 0
        for P in _box(G):
            res = burn(G, G.root, P)
            done = len(res.burnt) == G.n + 1
            if done != is_gpf(G, P):
                bad_agree += 1
            agree += 1
            if done:
                stat += 1
                if rsum(G, P) != kappa(G, res.tree) + label_sum(res.tree):
                    bad_stat += 1
        out.append(report(f"{name}: burn completes iff parking ({agree} cases)", bad_agree, 0))
        out.append(report(f"{name}: rsum = kappa + label sum ({stat} cases)", bad_stat, 0))
    for n in range(1, max_n + 1):
        G = complete(n)
        lhs = Counter(rsum(G, P) for P in _pf(G))
        rhs = Counter(inversions(T) for T in spanning_trees(G))
        out.append(report(f"inversion enumerator of K_{n + 1}", dict(sorted(lhs.items())),
                          dict(sorted(rhs.items()))))
    return out


def _pf(G):
    from skelpf.parking import enumerate_pf

    return enumerate_pf(G)


def check_phi_bijection(max_n: int) -> list[dict]:
    out = []
    for n in range(1, min(max_n, 4) + 1):
        G = complete(n)
        trees = {phi(G, 0, P) for P in _pf(G)}
        out.append(report(f"phi: PF(K_{n + 1}) onto spanning trees", trees == set(spanning_trees(G)), True))
    return out


def check_spherical(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        G = complete(n)
        bad = 0
        images = []
        for P in enumerate_spf(G):
            S = phi_spherical_full(G, P)
            images.append(S.tree)
            if sum(P) != comb(n, 2) - kappa(S.base, S.base_tree) + 1:
                bad += 1
        out.append(report(f"sPF(K_{n + 1}): sum = C(n,2) - kappa + 1", bad, 0))
        out.append(report(f"phi_{n} image = uprooted trees on [{n}]",
                          len(set(images)) == len(images) and set(images) == set(uprooted_trees(n)), True))
    for n in range(2, min(max_n, 4) + 1):
        for a in (1, 2):
            for b in (1, 2):
                G = complete_ab(n, a, b)
                spf = enumerate_spf(G)
                bad = 0
                images = set()
                for P in spf:
                    S = phi_spherical_full(G, P)
                    images.add(S.tree)
                    omega = S.tree.root_weight or 0
                    if rsum(G, P) + omega + 1 != kappa(S.base, S.base_tree) + label_sum(S.base_tree):
                        bad += 1
                tag = f"K_{n + 1}^({a},{b})"
                out.append(report(f"{tag}: rsum + omega + 1 = kappa + label sum", bad, 0))
                out.append(report(f"{tag}: |sPF| = b^n (n-1)^(n-1)", len(spf), b ** n * (n - 1) ** (n - 1)))
                out.append(report(f"{tag}: phi injective", len(images), len(spf)))
    return out


def check_deleted_edge(max_n: int) -> list[dict]:
    out = []
    for n in range(3, max_n + 1):
        G = complete(n)
        want = fm.un_prime_count(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append(report(f"sPF(K_{n + 1} − e) = {want} for e = ({i},{j})",
                                  len(enumerate_spf(delete_edge(G, i, j))), want))
        H = delete_edge(G, 1, n)
        images = [phi_spherical(H, P) for P in enumerate_spf(H)]
        target = set(uprooted_avoiding(n, 1, n))
        out.append(report(f"phi onto uprooted trees avoiding (1,{n}) on [{n}]",
                          len(set(images)) == len(images) and set(images) == target, True))
        out.append(report(f"|U'_{n}| = (n-1)^(n-3)(n-2)^2", len(target), want))
    # the edge (3,4) on K_5: counts agree but phi misses some targets
    H = delete_edge(complete(4), 3, 4)
    spf = enumerate_spf(H)
    images = {phi_spherical(H, P) for P in spf}
    target = set(uprooted_avoiding(4, 3, 4))
    out.append(report("sPF(K_5 − e) = 12", len(spf), 12))
    out.append(report("uprooted avoiding (3,4) on [4] = 17", len(target), 17))
    out.append(report("phi on K_5 − (3,4) injective into targets",
                      len(images) == len(spf) and images <= target, True))
    out.append(report("phi on K_5 − (3,4) not surjective", images != target, True))
    return out


def check_ideal_identities(max_n: int, graphs: int = 20) -> list[dict]:
    out = []
    max_n = min(max_n, HEAVY_CAP)
    for n in range(1, max_n + 1):
        for k in range(n):
            u = tuple(min(i, k) + 1 for i in range(n))
            ok = alexander_dual(multipermutohedron_ideal(u), (n,) * n) == skeleton_ideal(complete(n), k)
            out.append(report(f"M^({k}) of K_{n + 1} is a permutohedron dual", ok, True))
            for a in (1, 2):
                for b in (1, 2):
                    if a == b == 1:
                        continue
                    u = tuple(a + min(i, k) * b for i in range(n))
                    bound = 2 * a + (n - 1) * b - 1
                    ok = (alexander_dual(multipermutohedron_ideal(u), (bound,) * n)
                          == skeleton_ideal(complete_ab(n, a, b), k))
                    out.append(report(f"M^({k}) of K_{n + 1}^({a},{b}) is a permutohedron dual", ok, True))
    rng = random.Random(SEED)
    for idx in range(graphs):
        n = rng.randint(2, max_n) if max_n >= 2 else 2
        G = random_connected_graph(rng, n, max_mult=rng.choice((1, 2)), need_root_edge_to_n=True)
        H = delete_edge(G, 0, n)
        ok = colon_var(parking_ideal(G), n) == parking_ideal(H)
        ok_skel = colon_var(skeleton_ideal(G, n - 2), n) == skeleton_ideal(H, n - 2)
        shifted = {P[:-1] + (P[-1] + 1,) for P in enumerate_spf(H)}
        ok_mult = shifted == set(enumerate_spf(G))
        out.append(report(f"random graph {idx} (n={n}): colon by x_n = deleting a root edge",
                          ok and ok_skel, True))
        out.append(report(f"random graph {idx} (n={n}): x_n maps sPF onto sPF", ok_mult, True))
    return out


def check_betti(max_n: int) -> list[dict]:
    out = []
    for n in range(1, min(max_n, HEAVY_CAP) + 1):
        for k in range(n):
            I = skeleton_ideal(complete(n), k)
            out.append(report(f"Betti table of M^({k}), K_{n + 1}, matches Hilbert series",
                              kpolynomial_check(I, fm.betti_table(n, k)), True))
    for n in range(1, max_n + 2):
        for k in range(n):
            out.append(report(f"beta_0 of M^({k}), K_{n + 1} = generator count",
                              fm.betti_total(n, k, 1), len(skeleton_ideal(complete(n), k))))
    for n in range(2, max_n + 1):
        for i in range(1, n + 1):
            out.append(report(f"beta_{i - 1} of M^(1), K_{n + 1} = i C(n+1,i+1)",
                              fm.betti_total(n, 1, i), fm.betti_k1_closed(n, i)))
        if n >= 3:
            for i in range(1, n + 1):
                out.append(report(f"beta_{i - 1} of M^({n - 2}), K_{n + 1} chain sum",
                                  fm.betti_total(n, n - 2, i), fm.betti_top_closed(n, i)))
    return out


def check_bipartite(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        G = complete(n)
        out.append(report(f"|sPF| of K_{n + 1} unchanged without root edges",
                          len(enumerate_spf(delete_root_edges(G))), len(enumerate_spf(G))))
        H = complete_ab(n, 2, 2)
        out.append(report(f"|sPF| of K_{n + 1}^(2,2) unchanged without root edges",
                          len(enumerate_spf(delete_root_edges(H))), len(enumerate_spf(H))))
    for total in range(2, max_n + 2):
        for m in range(1, total):
            n = total - m
            brute = len(enumerate_spf(complete_bipartite_ab(m, n)))
            out.append(report(f"sPF(K_({m + 1},{n})) alternating sum", fm.spf_bipartite_count(m, n), brute))
            out.append(report(f"sPF(K_({m + 1},{n})) = sPF(K_({n + 1},{m}))",
                              fm.spf_bipartite_count(m, n), fm.spf_bipartite_count(n, m)))
    for total in range(2, max_n + 1):
        for m in range(1, total):
            n = total - m
            base = len(enumerate_spf(complete_bipartite_ab(m, n)))
            for a in (1, 2):
                for b in (1, 2):
                    out.append(report(f"sPF(K_({m + 1},{n})^({a},{b})) = b^(m+n) sPF(K_({m + 1},{n}))",
                                      len(enumerate_spf(complete_bipartite_ab(m, n, a, b))),
                                      b ** (m + n) * base))
    return out


def check_psi(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        U = uprooted_trees(n)
        B = leaf_one_trees(n)
        out.append(report(f"|U_{n}| = (n-1)^(n-1)", len(U), (n - 1) ** (n - 1)))
        out.append(report(f"|B_{n}| = (n-1)^(n-1)", len(B), (n - 1) ** (n - 1)))
        out.append(report(f"psi_inverse after psi on U_{n}", all(psi_inverse(psi(T)) == T for T in U), True))
        out.append(report(f"psi after psi_inverse on B_{n}", all(psi(psi_inverse(T)) == T for T in B), True))
    for n in range(3, max_n + 1):
        images = [psi(T) for T in uprooted_avoiding(n, 1, n)]
        classes = Counter(lemma4_classify(T, n) for T in images)
        Bp = leaf_one_avoiding(n, 1, n)
        A = [T for T in Bp if lemma4_classify(T, n) == "A"]
        outside = {T for T in Bp if lemma4_classify(T, n) == "outside"}
        want = Counter(lemma4_classify(T, n) for T in Bp)
        del want["outside"]
        out.append(report(f"psi(U'_{n}) = A + B' + B''", dict(sorted(classes.items())), dict(sorted(want.items()))))
        out.append(report(f"|A| = (n-1)^(n-3)(n-2) at n={n}", len(A), (n - 1) ** (n - 3) * (n - 2)))
        rerooted = [reroot_toward_leaf_one(T) for T in A]
        out.append(report(f"re-rooting maps A onto the outside class at n={n}",
                          len(set(rerooted)) == len(A) and set(rerooted) == outside, True))
    return out


def check_identities(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        out.extend(fm.identity_checks(n, 1, 1, trees_up_to=max_n))
    out.extend(fm.identity_checks(3, 2, 5, trees_up_to=0))
    return out


CHECKS = (
    ("counts", check_counts),
    ("skeleton dimensions", check_skeleton_dims),
    ("steck", check_steck),
    ("polynomials", check_polynomials),
    ("burning", check_burning),
    ("phi bijection", check_phi_bijection),
    ("spherical", check_spherical),
    ("deleted edge", check_deleted_edge),
    ("ideal identities", check_ideal_identities),
    ("betti", check_betti),
    ("bipartite", check_bipartite),
    ("psi", check_psi),
    ("identities", check_identities),
)


def _run_one(args):
    name, max_n = args
    fn = dict(CHECKS)[name]
    return fn(max_n)


def worker_count(default: int = 1) -> int:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def run_verification(max_n: int, workers: int | None = None) -> dict:
    """Run every check and collect a summary in the fixed check order."""
    if max_n < 1:
        raise fm.DomainError("max_n must be >= 1")
    workers = worker_count() if workers is None else max(1, workers)
    jobs = [(name, max_n) for name, _ in CHECKS]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]
    sections = []
    total = failed = 0
    for (name, _), reports in zip(CHECKS, results):
        total += len(reports)
        failed += sum(not r["pass"] for r in reports)
        sections.append({"check": name, "reports": reports})
    return {"max_n": max_n, "total": total, "failed": failed, "passed": failed == 0, "checks": sections}

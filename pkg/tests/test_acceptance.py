"""Acceptance criteria, one test each, all exact (tolerance zero).

Every test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary by conftest.py.
"""

import os
import random
import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction
from itertools import product
from math import comb

from skelpf import formulas as fm
from skelpf.burning import burn, inversions, kappa, label_sum, phi_spherical, phi_spherical_full
from skelpf.graph import complete, complete_ab, complete_bipartite_ab, delete_edge, delete_root_edges
from skelpf.ideals import (
    alexander_dual,
    colon_var,
    dim_quotient,
    kpolynomial_check,
    multipermutohedron_ideal,
    parking_ideal,
    skeleton_ideal,
)
from skelpf.parking import count_pf, enumerate_lambda_pf, enumerate_pf, enumerate_spf, is_gpf, rsum
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
from skelpf.verify import burning_test_graphs, random_connected_graph, random_lambdas


def _failures(items):
    bad = [label for label, ok in items if not ok]
    return bad, f"{len(items) - len(bad)}/{len(items)} checks" + (f", failing: {bad[:3]}" if bad else "")


def test_criterion_01_counting_identities(criterion):
    items = []
    for n in range(1, 6):
        G = complete(n)
        items.append((f"PF n={n}", count_pf(G) == (n + 1) ** (n - 1)))
        items.append((f"SPT n={n}", len(spanning_trees(G)) == (n + 1) ** (n - 1)))
    for n in range(2, 7):
        items.append((f"sPF n={n}", len(enumerate_spf(complete(n))) == (n - 1) ** (n - 1)))
        items.append((f"M^(0) n={n}", dim_quotient(skeleton_ideal(complete(n), 0)) == n ** n))
    for n in range(2, 6):
        items.append((f"M^(1) n={n}",
                      dim_quotient(skeleton_ideal(complete(n), 1)) == (2 * n - 1) * (n - 1) ** (n - 1)))
    bad, msg = _failures(items)
    criterion(1, f"PF/SPT/sPF/M^(1)/M^(0) counts of complete graphs ({msg})", not bad)


def test_criterion_02_skeleton_dimension_closed_forms(criterion):
    items = []
    for n in range(1, 6):
        for a in (1, 2):
            for b in (1, 2):
                for k in range(n):
                    brute = dim_quotient(skeleton_ideal(complete_ab(n, a, b), k))
                    items.append(((n, k, a, b), brute == fm.dim_skeleton_closed(n, k, a, b)))
    bad, msg = _failures(items)
    criterion(2, f"closed-form dim R/M^(k) of K_(n+1)^(a,b), n<=5 ({msg})", not bad)


def test_criterion_03_steck(criterion):
    lams = random_lambdas(50, 6)
    items = [(lam, fm.lambda_pf_count_steck(lam) == len(enumerate_lambda_pf(lam))) for lam in lams]
    assert all(max(lam) <= len(lam) + 2 for lam in lams)
    bad, msg = _failures(items)
    criterion(3, f"n! Steck determinant = brute-force lambda-PF count, 50 random lambda ({msg})", not bad)


def test_criterion_04_polynomial_identities(criterion):
    items = []
    for n in range(1, 9):
        points = [Fraction(3 * j - 4, j + 1) for j in range(n + 1)]
        for b in (1, 2, 3):
            items.append(((n, b, "f"), all(fm.f_poly_det(n, b, x) == fm.f_poly_eval(n, b, x) for x in points)))
            for k in range(1, n - 1):
                items.append(((n, k, b, "g"),
                              all(fm.g_poly_det(n, k, b, x) == fm.g_poly_eval(n, k, b, x) for x in points)))
    bad, msg = _failures(items)
    criterion(4, f"determinant f_n, g_(n;k) equal closed forms, n<=8, b<=3 ({msg})", not bad)


def test_criterion_05_burning(criterion):
    items = []
    cases = 0
    for name, G in burning_test_graphs(5):
        ok = True
        for P in product(*(range(d) for d in parking_ideal(G).pure_powers())):
            cases += 1
            out = burn(G, G.root, P)
            if out.complete != is_gpf(G, P):
                ok = False
            elif out.complete and rsum(G, P) != kappa(G, out.tree) + label_sum(out.tree):
                ok = False
        items.append((name, ok))
    for n in range(1, 6):
        G = complete(n)
        lhs = Counter(rsum(G, P) for P in enumerate_pf(G))
        rhs = Counter(inversions(T) for T in spanning_trees(G))
        items.append((f"inversion enumerator n={n}", lhs == rhs))
    bad, msg = _failures(items)
    criterion(5, f"burn completes iff parking, rsum = kappa (+ labels), {cases} box points ({msg})", not bad)


def test_criterion_06_spherical_bijections(criterion):
    items = []
    for n in range(2, 6):
        G = complete(n)
        spf = enumerate_spf(G)
        stats = []
        images = []
        for P in spf:
            S = phi_spherical_full(G, P)
            images.append(S.tree)
            stats.append(sum(P) == comb(n, 2) - kappa(S.base, S.base_tree) + 1)
        items.append((f"statistic n={n}", all(stats)))
        items.append((f"bijection n={n}", len(set(images)) == len(images) and set(images) == set(uprooted_trees(n))))
        if n == 5:
            items.append(("256 cases at n=5", len(spf) == 256))
    for n in range(2, 5):
        for a in (1, 2):
            for b in (1, 2):
                G = complete_ab(n, a, b)
                spf = enumerate_spf(G)
                images = set()
                ok = True
                for P in spf:
                    S = phi_spherical_full(G, P)
                    images.add(S.tree)
                    w = S.tree.root_weight or 0
                    ok &= w < b and rsum(G, P) + w + 1 == kappa(S.base, S.base_tree) + label_sum(S.base_tree)
                items.append(((n, a, b), ok and len(images) == len(spf) == b ** n * (n - 1) ** (n - 1)))
    bad, msg = _failures(items)
    criterion(6, f"phi_n bijective with sum statistic; multigraph statistic ({msg})", not bad)


def test_criterion_07_deleted_edge(criterion):
    items = []
    for n in range(3, 7):
        want = (n - 1) ** (n - 3) * (n - 2) ** 2
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                items.append(((n, i, j), len(enumerate_spf(delete_edge(complete(n), i, j))) == want))
        H = delete_edge(complete(n), 1, n)
        images = [phi_spherical(H, P) for P in enumerate_spf(H)]
        target = set(uprooted_avoiding(n, 1, n))
        items.append((f"phi onto U'_{n}", len(set(images)) == len(images) and set(images) == target))
    H = delete_edge(complete(4), 3, 4)
    spf = enumerate_spf(H)
    images = {phi_spherical(H, P) for P in spf}
    target = set(uprooted_avoiding(4, 3, 4))
    items.append(("12 vs 17", len(spf) == 12 and len(target) == 17))
    items.append(("injective, not surjective", len(images) == 12 and images < target))
    bad, msg = _failures(items)
    criterion(7, f"|sPF(K_(n+1) - e)| = (n-1)^(n-3)(n-2)^2, phi onto U'_n, 12 vs 17 control ({msg})", not bad)


def test_criterion_08_duality_and_colon(criterion):
    items = []
    for n in range(1, 6):
        for k in range(n):
            u = tuple(min(i, k) + 1 for i in range(n))
            items.append(((n, k), alexander_dual(multipermutohedron_ideal(u), (n,) * n) == skeleton_ideal(complete(n), k)))
            for a in (1, 2):
                for b in (1, 2):
                    u = tuple(a + min(i, k) * b for i in range(n))
                    bound = 2 * a + (n - 1) * b - 1
                    items.append(((n, k, a, b), alexander_dual(multipermutohedron_ideal(u), (bound,) * n)
                                  == skeleton_ideal(complete_ab(n, a, b), k)))
    rng = random.Random(8)
    for idx in range(20):
        n = rng.randint(2, 5)
        G = random_connected_graph(rng, n, max_mult=rng.choice((1, 2)), need_root_edge_to_n=True)
        H = delete_edge(G, 0, n)
        ok = colon_var(parking_ideal(G), n) == parking_ideal(H)
        ok &= colon_var(skeleton_ideal(G, n - 2), n) == skeleton_ideal(H, n - 2)
        shifted = [P[:-1] + (P[-1] + 1,) for P in enumerate_spf(H)]
        ok &= sorted(shifted) == enumerate_spf(G)
        items.append((f"random graph {idx}", ok))
    bad, msg = _failures(items)
    criterion(8, f"permutohedron duals and colon/deletion with x_n bijection ({msg})", not bad)


def test_criterion_09_betti(criterion):
    items = []
    for n in range(1, 6):
        for k in range(n):
            items.append(((n, k, "K"), kpolynomial_check(skeleton_ideal(complete(n), k), fm.betti_table(n, k))))
    for n in range(1, 7):
        for k in range(n):
            items.append(((n, k, "beta0"), fm.betti_total(n, k, 1) == len(skeleton_ideal(complete(n), k))))
    for n in range(2, 8):
        for i in range(1, n + 1):
            items.append(((n, i, "k=1"), fm.betti_total(n, 1, i) == i * comb(n + 1, i + 1)))
    bad, msg = _failures(items)
    criterion(9, f"Betti table vs Hilbert series, beta_0, k=1 totals ({msg})", not bad)


def test_criterion_10_bipartite_and_root_edges(criterion):
    items = []
    for n in range(2, 6):
        for G in (complete(n), complete_ab(n, 2, 1), complete_ab(n, 1, 2), complete_ab(n, 2, 2)):
            items.append(((n, "root edges"), len(enumerate_spf(delete_root_edges(G))) == len(enumerate_spf(G))))
    for total in range(2, 7):
        for m in range(1, total):
            n = total - m
            count = fm.spf_bipartite_count(m, n)
            items.append(((m, n, "formula"), count == len(enumerate_spf(complete_bipartite_ab(m, n)))))
            items.append(((m, n, "symmetry"), count == fm.spf_bipartite_count(n, m)))
            if total <= 5:
                for a in (1, 2):
                    for b in (1, 2):
                        scaled = len(enumerate_spf(complete_bipartite_ab(m, n, a, b)))
                        items.append(((m, n, a, b), scaled == b ** (m + n) * count))
    for n in range(2, 5):
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                items.append(((n, a, b), len(enumerate_spf(complete_ab(n, a, b))) == b ** n * (n - 1) ** (n - 1)))
    bad, msg = _failures(items)
    criterion(10, f"root-edge invariance, bipartite formula/symmetry/scaling, b^n(n-1)^(n-1) ({msg})", not bad)


def test_criterion_11_psi(criterion):
    items = []
    for n in range(2, 7):
        U = uprooted_trees(n)
        B = leaf_one_trees(n)
        items.append((f"|U_{n}|", len(U) == (n - 1) ** (n - 1)))
        items.append((f"roundtrip U_{n}", all(psi_inverse(psi(T)) == T for T in U)))
        items.append((f"roundtrip B_{n}", all(psi(psi_inverse(T)) == T for T in B)))
    for n in range(3, 6):
        images = Counter(lemma4_classify(psi(T), n) for T in uprooted_avoiding(n, 1, n))
        Bp = leaf_one_avoiding(n, 1, n)
        classes = Counter(lemma4_classify(T, n) for T in Bp)
        outside = {T for T in Bp if lemma4_classify(T, n) == "outside"}
        A = [T for T in Bp if lemma4_classify(T, n) == "A"]
        items.append((f"image classes n={n}", "outside" not in images
                      and images == classes - Counter({"outside": classes["outside"]})))
        items.append((f"reroot n={n}", {reroot_toward_leaf_one(T) for T in A} == outside and len(outside) == len(A)))
    bad, msg = _failures(items)
    criterion(11, f"psi round trips, image classes of psi, |U_n| ({msg})", not bad)


def _verify_run(workers):
    env = dict(os.environ, SKELPF_WORKERS=str(workers))
    proc = subprocess.run([sys.executable, "-m", "skelpf", "verify", "--max-n", "4"],
                          capture_output=True, env=env)
    return proc.returncode, proc.stdout


def test_criterion_12_determinism(criterion):
    start = time.perf_counter()
    runs = [_verify_run(1) for _ in range(3)] + [_verify_run(4)]
    elapsed = time.perf_counter() - start
    outputs = {out for _, out in runs}
    ok = len(outputs) == 1 and all(code == 0 for code, _ in runs) and elapsed < 120
    text = runs[0][1].decode("utf-8")
    ok &= "sPF(K_5 − e) = 12" in text and "uprooted avoiding (3,4) on [4] = 17" in text
    criterion(12, f"verify --max-n 4 byte-identical over 3 runs and workers 1/4, {elapsed:.1f}s total", ok)

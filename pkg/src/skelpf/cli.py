"""Command-line interface.

Every invocation prints one JSON document ``{command, input, result}``.
Counts are written as decimal strings so arbitrary precision survives any
JSON reader.  Bad flags exit with status 2, domain errors with status 1 and
a document ``{command, input, error: {code, message}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

from skelpf import formulas as fm
from skelpf.burning import burn, inversions, kappa, label_sum, phi, phi_spherical_full
from skelpf.errors import DomainError, SkelpfError
from skelpf.graph import (
    RootedMultigraph,
    complete,
    complete_ab,
    complete_bipartite_ab,
    delete_all_between,
    delete_edge,
    delete_root_edges,
    delete_vertex,
    edges_leaving,
    genus,
    is_connected,
    signless_laplacian_det,
)
from skelpf.ideals import (
    alexander_dual,
    colon_var,
    contains,
    dim_quotient,
    kpolynomial_check,
    multipermutohedron_ideal,
    parking_ideal,
    skeleton_ideal,
    standard_monomials,
)
from skelpf.parking import (
    count_lambda_pf,
    enumerate_lambda_pf,
    enumerate_pf,
    enumerate_spf,
    is_gpf,
    is_lambda_pf,
    is_spherical,
    reduce_spf,
    rsum,
)
from skelpf.trees import (
    RootedLabelledTree,
    is_uprooted,
    lemma4_classify,
    max_increasing_subtree,
    psi,
    psi_inverse,
    spanning_trees,
    uprooted_avoiding,
    uprooted_trees,
)
from skelpf.verify import run_verification

# library operations reached by each command; checked by the test suite
COMMAND_OPS: dict[str, tuple[str, ...]] = {
    "ideal": ("parking_ideal", "colon_var", "alexander_dual", "multipermutohedron_ideal",
              "complete", "complete_ab", "complete_bipartite_ab", "delete_edge",
              "delete_all_between", "delete_vertex", "delete_root_edges", "edges_leaving",
              "genus", "is_connected", "signless_laplacian_det"),
    "skeleton": ("skeleton_ideal", "contains"),
    "standard": ("standard_monomials", "dim_quotient"),
    "pf": ("is_gpf", "enumerate_pf", "sum", "rsum"),
    "spf": ("is_spherical", "enumerate_spf", "reduce_spf"),
    "lambda-pf": ("is_lambda_pf", "enumerate_lambda_pf"),
    "burn": ("burn",),
    "phi": ("phi", "kappa", "inversions"),
    "phi-spherical": ("phi_spherical",),
    "trees": ("spanning_trees",),
    "uprooted": ("uprooted_trees", "uprooted_avoiding", "is_uprooted"),
    "psi": ("psi", "psi_inverse", "max_increasing_subtree", "lemma4_classify"),
    "steck": ("steck_det", "lambda_pf_count_steck"),
    "dims": ("dim_skeleton_closed", "f_poly_eval", "g_poly_eval"),
    "betti": ("isolated_subsets", "betti_multidegree", "betti_total", "kpolynomial_check"),
    "bipartite": ("spf_bipartite_count",),
    "verify": ("identity_checks",),
}


class UsageError(Exception):
    """Raised for flag combinations argparse cannot express; exits with 2."""


def _s(x) -> str:
    return fm._fmt(x)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


# -- graph input -------------------------------------------------------------


def _add_graph_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--complete", type=int, metavar="N", help="K_{N+1} rooted at 0")
    src.add_argument("--complete-ab", type=int, nargs=3, metavar=("N", "A", "B"),
                     help="K_{N+1} with A root edges and B edges between other vertices")
    src.add_argument("--bipartite", type=int, nargs=4, metavar=("M", "N", "A", "B"),
                     help="K_{M+1,N} with A root edges and B edges across")
    src.add_argument("--graph", metavar="FILE", help="JSON graph file {n, adjacency, root}")
    g.add_argument("--delete", type=int, nargs=2, action="append", metavar=("I", "J"),
                   default=[], help="remove one edge between I and J (repeatable)")
    g.add_argument("--delete-all", type=int, nargs=2, action="append", metavar=("I", "J"),
                   default=[], help="remove every edge between I and J (repeatable)")
    g.add_argument("--delete-root-edges", action="store_true",
                   help="remove every edge at the root")
    g.add_argument("--delete-vertex", type=int, nargs=2, metavar=("V", "ROOT"),
                   help="remove vertex V, rooting the result at ROOT")


def _graph(args) -> RootedMultigraph:
    if args.complete is not None:
        G = complete(args.complete)
    elif args.complete_ab is not None:
        G = complete_ab(*args.complete_ab)
    elif args.bipartite is not None:
        G = complete_bipartite_ab(*args.bipartite)
    elif args.graph is not None:
        try:
            G = RootedMultigraph.load(args.graph)
        except SkelpfError:
            raise
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read graph file: {exc}")
    else:
        raise UsageError("a graph is required (--complete, --complete-ab, --bipartite or --graph)")
    for i, j in args.delete:
        G = delete_edge(G, i, j)
    for i, j in args.delete_all:
        G = delete_all_between(G, i, j)
    if args.delete_root_edges:
        G = delete_root_edges(G)
    if args.delete_vertex:
        v, root = args.delete_vertex
        G = delete_vertex(G, v, root=root)
    return G


def _graph_echo(args) -> dict:
    out = {}
    for key in ("complete", "complete_ab", "bipartite", "graph"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    if args.delete:
        out["delete"] = args.delete
    if args.delete_all:
        out["delete_all"] = args.delete_all
    if args.delete_root_edges:
        out["delete_root_edges"] = True
    if args.delete_vertex:
        out["delete_vertex"] = args.delete_vertex
    return out


def _ideal_doc(I) -> dict:
    return {
        "generators": [list(g) for g in I.generators],
        "monomials": I.to_strings(),
        "count": _s(len(I)),
    }


def _graph_summary(G: RootedMultigraph) -> dict:
    return {
        "n": G.n,
        "root": G.root,
        "edges": _s(G.num_edges),
        "genus": _s(genus(G)),
        "connected": is_connected(G),
        "signless_laplacian_det": _s(signless_laplacian_det(G)),
    }


def _need_len(P, n, flag):
    if len(P) != n:
        raise UsageError(f"{flag} needs {n} values, got {len(P)}")


# -- commands ------------------------------------------------------------------


def cmd_ideal(args):
    echo = {}
    if args.permutohedron is not None:
        I = multipermutohedron_ideal(args.permutohedron)
        echo["permutohedron"] = list(args.permutohedron)
        result = {}
    else:
        G = _graph(args)
        echo.update(_graph_echo(args))
        I = parking_ideal(G)
        result = {"graph": _graph_summary(G)}
        if args.subset is not None:
            A, i = args.subset
            result["edges_leaving"] = _s(edges_leaving(G, A, i))
    if args.colon is not None:
        I = colon_var(I, args.colon)
        echo["colon"] = args.colon
    if args.dual is not None:
        I = alexander_dual(I, args.dual)
        echo["dual"] = list(args.dual)
    result["ideal"] = _ideal_doc(I)
    return echo, result


def cmd_skeleton(args):
    G = _graph(args)
    echo = {**_graph_echo(args), "k": args.k}
    I = skeleton_ideal(G, args.k)
    result = {"ideal": _ideal_doc(I)}
    if args.contains is not None:
        _need_len(args.contains, G.n, "--contains")
        echo["contains"] = list(args.contains)
        result["contains"] = contains(I, args.contains)
    return echo, result


def cmd_standard(args):
    G = _graph(args)
    k = G.n - 1 if args.k is None else args.k
    echo = {**_graph_echo(args), "k": k}
    I = skeleton_ideal(G, k)
    if args.count:
        return echo, {"count": _s(dim_quotient(I))}
    std = standard_monomials(I)
    return echo, {"count": _s(len(std)), "monomials": [list(b) for b in std]}


def cmd_pf(args):
    G = _graph(args)
    echo = _graph_echo(args)
    if args.check is not None:
        _need_len(args.check, G.n, "--check")
        echo["check"] = list(args.check)
        return echo, {
            "is_parking": is_gpf(G, args.check),
            "sum": _s(sum(args.check)),
            "rsum": _s(rsum(G, args.check)),
        }
    pfs = enumerate_pf(G)
    if args.count:
        return echo, {"count": _s(len(pfs))}
    return echo, {"count": _s(len(pfs)), "functions": [list(P) for P in pfs]}


def cmd_spf(args):
    G = _graph(args)
    echo = _graph_echo(args)
    if args.check is not None:
        _need_len(args.check, G.n, "--check")
        echo["check"] = list(args.check)
        ok = is_spherical(G, args.check)
        result = {"is_spherical": ok}
        if ok:
            result["reduced"] = list(reduce_spf(G, args.check))
        return echo, result
    spf = enumerate_spf(G)
    if args.count:
        return echo, {"count": _s(len(spf))}
    return echo, {"count": _s(len(spf)), "functions": [list(P) for P in spf]}


def cmd_lambda_pf(args):
    lam = args.lam
    echo = {"lambda": list(lam)}
    if args.check is not None:
        echo["check"] = list(args.check)
        return echo, {"is_lambda_parking": is_lambda_pf(lam, args.check)}
    if args.count:
        return echo, {"count": _s(count_lambda_pf(lam))}
    fns = enumerate_lambda_pf(lam)
    return echo, {"count": _s(len(fns)), "functions": [list(P) for P in fns]}


def cmd_burn(args):
    G = _graph(args)
    root = G.root if args.root is None else args.root
    echo = {**_graph_echo(args), "root": root, "p": list(args.p)}
    return echo, burn(G, root, args.p).to_dict()


def cmd_phi(args):
    G = _graph(args)
    root = G.root if args.root is None else args.root
    echo = {**_graph_echo(args), "root": root, "p": list(args.p)}
    T = phi(G, root, args.p)
    result = {
        "tree": T.to_dict(),
        "kappa": _s(kappa(G.with_root(root), T)),
        "inversions": _s(inversions(T)),
        "label_sum": _s(label_sum(T)),
    }
    if root == G.root:
        result["rsum"] = _s(rsum(G, args.p))
    return echo, result


def cmd_phi_spherical(args):
    G = _graph(args)
    echo = {**_graph_echo(args), "p": list(args.p)}
    S = phi_spherical_full(G, args.p)
    return echo, {
        "tree": S.tree.to_dict(),
        "reduced": list(S.reduced),
        "uprooted": is_uprooted(S.tree),
        "kappa": _s(kappa(S.base, S.base_tree)),
        "label_sum": _s(label_sum(S.base_tree)),
    }


def cmd_trees(args):
    G = _graph(args)
    root = G.root if args.root is None else args.root
    echo = {**_graph_echo(args), "root": root}
    trees = spanning_trees(G, root)
    if args.count:
        return echo, {"count": _s(len(trees))}
    return echo, {"count": _s(len(trees)), "trees": [T.to_dict() for T in trees]}


def cmd_uprooted(args):
    echo = {"n": args.n}
    if args.avoid is not None:
        echo["avoid"] = list(args.avoid)
        trees = uprooted_avoiding(args.n, *args.avoid)
    else:
        trees = uprooted_trees(args.n)
    if args.count:
        return echo, {"count": _s(len(trees))}
    return echo, {"count": _s(len(trees)), "trees": [T.to_dict() for T in trees]}


def _load_tree(text: str) -> RootedLabelledTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            with open(text, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"--tree needs a JSON tree or a file holding one: {exc}")
    try:
        return RootedLabelledTree.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed tree: {exc}")


def cmd_psi(args):
    T = _load_tree(args.tree)
    echo = {"tree": T.to_dict(), "inverse": args.inverse}
    if args.subtree is not None:
        echo["subtree"] = args.subtree
        return echo, {"subtree": max_increasing_subtree(T, args.subtree).to_dict()}
    image = psi_inverse(T) if args.inverse else psi(T)
    result = {"tree": image.to_dict()}
    if args.classify:
        target = T if args.inverse else image
        result["class"] = lemma4_classify(target)
    return echo, result


def cmd_steck(args):
    lam = args.lam
    return {"lambda": list(lam)}, {
        "det": _s(fm.steck_det(lam)),
        "count": _s(fm.lambda_pf_count_steck(lam)),
    }


def cmd_dims(args):
    n, k, a, b = args.n, args.k, args.a, args.b
    echo = {"n": n, "k": k, "a": a, "b": b}
    result = {"closed_form": _s(fm.dim_skeleton_closed(n, k, a, b))}
    if args.enumerate:
        result["enumerated"] = _s(dim_quotient(skeleton_ideal(complete_ab(n, a, b), k)))
    if args.x is not None:
        echo["x"] = _s(args.x)
        result["f"] = _s(fm.f_poly_eval(n, b, args.x))
        if 1 <= k <= n - 2:
            result["g"] = _s(fm.g_poly_eval(n, k, b, args.x))
    return echo, result


def cmd_betti(args):
    n, k = args.n, args.k
    if not 0 <= k <= n - 1:
        raise DomainError(f"k={k} outside 0..{n - 1}")
    echo = {"n": n, "k": k}
    indices = range(1, n + 1) if args.i is None else [args.i]
    totals = []
    for i in indices:
        entry = {"i": i, "beta": _s(fm.betti_total(n, k, i))}
        if args.subsets:
            entry["subsets"] = []
            for J in fm.isolated_subsets(n, k, i):
                b, mult = fm.betti_multidegree(J)
                entry["subsets"].append({
                    "elements": list(J.elements),
                    "type": J.kind,
                    "dual_weight": J.dual_weight,
                    "multidegree": list(b),
                    "multiplicity": _s(mult),
                })
        totals.append(entry)
    result = {"betti": totals}
    if args.check:
        result["hilbert_series_check"] = kpolynomial_check(skeleton_ideal(complete(n), k),
                                                           fm.betti_table(n, k))
    return echo, result


def cmd_bipartite(args):
    echo = {"m": args.m, "n": args.n}
    result = {"count": _s(fm.spf_bipartite_count(args.m, args.n))}
    if args.enumerate:
        result["enumerated"] = _s(len(enumerate_spf(complete_bipartite_ab(args.m, args.n))))
    return echo, result


def cmd_verify(args):
    return {"max_n": args.max_n}, run_verification(args.max_n)


COMMANDS: dict[str, Callable] = {
    "ideal": cmd_ideal,
    "skeleton": cmd_skeleton,
    "standard": cmd_standard,
    "pf": cmd_pf,
    "spf": cmd_spf,
    "lambda-pf": cmd_lambda_pf,
    "burn": cmd_burn,
    "phi": cmd_phi,
    "phi-spherical": cmd_phi_spherical,
    "trees": cmd_trees,
    "uprooted": cmd_uprooted,
    "psi": cmd_psi,
    "steck": cmd_steck,
    "dims": cmd_dims,
    "betti": cmd_betti,
    "bipartite": cmd_bipartite,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skelpf",
        description="Parking function ideals, skeleton ideals, burning bijections and tree counts.",
    )
    parser.add_argument("--out", metavar="FILE", help="write the JSON document here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("ideal", help="parking ideal of a graph, or a permutohedron ideal")
    _add_graph_flags(p)
    p.add_argument("--permutohedron", type=_ints, metavar="U", help="nondecreasing vector u")
    p.add_argument("--colon", type=int, metavar="I", help="colon by the variable x_I")
    p.add_argument("--dual", type=_ints, metavar="A", help="Alexander dual with respect to x^A")
    p.add_argument("--subset", type=lambda s: (_ints(s.split(":")[0]), int(s.split(":")[1])),
                   metavar="A:I", help="report d_A(I), e.g. 1,2:1")

    p = sub.add_parser("skeleton", help="k-skeleton ideal")
    _add_graph_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--contains", type=_ints, metavar="B", help="test membership of x^B")

    p = sub.add_parser("standard", help="standard monomials of a skeleton ideal (default: full ideal)")
    _add_graph_flags(p)
    p.add_argument("--k", type=int)
    p.add_argument("--count", action="store_true")

    for name, helptext in (("pf", "G-parking functions"), ("spf", "spherical G-parking functions")):
        p = sub.add_parser(name, help=helptext)
        _add_graph_flags(p)
        p.add_argument("--count", action="store_true")
        p.add_argument("--check", type=_ints, metavar="P")

    p = sub.add_parser("lambda-pf", help="lambda-parking functions")
    p.add_argument("--lambda", dest="lam", type=_ints, required=True, metavar="L")
    p.add_argument("--count", action="store_true")
    p.add_argument("--check", type=_ints, metavar="P")

    for name, helptext in (("burn", "run the DFS burning algorithm"),
                           ("phi", "spanning tree of a G-parking function")):
        p = sub.add_parser(name, help=helptext)
        _add_graph_flags(p)
        p.add_argument("--p", type=_ints, required=True, metavar="P",
                       help="values on the non-root vertices in increasing order")
        p.add_argument("--root", type=int)

    p = sub.add_parser("phi-spherical", help="uprooted tree of a spherical parking function")
    _add_graph_flags(p)
    p.add_argument("--p", type=_ints, required=True, metavar="P")

    p = sub.add_parser("trees", help="spanning trees of a graph")
    _add_graph_flags(p)
    p.add_argument("--root", type=int)
    p.add_argument("--count", action="store_true")

    p = sub.add_parser("uprooted", help="uprooted trees on [n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--count", action="store_true")

    p = sub.add_parser("psi", help="the bijection between uprooted trees and trees with leaf 1")
    p.add_argument("--tree", required=True, help="tree as JSON text or a JSON file path")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--classify", action="store_true", help="also classify the leaf-1 tree")
    p.add_argument("--subtree", type=int, metavar="V", help="only the maximal increasing subtree at V")

    p = sub.add_parser("steck", help="Steck determinant and lambda-parking count")
    p.add_argument("--lambda", dest="lam", type=_ints, required=True, metavar="L")

    p = sub.add_parser("dims", help="closed-form dimension of a skeleton quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--x", type=_rational, help="also evaluate f_n and g_{n;k} at x")
    p.add_argument("--enumerate", action="store_true", help="also count standard monomials")

    p = sub.add_parser("betti", help="Betti numbers of skeleton ideals of complete graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--subsets", action="store_true", help="list the indexing subsets")
    p.add_argument("--check", action="store_true", help="compare with the Hilbert series")

    p = sub.add_parser("bipartite", help="spherical parking functions of K_{m+1,n}")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--enumerate", action="store_true")

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--max-n", type=int, default=4)

    return parser


def render(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status = 0
    try:
        echo, result = COMMANDS[args.command](args)
        doc = {"command": args.command, "input": echo, "result": result}
        if args.command == "verify" and not result["passed"]:
            status = 1
    except UsageError as exc:
        parser.error(str(exc))
    except SkelpfError as exc:
        raw = sys.argv[1:] if argv is None else list(argv)
        doc = {"command": args.command, "input": {"argv": raw},
               "error": {"code": exc.code, "message": str(exc)}}
        status = 1
    text = render(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())

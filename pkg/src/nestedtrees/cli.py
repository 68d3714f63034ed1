"""Command line entry point: ``nestedtrees build|verify|trace``."""

from __future__ import annotations

import argparse
import json
import sys

from .complexes import ComplexError, SimplicialComplex, nested_set_complex, order_complex, subdivide_to_order_complex
from .homology import _parse_field
from .lattice import FiniteLattice, LatticeError, build_k_equal_lattice, build_partition_lattice, irreducibles
from .suites import SUITES, run_suite
from .trees import enumerate_hanlon_k_trees, enumerate_k_equal_trees, enumerate_tn

BUILD_KINDS = (
    "partition-lattice",
    "k-equal-lattice",
    "tree-complex",
    "nested-complex",
    "k-trees",
    "k-equal-trees",
    "order-complex",
)
HOMOLOGY_SUITES = {"betti", "cor32", "prop48"}


class UsageError(Exception):
    pass


def _need(value, flag):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def lattice_to_dict(L: FiniteLattice) -> dict:
    covers = [[i, j] for i in range(len(L)) for j in L.upper_covers[i]]
    return {
        "name": L.name,
        "elements": [str(e) for e in L.elements],
        "rank": [int(r) for r in L.rank],
        "atoms": list(L.atoms),
        "covers": covers,
    }


def _lattice_for(n, k):
    return build_partition_lattice(n) if k is None else build_k_equal_lattice(n, k)


def build(kind: str, n: int | None, k: int | None) -> tuple[dict, str]:
    """Return the JSON artifact and a one-line summary."""
    n = _need(n, "--n")
    if kind == "partition-lattice":
        L = build_partition_lattice(n)
        return lattice_to_dict(L), f"{L.name}: {len(L)} elements, {len(L.atoms)} atoms, rank {L.rank[L.top]}"
    if kind == "k-equal-lattice":
        L = build_k_equal_lattice(n, _need(k, "--k"))
        return lattice_to_dict(L), f"{L.name}: {len(L)} elements, {len(L.atoms)} atoms"
    if kind == "tree-complex":
        K = enumerate_tn(n)
    elif kind == "nested-complex":
        L = _lattice_for(n, k)
        K = nested_set_complex(L, irreducibles(L), reduced=True)
    elif kind == "k-trees":
        K = enumerate_hanlon_k_trees(n, _need(k, "--k"))
    elif kind == "k-equal-trees":
        K = enumerate_k_equal_trees(n, _need(k, "--k"))
    elif kind == "order-complex":
        K = order_complex(_lattice_for(n, k))
    else:
        raise UsageError(f"unknown kind {kind!r}")
    return K.to_dict(), summarize(K)


def summarize(K: SimplicialComplex) -> str:
    return f"{len(K.vertices)} vertices, {len(K.facets)} facets, dimension {K.dim}, f-vector {list(K.f_vector)}"


def trace(n: int) -> dict:
    if not 3 <= n <= 5:
        raise UsageError(f"trace needs 3 <= n <= 5, got {n}")
    _, tr = subdivide_to_order_complex(build_partition_lattice(n))
    return {"lattice": f"Pi_{n}", **tr.to_dict()}


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, sort_keys=True) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nestedtrees", description="Complexes of trees and nested set complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a lattice or complex and write it as JSON")
    b.add_argument("kind", choices=BUILD_KINDS)
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--out")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--n", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--field", default="rational", help="rational (default) or prime:<p>")
    v.add_argument("--max-n", type=int, default=6, help="safety cap on n for homology suites")
    v.add_argument("--out")
    v.add_argument("-v", "--verbose", action="store_true")

    t = sub.add_parser("trace", help="stellar subdivision trace from T_n to the order complex")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            payload, summary = build(args.kind, args.n, args.k)
            _emit(payload, args.out)
            print(summary, file=sys.stderr)
            return 0
        if args.command == "trace":
            payload = trace(args.n)
            _emit(payload, args.out)
            print(f"{len(payload['steps'])} stellar subdivisions", file=sys.stderr)
            return 0
        _parse_field(args.field)
        if args.suite in HOMOLOGY_SUITES and args.n is not None and args.n > args.max_n:
            raise UsageError(f"n={args.n} exceeds --max-n {args.max_n}")
        report = run_suite(args.suite, args.n, args.k, args.field)
    except (UsageError, LatticeError, ComplexError, ValueError) as exc:
        print(f"nestedtrees: error: {exc}", file=sys.stderr)
        return 2
    _emit(report.to_dict(), args.out)
    for c in report.checks:
        if args.verbose or not c["passed"]:
            status = "PASS" if c["passed"] else "FAIL"
            print(f"{status} {c['name']}: expected {c['expected']}, got {c['actual']}", file=sys.stderr)
    print(f"{report.suite}: {'pass' if report.passed else 'FAIL'}", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

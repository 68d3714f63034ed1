"""
Named verification suites.  Each returns a :class:`Report` listing every
check with its expected and actual value; the CLI and the acceptance tests
both run these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Any, Callable

from .complexes import complexes_equal, nested_set_complex, order_complex, subdivide_to_order_complex, verify_remark3_non_refinement
from .homology import DEFAULT_PRIME, reduced_betti
from .lattice import LatticeError, build_block_size_poset, build_k_equal_lattice, build_partition_lattice, irreducibles
from .nbc import admissible_trees, support_simplex, verify_admissible_basis, verify_bijection_triangle
from .trees import enumerate_hanlon_k_trees, enumerate_k_equal_trees, enumerate_tn, leafset_to_partition


@dataclass
class Report:
    suite: str
    params: dict
    checks: list[dict] = field(default_factory=list)

    def check(self, name: str, expected: Any, actual: Any, passed: bool | None = None) -> bool:
        ok = expected == actual if passed is None else bool(passed)
        self.checks.append({"name": name, "expected": expected, "actual": actual, "passed": ok})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["passed"]]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "params": self.params, "passed": self.passed, "checks": self.checks}


def _expected_tn_betti(n: int) -> list[int]:
    return [0] * (n - 3) + [factorial(n - 1)]


def thm31(n: int) -> Report:
    rep = Report("thm31", {"n": n})
    T = enumerate_tn(n)
    L = build_partition_lattice(n)
    N = nested_set_complex(L, irreducibles(L), reduced=True)
    rep.check("tree complex facets", len(N.facets), len(T.facets))
    rep.check("tree complex vertices", len(N.vertices), len(T.vertices))
    rep.check("identical under leafset labelling", True, complexes_equal(T, N, leafset_to_partition(n)))
    return rep


def betti(n: int, field: str = "rational") -> Report:
    rep = Report("betti", {"n": n, "field": field})
    T = enumerate_tn(n)
    b = reduced_betti(T, field)
    rep.check(f"reduced Betti of T_{n} over {field}", _expected_tn_betti(n), b)
    if field == "rational":
        rep.check(f"agreement with GF({DEFAULT_PRIME})", b, reduced_betti(T, DEFAULT_PRIME))
    return rep


def cor32(n: int, field: str = "rational") -> Report:
    rep = Report("cor32", {"n": n, "field": field})
    L = build_partition_lattice(n)
    K, trace = subdivide_to_order_complex(L)
    D = order_complex(L)
    reducible = sum(1 for x in L.proper_part() if x not in irreducibles(L))
    rep.check("steps = reducible proper elements", reducible, len(trace.steps))
    rep.check("end equals order complex", True, K == D)
    rep.check("replay reproduces end", True, trace.replay() == K)
    rep.check("order complex vertices", len(L) - 2, len(D.vertices))
    start = reduced_betti(trace.start, field)
    drift = [i for i, C in enumerate(trace.intermediates()) if reduced_betti(C, field) != start]
    rep.check("Betti numbers preserved at every step", [], drift)
    return rep


def prop44(n: int) -> Report:
    rep = Report("prop44", {"n": n})
    r = verify_bijection_triangle(build_partition_lattice(n))
    target = factorial(n - 1)
    rep.check("|nbc|", target, r.nbc)
    rep.check("|dc|", target, r.dc)
    rep.check("|pn|", target, r.pn)
    rep.check("psi bijective", True, r.psi_bijective)
    rep.check("theta bijective", True, r.theta_bijective)
    rep.check("phi.theta.psi = id", True, r.composite_identity)
    return rep


def support_mismatches(L) -> tuple[int, list]:
    """Compare the factor-union formula with the trace carrier for every maximal chain."""
    I = irreducibles(L)
    _, trace = subdivide_to_order_complex(L, I)
    bad = []
    chains = list(L.maximal_chains())
    for full in chains:
        c = full[1:-1]
        formula = frozenset(L[x] for x in support_simplex(L, c, I))
        traced = trace.carrier(L[x] for x in c)
        if formula != traced:
            bad.append([L[x].short() for x in c])
    return len(chains), bad


def prop46(n: int) -> Report:
    rep = Report("prop46", {"n": n})
    L = build_partition_lattice(n)
    count, bad = support_mismatches(L)
    rep.check("maximal chains", factorial(n) * factorial(n - 1) // 2 ** (n - 1), count)
    rep.check("formula = trace carrier", [], bad)
    return rep


def prop48(n: int) -> Report:
    rep = Report("prop48", {"n": n})
    rep.check("admissible trees", factorial(n - 1), len(admissible_trees(n)))
    rep.check("evaluation matrix has full rank", True, verify_admissible_basis(n, max_n=max(n, 5)))
    return rep


def remark3() -> Report:
    rep = Report("remark3", {})
    r = verify_remark3_non_refinement()
    rep.check("subdivision triangles", 3, r.triangles)
    rep.check("subdivision edges", 7, r.edges)
    rep.check("contains edge 23|45 - 23|145", True, r.contains_edge)
    rep.check("edge is a union of bsd cells", False, r.edge_refined_by_bsd)
    rep.check("control: bsd edges refine themselves", True, r.bsd_edges_self_refined)
    return rep


def prop56(n: int, k: int, field: str = "rational", every_step: bool = True) -> Report:
    rep = Report("prop56", {"n": n, "k": k, "field": field})
    L = build_k_equal_lattice(n, k)
    I = irreducibles(L)
    T = enumerate_k_equal_trees(n, k)
    N = nested_set_complex(L, I, reduced=True)
    rep.check("T_{n,k} = N(Pi_{n,k}, I)", True, complexes_equal(T, N, leafset_to_partition(n)))
    K, trace = subdivide_to_order_complex(L, I)
    rep.check("pipeline ends in order complex", True, K == order_complex(L))
    start = reduced_betti(T, field)
    rep.check("graded Betti of tree complex = order complex", start, reduced_betti(K, field))
    if every_step:
        drift = [i for i, C in enumerate(trace.intermediates()) if reduced_betti(C, field) != start]
        rep.check("Betti numbers preserved at every step", [], drift)
    return rep


def q52_evidence(n: int, k: int, field: str = "rational") -> Report:
    """Compare k-tree complexes with order complexes of block-size posets (an open question)."""
    rep = Report("q52-evidence", {"n": n, "k": k, "field": field})
    N = (n - 1) * k + 1
    a = reduced_betti(enumerate_hanlon_k_trees(n, k), field)
    b = reduced_betti(order_complex(build_block_size_poset(N, k)), field)
    rep.check(f"reduced Betti T_{n}^({k}) vs Pi_{N}^({k})", a, b)
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "thm31": thm31,
    "cor32": cor32,
    "prop44": prop44,
    "prop46": prop46,
    "prop48": prop48,
    "remark3": remark3,
    "prop56": prop56,
    "q52-evidence": q52_evidence,
    "betti": betti,
}


def run_suite(name: str, n: int | None = None, k: int | None = None, field: str = "rational") -> Report:
    """Dispatch with the parameters each suite takes; missing ones raise LatticeError."""
    if name not in SUITES:
        raise LatticeError(f"unknown suite {name!r}")
    if name == "remark3":
        return remark3()
    if n is None:
        raise LatticeError(f"suite {name} needs --n")
    if name in ("prop56", "q52-evidence"):
        if k is None:
            raise LatticeError(f"suite {name} needs --k")
        return SUITES[name](n, k, field)
    if name in ("cor32", "betti"):
        return SUITES[name](n, field)
    return SUITES[name](n)


"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its wall time and the
pinned time budget.  The lines are also collected and repeated in the pytest
terminal summary.  Run directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time
from math import factorial

from nestedtrees.complexes import nested_set_complex, order_complex
from nestedtrees.homology import DEFAULT_PRIME, reduced_betti
from nestedtrees.lattice import build_partition_lattice, irreducibles
from nestedtrees.nbc import geometric, phi, psi, theta
from nestedtrees.suites import cor32, prop44, prop46, prop48, prop56, q52_evidence, remark3, thm31

# time budgets in seconds, exact equality everywhere else
BUDGET = {
    1: 120.0,
    2: 300.0,
    3: 120.0,
    4: 1.0,
    5: 1.0,
    6: 120.0,
    7: 60.0,
    8: 60.0,
    9: 1.0,
    10: 120.0,
    11: 300.0,
}

RESULTS: list[str] = []


def _record(num: int, title: str, ok: bool, elapsed: float) -> bool:
    within = elapsed <= BUDGET[num]
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {num:2d} {title}: checks {'ok' if ok else 'failed'}, {elapsed:.2f}s (budget {BUDGET[num]:.0f}s)"
    print(line)
    RESULTS.append(line)
    return ok and within


def test_01_tree_complex_is_nested_complex():
    t = time.perf_counter()
    ok = all(thm31(n).passed for n in (3, 4, 5, 6))
    assert _record(1, "T_n = N(Pi_n, I) for n=3..6", ok, time.perf_counter() - t)


def test_02_wedge_of_spheres():
    t = time.perf_counter()
    from nestedtrees.trees import enumerate_tn

    ok = True
    for n in (3, 4, 5, 6):
        T = enumerate_tn(n)
        expected = [0] * (n - 3) + [factorial(n - 1)]
        ok &= reduced_betti(T) == expected == reduced_betti(T, DEFAULT_PRIME)
    assert _record(2, "reduced Betti of T_n is (n-1)! in top degree", ok, time.perf_counter() - t)


def test_03_subdivision_pipeline():
    t = time.perf_counter()
    ok = cor32(4).passed and cor32(5).passed
    D = order_complex(build_partition_lattice(5))
    ok &= (len(D.vertices), len(D.facets)) == (50, 180)
    assert _record(3, "stellar pipeline T_n -> order complex, Betti stable", ok, time.perf_counter() - t)


def test_04_petersen():
    t = time.perf_counter()
    L = build_partition_lattice(4)
    K = nested_set_complex(L, irreducibles(L))
    adj = {v: set() for v in K.vertices}
    for a, b in K.edges():
        adj[a].add(b)
        adj[b].add(a)
    girth = min(_cycle_through(adj, v) for v in adj)
    ok = len(K.vertices) == 10 and len(K.edges()) == 15 and K.dim == 1
    ok &= all(len(s) == 3 for s in adj.values()) and girth == 5
    assert _record(4, "N(Pi_4, I) is the Petersen graph", ok, time.perf_counter() - t)


def _cycle_through(adj, s):
    dist, parent, queue, best = {s: 0}, {s: None}, [s], 10**9
    for u in queue:
        for w in adj[u]:
            if w not in dist:
                dist[w], parent[w] = dist[u] + 1, u
                queue.append(w)
            elif parent[u] != w:
                best = min(best, dist[u] + dist[w] + 1)
    return best


def test_05_worked_example():
    t = time.perf_counter()
    L = build_partition_lattice(5)
    G = geometric(L)
    at = {L[a].short(): a for a in L.atoms}
    c = psi(G, [at[s] for s in ("12", "14", "23", "45")])
    chain = "<".join(L[x].short() for x in c.chain)
    S = theta(G, c)
    members = sorted(L[m].short() for m in S.members)
    image = sorted(L[a].short() for a in phi(G, S.members))
    ok = chain == "0<45<23|45<145|23<12345"
    ok &= members == ["12345", "145", "23", "45"]
    ok &= image == ["12", "14", "23", "45"]
    assert _record(5, "Psi, Theta, Phi on {12,14,23,45}", ok, time.perf_counter() - t)


def test_06_bijection_triangle():
    t = time.perf_counter()
    ok = all(prop44(n).passed for n in (3, 4, 5, 6))
    assert _record(6, "|nbc| = |dc| = |pn| = (n-1)!, Phi.Theta.Psi = id", ok, time.perf_counter() - t)


def test_07_support_simplices():
    t = time.perf_counter()
    r4, r5 = prop46(4), prop46(5)
    ok = r4.passed and r5.passed
    ok &= r4.checks[0]["actual"] == 18 and r5.checks[0]["actual"] == 180
    assert _record(7, "support simplex formula = trace carrier (18 + 180 chains)", ok, time.perf_counter() - t)


def test_08_admissible_basis():
    t = time.perf_counter()
    reps = [prop48(n) for n in (3, 4, 5)]
    ok = all(r.passed for r in reps) and [r.checks[0]["actual"] for r in reps] == [2, 6, 24]
    assert _record(8, "admissible trees give a cohomology basis", ok, time.perf_counter() - t)


def test_09_non_refinement():
    t = time.perf_counter()
    ok = remark3().passed
    assert _record(9, "nested subdivision edge not refined by barycentric", ok, time.perf_counter() - t)


def test_10_k_equal():
    t = time.perf_counter()
    ok = all(prop56(n, 3).passed for n in (5, 6, 7))
    assert _record(10, "T_{n,k} = N(Pi_{n,k}, I) and pipeline for k=3, n=5..7", ok, time.perf_counter() - t)


def test_11_k_tree_evidence():
    t = time.perf_counter()
    a, b = q52_evidence(3, 2), q52_evidence(4, 2)
    ok = a.passed and b.passed
    # each check compares the tree side (expected) with the poset side (actual)
    ok &= a.checks[0]["expected"] == a.checks[0]["actual"] == [9]
    ok &= b.checks[0]["expected"][1] == b.checks[0]["actual"][1]
    assert _record(11, "k-tree complexes vs block-size posets (k=2)", ok, time.perf_counter() - t)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

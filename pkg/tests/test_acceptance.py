"""Acceptance suite: one test per criterion, each timed against its limit.

Every criterion prints a ``criterion N PASS/FAIL`` line; the lines are
repeated in the terminal summary.
"""
from __future__ import annotations

import random

from oracles import brute_force_stable_graphs
from strata.fs_category import (
    compose_forests,
    compose_surjections,
    count_surjections,
    counit_is_isomorphism,
    forest_fullness_check,
    forest_to_surjection,
    free_module,
    generate_forests,
    induced_dims,
    restrict,
)
from strata.hilbert import (
    bounds_report,
    decomposition_start,
    evaluate_decomposition,
    free_hilbert_series,
    p_bound,
    poly_exp_decomposition,
)
from strata.lemmas import core_search, default_b_range, fiber_levels, trichotomy, verify_lemma_41, verify_lemma_42
from strata.stable_graphs import (
    coarsen,
    contract_edge,
    enumerate_stable_graphs,
    q_less_or_equal,
    q_poset,
    s_vector,
)
from strata.symfunc import (
    decompose_degree,
    dimension,
    multiplicity_profile,
    partition_lengths,
    partitions,
    plethysm_degree_term,
    polynomial_degree,
    projective_module,
)

SEED = 20240601


def stable_types(max_dim: int):
    for g in range(0, max_dim // 3 + 2):
        for n in range(0, max_dim + 4):
            if 2 * g - 2 + n > 0 and 3 * g - 3 + n <= max_dim:
                yield g, n


def test_criterion_01_enumeration_oracle(criterion):
    with criterion(1, "enumeration agrees with brute force for 3g-3+n <= 4", 60) as c:
        types = list(stable_types(4))
        for g, n in types:
            ours = [G.canonical_form for G in enumerate_stable_graphs(g, n)]
            assert len(ours) == len(set(ours)), (g, n)
            assert set(ours) == set(brute_force_stable_graphs(g, n)), (g, n)
        sizes = {(g, n): len(enumerate_stable_graphs(g, n)) for g, n in [(0, 3), (0, 4), (1, 1), (2, 0)]}
        assert sizes == {(0, 3): 1, (0, 4): 4, (1, 1): 2, (2, 0): 7}
        c.detail = f"{len(types)} types"


def test_criterion_02_coarsening_laws(criterion):
    with criterion(2, "coarsen idempotent, s-preserving, tree-choice independent", 30) as c:
        pool = [G for g, n in [(0, 6), (0, 7), (1, 3), (1, 4), (2, 0), (2, 1)] for G in enumerate_stable_graphs(g, n)]
        assert len(pool) >= 1000
        rng = random.Random(SEED)
        for G in pool:
            H = coarsen(G)
            assert H.is_coarse()
            assert coarsen(H).canonical_form == H.canonical_form
            assert s_vector(H) == s_vector(G)
            for _ in range(3):
                assert coarsen(G, random.Random(rng.randrange(2**32))).canonical_form == H.canonical_form
        c.detail = f"{len(pool)} graphs, 3 random spanning-tree choices each"


def test_criterion_03_poset(criterion):
    with criterion(3, "Q(1,2), Q(0,6) partial orders; coarsening monotone on contractions", 60) as c:
        checked = 0
        for g, n in [(1, 2), (0, 6)]:
            elements, rel = q_poset(g, n)
            m = len(elements)
            for a in range(m):
                assert rel[a][a]
                for b in range(m):
                    if a != b:
                        assert not (rel[a][b] and rel[b][a])
                    for d in range(m):
                        if rel[a][b] and rel[b][d]:
                            assert rel[a][d]
            for G in enumerate_stable_graphs(g, n):
                Gbar = coarsen(G)
                for k in range(G.num_edges):
                    assert q_less_or_equal(Gbar, coarsen(contract_edge(G, k)))
                    checked += 1
        c.detail = f"{checked} contractions"


def test_criterion_04_forests(criterion):
    with criterion(4, "forest functor respects composition; full onto FS(n,m), n <= 6", 30) as c:
        for n in range(1, 7):
            for m in range(1, n + 1):
                assert forest_fullness_check(n, m)
        by_roots: dict[int, list] = {}
        for n in range(1, 7):
            for m in range(1, n + 1):
                by_roots.setdefault(m, []).extend(generate_forests(n, m))
        by_leaves: dict[int, list] = {}
        for fs in by_roots.values():
            for F in fs:
                by_leaves.setdefault(F.num_leaves, []).append(F)
        h = {}

        def hf(F):
            if F not in h:
                h[F] = forest_to_surjection(F)
            return h[F]

        rng = random.Random(SEED)
        pairs = 0
        for k in range(1, 7):
            firsts = by_leaves[k]
            for F2 in by_roots.get(k, []):
                # exhaustive below six leaves, 20 seeded partners at six
                partners = firsts if F2.num_leaves <= 5 else rng.sample(firsts, min(20, len(firsts)))
                for F1 in partners:
                    assert forest_to_surjection(compose_forests(F1, F2)) == compose_surjections(hf(F2), hf(F1))
                    pairs += 1
        c.detail = f"{pairs} composable pairs"


def test_criterion_05_free_hilbert(criterion):
    with criterion(5, "free Hilbert series coefficients and re-summation, d <= 4", 10):
        for d in range(1, 5):
            gf = free_hilbert_series(d)
            coeffs = gf.coefficients(12)
            assert all(coeffs[n] == count_surjections(n, d) for n in range(1, 13)) and coeffs[0] == 0
            dec = poly_exp_decomposition(gf)
            assert sorted(j for j, _ in dec) == list(range(1, d + 1))
            for n in range(decomposition_start(gf), 13):
                assert evaluate_decomposition(dec, n) == coeffs[n]


def test_criterion_06_decompositions(criterion):
    with criterion(6, "free-module decompositions, length bound, profile degrees", 120):
        assert decompose_degree(free_module(2, 3), 3) == {(3,): 2, (2, 1): 2}
        for d in range(1, 5):
            assert decompose_degree(free_module(d, d), d) == {lam: dimension(lam) for lam in partitions(d)}
            M = free_module(d, 8)
            for m in range(1, 9):
                assert all(length <= d for length in partition_lengths(decompose_degree(M, m)))
        for d in range(1, 4):
            prof = multiplicity_profile(free_module(d, 8), ())
            tail = prof[d - 1 :]
            k = polynomial_degree(tail)
            assert k is not None and k <= d - 1, (d, prof)


def test_criterion_07_plethysm(criterion):
    with criterion(7, "plethysm matches projective modules, |lam| <= 3, m <= 6", 120) as c:
        count = 0
        for size in range(1, 4):
            for lam in partitions(size):
                P = projective_module(lam, 6)
                for m in range(size, 7):
                    assert plethysm_degree_term(lam, m) == decompose_degree(P, m), (lam, m)
                    count += 1
        c.detail = f"{count} (lam, m) pairs"


def test_criterion_08_induction(criterion):
    with criterion(8, "Ind(Res(free(d,5), N')) iso free(d,5), d <= N' <= 5", 60) as c:
        cases = 0
        for d in range(1, 6):
            full = free_module(d, 5)
            for r in range(d, 6):
                small = restrict(full, r)
                assert induced_dims(small, 5) == full.dims()
                for n in range(1, 6):
                    assert counit_is_isomorphism(small, full, n), (d, r, n)
                cases += 1
        c.detail = f"{cases} (d, N') pairs"


def test_criterion_09_lemma41(criterion):
    with criterion(9, "leg-count bound for (g,i) in (1,0), (1,1), (2,0)", 600) as c:
        parts = []
        for g, i in [(1, 0), (1, 1), (2, 0)]:
            rep = verify_lemma_41(g, i)
            assert rep["bound"] == p_bound(g, i, "compositional")
            assert rep["all_pass"], rep["witness"]
            parts.append(f"({g},{i}) max n {rep['max_n']} <= {rep['bound']}")
        c.detail = "; ".join(parts)


FIBER_ROUTE = [(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0)]


def test_criterion_10_lemma42(criterion):
    with criterion(10, "trichotomy for (a,e,i) in {0,1}^3, b in f+1..f+3", 600) as c:
        combos = [(a, e, i) for a in range(2) for e in range(2) for i in range(2)]
        # the two routes agree wherever the fiber is small enough to list
        for a, e, i in combos:
            top = 6
            levels = fiber_levels(a, e, i, top)
            res = core_search(a, e, i, range(1, top + 1))
            for b in range(1, top + 1):
                failing = sorted(H.key() for H in levels.levels.get(b, []) if not trichotomy(H, i).holds)
                assert sorted(H.key() for H in res["counterexamples"][b]) == failing, (a, e, i, b)
        members = 0
        for a, e, i in combos:
            window = default_b_range(a, e, i)
            rep = verify_lemma_42(a, e, i, window, method="search")
            assert rep["all_pass"], rep["witnesses"][:1]
            assert rep["params"]["b"] == window
            if (a, e, i) in FIBER_ROUTE:
                rep = verify_lemma_42(a, e, i, window, method="fiber")
                assert rep["all_pass"], rep["witnesses"][:1]
                members += rep["graphs_checked"]
        c.detail = f"search route on 8 combos; fiber route on {len(FIBER_ROUTE)} combos, {members} members"


def test_criterion_11_bounds(criterion):
    with criterion(11, "bounds report and the p discrepancy", 10):
        assert p_bound(1, 0, "compositional") == p_bound(1, 0, "printed") == 15
        rep = bounds_report(1, 1)
        assert rep["p_compositional"] == 88 and rep["p_printed"] == 78 and rep["discrepancy"]
        for i in range(11):
            assert p_bound(0, i, "compositional") == p_bound(0, i, "printed") == 0

from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import character_table_by_orthonormalization, permutation_character, z as oracle_z
from strata.fs_category import free_module, permutation_of_cycle_type, restrict, zero_module
from strata.symfunc import (
    character_table,
    class_size,
    conjugate,
    decompose_degree,
    dimension,
    irreducible_character,
    multiplicities_to_json,
    multiplicity_profile,
    pad,
    partition_lengths,
    partitions,
    plethysm_degree_term,
    polynomial_degree,
    projective_module,
    young_symmetrizer,
    z,
)


def test_partitions_counts():
    assert [len(partitions(m)) for m in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_pad():
    assert pad((2, 1), 3) == (5, 1)
    assert pad((), 2) == (2,)
    assert pad((), 0) == ()


def test_character_examples():
    for m in range(1, 6):
        for mu in partitions(m):
            assert irreducible_character((m,), mu) == 1
    assert irreducible_character((1, 1), (2,)) == -1
    with pytest.raises(ValueError):
        irreducible_character((2,), (1, 1, 1))


@pytest.mark.parametrize("m", range(1, 6))
def test_character_table_matches_oracle(m):
    oracle = character_table_by_orthonormalization(m)
    ours = character_table(m)
    for lam in partitions(m):
        for mu in partitions(m):
            assert ours[lam][mu] == oracle[lam][mu]


@pytest.mark.parametrize("m", range(1, 7))
def test_orthogonality(m):
    table = character_table(m)
    parts = partitions(m)
    for mu in parts:
        for nu in parts:
            col = sum(table[lam][mu] * table[lam][nu] for lam in parts)
            assert col == (z(mu) if mu == nu else 0)
    for lam in parts:
        for rho in parts:
            row = sum(Fraction(table[lam][mu] * table[rho][mu], z(mu)) for mu in parts)
            assert row == (1 if lam == rho else 0)


@pytest.mark.parametrize("m", range(1, 8))
def test_dimension_and_sign(m):
    assert sum(dimension(lam) ** 2 for lam in partitions(m)) == sum(class_size(mu) for mu in partitions(m))
    ident = (1,) * m
    for lam in partitions(m):
        assert irreducible_character(lam, ident) == dimension(lam)
        for mu in partitions(m):
            sign = (-1) ** (m - len(mu))
            assert irreducible_character(conjugate(lam), mu) == sign * irreducible_character(lam, mu)


def test_z_agrees_with_oracle():
    for m in range(1, 7):
        for mu in partitions(m):
            assert z(mu) == oracle_z(mu)


# -- decompositions ---------------------------------------------------------------


def test_decompose_examples():
    for m in range(1, 5):
        assert decompose_degree(free_module(1, 4), m) == {(m,): 1}
    assert decompose_degree(free_module(2, 3), 3) == {(3,): 2, (2, 1): 2}


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_free_module_top_degree_is_regular(d):
    assert decompose_degree(free_module(d, d), d) == {lam: dimension(lam) for lam in partitions(d)}


def test_free_character_matches_young_permutation_modules():
    # degree m of free(d) is the sum over compositions of m into d positive parts
    # of permutation modules; compare characters with the tabloid oracle
    m, d = 4, 2
    M = free_module(d, m)
    for mu in partitions(m):
        total = 0
        for comp in product(range(1, m), repeat=d):
            if sum(comp) == m:
                total += permutation_character(tuple(sorted(comp, reverse=True)), mu)
        assert M.trace(permutation_of_cycle_type(mu)) == total


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_length_bound(d):
    M = free_module(d, 8)
    for m in range(d, 9):
        mults = decompose_degree(M, m)
        assert sum(k * dimension(lam) for lam, k in mults.items()) == M.dim(m)
        assert all(length <= d for length in partition_lengths(mults))


def test_zero_module_decomposes_to_nothing():
    assert decompose_degree(zero_module(3), 3) == {}


def test_multiplicities_json_shape():
    out = multiplicities_to_json({(3,): 2, (2, 1): 2})
    assert out == [{"partition": [3], "multiplicity": 2}, {"partition": [2, 1], "multiplicity": 2}]


# -- plethysm --------------------------------------------------------------------------


def test_plethysm_examples():
    for m in range(1, 7):
        assert plethysm_degree_term((1,), m) == {(m,): 1}
    total: dict = {}
    for lam in [(2,), (1, 1)]:
        for nu, k in plethysm_degree_term(lam, 3).items():
            total[nu] = total.get(nu, 0) + k * dimension(lam)
    assert total == decompose_degree(free_module(2, 3), 3)


def test_plethysm_rejects_low_degree():
    with pytest.raises(ValueError):
        plethysm_degree_term((2, 1), 2)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)])
def test_plethysm_matches_projective_module(lam):
    P = projective_module(lam, 6)
    for m in range(sum(lam), 7):
        assert plethysm_degree_term(lam, m) == decompose_degree(P, m)


@pytest.mark.parametrize("d", [2, 3])
def test_free_module_splits_into_projectives(d):
    # QFS(-, d) is the sum of dim(lam) copies of the lam-projective
    M = free_module(d, 6)
    for m in range(d, 7):
        total: dict = {}
        for lam in partitions(d):
            for nu, k in plethysm_degree_term(lam, m).items():
                total[nu] = total.get(nu, 0) + k * dimension(lam)
        assert total == decompose_degree(M, m)


def test_projective_module_is_functorial():
    assert projective_module((2, 1), 4).check_functoriality()
    assert projective_module((2,), 4).check_functoriality()


def test_young_symmetrizer_is_quasi_idempotent():
    lam = (2, 1)
    c = young_symmetrizer(lam)

    def mul(a, b):
        out: dict = {}
        for p, x in a.items():
            for q, y in b.items():
                pq = tuple(p[q[k] - 1] for k in range(len(q)))
                out[pq] = out.get(pq, 0) + x * y
        return {k: v for k, v in out.items() if v}

    hooks = 6 // dimension(lam)
    assert mul(c, c) == {k: hooks * v for k, v in c.items()}


# -- profiles ---------------------------------------------------------------------------


def test_profile_examples():
    assert multiplicity_profile(free_module(1, 6), ()) == [1] * 6
    assert multiplicity_profile(zero_module(4), (1,)) == [0, 0, 0, 0]
    prof = multiplicity_profile(free_module(2, 8), (1,))
    assert polynomial_degree(prof[1:]) <= 1


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_profile_degree_is_d_minus_1(d):
    prof = multiplicity_profile(free_module(d, 8), ())
    assert polynomial_degree(prof[d - 1 :]) == d - 1


def test_polynomial_degree_helper():
    assert polynomial_degree([0, 0, 0]) == -1
    assert polynomial_degree([3, 3, 3]) == 0
    assert polynomial_degree([1, 4, 9, 16, 25]) == 2
    assert polynomial_degree([1, 2, 4]) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.integers(0, 3))
def test_polynomial_degree_recovers_polynomials(coeffs, extra):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    values = [sum(c * n**k for k, c in enumerate(coeffs)) for n in range(len(coeffs) + 1 + extra)]
    assert polynomial_degree(values) == len(coeffs) - 1


def test_restricted_module_decomposes_the_same():
    M = free_module(3, 5)
    R = restrict(M, 4)
    for m in range(1, 5):
        assert decompose_degree(R, m) == decompose_degree(M, m)

from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelmatch import matroids
from abelmatch.errors import (
    DisjointnessError,
    DomainError,
    InvalidBasisSystemError,
    LoopError,
    OrderUnavailableError,
    SizeLimitError,
    StructureError,
)
from abelmatch.groups import GroupCtx
from abelmatch.matroids import (
    PanhandleParams,
    SchubertParams,
    bits,
    make_from_bases,
    make_panhandle,
    make_schubert,
    make_uniform,
    mask_of,
    popcount,
)

from oracles import exchange_holds

Z = GroupCtx.free(1)
Z3 = GroupCtx.free(3)
A3 = (2, -1, 0)


def as_ints(M, masks):
    """Masks of a matroid over Z rendered as sorted tuples of integers."""
    return sorted(tuple(sorted(M.ground[i][0] for i in bits(b))) for b in masks)


def panhandle(n, s, m, a=1, ctx=Z):
    return make_panhandle(ctx, PanhandleParams(n, s, m, a))


def schubert(m, ks, a=1, ctx=Z):
    return make_schubert(ctx, SchubertParams(m, a, matroids.multiples(ctx, a, ks)))


# construction ---------------------------------------------------------------

def test_make_from_bases_examples():
    U = make_from_bases(Z, [1, 2, 3], [[0, 1], [0, 2], [1, 2]])
    assert U.rank == 2 and len(U.bases) == 3
    assert U == make_uniform(Z, [1, 2, 3], 2)
    with pytest.raises(InvalidBasisSystemError):
        make_from_bases(Z, [1, 2, 3], [[0, 1], [2]])
    with pytest.raises(LoopError):
        make_from_bases(Z, [1, 2, 3], [[0, 1]])
    with pytest.raises(DomainError):
        make_from_bases(Z, [1, 2, 3], [])


def test_make_from_bases_rejects_bad_input():
    with pytest.raises(InvalidBasisSystemError):
        # {1,2},{3,4}: removing 1 from the first, neither 3 nor 4 completes it
        make_from_bases(Z, [1, 2, 3, 4], [[0, 1], [2, 3]])
    with pytest.raises(StructureError):
        make_from_bases(Z, [1, 1, 2], [[0]])
    with pytest.raises(StructureError):
        make_from_bases(Z, [1, 2], [[0, 5]])
    with pytest.raises(InvalidBasisSystemError):
        make_from_bases(Z, [1, 2], [[0, 0]])
    M = make_from_bases(Z, [1, 2, 3], [[0, 1]], allow_loops=True)
    assert bits(M.loops) == [2]


def test_make_uniform_examples():
    ground = [1, 2, 3, 4, 5]
    assert len(make_uniform(Z, ground, 3).bases) == 10
    assert len(make_uniform(Z, ground, 5).bases) == 1
    assert make_uniform(Z, [7], 1).bases_as_elements() == [((7,),)]
    for bad in (0, 6):
        with pytest.raises(DomainError):
            make_uniform(Z, ground, bad)


def test_panhandle_small_example():
    M = panhandle(2, 2, 4)
    assert as_ints(M, M.bases) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    assert (3, 4) not in as_ints(M, M.bases)


def test_panhandle_worked_example():
    M = panhandle(3, 4, 5, A3, Z3)
    a = [tuple(k * c for c in A3) for k in range(6)]
    expected = sorted(
        tuple(sorted((a[i], a[j], a[k])))
        for i, j, k in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5),
                        (1, 3, 5), (1, 4, 5), (2, 3, 5), (2, 4, 5), (3, 4, 5)]
    )
    assert M.bases_as_elements() == expected
    # with s = 4 and m = 5 every 3-subset qualifies
    assert M == make_uniform(Z3, M.ground, 3)


def test_panhandle_top_is_uniform():
    for m in range(2, 8):
        for n in range(1, m):
            M = panhandle(n, m - 1, m)
            assert M == make_uniform(Z, M.ground, n)


def test_panhandle_count_formula():
    for m in range(2, 8):
        for s in range(1, m):
            for n in range(1, s + 1):
                M = panhandle(n, s, m)
                assert len(M.bases) == comb(s, n) + (m - s) * comb(s, n - 1), (n, s, m)


def test_panhandle_parameter_errors():
    for n, s, m in [(0, 2, 3), (3, 2, 4), (2, 4, 4), (2, 5, 4)]:
        with pytest.raises(DomainError):
            panhandle(n, s, m)
    # Z/3 fails the smallness test before any torsion collision is reached
    with pytest.raises(OrderUnavailableError):
        panhandle(1, 2, 3, 1, GroupCtx.finite(3))


def test_family_needs_small_m_in_torsion_groups():
    # ceil(log2 101) = 7, so m = 3 is fine and m = 4 is not
    ctx = GroupCtx.finite(101)
    assert len(panhandle(2, 2, 3, 5, ctx).bases) == 3
    with pytest.raises(OrderUnavailableError):
        panhandle(2, 2, 4, 5, ctx)
    with pytest.raises(OrderUnavailableError):
        schubert(4, [3, 4], 5, ctx)


def test_schubert_worked_example():
    M = schubert(5, [1, 2, 5], A3, Z3)
    a = [tuple(k * c for c in A3) for k in range(6)]
    expected = sorted(tuple(sorted(t)) for t in [(a[1], a[2], a[3]), (a[1], a[2], a[4]), (a[1], a[2], a[5])])
    assert M.bases_as_elements() == expected
    assert bits(M.loops) == []


def test_schubert_extremes():
    for m in range(1, 7):
        for n in range(1, m + 1):
            top = schubert(m, range(m - n + 1, m + 1))
            assert top == make_uniform(Z, top.ground, n)
            bottom = schubert(m, range(1, n + 1))
            assert as_ints(bottom, bottom.bases) == [tuple(range(1, n + 1))]


def test_schubert_loops_when_top_missing():
    M = schubert(4, [1, 2])
    assert [M.ground[i][0] for i in bits(M.loops)] == [3, 4]


def test_schubert_errors():
    with pytest.raises(DomainError):
        make_schubert(Z, SchubertParams(4, 1, ((5,),)))
    with pytest.raises(DomainError):
        make_schubert(Z, SchubertParams(4, 1, ((2,), (2,))))
    with pytest.raises(DomainError):
        make_schubert(Z, SchubertParams(4, 1, ()))


def test_schubert_is_down_set():
    # T in bases and T' <= T componentwise => T' in bases
    for m in range(1, 7):
        for n in range(1, m + 1):
            for S in combinations(range(1, m + 1), n):
                M = schubert(m, S)
                have = set(as_ints(M, M.bases))
                for T in combinations(range(1, m + 1), n):
                    expect = all(t <= s for t, s in zip(T, S))
                    assert (T in have) == expect
                    if T in have:
                        for T2 in combinations(range(1, m + 1), n):
                            if all(x <= y for x, y in zip(T2, T)):
                                assert T2 in have


def test_negative_generator_reverses_schubert_order():
    # with a = -1 the order on [m]_a runs -m < ... < -1, so "top" means -1, -2, ...
    M = schubert(4, [1, 2], a=-1)
    assert M == make_uniform(Z, M.ground, 2)
    assert matroids.is_uniform_schubert(Z, SchubertParams(4, -1, matroids.multiples(Z, -1, [1, 2])))
    N = schubert(4, [3, 4], a=-1)
    assert as_ints(N, N.bases) == [(-4, -3)]


# families are matroids ------------------------------------------------------

def _family_members(max_m=7):
    for m in range(2, max_m + 1):
        for s in range(1, m):
            for n in range(1, s + 1):
                yield panhandle(n, s, m)
    for m in range(1, max_m + 1):
        for n in range(1, m + 1):
            yield make_uniform(Z, range(1, m + 1), n)
            for S in combinations(range(1, m + 1), n):
                yield schubert(m, S)


def test_families_satisfy_exchange():
    count = 0
    for M in _family_members():
        assert exchange_holds(M.bases)
        count += 1
    assert count > 200


def test_exchange_oracle_agrees_with_library():
    bad = [mask_of([0, 1]), mask_of([2, 3])]
    assert not exchange_holds(bad)
    assert matroids.exchange_violation(bad) is not None
    good = list(make_uniform(Z, range(5), 2).bases)
    assert exchange_holds(good) and matroids.exchange_violation(good) is None


# dual and direct sum --------------------------------------------------------

def test_dual_examples():
    for m in range(2, 7):
        for n in range(1, m):
            U = make_uniform(Z, range(1, m + 1), n)
            assert matroids.dual(U) == make_uniform(Z, range(1, m + 1), m - n)
    P = panhandle(2, 2, 4)
    D = matroids.dual(P)
    assert as_ints(D, D.bases) == sorted([(3, 4), (2, 4), (2, 3), (1, 4), (1, 3)])


def test_dual_involution_on_families():
    for M in _family_members(6):
        assert matroids.dual(matroids.dual(M)).bases == M.bases
        if M.rank < M.size:
            assert exchange_holds(matroids.dual(M).bases)


def test_direct_sum_examples():
    U11a = make_uniform(Z, [1], 1)
    U11b = make_uniform(Z, [2], 1)
    S = matroids.direct_sum(U11a, U11b)
    assert S.rank == 2 and len(S.bases) == 1
    T = matroids.direct_sum(make_uniform(Z, [1, 2], 1), make_uniform(Z, [3], 1))
    assert as_ints(T, T.bases) == [(1, 3), (2, 3)]
    W = matroids.direct_sum(make_uniform(Z, [1, 2, 3], 2), make_uniform(Z, [4, 5], 1))
    assert len(W.bases) == 6 and W.rank == 3
    assert exchange_holds(W.bases)
    with pytest.raises(DisjointnessError):
        matroids.direct_sum(make_uniform(Z, [1, 2], 1), make_uniform(Z, [2, 3], 1))


# rank, circuits, hyperplanes ------------------------------------------------

def test_rank_function():
    for M in _family_members(6):
        assert matroids.rank_of(M, M.ground) == M.rank
        assert matroids.rank_of(M, []) == 0
    P = panhandle(2, 2, 4)
    assert matroids.rank_of(P, [3, 4]) == 1
    assert matroids.rank_of(P, [1, 4]) == 2


def test_circuits_examples():
    U = make_uniform(Z, [1, 2, 3], 2)
    assert as_ints(U, matroids.circuits(U)) == [(1, 2, 3)]
    P = panhandle(2, 2, 4)
    assert (3, 4) in as_ints(P, matroids.circuits(P))


def _brute_circuits(M):
    dep = [c for k in range(1, M.size + 1) for c in combinations(range(M.size), k)
           if not any(set(c) <= set(bits(b)) for b in M.bases)]
    return sorted(c for c in dep if not any(set(d) < set(c) for d in dep))


def test_circuits_match_brute_force():
    for M in _family_members(6):
        got = sorted(tuple(bits(c)) for c in matroids.circuits(M))
        assert got == _brute_circuits(M)


def _brute_hyperplanes(M):
    # a flat is a set X with r(X + e) > r(X) for every e outside X
    def r(X):
        return max(len(set(X) & set(bits(b))) for b in M.bases)
    out = []
    for k in range(M.size + 1):
        for X in combinations(range(M.size), k):
            if r(X) == M.rank - 1 and all(r(X + (e,)) > r(X) for e in range(M.size) if e not in X):
                out.append(X)
    return sorted(out)


def test_hyperplanes_of_uniform_corank_one():
    for n in range(1, 6):
        U = make_uniform(Z, range(1, n + 2), n)
        hs = sorted(tuple(bits(h)) for h in matroids.hyperplanes(U))
        assert hs == sorted(combinations(range(n + 1), n - 1))
        assert hs == _brute_hyperplanes(U)


def test_hyperplanes_match_brute_force():
    for M in _family_members(6):
        assert sorted(tuple(bits(h)) for h in matroids.hyperplanes(M)) == _brute_hyperplanes(M)


def test_enumeration_limit():
    big = make_uniform(Z, range(21), 1)
    with pytest.raises(SizeLimitError):
        matroids.circuits(big)
    with pytest.raises(SizeLimitError):
        matroids.hyperplanes(big)


# paving ---------------------------------------------------------------------

def test_paving_examples():
    for m in range(2, 7):
        for n in range(1, m + 1):
            assert matroids.is_sparse_paving(make_uniform(Z, range(1, m + 1), n))
    two = matroids.direct_sum(make_uniform(Z, [1, 2], 1), make_uniform(Z, [3, 4], 1))
    assert matroids.is_paving(two) and matroids.is_sparse_paving(two)
    assert not matroids.is_paving(panhandle(3, 3, 5))


def test_u_n_n_is_sparse_paving():
    # its dual U_{0,n} has 1-circuits, which still meet the size bound 0
    assert matroids.is_sparse_paving(make_uniform(Z, [1, 2], 2))
    assert [popcount(c) for c in matroids.circuits(matroids.dual(make_uniform(Z, [1, 2], 2)))] == [1, 1]


def test_d_partition():
    assert matroids.check_d_partition(make_uniform(Z, [1, 2, 3, 4], 2))
    with pytest.raises(DomainError):
        matroids.check_d_partition(panhandle(3, 3, 5))
    with pytest.raises(DomainError):
        matroids.check_d_partition(make_uniform(Z, [1, 2], 1))


def test_d_partition_for_all_small_sparse_paving():
    # every basis family on up to 6 elements of rank 2..3 that is sparse paving
    seen = 0
    for size in range(3, 7):
        for n in (2, 3):
            if n >= size:
                continue
            ground = list(range(1, size + 1))
            allsets = [mask_of(c) for c in combinations(range(size), n)]
            # sparse paving = uniform minus a set of pairwise "far" circuit-hyperplanes
            for k in range(0, 3):
                for removed in combinations(allsets, k):
                    if any(bin(x & y).count("1") > n - 2 for x, y in combinations(removed, 2)):
                        continue
                    bases = [bits(b) for b in allsets if b not in removed]
                    try:
                        M = make_from_bases(Z, ground, bases)
                    except (LoopError, InvalidBasisSystemError):
                        continue
                    if not matroids.is_sparse_paving(M):
                        continue
                    seen += 1
                    assert matroids.check_d_partition(M)
                    hs = matroids.hyperplanes(M)
                    assert all(bin(x & y).count("1") <= n - 2 for x, y in combinations(hs, 2))
    assert seen > 50


def test_sparse_paving_on_n_plus_one_elements():
    # any sparse paving matroid of rank n on n+1 elements is U_{n,n+1} or U_{n-1,n} + U_{1,1}
    for n in range(1, 6):
        ground = list(range(1, n + 2))
        U = make_uniform(Z, ground, n)
        alt = None
        if n >= 2:
            alt = matroids.direct_sum(make_uniform(Z, ground[:-1], n - 1), make_uniform(Z, ground[-1:], 1))
        allsets = [mask_of(c) for c in combinations(range(n + 1), n)]
        for k in range(1, len(allsets) + 1):
            for keep in combinations(allsets, k):
                try:
                    M = make_from_bases(Z, ground, [bits(b) for b in keep], allow_loops=True)
                except InvalidBasisSystemError:
                    continue
                if not M.is_loopless or not matroids.is_sparse_paving(M):
                    continue
                assert matroids.is_isomorphic(M, U) or (alt is not None and matroids.is_isomorphic(M, alt))


# isomorphism and the uniform Schubert characterisation ----------------------

def test_is_isomorphic():
    U = make_uniform(Z, [1, 2, 3, 4], 2)
    assert matroids.is_isomorphic(U, make_uniform(Z3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], 2))
    assert not matroids.is_isomorphic(U, panhandle(2, 2, 4))
    assert matroids.is_isomorphic(panhandle(2, 2, 4), matroids.dual(panhandle(2, 2, 4)))
    with pytest.raises(SizeLimitError):
        matroids.is_isomorphic(make_uniform(Z, range(9), 2), make_uniform(Z, range(9), 2))


def test_is_uniform_schubert_examples():
    def p(ks, m=5, a=A3):
        return SchubertParams(m, a, matroids.multiples(Z3, a, ks))
    assert matroids.is_uniform_schubert(Z3, p([3, 4, 5]))
    assert not matroids.is_uniform_schubert(Z3, p([1, 2, 5]))
    assert matroids.is_uniform_schubert(Z3, p([1, 2, 3, 4, 5]))


@pytest.mark.parametrize("a", [1, -1, 2, -3])
def test_uniform_schubert_iff_isomorphic_to_uniform(a):
    for m in range(1, 7):
        for n in range(1, m + 1):
            U = make_uniform(Z, range(1, m + 1), n)
            for ks in combinations(range(1, m + 1), n):
                params = SchubertParams(m, a, matroids.multiples(Z, a, ks))
                M = make_schubert(Z, params)
                assert matroids.is_uniform_schubert(Z, params) == matroids.is_isomorphic(M, U)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m - 1))).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.integers(1, t[1]))),
    st.sampled_from([1, -2, 5]))
def test_panhandle_membership_rule(msn, a):
    m, s, n = msn
    M = panhandle(n, s, m, a)
    for c in combinations(range(m), n):
        in_head = sum(1 for i in c if i < s)
        assert M.is_basis(mask_of(c)) == (in_head >= n - 1)

"""Matchings in abelian groups and between matroids over them.

A basis ``{a_1..a_n}`` of M is matched to a basis ``{b_1..b_n}`` of N when
some ordering gives ``a_i + b_i`` outside E(M) for every i.  Such an
ordering exists exactly when the bipartite graph with an edge (a, b) for
each allowed sum has a perfect matching, so every check below reduces to
bipartite matching.  M is matched to N when every basis of M is matched to
some basis of N.

``basis_matched_into`` decides the existence of a target basis in two
independent ways:

* ``"brute"`` tries every basis of N in lexicographic order;
* ``"intersection"`` looks for a common independent set of size n between N
  and the transversal matroid that the bipartite graph induces on E(N).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import groups
from .bipartite import perfect_matching, transversal_independence
from .errors import DomainError, RankMismatchError
from .groups import Element, GroupCtx
from .intersection import max_common_independent
from .matroids import Matroid, bits, popcount

BRUTE = "brute"
INTERSECTION = "intersection"
AUTO = "auto"
METHODS = (AUTO, BRUTE, INTERSECTION)

BRUTE_FORCE_THRESHOLD = 64


def group_matching(ctx: GroupCtx, A: Iterable, B: Iterable) -> dict[Element, Element] | None:
    """A bijection f: A -> B with a + f(a) outside A for every a, or None."""
    A = sorted({ctx.element(a) for a in A})
    B = sorted({ctx.element(b) for b in B})
    if len(A) != len(B):
        raise DomainError(f"group matching needs |A| = |B|, got {len(A)} and {len(B)}")
    in_A = set(A)
    adj = [[j for j, b in enumerate(B) if groups.add(ctx, a, b) not in in_A] for a in A]
    match = perfect_matching(adj, len(B))
    if match is None:
        return None
    return {a: B[j] for a, j in zip(A, match)}


@dataclass(frozen=True)
class MatchWitness:
    """A target basis and pairing certifying that ``source`` is matched.

    ``pairs`` holds (i, j) with i a ground index of M and j one of N, listed
    in increasing i.
    """

    source: tuple[int, ...]
    target: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "pairs": [list(p) for p in self.pairs],
        }


@dataclass
class MatchReport:
    matched: bool
    per_basis: list[tuple[tuple[int, ...], MatchWitness | None]] = field(default_factory=list)
    counterexample: tuple[int, ...] | None = None

    @property
    def witnesses(self) -> list[MatchWitness]:
        return [w for _, w in self.per_basis if w is not None]

    def to_json(self) -> dict:
        return {
            "matched": self.matched,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def sum_table(M: Matroid, N: Matroid) -> list[int]:
    """table[i]: bitmask of indices j of N with M.ground[i] + N.ground[j] outside E(M)."""
    ground_M = set(M.ground)
    ctx = M.ctx
    return [
        sum(1 << j for j, y in enumerate(N.ground) if groups.add(ctx, x, y) not in ground_M)
        for x in M.ground
    ]


def basis_pair_matched(M: Matroid, source: int, N: Matroid, target: int,
                       table: list[int] | None = None) -> tuple[tuple[int, int], ...] | None:
    """Pairing (i, j) matching basis ``source`` of M to basis ``target`` of N, or None."""
    if popcount(source) != popcount(target):
        raise RankMismatchError(
            f"bases of sizes {popcount(source)} and {popcount(target)} cannot be matched"
        )
    if table is None:
        table = sum_table(M, N)
    cols = bits(target)
    where = {j: k for k, j in enumerate(cols)}
    rows = bits(source)
    match = perfect_matching([[where[j] for j in bits(table[i] & target)] for i in rows], len(cols))
    if match is None:
        return None
    return tuple((i, cols[k]) for i, k in zip(rows, match))


def _check_ranks(M: Matroid, N: Matroid) -> None:
    if M.ctx != N.ctx:
        raise DomainError(f"matroids live in different groups: {M.ctx} and {N.ctx}")
    if M.rank != N.rank:
        raise RankMismatchError(f"ranks differ: r(M)={M.rank}, r(N)={N.rank}")


def _matched_brute(M: Matroid, source: int, N: Matroid, table: list[int]) -> MatchWitness | None:
    for target in N.sorted_bases():
        pairs = basis_pair_matched(M, source, N, target, table)
        if pairs is not None:
            return MatchWitness(tuple(bits(source)), tuple(bits(target)), pairs)
    return None


def _matched_intersection(M: Matroid, source: int, N: Matroid, table: list[int]) -> MatchWitness | None:
    n = popcount(source)
    adj = [bits(table[i]) for i in bits(source)]
    found = max_common_independent(
        N.size,
        lambda mask: transversal_independence(adj, bits(mask)),
        N.is_independent,
        target=n,
    )
    if popcount(found) < n:
        return None
    pairs = basis_pair_matched(M, source, N, found, table)
    # a common independent n-set is a basis of N with a perfect matching
    assert pairs is not None and N.is_basis(found)
    return MatchWitness(tuple(bits(source)), tuple(bits(found)), pairs)


def basis_matched_into(M: Matroid, source: int, N: Matroid, method: str = AUTO,
                       threshold: int = BRUTE_FORCE_THRESHOLD,
                       table: list[int] | None = None) -> MatchWitness | None:
    """Witness that basis ``source`` of M is matched to some basis of N, or None.

    ``auto`` uses brute force when N has at most ``threshold`` bases and the
    intersection solver otherwise.  Brute force returns the lexicographically
    smallest target basis.
    """
    _check_ranks(M, N)
    if popcount(source) != M.rank:
        raise RankMismatchError(f"source has {popcount(source)} elements, r(M) = {M.rank}")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    if table is None:
        table = sum_table(M, N)
    if method == AUTO:
        method = BRUTE if len(N.bases) <= threshold else INTERSECTION
    if method == BRUTE:
        return _matched_brute(M, source, N, table)
    return _matched_intersection(M, source, N, table)


def matroid_matched(M: Matroid, N: Matroid, method: str = AUTO,
                    threshold: int = BRUTE_FORCE_THRESHOLD) -> MatchReport:
    """Is every basis of M matched to some basis of N?

    Bases of M are scanned in lexicographic order and the scan stops at the
    first basis with no witness, which becomes the counterexample.  Loops are
    tolerated: Schubert matroids SM_m(a, S) have them whenever max S < ma.
    """
    _check_ranks(M, N)
    if M.rank < 1:
        raise DomainError("matching needs positive rank")
    table = sum_table(M, N)
    report = MatchReport(matched=True)
    for source in M.sorted_bases():
        w = basis_matched_into(M, source, N, method, threshold, table)
        report.per_basis.append((tuple(bits(source)), w))
        if w is None:
            report.matched = False
            report.counterexample = tuple(bits(source))
            break
    return report


def validate_witness(M: Matroid, N: Matroid, w: MatchWitness) -> bool:
    """Independent re-check: bijection between a basis of M and a basis of N with sums outside E(M)."""
    src, tgt = set(w.source), set(w.target)
    if len(w.pairs) != len(src) or {i for i, _ in w.pairs} != src or {j for _, j in w.pairs} != tgt:
        return False
    if not M.is_basis(sum(1 << i for i in src)) or not N.is_basis(sum(1 << j for j in tgt)):
        return False
    ground_M = set(M.ground)
    return all(groups.add(M.ctx, M.ground[i], N.ground[j]) not in ground_M for i, j in w.pairs)

"""Matroids over abelian groups, stored as explicit basis systems.

A :class:`Matroid` keeps its ground set as a tuple of group elements and its
bases as integer bitmasks over the positions of that tuple: bit ``i`` set
means ``ground[i]`` is in the basis.  Group elements only appear at the
boundary (construction, printing, and the sums checked by the matching code).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from . import groups
from .errors import (
    DisjointnessError,
    DomainError,
    InvalidBasisSystemError,
    LoopError,
    OrderUnavailableError,
    SizeLimitError,
    StructureError,
)
from .groups import Element, GroupCtx, OrderedSubset

ENUMERATION_LIMIT = 20
ISOMORPHISM_LIMIT = 8


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def subsets_of_size(size: int, k: int) -> Iterator[int]:
    for idx in combinations(range(size), k):
        yield mask_of(idx)


def exchange_violation(bases: Iterable[int]) -> tuple[int, int, int] | None:
    """First (B1, B2, x) breaking basis exchange, or None.

    For every pair of bases and every x in B1 - B2 some y in B2 - B1 must
    make (B1 - x) + y a basis.
    """
    bases = set(bases)
    for b1 in bases:
        for b2 in bases:
            if b1 == b2:
                continue
            only2 = bits(b2 & ~b1)
            for x in bits(b1 & ~b2):
                drop = b1 & ~(1 << x)
                if not any(drop | (1 << y) in bases for y in only2):
                    return b1, b2, x
    return None


class Matroid:
    """Matroid on a ground set of group elements.

    Construct through :func:`make_from_bases` or the family constructors;
    the bare constructor trusts its input.
    """

    __slots__ = ("ctx", "ground", "bases", "rank", "order", "_index", "_indep")

    def __init__(self, ctx: GroupCtx, ground: Sequence[Element], bases: Iterable[int],
                 rank: int, order: OrderedSubset | None = None):
        self.ctx = ctx
        self.ground = tuple(ground)
        self.bases = frozenset(bases)
        self.rank = rank
        self.order = order
        self._index = {x: i for i, x in enumerate(self.ground)}
        self._indep: dict[int, bool] = {}

    def __repr__(self):
        return f"Matroid(rank={self.rank}, |E|={len(self.ground)}, bases={len(self.bases)}, ctx={self.ctx})"

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.ctx, self.ground, self.bases) == (other.ctx, other.ground, other.bases)

    def __hash__(self):
        return hash((self.ctx, self.ground, self.bases))

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def index(self, x) -> int:
        try:
            return self._index[self.ctx.element(x)]
        except KeyError:
            raise StructureError(f"{x!r} is not in the ground set") from None

    def mask(self, elements: Iterable) -> int:
        return mask_of(self.index(x) for x in elements)

    def elements(self, mask: int) -> tuple[Element, ...]:
        return tuple(self.ground[i] for i in bits(mask))

    def sorted_bases(self) -> list[int]:
        """Bases ordered lexicographically by their sorted index tuples."""
        return sorted(self.bases, key=bits)

    def is_basis(self, mask: int) -> bool:
        return mask in self.bases

    def is_independent(self, mask: int) -> bool:
        hit = self._indep.get(mask)
        if hit is None:
            hit = any(mask & ~b == 0 for b in self.bases)
            self._indep[mask] = hit
        return hit

    def rank_of(self, mask: int) -> int:
        return max(popcount(mask & b) for b in self.bases)

    def closure(self, mask: int) -> int:
        r = self.rank_of(mask)
        out = mask
        for i in range(self.size):
            if not mask >> i & 1 and self.rank_of(mask | 1 << i) == r:
                out |= 1 << i
        return out

    @property
    def loops(self) -> int:
        covered = 0
        for b in self.bases:
            covered |= b
        return self.full & ~covered

    @property
    def is_loopless(self) -> bool:
        return self.loops == 0

    def bases_as_elements(self) -> list[tuple[Element, ...]]:
        """Bases as sorted tuples of group elements, themselves sorted."""
        return sorted(tuple(sorted(self.elements(b))) for b in self.bases)


def make_from_bases(ctx: GroupCtx, ground: Sequence, bases: Iterable[Iterable[int]],
                    order: OrderedSubset | None = None, allow_loops: bool = False) -> Matroid:
    """Validate a ground set and a family of index sets and build the matroid.

    Loops are rejected unless ``allow_loops`` is set.
    """
    ground = [ctx.element(x) for x in ground]
    if len(set(ground)) != len(ground):
        raise StructureError("ground set has repeated elements")
    family = [tuple(b) for b in bases]
    if not family:
        raise DomainError("a matroid needs at least one basis")
    masks = set()
    for b in family:
        if len(set(b)) != len(b):
            raise InvalidBasisSystemError(f"basis {list(b)} repeats an index")
        for i in b:
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(ground):
                raise StructureError(f"basis index {i!r} out of range for {len(ground)} elements")
        masks.add(mask_of(b))
    sizes = {popcount(b) for b in masks}
    if len(sizes) != 1:
        raise InvalidBasisSystemError(f"bases have unequal sizes {sorted(sizes)}")
    rank = sizes.pop()
    if rank < 1:
        raise DomainError("matroid rank must be positive")
    bad = exchange_violation(masks)
    if bad is not None:
        b1, b2, x = bad
        raise InvalidBasisSystemError(
            f"basis exchange fails for B1={bits(b1)}, B2={bits(b2)}, x={x}"
        )
    M = Matroid(ctx, ground, masks, rank, order)
    if M.loops and not allow_loops:
        raise LoopError(f"ground elements {list(M.elements(M.loops))} lie in no basis")
    return M


def make_uniform(ctx: GroupCtx, ground: Sequence, n: int) -> Matroid:
    ground = [ctx.element(x) for x in ground]
    if len(set(ground)) != len(ground):
        raise StructureError("ground set has repeated elements")
    if not 1 <= n <= len(ground):
        raise DomainError(f"uniform rank {n} outside 1..{len(ground)}")
    return Matroid(ctx, ground, subsets_of_size(len(ground), n), n)


@dataclass(frozen=True)
class PanhandleParams:
    n: int
    s: int
    m: int
    a: object


@dataclass(frozen=True)
class SchubertParams:
    m: int
    a: object
    S: tuple


def _bracket_for_family(ctx: GroupCtx, a, m: int) -> tuple[list[Element], OrderedSubset]:
    if not groups.sufficiently_small(ctx, m):
        raise OrderUnavailableError(
            f"m={m} is not sufficiently small in {ctx}: need 2m < ceil(log2 p(G)) = {groups.ceil_log2_p(ctx)}"
        )
    order = groups.m_bracket(ctx, a, m)
    a = ctx.element(a)
    # ground[i] = (i+1)a, so [s]_a is the first s positions
    ground = [groups.scalar_mul(ctx, i, a) for i in range(1, m + 1)]
    return ground, order


def make_panhandle(ctx: GroupCtx, p: PanhandleParams) -> Matroid:
    """Rank-n matroid on [m]_a whose bases meet [s]_a in at least n - 1 elements."""
    n, s, m = p.n, p.s, p.m
    if not 1 <= n <= s < m:
        raise DomainError(f"panhandle needs 1 <= n <= s < m, got n={n}, s={s}, m={m}")
    ground, order = _bracket_for_family(ctx, p.a, m)
    head = (1 << s) - 1
    bases = [b for b in subsets_of_size(m, n) if popcount(b & head) >= n - 1]
    return Matroid(ctx, ground, bases, n, order)


def make_schubert(ctx: GroupCtx, p: SchubertParams) -> Matroid:
    """Rank-|S| matroid on [m]_a whose bases T satisfy T <= S componentwise in sorted order."""
    ground, order = _bracket_for_family(ctx, p.a, p.m)
    S = [ctx.element(x) for x in p.S]
    if len(set(S)) != len(S):
        raise DomainError("S has repeated elements")
    missing = [x for x in S if x not in order]
    if missing:
        raise DomainError(f"S is not a subset of [m]_a: {missing} missing")
    n = len(S)
    if n < 1:
        raise DomainError("S must be nonempty")
    # rank of each ground position in the order on [m]_a
    rank_in_order = [order.position(x) for x in ground]
    top = sorted(order.position(x) for x in S)
    bases = []
    for b in subsets_of_size(p.m, n):
        t = sorted(rank_in_order[i] for i in bits(b))
        if all(ti <= si for ti, si in zip(t, top)):
            bases.append(b)
    return Matroid(ctx, ground, bases, n, order)


def multiples(ctx: GroupCtx, a, ks: Iterable[int]) -> tuple[Element, ...]:
    """The elements k*a for k in ``ks``; handy for building Schubert sets."""
    a = ctx.element(a)
    return tuple(groups.scalar_mul(ctx, k, a) for k in ks)


def is_uniform_schubert(ctx: GroupCtx, p: SchubertParams) -> bool:
    """True iff S consists of the n largest elements of [m]_a.

    For a positive generator these are (m-n+1)a, ..., ma.
    """
    order = groups.m_bracket(ctx, p.a, p.m)
    S = {ctx.element(x) for x in p.S}
    return S == set(order.elements[len(order) - len(S):])


def dual(M: Matroid) -> Matroid:
    """Complements of the bases.  The result may have rank 0 or loops."""
    full = M.full
    return Matroid(M.ctx, M.ground, (full & ~b for b in M.bases), M.size - M.rank, M.order)


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    if M.ctx != N.ctx:
        raise StructureError(f"direct sum needs one group, got {M.ctx} and {N.ctx}")
    common = set(M.ground) & set(N.ground)
    if common:
        raise DisjointnessError(f"ground sets share {sorted(common)}")
    shift = M.size
    bases = {bm | bn << shift for bm in M.bases for bn in N.bases}
    return Matroid(M.ctx, M.ground + N.ground, bases, M.rank + N.rank)


def _require_small(M: Matroid) -> None:
    if M.size > ENUMERATION_LIMIT:
        raise SizeLimitError(f"enumeration limited to {ENUMERATION_LIMIT} elements, got {M.size}")


def rank_of(M: Matroid, X: Iterable) -> int:
    return M.rank_of(M.mask(X))


def circuits(M: Matroid) -> list[int]:
    """Minimal dependent sets, as masks ordered by size then index tuple."""
    _require_small(M)
    out = []
    for k in range(1, M.rank + 2):
        for c in subsets_of_size(M.size, k):
            if M.is_independent(c):
                continue
            if all(M.is_independent(c & ~(1 << i)) for i in bits(c)):
                out.append(c)
    return out


def hyperplanes(M: Matroid) -> list[int]:
    """Flats of rank r(M) - 1, each obtained as the closure of an independent (r-1)-set."""
    _require_small(M)
    found = set()
    for I in subsets_of_size(M.size, M.rank - 1):
        if M.is_independent(I):
            found.add(M.closure(I))
    return sorted(found, key=lambda h: (popcount(h), bits(h)))


def is_paving(M: Matroid) -> bool:
    return all(popcount(c) >= M.rank for c in circuits(M))


def is_sparse_paving(M: Matroid) -> bool:
    return is_paving(M) and is_paving(dual(M))


def check_d_partition(M: Matroid) -> bool:
    """Do the hyperplanes of a paving matroid of rank n >= 2 form an (n-1)-partition?

    Checks both that every (n-1)-subset lies in exactly one hyperplane and
    that distinct hyperplanes meet in at most n - 2 elements.
    """
    if M.rank < 2:
        raise DomainError(f"d-partition check needs rank >= 2, got {M.rank}")
    if not is_paving(M):
        raise DomainError("d-partition check needs a paving matroid")
    n = M.rank
    hs = hyperplanes(M)
    for small in subsets_of_size(M.size, n - 1):
        if sum(1 for h in hs if small & ~h == 0) != 1:
            return False
    for h1, h2 in combinations(hs, 2):
        if popcount(h1 & h2) > n - 2:
            return False
    return True


def is_isomorphic(M: Matroid, N: Matroid) -> bool:
    """Exhaustive bijection search, for ground sets of at most 8 elements."""
    if M.size > ISOMORPHISM_LIMIT or N.size > ISOMORPHISM_LIMIT:
        raise SizeLimitError(f"isomorphism search limited to {ISOMORPHISM_LIMIT} elements")
    if (M.size, M.rank, len(M.bases)) != (N.size, N.rank, len(N.bases)):
        return False
    for perm in permutations(range(N.size)):
        image = {mask_of(perm[i] for i in bits(b)) for b in M.bases}
        if image == N.bases:
            return True
    return False


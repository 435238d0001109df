"""Finitely generated abelian groups and the orders used on their subsets.

Two kinds of group are supported:

* ``GroupCtx.free(k)``        the free abelian group Z^k, ordered lexicographically;
* ``GroupCtx.finite(n1, ...)`` the product Z/n1 x ... x Z/nt.

Elements are plain tuples of ints.  In a finite product every coordinate is
kept reduced into ``[0, n_i)``, so equal elements are equal tuples and can be
hashed and put in sets directly.

Example::

    >>> Z3 = GroupCtx.free(3)
    >>> add(Z3, (2, -1, 0), (2, -1, 0))
    (4, -2, 0)
    >>> p_of_g(GroupCtx.finite(4, 9))
    2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from sympy import primefactors

from .errors import (
    DomainError,
    SizeLimitError,
    StructureError,
    TorsionCollisionError,
    UnsupportedOrderError,
)

Element = tuple[int, ...]

FREE = "free"
FINITE = "finite"

COMPATIBLE_ORDER_LIMIT = 8


class _Infinity:
    """Sentinel for p(G) of a torsion-free group.  Compares above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("abelmatch.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


@dataclass(frozen=True)
class GroupCtx:
    kind: str
    rank: int = 0
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == FREE:
            if self.rank < 1 or self.moduli:
                raise DomainError(f"free abelian group needs rank >= 1, got {self.rank}")
        elif self.kind == FINITE:
            if not self.moduli or any(n < 2 for n in self.moduli):
                raise DomainError(f"finite product needs moduli >= 2, got {self.moduli}")
        else:
            raise DomainError(f"unknown group kind {self.kind!r}")

    @classmethod
    def free(cls, rank: int = 1) -> "GroupCtx":
        return cls(FREE, rank=int(rank))

    @classmethod
    def finite(cls, *moduli: int) -> "GroupCtx":
        return cls(FINITE, moduli=tuple(int(n) for n in moduli))

    @property
    def dim(self) -> int:
        return self.rank if self.kind == FREE else len(self.moduli)

    @property
    def torsion_free(self) -> bool:
        return self.kind == FREE

    @property
    def order(self):
        """Number of elements, INF for free groups."""
        return INF if self.kind == FREE else math.prod(self.moduli)

    @property
    def zero(self) -> Element:
        return (0,) * self.dim

    def element(self, x) -> Element:
        """Canonical form of ``x`` (an int for one-coordinate groups, or a sequence)."""
        if isinstance(x, bool):
            raise StructureError(f"not a group element: {x!r}")
        if isinstance(x, int):
            coords = (x,)
        else:
            try:
                coords = tuple(x)
            except TypeError:
                raise StructureError(f"not a group element: {x!r}") from None
        if len(coords) != self.dim:
            raise StructureError(
                f"element {x!r} has {len(coords)} coordinates, group {self} needs {self.dim}"
            )
        for c in coords:
            if isinstance(c, bool) or not isinstance(c, int):
                raise StructureError(f"non-integer coordinate in {x!r}")
        if self.kind == FINITE:
            coords = tuple(c % n for c, n in zip(coords, self.moduli))
        return coords

    def elements(self) -> list[Element]:
        """Every element of a finite group, in lexicographic order of coordinates."""
        if self.kind == FREE:
            raise DomainError("a free abelian group has infinitely many elements")
        return list(product(*(range(n) for n in self.moduli)))

    def __str__(self):
        if self.kind == FREE:
            return "Z" if self.rank == 1 else f"Z^{self.rank}"
        return " x ".join(f"Z/{n}" for n in self.moduli)


def _check(ctx: GroupCtx, x: Element) -> None:
    if len(x) != ctx.dim:
        raise StructureError(f"element {x!r} does not belong to {ctx}")


def add(ctx: GroupCtx, x: Element, y: Element) -> Element:
    _check(ctx, x)
    _check(ctx, y)
    if ctx.kind == FREE:
        return tuple(a + b for a, b in zip(x, y))
    return tuple((a + b) % n for a, b, n in zip(x, y, ctx.moduli))


def neg(ctx: GroupCtx, x: Element) -> Element:
    _check(ctx, x)
    if ctx.kind == FREE:
        return tuple(-a for a in x)
    return tuple(-a % n for a, n in zip(x, ctx.moduli))


def scalar_mul(ctx: GroupCtx, m: int, x: Element) -> Element:
    """The m-fold sum x + ... + x, for m >= 1."""
    if m < 1:
        raise DomainError(f"scalar multiple needs m >= 1, got {m}")
    _check(ctx, x)
    if ctx.kind == FREE:
        return tuple(m * a for a in x)
    return tuple(m * a % n for a, n in zip(x, ctx.moduli))


def element_order(ctx: GroupCtx, x: Element):
    """Order of x: 1 for zero, INF for nonzero elements of a free group."""
    _check(ctx, x)
    if ctx.kind == FREE:
        return 1 if not any(x) else INF
    return math.lcm(*(n // math.gcd(a, n) for a, n in zip(x, ctx.moduli)))


@lru_cache(maxsize=None)
def _least_prime_factor(n: int) -> int:
    return min(primefactors(n))


def p_of_g(ctx: GroupCtx):
    """Smallest size of a nonzero finite subgroup; INF when there is none."""
    if ctx.kind == FREE:
        return INF
    return min(_least_prime_factor(n) for n in ctx.moduli)


def ceil_log2_p(ctx: GroupCtx):
    """ceil(log2 p(G)) computed exactly; INF for free groups."""
    p = p_of_g(ctx)
    if p is INF:
        return INF
    return (p - 1).bit_length()


def sumset(A: Iterable[Element], B: Iterable[Element], ctx: GroupCtx) -> set[Element]:
    B = list(B)
    return {add(ctx, a, b) for a in A for b in B}


def lex_compare(ctx: GroupCtx, x: Element, y: Element) -> int:
    """-1, 0 or 1 under the lexicographic order of Z^k."""
    if ctx.kind != FREE:
        raise UnsupportedOrderError(
            f"{ctx} has torsion and carries no compatible total order"
        )
    _check(ctx, x)
    _check(ctx, y)
    return (x > y) - (x < y)


@dataclass(frozen=True)
class OrderedSubset:
    """A finite subset together with a total order on it.

    ``elements`` is stored in increasing order.  In a free group the order is
    the lexicographic one; in a finite group it is the stored permutation,
    and ``zero_below`` records that 0 sits below every stored element in the
    ambient (rectified) order even though 0 itself is not stored.
    """

    ctx: GroupCtx
    elements: tuple[Element, ...]
    compatible: bool = False
    zero_below: bool = False

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise DomainError("ordered subset has repeated elements")
        if self.ctx.kind == FREE and list(self.elements) != sorted(self.elements):
            raise DomainError("subsets of a free group must be stored in lexicographic order")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def position(self, x: Element) -> int:
        return self.elements.index(x)

    def compare(self, x: Element, y: Element) -> int:
        if self.ctx.kind == FREE:
            return lex_compare(self.ctx, x, y)
        i, j = self.position(x), self.position(y)
        return (i > j) - (i < j)

    def sorted(self, xs: Iterable[Element]) -> list[Element]:
        if self.ctx.kind == FREE:
            return sorted(xs)
        pos = {x: i for i, x in enumerate(self.elements)}
        return sorted(xs, key=pos.__getitem__)


def is_compatible_order(ctx: GroupCtx, order: Sequence[Element]) -> bool:
    """Check a <= b  =>  a + c <= b + c over all a, b, c in the set with both sums inside it."""
    pos = {x: i for i, x in enumerate(order)}
    for a in order:
        for b in order:
            if pos[a] >= pos[b]:
                continue
            for c in order:
                ac, bc = add(ctx, a, c), add(ctx, b, c)
                if ac in pos and bc in pos and pos[ac] > pos[bc]:
                    return False
    return True


def m_bracket(ctx: GroupCtx, a, m: int) -> OrderedSubset:
    """The set {a, 2a, ..., ma} with its order.

    Free groups use the lexicographic order, so a lex-negative ``a`` gives
    ma < ... < a.  In a finite group the multiples are ordered by index, as
    for a rectified positive generator.
    """
    a = ctx.element(a)
    if m < 1:
        raise DomainError(f"[m]_a needs m >= 1, got {m}")
    if a == ctx.zero:
        raise DomainError("[m]_a needs a nonzero generator")
    if element_order(ctx, a) <= m:
        raise TorsionCollisionError(
            f"{a} has order {element_order(ctx, a)} in {ctx}, so [{m}]_a has repeated multiples"
        )
    multiples = tuple(scalar_mul(ctx, i, a) for i in range(1, m + 1))
    if ctx.kind == FREE:
        return OrderedSubset(ctx, tuple(sorted(multiples)), compatible=True)
    return OrderedSubset(
        ctx, multiples, compatible=is_compatible_order(ctx, multiples), zero_below=True
    )


def extrema(A: OrderedSubset) -> tuple[Element, Element]:
    if not A.elements:
        raise DomainError("empty set has no minimum or maximum")
    if A.ctx.kind == FREE:
        return min(A.elements), max(A.elements)
    return A.elements[0], A.elements[-1]


def is_positive(A: OrderedSubset) -> bool:
    """Every element strictly above 0 in the ambient order."""
    if not A.elements:
        raise DomainError("empty set")
    zero = A.ctx.zero
    if A.ctx.kind == FREE:
        return all(x > zero for x in A.elements)
    if zero in A.elements:
        return False
    return A.zero_below


def find_compatible_order(ctx: GroupCtx, A: Iterable) -> OrderedSubset | None:
    """Search all total orders of a small subset of a finite group for a compatible one.

    Constraints bind only when both translates a + c and b + c lie in A.
    Backtracking builds the order from the bottom up and prunes as soon as
    two constrained pairs have their relative order fixed in opposite ways.
    """
    if ctx.kind != FINITE:
        raise DomainError("find_compatible_order works on finite groups; use lex order on Z^k")
    A = sorted({ctx.element(x) for x in A})
    k = len(A)
    if k > COMPATIBLE_ORDER_LIMIT:
        raise SizeLimitError(
            f"compatible-order search is limited to {COMPATIBLE_ORDER_LIMIT} elements, got {k}"
        )
    idx = {x: i for i, x in enumerate(A)}
    # (i, j, u, v): i before j  <=>  u before v.  Since translation is
    # injective, a + c != b + c, so the implication works in both directions.
    links = []
    for i, a in enumerate(A):
        for j, b in enumerate(A):
            if i >= j:
                continue
            for c in A:
                u, v = idx.get(add(ctx, a, c)), idx.get(add(ctx, b, c))
                if u is not None and v is not None and (u, v) != (i, j):
                    links.append((i, j, u, v))

    pos = [-1] * k

    def before(i, j):
        # None while both are unplaced; an unplaced element is above every placed one.
        if pos[i] < 0 and pos[j] < 0:
            return None
        if pos[i] < 0:
            return False
        if pos[j] < 0:
            return True
        return pos[i] < pos[j]

    def consistent():
        for i, j, u, v in links:
            p, q = before(i, j), before(u, v)
            if p is not None and q is not None and p != q:
                return False
        return True

    chosen: list[int] = []

    def extend():
        if len(chosen) == k:
            return True
        for i in range(k):
            if pos[i] >= 0:
                continue
            pos[i] = len(chosen)
            chosen.append(i)
            if consistent() and extend():
                return True
            chosen.pop()
            pos[i] = -1
        return False

    if not extend():
        return None
    return OrderedSubset(ctx, tuple(A[i] for i in chosen), compatible=True)


def sufficiently_small(ctx: GroupCtx, m: int) -> bool:
    """m < ceil(log2 p(G)) / 2; always true in a torsion-free group."""
    bound = ceil_log2_p(ctx)
    if bound is INF:
        return True
    return 2 * m < bound


def total_small_condition(ctx: GroupCtx, EM: Iterable, EN: Iterable, n: int) -> bool:
    """|E(M) u E(N) u (E(M)+E(N)) u {ny : y in E(N)} u {0}| < ceil(log2 p(G))."""
    bound = ceil_log2_p(ctx)
    if bound is INF:
        return True
    EM = {ctx.element(x) for x in EM}
    EN = {ctx.element(y) for y in EN}
    union = EM | EN | sumset(EM, EN, ctx) | {scalar_mul(ctx, n, y) for y in EN} | {ctx.zero}
    return len(union) < bound

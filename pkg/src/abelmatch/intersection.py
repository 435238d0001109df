"""Cardinality matroid intersection by shortest augmenting paths.

The engine works on a ground set ``range(size)`` and two independence
oracles taking bitmasks, so it runs equally on explicit :class:`Matroid`
objects and on matroids known only through an oracle (the transversal
matroids built by :mod:`abelmatch.matching`).
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from .errors import StructureError
from .matroids import Matroid, bits

Oracle = Callable[[int], bool]


def max_common_independent(size: int, indep1: Oracle, indep2: Oracle,
                           target: int | None = None) -> int:
    """A largest set independent in both matroids, as a bitmask.

    Stops early once ``target`` elements are reached.  Each round builds the
    exchange graph of the current set I:

    * y -> x  when I - y + x is independent in M1,
    * x -> y  when I - y + x is independent in M2,

    for y in I and x outside I, and augments along a shortest path from
    {x : I + x in M1} to {x : I + x in M2}.  Shortest paths keep both
    sides independent after the symmetric difference.
    """
    current = 0
    count = 0
    while target is None or count < target:
        inside = bits(current)
        outside = [x for x in range(size) if not current >> x & 1]
        if not outside:
            break
        sources = [x for x in outside if indep1(current | 1 << x)]
        sinks = {x for x in outside if indep2(current | 1 << x)}
        path = None
        parent: dict[int, int | None] = {}
        queue = deque()
        for x in sources:
            parent[x] = None
            queue.append(x)
        while queue:
            v = queue.popleft()
            if not current >> v & 1 and v in sinks:
                path = v
                break
            if current >> v & 1:
                # v = y in I: y -> x when I - y + x in M1
                base = current & ~(1 << v)
                nxt = [x for x in outside if x not in parent and indep1(base | 1 << x)]
            else:
                # v = x outside I: x -> y when I - y + x in M2
                nxt = [y for y in inside
                       if y not in parent and indep2((current & ~(1 << y)) | 1 << v)]
            for w in nxt:
                parent[w] = v
                queue.append(w)
        if path is None:
            break
        v: int | None = path
        while v is not None:
            current ^= 1 << v
            v = parent[v]
        count += 1
    return current


def matroid_intersection(M1: Matroid, M2: Matroid, k: int) -> tuple | None:
    """A set of k ground elements independent in both matroids, or None."""
    if M1.ctx != M2.ctx or M1.ground != M2.ground:
        raise StructureError("matroid intersection needs a shared ground list")
    if k < 0:
        raise ValueError("k must be nonnegative")
    found = max_common_independent(M1.size, M1.is_independent, M2.is_independent, target=k)
    if len(bits(found)) < k:
        return None
    return M1.elements(found)

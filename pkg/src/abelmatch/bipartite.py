"""Maximum bipartite matching (Hopcroft-Karp) and the transversal independence test."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

_UNSEEN = -1


def hopcroft_karp(adj: Sequence[Iterable[int]], n_right: int) -> list[int | None]:
    """Maximum matching of a bipartite graph.

    ``adj[u]`` lists the right vertices adjacent to left vertex ``u``.
    Returns ``match[u]``, the right partner of each left vertex or None.
    Neighbours are tried in the order given, so results are deterministic.
    """
    adj = [list(nbrs) for nbrs in adj]
    n_left = len(adj)
    match_left: list[int | None] = [None] * n_left
    match_right: list[int | None] = [None] * n_right
    dist = [_UNSEEN] * n_left

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_left[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _UNSEEN
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_right[v]
                if w is None:
                    found = True
                elif dist[w] == _UNSEEN:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_right[v]
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_left[u] = v
                match_right[v] = u
                return True
        dist[u] = _UNSEEN
        return False

    while bfs():
        for u in range(n_left):
            if match_left[u] is None:
                dfs(u)
    return match_left


def perfect_matching(adj: Sequence[Iterable[int]], n_right: int) -> list[int] | None:
    """A matching saturating every left vertex, or None."""
    match = hopcroft_karp(adj, n_right)
    if any(v is None for v in match):
        return None
    return match  # type: ignore[return-value]


def transversal_independence(adj: Sequence[Iterable[int]], S: Iterable[int]) -> bool:
    """Can the right vertices in S be matched injectively into the left side?

    ``adj[u]`` lists the right neighbours of left slot ``u``.
    """
    S = sorted(set(S))
    if not S:
        return True
    pos = {v: i for i, v in enumerate(S)}
    # flip the graph so that S is the side that must be saturated
    rev: list[list[int]] = [[] for _ in S]
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            if v in pos:
                rev[pos[v]].append(u)
    return perfect_matching(rev, len(adj)) is not None

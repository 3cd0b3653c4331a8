"""Exact minimum set cover on bitmasks (branch and bound).

Used by both the polygon oracle and the 2-interval solver.  Elements are bit
positions, candidates are integer masks.
"""
from __future__ import annotations

from typing import Optional, Sequence


def reduce_candidates(masks: Sequence[int]) -> list[int]:
    """Indices of candidates whose mask is nonzero, distinct and not dominated.

    Among equal masks the first index is kept, so results are deterministic.
    """
    first: dict[int, int] = {}
    for i, m in enumerate(masks):
        if m and m not in first:
            first[m] = i
    items = sorted(first.items(), key=lambda kv: (-bin(kv[0]).count("1"), kv[1]))
    kept: list[tuple[int, int]] = []
    for m, i in items:
        if any(m & k == m for k, _ in kept):
            continue
        kept.append((m, i))
    return sorted(i for _, i in kept)


def greedy_cover(universe: int, masks: Sequence[int]) -> Optional[list[int]]:
    left = universe
    chosen: list[int] = []
    while left:
        best, gain = -1, 0
        for i, m in enumerate(masks):
            g = bin(m & left).count("1")
            if g > gain:
                best, gain = i, g
        if best < 0:
            return None
        chosen.append(best)
        left &= ~masks[best]
    return chosen


def min_cover(universe: int, masks: Sequence[int], limit: Optional[int] = None):
    """Smallest list of candidate indices whose masks cover ``universe``.

    Returns ``(cover, optimal)``.  With ``limit`` set, only covers of size
    ``<= limit`` are searched; if none exists the greedy cover is returned with
    ``optimal = False`` (``None`` if the universe cannot be covered at all).
    """
    if universe == 0:
        return [], True
    greedy = greedy_cover(universe, masks)
    if greedy is None:
        return None, False
    nbits = universe.bit_length()
    covering = [[i for i, m in enumerate(masks) if m >> e & 1] for e in range(nbits)]
    for e in range(nbits):
        covering[e].sort(key=lambda i: (-bin(masks[i]).count("1"), i))
    maxpop = max(bin(m & universe).count("1") for m in masks)

    best = list(greedy)
    cap = len(best) if limit is None else min(len(best), limit + 1)

    def search(left: int, chosen: list[int]):
        nonlocal best, cap
        if not left:
            # the bound below guarantees len(chosen) < cap here
            best = list(chosen)
            cap = len(chosen)
            return
        lb = -(-bin(left).count("1") // maxpop)
        if len(chosen) + lb >= cap:
            return
        # most constrained uncovered element first
        e_best, n_best = -1, None
        x = left
        while x:
            low = x & -x
            e = low.bit_length() - 1
            k = len(covering[e])
            if n_best is None or k < n_best:
                e_best, n_best = e, k
            x ^= low
        for i in covering[e_best]:
            chosen.append(i)
            search(left & ~masks[i], chosen)
            chosen.pop()

    search(universe, [])
    if limit is not None and len(best) > limit:
        return greedy, False
    return best, True

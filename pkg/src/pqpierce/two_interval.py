"""Matching and piercing numbers of 2-interval families.

A 2-interval is a closed interval on axis 1, a closed interval on axis 2, or
both.  ``min_pierce`` is exact and checks Tardos' bound ``tau <= 2*nu`` on
every call; a violation can only mean an implementation bug.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ._setcover import min_cover, reduce_candidates
from .errors import InvariantViolation, PreconditionError
from .geom import Q
from .oracle import PiercingSolution

Interval = tuple  # (lo, hi) with lo <= hi


def _norm(part) -> Optional[Interval]:
    if part is None:
        return None
    lo, hi = Q(part[0]), Q(part[1])
    if lo > hi:
        raise PreconditionError(f"interval [{lo}, {hi}] has lo > hi")
    return lo, hi


@dataclass(frozen=True)
class TwoInterval:
    part1: Optional[Interval]
    part2: Optional[Interval]
    owner: int = -1

    def __post_init__(self):
        object.__setattr__(self, "part1", _norm(self.part1))
        object.__setattr__(self, "part2", _norm(self.part2))
        if self.part1 is None and self.part2 is None:
            raise PreconditionError("a 2-interval needs at least one part")

    def part(self, axis: int) -> Optional[Interval]:
        return self.part1 if axis == 1 else self.part2

    def contains(self, axis: int, x) -> bool:
        p = self.part(axis)
        return p is not None and p[0] <= x <= p[1]

    def meets(self, other: "TwoInterval") -> bool:
        for axis in (1, 2):
            a, b = self.part(axis), other.part(axis)
            if a is not None and b is not None and a[0] <= b[1] and b[0] <= a[1]:
                return True
        return False


@dataclass
class TwoIntervalFamily:
    items: list
    axis_labels: tuple = ("axis1", "axis2")

    def __post_init__(self):
        self.items = list(self.items)
        if not self.items:
            raise PreconditionError("a 2-interval family must be nonempty")

    def __len__(self):
        return len(self.items)


def matching_number(fam: TwoIntervalFamily) -> int:
    """Maximum number of pairwise disjoint items (exact branch and bound)."""
    items = fam.items
    n = len(items)
    disjoint = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and not items[i].meets(items[j]):
                disjoint[i] |= 1 << j
    best = 0

    def grow(size: int, cand: int):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        grow(size + 1, cand & disjoint[v])
        grow(size, cand & ~low)

    grow(0, (1 << n) - 1)
    return best


def pierce_candidates(fam: TwoIntervalFamily) -> list[tuple[int, object]]:
    """Right endpoints of every present part, per axis, sorted and distinct.

    A piercing point slides right until it hits the smallest right endpoint
    among the items it pierces, so these candidates are exhaustive.
    """
    out = set()
    for it in fam.items:
        for axis in (1, 2):
            p = it.part(axis)
            if p is not None:
                out.add((axis, p[1]))
    return sorted(out)


def min_pierce(fam: TwoIntervalFamily) -> PiercingSolution:
    """Exact minimum set of (axis, coordinate) points meeting every item."""
    cands = pierce_candidates(fam)
    masks = []
    for axis, x in cands:
        m = 0
        for k, it in enumerate(fam.items):
            if it.contains(axis, x):
                m |= 1 << k
        masks.append(m)
    keep = reduce_candidates(masks)
    cover, _ = min_cover((1 << len(fam.items)) - 1, [masks[i] for i in keep])
    points = [cands[keep[i]] for i in cover]
    nu = matching_number(fam)
    if len(points) > 2 * nu:
        raise InvariantViolation(
            "tardos-bound", f"pierced with {len(points)} points but nu = {nu}"
        )
    return PiercingSolution(len(points), points, True)

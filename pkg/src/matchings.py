"""
Crossingless matchings of 2k boundary points on a disk, and outer matchings
drawn in the annulus around it.

Points are numbered 1..2k counterclockwise starting after the marker. In a
strip presentation with split (n, m) the n bottom points are 1..n from left to
right and the m top points are n+1..2k from right to left, so the whole strip
can be rotated down into a disk. Segment s lies between points s and s+1
(cyclically); segment 2k carries the marker.

A region is identified by the smallest segment it touches. A matching on
2k > 0 points has k+1 regions; the empty matching has the single region 0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Dict, Iterable, List, Tuple

from config.settings import MATCHING_BOUND
from src.errors import DiagramValidationError, check_bound

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def normalize_arcs(arcs: Iterable[Iterable[int]]) -> Tuple[Arc, ...]:
    return tuple(sorted(tuple(sorted(arc)) for arc in arcs))


def check_noncrossing(k: int, arcs: Tuple[Arc, ...]) -> None:
    """
    Validate that arcs form a noncrossing fixed-point-free involution of 1..2k.

    Raises:
        DiagramValidationError: on bad points, repeated points or a crossing pair
    """
    seen = set()
    for arc in arcs:
        if len(arc) != 2:
            raise DiagramValidationError(f"arc {arc} must join exactly two points")
        for point in arc:
            if not 1 <= point <= 2 * k:
                raise DiagramValidationError(f"point {point} outside 1..{2 * k}")
            if point in seen:
                raise DiagramValidationError(f"point {point} used by more than one arc")
            seen.add(point)
    if len(seen) != 2 * k:
        raise DiagramValidationError(f"arcs cover {len(seen)} of {2 * k} points")

    for a, b in arcs:
        for c, d in arcs:
            if a < c < b < d:
                raise DiagramValidationError(f"arcs ({a},{b}) and ({c},{d}) cross")


class ArcSystem:
    """Shared combinatorics of a noncrossing involution on 1..2k."""

    k: int
    arcs: Tuple[Arc, ...]

    @property
    def size(self) -> int:
        return 2 * self.k

    @cached_property
    def partner(self) -> Tuple[int, ...]:
        """partner[i] is the point joined to i (index 0 unused)."""
        table = [0] * (self.size + 1)
        for a, b in self.arcs:
            table[a], table[b] = b, a
        return tuple(table)

    def next_segment(self, s: int) -> int:
        """Next boundary segment of the region containing segment s."""
        return self.partner[s % self.size + 1]

    @cached_property
    def segment_regions(self) -> Tuple[int, ...]:
        """segment_regions[s] is the region index of segment s (index 0 unused)."""
        if self.k == 0:
            return (0,)
        table = [0] * (self.size + 1)
        for start in range(1, self.size + 1):
            if table[start]:
                continue
            orbit, s = [], start
            while s not in orbit:
                orbit.append(s)
                s = self.next_segment(s)
            for seg in orbit:
                table[seg] = start
        return tuple(table)

    @cached_property
    def regions(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.segment_regions[1:]))) if self.k else (0,)

    def region_of_segment(self, s: int) -> int:
        if self.k == 0:
            return 0
        return self.segment_regions[(s - 1) % self.size + 1]

    @property
    def marker_region(self) -> int:
        return self.region_of_segment(self.size)

    def region_segments(self, region: int) -> Tuple[int, ...]:
        return tuple(s for s in range(1, self.size + 1) if self.segment_regions[s] == region)


@dataclass(frozen=True)
class Matching(ArcSystem):
    """
    Crossingless matching of 2k points in a disk.

    Attributes:
        k: number of arcs
        arcs: sorted pairs (a, b) with a < b
        split: (n_bottom, m_top) strip presentation, n + m = 2k
    """

    k: int
    arcs: Tuple[Arc, ...]
    split: Tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, 'arcs', normalize_arcs(self.arcs))
        object.__setattr__(self, 'split', tuple(self.split))
        if self.k < 0:
            raise DiagramValidationError(f"k must be nonnegative, got {self.k}")
        if len(self.split) != 2 or min(self.split) < 0 or sum(self.split) != 2 * self.k:
            raise DiagramValidationError(f"split {self.split} does not add up to {2 * self.k} points")
        check_noncrossing(self.k, self.arcs)

    @property
    def source(self) -> int:
        return self.split[0]

    @property
    def target(self) -> int:
        return self.split[1]

    def with_split(self, split: Tuple[int, int]) -> 'Matching':
        return Matching(self.k, self.arcs, split)

    def __str__(self) -> str:
        arcs = ','.join(f"({a},{b})" for a, b in self.arcs)
        return f"{self.source}->{self.target}:{{{arcs}}}"


@dataclass(frozen=True)
class OuterMatching(ArcSystem):
    """
    Outer matching: a noncrossing involution drawn outside the disk, with the
    face containing the point at infinity.

    Attributes:
        k: number of arcs
        arcs: sorted pairs (a, b) with a < b
        infinity_face: region index of the face containing infinity
    """

    k: int
    arcs: Tuple[Arc, ...]
    infinity_face: int

    def __post_init__(self):
        object.__setattr__(self, 'arcs', normalize_arcs(self.arcs))
        check_noncrossing(self.k, self.arcs)
        if self.infinity_face not in self.regions:
            raise DiagramValidationError(
                f"infinity_face {self.infinity_face} is not a face of {self.arcs} (faces {self.regions})"
            )

    def __str__(self) -> str:
        arcs = ','.join(f"({a},{b})" for a, b in self.arcs)
        return f"outer:{{{arcs}}}@{self.infinity_face}"


@lru_cache(maxsize=None)
def _arc_sets(first: int, count: int) -> Tuple[Tuple[Arc, ...], ...]:
    """All noncrossing matchings of the points first..first+2*count-1."""
    if count == 0:
        return ((),)
    result = []
    for inside in range(count):
        partner = first + 1 + 2 * inside
        for inner in _arc_sets(first + 1, inside):
            for rest in _arc_sets(partner + 1, count - inside - 1):
                result.append(((first, partner),) + inner + rest)
    return tuple(result)


def enumerate_matchings(k: int, split: Tuple[int, int] = None, bound: int = MATCHING_BOUND) -> List[Matching]:
    """
    All crossingless matchings of 2k points, sorted by arcs.

    Args:
        k: number of arcs
        split: strip presentation, defaults to (0, 2k)
        bound: largest accepted k

    Returns:
        Catalan(k) matchings

    Raises:
        BoundExceededError: when k exceeds the bound
    """
    check_bound('k', k, bound)
    split = split if split is not None else (0, 2 * k)
    matchings = sorted((Matching(k, arcs, split) for arcs in _arc_sets(1, k)), key=lambda m: m.arcs)
    logger.debug(f"Enumerated {len(matchings)} matchings for k={k}")
    return matchings


def enumerate_outer_matchings(k: int, bound: int = MATCHING_BOUND) -> List[OuterMatching]:
    """All outer matchings of 2k points; C(2k, k) of them."""
    check_bound('k', k, bound)
    outer = []
    for arcs in sorted(normalize_arcs(a) for a in _arc_sets(1, k)):
        probe = Matching(k, arcs, (0, 2 * k))
        for face in probe.regions:
            outer.append(OuterMatching(k, arcs, face))
    logger.debug(f"Enumerated {len(outer)} outer matchings for k={k}")
    return outer


def reflect_point(k: int, i: int) -> int:
    return 2 * k + 1 - i


def reflect_segment(k: int, s: int) -> int:
    return 2 * k if s == 2 * k else 2 * k - s


def rotate_point(k: int, i: int, s: int) -> int:
    return (i - 1 + s) % (2 * k) + 1


def reflect_matching(m: Matching) -> Matching:
    """Horizontal reflection: bottom and top trade places."""
    arcs = tuple((reflect_point(m.k, a), reflect_point(m.k, b)) for a, b in m.arcs)
    return Matching(m.k, arcs, (m.split[1], m.split[0]))


def rotate_matching(m: Matching, s: int) -> Matching:
    if m.k == 0:
        return m
    arcs = tuple((rotate_point(m.k, a, s), rotate_point(m.k, b, s)) for a, b in m.arcs)
    return Matching(m.k, arcs, m.split)


def rotate_outer(y: OuterMatching, s: int) -> OuterMatching:
    if y.k == 0:
        return y
    arcs = tuple((rotate_point(y.k, a, s), rotate_point(y.k, b, s)) for a, b in y.arcs)
    seg = y.region_segments(y.infinity_face)[0]
    probe = Matching(y.k, arcs, (0, 2 * y.k))
    return OuterMatching(y.k, arcs, probe.region_of_segment(rotate_point(y.k, seg, s)))


def identity_matching(n: int) -> Matching:
    """Identity n -> n: bottom point i joined to the top point above it."""
    return Matching(n, tuple((i, 2 * n + 1 - i) for i in range(1, n + 1)), (n, n))


def cup_matching() -> Matching:
    """The arc 0 -> 2."""
    return Matching(1, ((1, 2),), (0, 2))


def cap_matching() -> Matching:
    """The arc 2 -> 0."""
    return Matching(1, ((1, 2),), (2, 0))


def empty_matching() -> Matching:
    return Matching(0, (), (0, 0))


def matching_from_partner(partner: Dict[int, int], split: Tuple[int, int]) -> Matching:
    arcs = {tuple(sorted((a, b))) for a, b in partner.items()}
    return Matching(sum(split) // 2, tuple(arcs), split)

"""Convex curves in a disk with n marked points in convex position.

Points 1..n sit clockwise on a regular n-gon.  A convex curve is named by the
set of points its hull encloses; every predicate here is a statement about the
cyclic order of those labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, Tuple, Union

__all__ = [
    "DiskContext",
    "ConvexCurve",
    "Chord",
    "parse_curve",
    "geometric_intersection",
    "geometric_intersection_oracle",
    "alg_intersection_abs",
    "chord_separation",
    "all_curves",
    "all_chords",
    "consecutive_pairs",
]


@dataclass(frozen=True)
class DiskContext:
    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need at least 3 marked points, got {self.n}")

    @property
    def g(self) -> int:
        return (self.n - 1) // 2

    def curve(self, members: Iterable[int]) -> "ConvexCurve":
        c = ConvexCurve(members)
        if c.members[-1] > self.n:
            raise ValueError(f"{c} does not fit in a disk with {self.n} points")
        return c


@dataclass(frozen=True, init=False)
class ConvexCurve:
    members: Tuple[int, ...]

    def __init__(self, members: Iterable[int]) -> None:
        m = tuple(sorted(set(int(x) for x in members)))
        if len(m) < 2:
            raise ValueError("a convex curve encloses at least two marked points")
        if m[0] < 1:
            raise ValueError("marked points are numbered from 1")
        object.__setattr__(self, "members", m)

    def __str__(self) -> str:
        return "c{" + ",".join(map(str, self.members)) + "}"

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    @property
    def as_set(self) -> FrozenSet[int]:
        return frozenset(self.members)

    @property
    def is_chord(self) -> bool:
        return len(self.members) == 2

    @property
    def is_even(self) -> bool:
        return len(self.members) % 2 == 0


# A chord is just a two-point convex curve.
Chord = ConvexCurve

CurveLike = Union[ConvexCurve, Iterable[int]]

_CURVE_RE = re.compile(r"^\s*c\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}\s*$")


def parse_curve(text: str) -> ConvexCurve:
    """Parse ``c{1,2,3,4}``."""
    m = _CURVE_RE.match(text)
    if not m:
        raise ValueError(f"not a curve literal: {text!r}")
    return ConvexCurve(int(x) for x in m.group(1).split(","))


def _members(ctx: DiskContext, curve: CurveLike) -> FrozenSet[int]:
    c = curve if isinstance(curve, ConvexCurve) else ConvexCurve(curve)
    if c.members[-1] > ctx.n:
        raise ValueError(f"{c} does not fit in a disk with {ctx.n} points")
    return c.as_set


def geometric_intersection(ctx: DiskContext, A: CurveLike, B: CurveLike) -> int:
    """Minimal intersection number of two convex curves.

    Nested curves are disjoint.  Otherwise walk the points that lie in exactly
    one of the two sets; each maximal run of A-only points contributes two
    crossings.  A single run with no shared points means the hulls are
    separable.
    """
    a = _members(ctx, A)
    b = _members(ctx, B)
    if a <= b or b <= a:
        return 0
    seq = [k in a for k in range(1, ctx.n + 1) if (k in a) != (k in b)]
    runs = sum(1 for i in range(len(seq)) if seq[i] and not seq[i - 1])
    if runs == 1 and not (a & b):
        return 0
    return 2 * runs


def chord_separation(
    ctx: DiskContext, c: CurveLike, S: Iterable[int]
) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Split S by the chord: (points strictly between r and s, the rest).

    Chord endpoints themselves are dropped from both sides.
    """
    r, s = sorted(_members(ctx, c))
    if len({r, s}) != 2:
        raise ValueError("expected a chord")
    pts = set(S)
    inner = frozenset(k for k in pts if r < k < s)
    outer = frozenset(k for k in pts if k < r or k > s)
    return inner, outer


def alg_intersection_abs(ctx: DiskContext, a: CurveLike, c: CurveLike) -> int:
    am = _members(ctx, a)
    cm = _members(ctx, c)
    if len(am) % 2:
        raise ValueError("algebraic pairing needs an even curve")
    if len(cm) != 2:
        raise ValueError("second argument must be a chord")
    i = geometric_intersection(ctx, am, cm)
    if i == 0:
        return 0
    if i == 2:
        return 1
    if i == 4:
        side, _ = chord_separation(ctx, cm, am)
        return 0 if len(side) % 2 == 0 else 2
    raise AssertionError(f"a chord meets a convex curve at most 4 times, got {i}")


def geometric_intersection_oracle(ctx: DiskContext, A: CurveLike, B: CurveLike) -> int:
    from .hull_oracle import intersection_by_geometry

    return intersection_by_geometry(ctx.n, sorted(_members(ctx, A)), sorted(_members(ctx, B)))


def all_curves(ctx: DiskContext, sizes: Iterable[int] | None = None) -> Iterator[ConvexCurve]:
    """Every convex curve, ordered by size then lexicographically."""
    for k in sizes if sizes is not None else range(2, ctx.n + 1):
        for m in combinations(range(1, ctx.n + 1), k):
            yield ConvexCurve(m)


def all_chords(ctx: DiskContext) -> Iterator[ConvexCurve]:
    return all_curves(ctx, [2])


def consecutive_pairs(ctx: DiskContext) -> Iterator[Tuple[int, int]]:
    """(1,2), (2,3), ..., (n,1)."""
    for k in range(1, ctx.n + 1):
        yield k, k % ctx.n + 1

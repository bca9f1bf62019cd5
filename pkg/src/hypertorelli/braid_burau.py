"""Braid words and the integral Burau representation at t = -1.

The symplectic image acts on the chain basis x_1..x_2g with the form
J[i][i+1] = 1, and sends sigma_i to the transvection along x_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .exact_linalg import (
    LaxVector,
    Matrix,
    as_matrix,
    identity,
    mat_mul,
    mat_sub,
    primitive_normalize,
)
from .marked_disk import ConvexCurve

__all__ = [
    "BraidWord",
    "parse_braid",
    "chain_form",
    "pairing",
    "transvection_matrix",
    "burau_symplectic",
    "unreduced_burau_t_minus1",
    "pure_twist_word",
    "curve_twist_word",
    "lift_class",
    "alg_pairing",
    "exponent_sum",
    "is_symplectic",
    "permutation_of",
]

Letter = Tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for i, e in self.letters:
            if not 1 <= i < self.n or e not in (1, -1):
                raise ValueError(f"bad letter s{i}^{e} for {self.n} strands")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.n != self.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    @classmethod
    def generator(cls, n: int, i: int, e: int = 1) -> "BraidWord":
        return cls(n, ((i, e),))


_LETTER_RE = re.compile(r"^s(\d+)(?:\^(-?1))?$")


def parse_braid(n: int, text: str) -> BraidWord:
    """Parse ``s1 s2^-1 s1``; the empty string is the identity."""
    letters = []
    for tok in text.split():
        m = _LETTER_RE.match(tok)
        if not m:
            raise ValueError(f"not a braid letter: {tok!r}")
        letters.append((int(m.group(1)), int(m.group(2) or 1)))
    return BraidWord(n, tuple(letters))


@lru_cache(maxsize=None)
def chain_form(g: int) -> Matrix:
    d = 2 * g
    rows = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i][i + 1] = 1
        rows[i + 1][i] = -1
    return as_matrix(rows)


def pairing(form: Matrix, x: Sequence[int], y: Sequence[int]) -> int:
    return sum(xi * fij * yj for xi, row in zip(x, form) for fij, yj in zip(row, y) if xi and fij)


def transvection_matrix(v: Sequence[int], form: Matrix, power: int = 1) -> Matrix:
    """Matrix of w -> w + power * <w, v> v."""
    d = len(v)
    # <w, v> = w . (form v)
    fv = [sum(form[i][j] * v[j] for j in range(d)) for i in range(d)]
    return tuple(
        tuple((1 if i == j else 0) + power * v[i] * fv[j] for j in range(d)) for i in range(d)
    )


def is_symplectic(m: Matrix, form: Matrix) -> bool:
    mt = tuple(zip(*m))
    return mat_mul(mat_mul(mt, form), m) == form


@lru_cache(maxsize=None)
def _generator_images(g: int) -> Tuple[Tuple[Matrix, Matrix], ...]:
    form = chain_form(g)
    out = []
    for i in range(2 * g):
        e = [0] * (2 * g)
        e[i] = 1
        out.append((transvection_matrix(e, form, 1), transvection_matrix(e, form, -1)))
    return tuple(out)


def _odd_genus(n: int) -> int:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"the symplectic image needs an odd strand count >= 3, got {n}")
    return (n - 1) // 2


def burau_symplectic(w: BraidWord) -> Matrix:
    g = _odd_genus(w.n)
    gens = _generator_images(g)
    m = identity(2 * g)
    for i, e in w.letters:
        m = mat_mul(m, gens[i - 1][0 if e == 1 else 1])
    return m


def unreduced_burau_t_minus1(w: BraidWord) -> Matrix:
    n = w.n
    m = [list(r) for r in identity(n)]
    for i, e in w.letters:
        # right-multiply by the generator block on columns i-1, i
        a, b = i - 1, i
        for row in m:
            x, y = row[a], row[b]
            if e == 1:  # [[2, -1], [1, 0]]
                row[a], row[b] = 2 * x + y, -x
            else:  # inverse block [[0, 1], [-1, 2]]
                row[a], row[b] = -y, x + 2 * y
    return as_matrix(m)


def pure_twist_word(n: int, i: int, j: int) -> BraidWord:
    """(s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^-1."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got {(i, j, n)}")
    conj = BraidWord(n, tuple((k, 1) for k in range(j - 1, i, -1)))
    return conj * BraidWord(n, ((i, 1), (i, 1))) * conj.inverse()


def curve_twist_word(n: int, A: Iterable[int] | ConvexCurve) -> BraidWord:
    """Nested product of chord twists giving the twist about c_A."""
    idx = sorted(set(A))
    if len(idx) < 2:
        raise ValueError("need at least two points")
    word = BraidWord(n)
    for p in range(len(idx)):
        for q in range(p + 1, len(idx)):
            word = word * pure_twist_word(n, idx[p], idx[q])
    return word


@lru_cache(maxsize=None)
def _lift_class(n: int, members: Tuple[int, ...]) -> LaxVector:
    if len(members) % 2:
        raise ValueError("lift classes exist only for even curves")
    m = burau_symplectic(curve_twist_word(n, members))
    diff = mat_sub(m, identity(len(m)))
    if any(x % 2 for row in diff for x in row):
        raise AssertionError(f"twist image for {members} is not congruent to I mod 2")
    cols = [c for c in zip(*diff) if any(c)]
    if not cols:
        raise AssertionError(f"twist image for {members} is the identity")
    v = primitive_normalize(cols[0])
    for c in cols:
        if primitive_normalize(c) != v:
            raise AssertionError(f"M - I has rank > 1 for {members}")
    return v


def lift_class(n: int, A: Iterable[int] | ConvexCurve) -> LaxVector:
    return _lift_class(n, tuple(sorted(set(A))))


def alg_pairing(n: int, A: Iterable[int] | ConvexCurve, B: Iterable[int] | ConvexCurve) -> int:
    g = _odd_genus(n)
    return abs(pairing(chain_form(g), lift_class(n, A), lift_class(n, B)))


def exponent_sum(w: BraidWord) -> int:
    return sum(e for _, e in w.letters)


def permutation_of(w: BraidWord) -> Tuple[int, ...]:
    """result[k] is the final position of the strand starting at position k."""
    where = list(range(w.n))
    at = list(range(w.n))
    for i, _ in w.letters:
        a, b = i - 1, i
        sa, sb = at[a], at[b]
        at[a], at[b] = sb, sa
        where[sa], where[sb] = b, a
    return tuple(where)

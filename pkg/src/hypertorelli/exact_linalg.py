"""Exact integer and F2 linear algebra.

Matrices are tuples of row tuples holding Python ints.  F2 vectors are ints
used as bitsets (bit ``i`` is coordinate ``i``).  Nothing in here touches
floating point.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]
LaxVector = Tuple[int, ...]

__all__ = [
    "Vector",
    "Matrix",
    "LaxVector",
    "SmithDecomposition",
    "as_matrix",
    "identity",
    "zeros",
    "transpose",
    "mat_mul",
    "mat_vec",
    "mat_pow",
    "mat_add",
    "mat_scale",
    "mat_sub",
    "is_identity",
    "determinant",
    "rank_q",
    "matrix_to_json",
    "matrix_from_json",
    "primitive_normalize",
    "lax_equal",
    "smith_normal_form",
    "solve_int",
    "integer_kernel",
    "column_span_basis",
    "is_primitive_span",
    "f2_rank",
    "f2_solve",
    "parity",
    "sparse_elementary_divisors",
]


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(k: int, a: Matrix) -> Matrix:
    return tuple(tuple(k * x for x in r) for r in a)


def mat_pow(a: Matrix, e: int) -> Matrix:
    """Non-negative powers only; callers invert explicitly."""
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def is_identity(a: Matrix) -> bool:
    return all(x == (1 if i == j else 0) for i, r in enumerate(a) for j, x in enumerate(r))


def determinant(a: Matrix) -> int:
    """Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank_q(a: Matrix) -> int:
    return sum(1 for d in smith_normal_form(a).diagonal if d != 0)


def matrix_to_json(m: Matrix) -> dict:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return {"dims": [rows, cols], "entries": [list(r) for r in m]}


def matrix_from_json(obj: dict) -> Matrix:
    rows, cols = obj["dims"]
    m = as_matrix(obj["entries"])
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ValueError("matrix dims header does not match entries")
    return m


# ---------------------------------------------------------------- lax vectors


def primitive_normalize(v: Sequence[int]) -> LaxVector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("cannot normalize the zero vector")
    out = [x // g for x in v]
    first = next(x for x in out if x != 0)
    if first < 0:
        out = [-x for x in out]
    return tuple(out)


def lax_equal(u: Sequence[int], v: Sequence[int]) -> bool:
    """True when u = v or u = -v."""
    return tuple(u) == tuple(v) or all(x == -y for x, y in zip(u, v))


# ------------------------------------------------------------ Smith form


@dataclass(frozen=True)
class SmithDecomposition:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(m: Matrix) -> SmithDecomposition:
    """Return U, D, V with U*m*V = D.

    Pivot rule: smallest nonzero absolute value in the active block, ties
    broken by lowest row index and then lowest column index.
    """
    r = len(m)
    c = len(m[0]) if r else 0
    a = [list(row) for row in m]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row[dst] += k * row[src]
        ad, as_ = a[dst], a[src]
        for j in range(c):
            if as_[j]:
                ad[j] += k * as_[j]
        ud, us = u[dst], u[src]
        for j in range(r):
            if us[j]:
                ud[j] += k * us[j]

    def add_col(dst: int, src: int, k: int) -> None:
        for row in a:
            if row[src]:
                row[dst] += k * row[src]
        for row in v:
            if row[src]:
                row[dst] += k * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder exists in row/column t: move it to the pivot
                best = None
                for i in range(t, r):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, c):
                    x = a[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), t, j)
                _, pi, pj = best
                if pi != t:
                    swap_rows(t, pi)
                if pj != t:
                    swap_cols(t, pj)
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithDecomposition(as_matrix(u), as_matrix(a), as_matrix(v))


def solve_int(a: Matrix, b: Sequence[int]) -> Optional[Vector]:
    """One integer solution x of a*x = b, or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    snf = smith_normal_form(a)
    ub = mat_vec(snf.U, b)
    y = [0] * cols
    for i in range(rows):
        d = snf.D[i][i] if i < cols else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return mat_vec(snf.V, y)


def integer_kernel(a: Matrix, ncols: Optional[int] = None) -> List[Vector]:
    """Basis of {x in Z^n : a*x = 0} (a saturated lattice)."""
    if not a:
        n = ncols or 0
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    snf = smith_normal_form(a)
    rk = snf.rank
    n = len(a[0])
    vt = transpose(snf.V)
    return [tuple(vt[j]) for j in range(rk, n)]


def column_span_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[Vector]:
    """Basis of the lattice spanned by the given vectors of length dim."""
    vecs = [tuple(x) for x in vectors if any(x)]
    if not vecs:
        return []
    m = transpose(as_matrix(vecs))  # dim x k
    snf = smith_normal_form(m)
    # m*V = U^{-1}*D, so the span is generated by d_i * (column i of U^{-1})
    uinv = _unimodular_inverse(snf.U)
    out = []
    for i, d in enumerate(snf.diagonal):
        if d:
            out.append(tuple(d * uinv[k][i] for k in range(dim)))
    return out


def is_primitive_span(vectors: Sequence[Sequence[int]]) -> bool:
    """True when the vectors are independent and span a direct summand."""
    if not vectors:
        return True
    diag = smith_normal_form(as_matrix(vectors)).diagonal
    return len(diag) == len(vectors) and all(d == 1 for d in diag)


def _unimodular_inverse(u: Matrix) -> Matrix:
    n = len(u)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_int(u, e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return transpose(as_matrix(cols))


# ----------------------------------------------------------------- F2


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def f2_rank(rows: Iterable[int]) -> int:
    """Rank over F2 of the matrix whose rows are the given bitsets."""
    pivots: Dict[int, int] = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = v
                break
            v ^= p
    return len(pivots)


def f2_solve(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> Optional[int]:
    """Solve A x = b over F2; rows[i] is row i of A, rhs[i] in {0, 1}.

    Returns one solution as a bitset or None when inconsistent.
    """
    aug = [(r, b & 1) for r, b in zip(rows, rhs)]
    pivots: List[Tuple[int, int, int]] = []  # (column, row bits, rhs)
    for r, b in aug:
        for col, pr, pb in pivots:
            if (r >> col) & 1:
                r ^= pr
                b ^= pb
        if r == 0:
            if b:
                return None
            continue
        col = r.bit_length() - 1
        # keep earlier pivots reduced against the new one
        new = []
        for c2, pr, pb in pivots:
            if (pr >> col) & 1:
                pr ^= r
                pb ^= b
            new.append((c2, pr, pb))
        pivots = new + [(col, r, b)]
    x = 0
    for col, _, pb in pivots:
        if pb:
            x |= 1 << col
    return x


# ----------------------------------------------------- sparse elimination


def sparse_elementary_divisors(
    columns: Sequence[Dict[int, int]],
    modulus: Optional[int] = None,
) -> Tuple[int, List[int]]:
    """Rank and non-unit elementary divisors of a sparse integer matrix.

    ``columns[j]`` maps row index to entry.  Unit pivots are eliminated
    greedily (short column first, then short row), which keeps fill-in low on
    boundary matrices; whatever is left without a unit entry goes through the
    dense Smith form.  With ``modulus=2`` the rank is taken over F2 and no
    divisors are reported.
    """
    if modulus not in (None, 2):
        raise ValueError("only integer or mod-2 elimination is supported")
    mod2 = modulus == 2
    cols: Dict[int, Dict[int, int]] = {}
    rows: Dict[int, set] = {}
    for j, col in enumerate(columns):
        cc = {i: x for i, x in col.items() if (x % 2 if mod2 else x)}
        if mod2:
            cc = {i: 1 for i in cc}
        if not cc:
            continue
        cols[j] = cc
        for i in cc:
            rows.setdefault(i, set()).add(j)
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    rank = 0
    stuck = set()
    while heap:
        ln, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None or len(col) != ln:
            continue
        best_row = None
        best_len = None
        for i, x in col.items():
            if x == 1 or x == -1:
                rl = len(rows[i])
                if best_len is None or rl < best_len or (rl == best_len and i < best_row):
                    best_row, best_len = i, rl
                    if rl == 1:
                        break
        if best_row is None:
            stuck.add(j)
            continue
        stuck.discard(j)
        piv = col[best_row]
        for k in sorted(rows[best_row]):
            if k == j:
                continue
            other = cols[k]
            factor = other[best_row] * piv  # piv is a unit, so piv == 1/piv
            for i, x in col.items():
                y = other.get(i, 0) - factor * x
                if mod2:
                    y &= 1
                if y:
                    if i not in other:
                        rows[i].add(k)
                    other[i] = y
                elif i in other:
                    del other[i]
                    rows[i].discard(k)
            if other:
                heapq.heappush(heap, (len(other), k))
            else:
                del cols[k]
                stuck.discard(k)
        for i in col:
            rows[i].discard(j)
        del cols[j]
        rows.pop(best_row, None)
        rank += 1
    rest = [j for j in sorted(stuck) if j in cols]
    if not rest:
        return rank, []
    row_ids = sorted({i for j in rest for i in cols[j]})
    index = {i: n for n, i in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for n, j in enumerate(rest):
        for i, x in cols[j].items():
            dense[index[i]][n] = x
    diag = smith_normal_form(as_matrix(dense)).diagonal
    nonzero = [d for d in diag if d]
    return rank + len(nonzero), [d for d in nonzero if d != 1]

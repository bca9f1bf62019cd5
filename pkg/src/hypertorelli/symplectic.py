"""Symplectic groups over Z and F2.

Standard coordinates are ordered (a_1..a_g, b_1..b_g) with <a_i, b_j> = delta_ij.
Over F2 a vector is an int bitset and a matrix is the tuple of its column
bitsets (column j is the image of the j-th basis vector).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .braid_burau import chain_form, lift_class, transvection_matrix
from .exact_linalg import (
    Matrix,
    Vector,
    as_matrix,
    column_span_basis,
    f2_solve,
    identity,
    integer_kernel,
    is_primitive_span,
    lax_equal,
    mat_mul,
    mat_scale,
    parity,
    solve_int,
    transpose,
)

__all__ = [
    "SymplecticForm",
    "standard_form",
    "chain_symplectic_form",
    "PartialSymplecticBasis",
    "SpF2",
    "transvection",
    "is_symplectic",
    "in_level_two",
    "symplectic_inverse",
    "reduce_mod2",
    "f2_to_matrix",
    "f2_mul",
    "f2_apply",
    "f2_transvection",
    "f2_identity",
    "f2_is_symplectic",
    "complete_partial_basis",
    "factor_f2_transvections",
    "lift_mod2",
    "lift_mod2_stabilizer",
    "geometric_standard_basis",
    "geometric_form",
    "chain_to_standard",
    "standard_to_chain",
    "stabilizer_corrector_single",
    "stabilizer_corrector_pair",
    "corrector_factors",
    "corrector_curves",
    "xi_generating_set",
    "SpF2Enumeration",
    "enumerate_sp_f2",
    "closure_order",
    "random_symplectic",
    "random_stabilizer_level2",
]


# ------------------------------------------------------------------ forms


@dataclass(frozen=True)
class SymplecticForm:
    g: int
    gram: Matrix
    flavor: str = "standard"

    @property
    def dim(self) -> int:
        return 2 * self.g

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * gij * yj for xi, row in zip(x, self.gram) if xi for gij, yj in zip(row, y) if gij)

    @property
    def gram_rows_f2(self) -> Tuple[int, ...]:
        return _gram_rows_f2(self.gram)

    def pair_f2(self, x: int, y: int) -> int:
        rows = self.gram_rows_f2
        acc = 0
        i = 0
        while x:
            if x & 1:
                acc ^= parity(rows[i] & y)
            x >>= 1
            i += 1
        return acc


@lru_cache(maxsize=None)
def _gram_rows_f2(gram: Matrix) -> Tuple[int, ...]:
    return tuple(sum(1 << j for j, x in enumerate(row) if x % 2) for row in gram)


@lru_cache(maxsize=None)
def standard_form(g: int) -> SymplecticForm:
    d = 2 * g
    rows = [[0] * d for _ in range(d)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    return SymplecticForm(g, as_matrix(rows), "standard")


@lru_cache(maxsize=None)
def chain_symplectic_form(g: int) -> SymplecticForm:
    return SymplecticForm(g, chain_form(g), "chain")


def _unit(d: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(d))


def transvection(v: Sequence[int], form: SymplecticForm, power: int = 1) -> Matrix:
    if not any(v):
        raise ValueError("transvection along the zero vector")
    return transvection_matrix(v, form.gram, power)


def is_symplectic(m: Matrix, form: SymplecticForm) -> bool:
    return mat_mul(mat_mul(transpose(m), form.gram), m) == form.gram


def in_level_two(m: Matrix) -> bool:
    """M = I mod 2."""
    return all((x - (1 if i == j else 0)) % 2 == 0 for i, r in enumerate(m) for j, x in enumerate(r))


def symplectic_inverse(m: Matrix, form: SymplecticForm) -> Matrix:
    """G^{-1} M^T G for M preserving G."""
    ginv = _inverse_of_gram(form.gram)
    return mat_mul(mat_mul(ginv, transpose(m)), form.gram)


@lru_cache(maxsize=None)
def _inverse_of_gram(gram: Matrix) -> Matrix:
    d = len(gram)
    cols = [solve_int(gram, _unit(d, j)) for j in range(d)]
    if any(c is None for c in cols):
        raise ValueError("form is not unimodular")
    return transpose(as_matrix(cols))


# --------------------------------------------------------------- F2 side


@dataclass(frozen=True)
class SpF2:
    """Bit-packed matrix over F2: cols[j] is the image of basis vector j."""

    cols: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.cols)

    def pack(self) -> int:
        d = self.dim
        out = 0
        for j, c in enumerate(self.cols):
            out |= c << (j * d)
        return out

    @classmethod
    def unpack(cls, packed: int, d: int) -> "SpF2":
        mask = (1 << d) - 1
        return cls(tuple((packed >> (j * d)) & mask for j in range(d)))


def reduce_mod2(m: Matrix) -> SpF2:
    d = len(m)
    return SpF2(tuple(sum(1 << i for i in range(d) if m[i][j] % 2) for j in range(d)))


def f2_to_matrix(n: SpF2) -> Matrix:
    d = n.dim
    return tuple(tuple((n.cols[j] >> i) & 1 for j in range(d)) for i in range(d))


def f2_identity(d: int) -> SpF2:
    return SpF2(tuple(1 << j for j in range(d)))


def f2_apply(n: SpF2, x: int) -> int:
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= n.cols[j]
        x >>= 1
        j += 1
    return out


def f2_mul(a: SpF2, b: SpF2) -> SpF2:
    return SpF2(tuple(f2_apply(a, c) for c in b.cols))


def f2_transvection(w: int, form: SymplecticForm) -> SpF2:
    d = form.dim
    return SpF2(tuple((1 << j) ^ (w if form.pair_f2(1 << j, w) else 0) for j in range(d)))


def f2_is_symplectic(n: SpF2, form: SymplecticForm) -> bool:
    d = n.dim
    for i in range(d):
        for j in range(i + 1, d):
            if form.pair_f2(n.cols[i], n.cols[j]) != form.pair_f2(1 << i, 1 << j):
                return False
    return True


# ------------------------------------------------- partial symplectic bases


@dataclass(frozen=True)
class PartialSymplecticBasis:
    a_list: Tuple[Tuple[int, ...], ...]
    b_list: Tuple[Tuple[int, ...], ...]
    form: SymplecticForm
    field: str = "Z"  # "Z" or "F2"; over F2 the vectors are 0/1 tuples

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_list", tuple(tuple(v) for v in self.a_list))
        object.__setattr__(self, "b_list", tuple(tuple(v) for v in self.b_list))

    def check_pairings(self) -> None:
        p = self.form.pair
        mod = 2 if self.field == "F2" else 0

        def norm(x: int) -> int:
            return x % 2 if mod else x

        a, b = self.a_list, self.b_list
        for i in range(len(a)):
            for j in range(len(a)):
                if norm(p(a[i], a[j])) != 0:
                    raise ValueError("a-vectors are not isotropic")
            for j in range(len(b)):
                if norm(p(a[i], b[j])) != (1 if i == j else 0):
                    raise ValueError("a/b pairings are not delta_ij")
        for i in range(len(b)):
            for j in range(len(b)):
                if norm(p(b[i], b[j])) != 0:
                    raise ValueError("b-vectors are not isotropic")


def complete_partial_basis(P: PartialSymplecticBasis) -> Tuple[List[Vector], List[Vector]]:
    """Extend (a_1..a_k; b_1..b_l) to a full symplectic basis (a; b).

    Raises ValueError when the input is not extendable.
    """
    P.check_pairings()
    if P.field == "F2":
        return _complete_f2(P)
    return _complete_z(P)


def _complete_z(P: PartialSymplecticBasis) -> Tuple[List[Vector], List[Vector]]:
    form = P.form
    d = form.dim
    gram = form.gram
    a = [tuple(v) for v in P.a_list]
    b = [tuple(v) for v in P.b_list]
    if not is_primitive_span(a + b):
        raise ValueError("partial basis does not span a direct summand")

    def row(v: Sequence[int]) -> Vector:
        # the functional x -> <v, x>
        return tuple(sum(v[i] * gram[i][j] for i in range(d)) for j in range(d))

    k, l = len(a), len(b)
    # partners for unpaired a's
    for i in range(l, k):
        known = a + b
        targets = [1 if j == i else 0 for j in range(k)] + [0] * len(b)
        x = solve_int(as_matrix(row(v) for v in known), targets)
        if x is None:
            raise ValueError("cannot find a dual vector: not extendable")
        b.append(x)
    # partners for unpaired b's: <a_j, b_j> = 1 means <b_j, a_j> = -1
    for j in range(k, l):
        known = a + b
        targets = [0] * len(a) + [-1 if i == j else 0 for i in range(len(b))]
        x = solve_int(as_matrix(row(v) for v in known), targets)
        if x is None:
            raise ValueError("cannot find a dual vector: not extendable")
        a.append(x)
    pairs = len(a)
    if pairs:
        rest = integer_kernel(as_matrix(row(v) for v in a + b), d)
    else:
        rest = [_unit(d, i) for i in range(d)]
    while rest:
        e = rest[0]
        coeffs = [form.pair(e, w) for w in rest]
        y = solve_int((tuple(coeffs),), [1])
        if y is None:
            raise ValueError("complement is not unimodular")
        f = tuple(sum(yj * w[t] for yj, w in zip(y, rest)) for t in range(d))
        a.append(e)
        b.append(f)
        projected = []
        for w in rest[1:]:
            pf = form.pair(w, f)
            pe = form.pair(w, e)
            projected.append(tuple(w[t] - pf * e[t] + pe * f[t] for t in range(d)))
        rest = column_span_basis(projected, d)
    _assert_symplectic_basis(a, b, form)
    return a, b


def _assert_symplectic_basis(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], form: SymplecticForm) -> None:
    g = form.g
    if len(a) != g or len(b) != g:
        raise AssertionError("wrong basis size")
    for i in range(g):
        for j in range(g):
            if form.pair(a[i], a[j]) or form.pair(b[i], b[j]) or form.pair(a[i], b[j]) != (i == j):
                raise AssertionError("completion is not symplectic")


def _bits(v: Sequence[int]) -> int:
    return sum(1 << i for i, x in enumerate(v) if x % 2)


def _unbits(x: int, d: int) -> Vector:
    return tuple((x >> i) & 1 for i in range(d))


def _complete_f2(P: PartialSymplecticBasis) -> Tuple[List[Vector], List[Vector]]:
    form = P.form
    d = form.dim
    a = [_bits(v) for v in P.a_list]
    b = [_bits(v) for v in P.b_list]
    rows = form.gram_rows_f2

    def functional(v: int) -> int:
        # bitset of j with <v, e_j> = 1
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= rows[i]
            v >>= 1
            i += 1
        return out

    from .exact_linalg import f2_rank

    if f2_rank(a + b) != len(a) + len(b):
        raise ValueError("partial basis is linearly dependent over F2")
    k, l = len(a), len(b)
    for i in range(l, k):
        known = a + b
        x = f2_solve([functional(v) for v in known], [1 if j == i else 0 for j in range(k)] + [0] * len(b), d)
        if x is None:
            raise ValueError("not extendable over F2")
        b.append(x)
    for j in range(k, l):
        known = a + b
        x = f2_solve([functional(v) for v in known], [0] * len(a) + [1 if i == j else 0 for i in range(len(b))], d)
        if x is None:
            raise ValueError("not extendable over F2")
        a.append(x)
    while len(a) < form.g:
        known = a + b
        funcs = [functional(v) for v in known]
        # any vector orthogonal to the known ones, then a partner for it
        e = None
        for cand in range(1, 1 << d):
            if all(parity(f & cand) == 0 for f in funcs) and (f2_rank(known + [cand]) == len(known) + 1):
                e = cand
                break
        assert e is not None
        f = f2_solve(funcs + [functional(e)], [0] * len(funcs) + [1], d)
        assert f is not None
        a.append(e)
        b.append(f)
    return [_unbits(x, d) for x in a], [_unbits(x, d) for x in b]


# ------------------------------------------------------- mod 2 lifting


def _std_pair_f2(g: int, x: int, y: int) -> int:
    mask = (1 << g) - 1
    return parity(((x & mask) & (y >> g)) ^ ((x >> g) & (y & mask)))


def factor_f2_transvections(n: SpF2, form: SymplecticForm) -> List[int]:
    """Vectors w_1..w_r with n = tau_{w_1} ... tau_{w_r} over F2.

    Works basis pair by basis pair: transvections (each orthogonal to the pairs
    already fixed) move the current image of a_i back to a_i and then the image
    of b_i back to b_i.
    """
    g = form.g
    d = form.dim
    a_basis, b_basis = _f2_symplectic_basis(form)
    pair = form.pair_f2
    cur = n
    used: List[int] = []

    def apply(w: int) -> None:
        nonlocal cur
        cur = f2_mul(f2_transvection(w, form), cur)
        used.append(w)

    for i in range(g):
        span = a_basis[i:] + b_basis[i:]
        # a_i step
        x = f2_apply(cur, a_basis[i])
        t = a_basis[i]
        if x != t:
            if pair(x, t):
                apply(x ^ t)
            else:
                z = _f2_bridge(form, span, x, t)
                apply(x ^ z)
                apply(z ^ t)
        # b_i step: transvections must also fix a_i
        y = f2_apply(cur, b_basis[i])
        t = b_basis[i]
        if y != t:
            if pair(y, t):
                apply(y ^ t)
            else:
                z = a_basis[i] ^ b_basis[i]
                apply(y ^ z)
                apply(z ^ t)
    if cur != f2_identity(d):
        raise AssertionError("transvection factorization did not terminate at I")
    # tau_{w_r} ... tau_{w_1} n = I, and every tau is an involution
    return used


def _f2_bridge(form: SymplecticForm, span: Sequence[int], x: int, t: int) -> int:
    """z in span with <x, z> = <t, z> = 1."""
    pair = form.pair_f2
    rows = [sum(1 << j for j, s in enumerate(span) if pair(x, s)), sum(1 << j for j, s in enumerate(span) if pair(t, s))]
    coeffs = f2_solve(rows, [1, 1], len(span))
    if coeffs is None:
        raise AssertionError("no bridging vector")
    z = 0
    for j, s in enumerate(span):
        if (coeffs >> j) & 1:
            z ^= s
    return z


@lru_cache(maxsize=None)
def _f2_symplectic_basis(form: SymplecticForm) -> Tuple[List[int], List[int]]:
    if form.flavor == "standard":
        g = form.g
        return [1 << i for i in range(g)], [1 << (g + i) for i in range(g)]
    a, b = complete_partial_basis(PartialSymplecticBasis((), (), form, "F2"))
    return [_bits(v) for v in a], [_bits(v) for v in b]


def lift_mod2(n: SpF2, form: Optional[SymplecticForm] = None) -> Matrix:
    """An integral symplectic matrix reducing to n."""
    d = n.dim
    form = form or standard_form(d // 2)
    ws = factor_f2_transvections(n, form)
    m = identity(d)
    for w in ws:
        m = mat_mul(m, transvection(_unbits(w, d), form))
    return m


def lift_mod2_stabilizer(
    n: SpF2,
    a_list: Sequence[Sequence[int]],
    b_list: Sequence[Sequence[int]] = (),
    form: Optional[SymplecticForm] = None,
) -> Matrix:
    """Integral M fixing every a_i and b_j with M = n mod 2.

    Needs n to fix the reductions of the given vectors, which must form a
    partial symplectic basis over Z.
    """
    d = n.dim
    g = d // 2
    form = form or standard_form(g)
    for v in list(a_list) + list(b_list):
        if f2_apply(n, _bits(v)) != _bits(v):
            raise ValueError("target does not fix the reduced vectors")
    k, l = len(a_list), len(b_list)
    a_full, b_full = complete_partial_basis(PartialSymplecticBasis(tuple(a_list), tuple(b_list), form))
    pairs = min(k, l)
    # new ordered basis: the free a-like vectors come first among the non-paired ones
    if k >= l:
        new_a = a_full[pairs:]
        new_b = b_full[pairs:]
        fixed = k - pairs
    else:
        new_a = b_full[pairs:]
        new_b = [tuple(-x for x in v) for v in a_full[pairs:]]
        fixed = l - pairs
    basis_a = list(a_full[:pairs]) + list(new_a)
    basis_b = list(b_full[:pairs]) + list(new_b)
    # reorder so that the fixed a-like vectors are right after the split-off pairs
    P = transpose(as_matrix(basis_a + basis_b))  # columns are the new basis
    Pinv = _basis_inverse(P, form)
    n_local = reduce_mod2(mat_mul(mat_mul(Pinv, f2_to_matrix(n)), P))
    # drop the split-off pairs: n_local is the identity on them
    sub = _restrict_f2(n_local, g, list(range(pairs, g)))
    m_sub = _lift_fixing_prefix(sub, g - pairs, fixed)
    m_local = _embed(m_sub, g, list(range(pairs, g)))
    return mat_mul(mat_mul(P, m_local), Pinv)


def _basis_inverse(P: Matrix, form: SymplecticForm) -> Matrix:
    """Inverse of a matrix whose columns form a symplectic basis for the form."""
    g = form.g
    omega = standard_form(g).gram
    # P^T G P = Omega  =>  P^{-1} = Omega^{-1} P^T G = -Omega P^T G
    return mat_scale(-1, mat_mul(mat_mul(omega, transpose(P)), form.gram))


def _restrict_f2(n: SpF2, g: int, keep: List[int]) -> SpF2:
    idx = keep + [g + i for i in keep]
    cols = []
    for j in idx:
        c = n.cols[j]
        cols.append(sum(1 << t for t, i in enumerate(idx) if (c >> i) & 1))
    return SpF2(tuple(cols))


def _embed(m: Matrix, g: int, keep: List[int]) -> Matrix:
    idx = keep + [g + i for i in keep]
    out = [list(r) for r in identity(2 * g)]
    for s, i in enumerate(idx):
        for t, j in enumerate(idx):
            out[i][j] = m[s][t]
    return as_matrix(out)


def _lift_fixing_prefix(n: SpF2, g: int, k: int) -> Matrix:
    """Standard coordinates: lift n fixing a_1..a_k exactly."""
    if k == 0:
        return lift_mod2(n)
    # n = K * S with S acting on <a_2..b_g> and K in the kernel of that projection
    rest = list(range(1, g))
    rho = _restrict_f2(n, g, rest)
    s_f2 = SpF2(tuple(f2_apply(_embed_f2(rho, g, rest), 1 << j) for j in range(2 * g)))
    k_f2 = f2_mul(n, _f2_inverse(s_f2))
    m_rest = _lift_fixing_prefix(rho, g - 1, k - 1)
    m_s = _embed(m_rest, g, rest)
    m_k = _kernel_lift(k_f2, g, k)
    m = mat_mul(m_k, m_s)
    if reduce_mod2(m) != n:
        raise AssertionError("stabilizer lift does not reduce correctly")
    return m


def _embed_f2(n: SpF2, g: int, keep: List[int]) -> SpF2:
    idx = keep + [g + i for i in keep]
    cols = [1 << j for j in range(2 * g)]
    for t, j in enumerate(idx):
        c = n.cols[t]
        cols[j] = sum(1 << idx[s] for s in range(len(idx)) if (c >> s) & 1)
    return SpF2(tuple(cols))


def _f2_inverse(n: SpF2) -> SpF2:
    d = n.dim
    g = d // 2
    # symplectic: N^{-1} = Omega^{-1} N^T Omega; over F2 Omega^{-1} = Omega
    m = f2_to_matrix(n)
    omega = standard_form(g).gram
    return reduce_mod2(mat_mul(mat_mul(omega, transpose(m)), omega))


def _kernel_lift(kf: SpF2, g: int, k: int) -> Matrix:
    """Explicit integral lift of an element acting trivially modulo a_1.

    kf fixes a_1 and sends every other basis vector v to v + (something) a_1,
    except b_1 which picks up the compensating terms.
    """
    a1 = 1
    c = [0] * g
    dd = [0] * g
    c[0] = 1
    for i in range(1, g):
        c[i] = f2_apply(kf, 1 << i) & a1
        dd[i] = f2_apply(kf, 1 << (g + i)) & a1
    dd[0] = f2_apply(kf, 1 << g) & a1
    for i in range(1, k):
        if c[i]:
            raise AssertionError("kernel element moves a fixed vector")
        c[i] = 0
    d = 2 * g
    cols: List[List[int]] = [list(_unit(d, j)) for j in range(d)]
    # M(b_1) = d_1 a_1 + b_1 + sum_{i>=2} (d_i a_i - c_i b_i)
    col = [0] * d
    col[0] = dd[0]
    col[g] = 1
    for i in range(1, g):
        col[i] = dd[i]
        col[g + i] = -c[i]
    cols[g] = col
    for i in range(1, g):
        cols[i][0] = c[i]  # M(a_i) = a_i + c_i a_1
        cols[g + i][0] = dd[i]  # M(b_i) = b_i + d_i a_1
    m = transpose(as_matrix(cols))
    if reduce_mod2(m) != kf:
        raise AssertionError("kernel element is not of the expected shape")
    return m


# ------------------------------------------- geometric basis and correctors


def _e_curve(i: int) -> Tuple[int, ...]:
    return (2, 3, 2 * i, 2 * i + 1)


def _f_curve(i: int) -> Tuple[int, ...]:
    return (1,) + tuple(range(4, 2 * i + 1))


@lru_cache(maxsize=None)
def geometric_form(g: int) -> SymplecticForm:
    """The chain form with the orientation in which the curve basis is standard.

    Same symplectic group as the chain form; transvections change direction.
    """
    return SymplecticForm(g, mat_scale(-1, chain_form(g)), "chain")


@lru_cache(maxsize=None)
def geometric_standard_basis(g: int) -> Matrix:
    """Columns a_1..a_g, b_1..b_g in chain coordinates.

    a_i is the lift of c{2i,2i+1} and b_i the lift of c{1..2i}, with signs (and,
    where needed, an a_i/b_i swap) chosen so that the curves {2,3,2i,2i+1} and
    {1,4,5,..,2i} lift to a_1 + a_i and a_1 + b_i.  The basis is symplectic for
    geometric_form(g); for the chain form itself those two signs cannot both be
    positive.
    """
    n = 2 * g + 1
    form = geometric_form(g)
    a = [lift_class(n, (2 * i, 2 * i + 1)) for i in range(1, g + 1)]
    b = [lift_class(n, tuple(range(1, 2 * i + 1))) for i in range(1, g + 1)]
    for i in range(g):
        if form.pair(a[i], b[i]) < 0:
            b[i] = tuple(-x for x in b[i])

    def neg(v: Sequence[int]) -> Vector:
        return tuple(-x for x in v)

    for i in range(1, g):
        e = lift_class(n, _e_curve(i + 1))
        f = lift_class(n, _f_curve(i + 1))
        ai, bi = a[i], b[i]
        for cand_a, cand_b in ((ai, bi), (neg(ai), neg(bi)), (bi, neg(ai)), (neg(bi), ai)):
            sa = tuple(x + y for x, y in zip(a[0], cand_a))
            sb = tuple(x + y for x, y in zip(a[0], cand_b))
            if lax_equal(sa, e) and lax_equal(sb, f):
                a[i], b[i] = cand_a, cand_b
                break
        else:
            raise AssertionError(f"no sign choice matches E_{i+1}, F_{i+1}")
    _assert_symplectic_basis(a, b, form)
    return transpose(as_matrix(a + b))


def chain_to_standard(m: Matrix, g: int) -> Matrix:
    P = geometric_standard_basis(g)
    return mat_mul(mat_mul(_basis_inverse(P, geometric_form(g)), m), P)


def standard_to_chain(m: Matrix, g: int) -> Matrix:
    P = geometric_standard_basis(g)
    return mat_mul(mat_mul(P, m), _basis_inverse(P, geometric_form(g)))


def _read_b1(y: Matrix, g: int) -> Tuple[List[int], List[int]]:
    std = standard_form(g)
    if not is_symplectic(y, std):
        raise ValueError("Y is not symplectic")
    if not in_level_two(y):
        raise ValueError("Y is not in the level-2 subgroup")
    d = 2 * g
    if tuple(y[i][0] for i in range(d)) != _unit(d, 0):
        raise ValueError("Y does not fix a_1")
    col = [y[i][g] for i in range(d)]
    ell = col[:g]
    m = col[g:]
    if m[0] != 1:
        raise AssertionError("b_1-coefficient of Y(b_1) must be 1")
    return ell, m


def corrector_factors(ell: Sequence[int], m: Sequence[int], g: int) -> List[Tuple[Vector, int]]:
    """(vector, exponent) pairs of the corrector product, leftmost first."""
    d = 2 * g
    a = [_unit(d, i) for i in range(g)]
    b = [_unit(d, g + i) for i in range(g)]
    add = lambda x, y: tuple(p + q for p, q in zip(x, y))
    out: List[Tuple[Vector, int]] = [(a[0], ell[0])]
    for i in range(1, g):
        n_i = m[i] * ell[i] - ell[i] - m[i]
        out += [(a[0], n_i), (add(a[0], a[i]), ell[i]), (b[i], -m[i]), (add(a[0], b[i]), m[i])]
    return [(v, e) for v, e in out if e]


def corrector_curves(g: int) -> Dict[Vector, Tuple[int, ...]]:
    """Standard vectors used by the correctors, mapped to the curves they lift."""
    d = 2 * g
    e = [_unit(d, i) for i in range(d)]
    add = lambda x, y: tuple(p + q for p, q in zip(x, y))
    out: Dict[Vector, Tuple[int, ...]] = {e[0]: (2, 3)}
    for i in range(2, g + 1):
        out[add(e[0], e[i - 1])] = _e_curve(i)
        out[e[g + i - 1]] = tuple(range(1, 2 * i + 1))
        out[add(e[0], e[g + i - 1])] = _f_curve(i)
    return out


def _product_of_factors(factors: Sequence[Tuple[Vector, int]], g: int) -> Matrix:
    std = standard_form(g)
    z = identity(2 * g)
    for v, e in factors:
        z = mat_mul(z, transvection(v, std, e))
    return z


def stabilizer_corrector_single(y: Matrix) -> Matrix:
    """Z in Sp[2] with Z Y (b_1) = b_1, built from even powers of transvections
    along a_1, a_1 + a_i, b_i and a_1 + b_i."""
    g = len(y) // 2
    ell, m = _read_b1(y, g)
    if any(x % 2 for x in ell) or any(x % 2 for x in m[1:]):
        raise AssertionError("level-2 element with odd coefficients")
    return _product_of_factors(corrector_factors(ell, m, g), g)


def stabilizer_corrector_pair(y: Matrix) -> Matrix:
    """Same as the single corrector for Y that also fixes a_2 up to sign.

    The b_2-coefficient of Y(b_1) vanishes, so the a_2 block reduces to
    tau_{a_1}^{-l_2} tau_{a_1+a_2}^{l_2}, and the result fixes a_2.
    """
    g = len(y) // 2
    if g < 2:
        raise ValueError("needs g >= 2")
    d = 2 * g
    col = tuple(y[i][1] for i in range(d))
    if not lax_equal(col, _unit(d, 1)):
        raise ValueError("Y does not fix a_2 up to sign")
    ell, m = _read_b1(y, g)
    if m[1] != 0:
        raise AssertionError("b_2-coefficient must vanish when a_2 is fixed")
    return _product_of_factors(corrector_factors(ell, m, g), g)


def xi_generating_set(g: int) -> List[Matrix]:
    """-I and the transvections of a_2, u', b_3, a_4, ..., a_2g (chain coordinates)."""
    if g < 3:
        raise ValueError("needs g >= 3")
    n = 2 * g + 1
    form = chain_symplectic_form(g)
    curves = [(2, 3), (2, 3, 4, 5), (1, 2, 3, 4, 5, 6)] + [(i, i + 1) for i in range(4, 2 * g + 1)]
    out = [mat_scale(-1, identity(2 * g))]
    out += [transvection(lift_class(n, c), form) for c in curves]
    return out


# ------------------------------------------------------------ enumeration


class SpF2Enumeration:
    """All elements of a finite matrix group over F2, stored packed and sorted."""

    def __init__(self, g: int, elements: np.ndarray):
        self.g = g
        self.elements = elements

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __contains__(self, n: SpF2) -> bool:
        key = np.uint64(n.pack())
        i = int(np.searchsorted(self.elements, key))
        return i < self.elements.size and self.elements[i] == key


def _left_multiply(packed: np.ndarray, gen: SpF2) -> np.ndarray:
    d = gen.dim
    mask = np.uint64((1 << d) - 1)
    out = np.zeros_like(packed)
    for j in range(d):
        col = (packed >> np.uint64(j * d)) & mask
        new = np.zeros_like(col)
        for k in range(d):
            bit = (col >> np.uint64(k)) & np.uint64(1)
            new ^= bit * np.uint64(gen.cols[k])
        out |= new << np.uint64(j * d)
    return out


def closure_order(generators: Sequence[SpF2], limit: int = 5_000_000) -> np.ndarray:
    """Sorted packed elements of the group generated by the given matrices."""
    if not generators:
        raise ValueError("need at least one generator")
    d = generators[0].dim
    if d * d > 64:
        raise ValueError("packed representation needs 2g*2g <= 64")
    start = np.array([f2_identity(d).pack()], dtype=np.uint64)
    seen = start
    frontier = start
    while frontier.size:
        fresh = []
        for gen in generators:
            cand = np.unique(_left_multiply(frontier, gen))
            pos = np.searchsorted(seen, cand)
            pos[pos >= seen.size] = 0
            new = cand[seen[pos] != cand]
            if new.size:
                fresh.append(new)
        if not fresh:
            break
        frontier = np.unique(np.concatenate(fresh))
        seen = np.union1d(seen, frontier)
        if seen.size > limit:
            raise MemoryError("group larger than the enumeration limit")
    return seen


def enumerate_sp_f2(g: int) -> SpF2Enumeration:
    """Sp_2g(F2) as the closure of all symplectic transvections, g <= 3."""
    if not 1 <= g <= 3:
        raise ValueError("enumeration is limited to g <= 3")
    form = standard_form(g)
    gens = [f2_transvection(w, form) for w in range(1, 1 << (2 * g))]
    return SpF2Enumeration(g, closure_order(gens))


# ----------------------------------------------------------- random input


def random_symplectic(g: int, rng: random.Random, length: int = 12, form: Optional[SymplecticForm] = None) -> Matrix:
    """Random word in transvections along basis vectors and sums of two."""
    form = form or standard_form(g)
    d = 2 * g
    m = identity(d)
    for _ in range(length):
        v = [0] * d
        v[rng.randrange(d)] = 1
        if rng.random() < 0.5:
            j = rng.randrange(d)
            v[j] += rng.choice((1, -1))
        if not any(v):
            continue
        m = mat_mul(m, transvection(v, form, rng.choice((1, -1))))
    return m


def random_stabilizer_level2(
    g: int, rng: random.Random, fixed: Sequence[int] = (0,), length: int = 6, coeff: int = 2, flip: bool = False
) -> Matrix:
    """Random element of Sp[2] fixing the listed a-vectors (standard coordinates).

    Products of squared transvections along vectors orthogonal to the fixed
    a's; with flip=True the (a_2, b_2) block is negated half of the time.
    """
    std = standard_form(g)
    d = 2 * g
    m = identity(d)
    for _ in range(length):
        v = [rng.randint(-coeff, coeff) for _ in range(d)]
        for i in fixed:
            v[g + i] = 0  # <v, a_i> = 0
        if not any(v):
            continue
        m = mat_mul(m, transvection(v, std, 2 * rng.choice((1, -1))))
    if flip and rng.random() < 0.5:
        s = [list(r) for r in identity(d)]
        s[1][1] = -1
        s[g + 1][g + 1] = -1
        m = mat_mul(m, as_matrix(s))
    return m

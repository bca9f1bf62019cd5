"""Simplicial complexes built from isotropic data in F2^{2g}, their homology,
and the lifting/matching of simplices between Z and F2.

Vertices of the basis complexes are nonzero vectors of F2^{2g} written as
bitmasks in standard coordinates (bit i is a_{i+1} for i < g, b_{i-g+1} after).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .exact_linalg import (
    Matrix,
    Vector,
    f2_rank,
    identity,
    mat_mul,
    mat_vec,
    parity,
    primitive_normalize,
    solve_int,
    sparse_elementary_divisors,
    transpose,
    as_matrix,
)
from .symplectic import (
    PartialSymplecticBasis,
    SpF2,
    SymplecticForm,
    complete_partial_basis,
    f2_apply,
    f2_transvection,
    in_level_two,
    is_symplectic,
    lift_mod2_stabilizer,
    reduce_mod2,
    standard_form,
    symplectic_inverse,
)

__all__ = [
    "ResourceBoundExceeded",
    "TypedSimplex",
    "ArithmeticComplex",
    "HomologyProfile",
    "DegreeHomology",
    "pair_f2",
    "classify_f2",
    "classify_z",
    "build_tits_f2",
    "build_ib_f2",
    "build_ibhat_f2",
    "homology_profile",
    "boundary_f2",
    "reduce_simplex",
    "match_simplices",
    "apply_to_simplex",
    "sphere_cycle",
    "verify_sphere_filling",
    "verify_setsofvec",
    "set_shape",
    "standard_basis_f2",
    "random_basis_f2",
    "random_sp_f2",
    "random_z_simplex",
]

Simplex = Tuple[int, ...]


class ResourceBoundExceeded(MemoryError):
    pass


_BYTES_PER_SIMPLEX = 400


def _memory_budget() -> Optional[int]:
    raw = os.environ.get("HT_MAX_MEM")
    if not raw:
        return None
    raw = raw.strip().upper()
    scale = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}.get(raw[-1], 1)
    digits = raw[:-1] if raw[-1] in "KMG" else raw
    return int(float(digits) * scale)


def _check_budget(expected_simplices: int, what: str) -> None:
    budget = _memory_budget()
    if budget is not None and expected_simplices * _BYTES_PER_SIMPLEX > budget:
        raise ResourceBoundExceeded(
            f"{what}: about {expected_simplices} simplices exceed HT_MAX_MEM={os.environ['HT_MAX_MEM']}"
        )


# ---------------------------------------------------------------- F2 forms


def pair_f2(g: int, x: int, y: int) -> int:
    mask = (1 << g) - 1
    return parity(((x & mask) & (y >> g)) ^ ((x >> g) & (y & mask)))


def _independent(vs: Sequence[int]) -> bool:
    return f2_rank(vs) == len(vs)


def _isotropic(g: int, vs: Sequence[int]) -> bool:
    return all(pair_f2(g, x, y) == 0 for x, y in combinations(vs, 2))


def classify_f2(g: int, vs: Iterable[int]) -> Optional[str]:
    """standard | intersection | additive | None for a set of nonzero vectors."""
    vs = sorted(set(vs))
    if not vs or 0 in vs:
        return None
    if _independent(vs):
        ones = sum(pair_f2(g, x, y) for x, y in combinations(vs, 2))
        if ones == 0:
            return "standard"
        if ones == 1:
            return "intersection"
        return None
    for v in vs:
        rest = [x for x in vs if x != v]
        if not (_independent(rest) and _isotropic(g, rest)):
            continue
        for h in (2, 3):
            for sub in combinations(rest, h):
                acc = 0
                for x in sub:
                    acc ^= x
                if acc == v:
                    return "additive"
    return None


# ------------------------------------------------------------- complexes


@dataclass(frozen=True)
class TypedSimplex:
    vertices: Simplex
    kind: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass
class ArithmeticComplex:
    g: int
    name: str
    simplices: Dict[int, List[Simplex]]
    kinds: Dict[Simplex, str] = field(default_factory=dict)
    vertex_labels: Dict[int, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._index = {d: {s: i for i, s in enumerate(ss)} for d, ss in self.simplices.items()}

    @property
    def dim(self) -> int:
        return max((d for d, ss in self.simplices.items() if ss), default=-1)

    def counts(self) -> List[int]:
        return [len(self.simplices.get(d, [])) for d in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.counts()))

    def __contains__(self, s: Iterable[int]) -> bool:
        t = tuple(sorted(s))
        return t in self._index.get(len(t) - 1, {})

    def kind_of(self, s: Iterable[int]) -> Optional[str]:
        return self.kinds.get(tuple(sorted(s)))

    def is_closed(self) -> bool:
        for d in range(1, self.dim + 1):
            lower = self._index.get(d - 1, {})
            for s in self.simplices[d]:
                for k in range(len(s)):
                    if s[:k] + s[k + 1 :] not in lower:
                        return False
        return True

    def boundary_columns(self, d: int) -> List[Dict[int, int]]:
        """Columns of the boundary map C_d -> C_{d-1} (signed)."""
        lower = self._index[d - 1]
        cols = []
        for s in self.simplices[d]:
            col = {}
            for k in range(len(s)):
                col[lower[s[:k] + s[k + 1 :]]] = (-1) ** k
            cols.append(col)
        return cols


def _closure(top: Iterable[Simplex], kind_fn) -> Tuple[Dict[int, List[Simplex]], Dict[Simplex, str]]:
    found: Set[Simplex] = set()
    for s in top:
        s = tuple(sorted(s))
        for r in range(1, len(s) + 1):
            for f in combinations(s, r):
                found.add(f)
    by_dim: Dict[int, List[Simplex]] = {}
    for s in found:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for d in by_dim:
        by_dim[d].sort()
    kinds = {s: kind_fn(s) for s in found} if kind_fn else {}
    return by_dim, kinds


def _isotropic_subspaces(g: int) -> List[FrozenSet[int]]:
    """All nonzero isotropic subspaces, each as the frozenset of its nonzero vectors."""
    d = 2 * g
    seen: Set[FrozenSet[int]] = set()
    frontier = [frozenset([v]) for v in range(1, 1 << d)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for sp in frontier:
            for v in range(1, 1 << d):
                if v in sp or any(pair_f2(g, v, x) for x in sp):
                    continue
                bigger = set(sp)
                bigger.add(v)
                bigger.update(v ^ x for x in sp)
                fs = frozenset(bigger)
                if fs not in seen:
                    seen.add(fs)
                    nxt.append(fs)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def build_tits_f2(g: int) -> ArithmeticComplex:
    """Order complex of the poset of nonzero isotropic subspaces of F2^{2g}."""
    if not 1 <= g <= 3:
        raise ResourceBoundExceeded("the Tits building is only built for g <= 3")
    _check_budget({1: 3, 2: 75, 3: 6696}[g], "tits")
    spaces = _isotropic_subspaces(g)
    ids = {s: i for i, s in enumerate(spaces)}
    # maximal flags: extend chains greedily through proper inclusions
    up: Dict[int, List[int]] = {i: [] for i in range(len(spaces))}
    for s in spaces:
        for t in spaces:
            if len(t) == 2 * len(s) + 1 and s < t:
                up[ids[s]].append(ids[t])
    flags: List[Simplex] = []

    def extend(chain: List[int]) -> None:
        nxt = up[chain[-1]]
        if not nxt:
            flags.append(tuple(chain))
            return
        for t in nxt:
            extend(chain + [t])

    for s in spaces:
        if len(s) == 1:
            extend([ids[s]])
    simplices, _ = _closure(flags, None)
    labels = {i: tuple(sorted(s)) for s, i in ids.items()}
    return ArithmeticComplex(g, "tits", simplices, {}, labels)


def build_ib_f2(g: int) -> ArithmeticComplex:
    """Complex of lax isotropic bases over F2: standard simplices only."""
    if not 1 <= g <= 3:
        raise ResourceBoundExceeded("IB is only built for g <= 3")
    _check_budget({1: 3, 2: 60, 3: 4788}[g], "ib")
    form = standard_form(g)
    lagrangians = [s for s in _isotropic_subspaces(g) if len(s) == (1 << g) - 1]
    top: Set[Simplex] = set()
    for lag in lagrangians:
        for basis in combinations(sorted(lag), g):
            if _independent(basis):
                top.add(basis)
    for basis in top:
        # the completion raises if the basis is not extendable
        complete_partial_basis(
            PartialSymplecticBasis(tuple(_vec(x, g) for x in basis), (), form, "F2")
        )
    simplices, kinds = _closure(top, lambda s: "standard")
    return ArithmeticComplex(g, "ib", simplices, kinds)


def build_ibhat_f2(g: int = 3) -> ArithmeticComplex:
    """IB plus simplices of intersection and additive type."""
    if g != 3:
        raise ValueError("the augmented complex is built for g = 3 only")
    _check_budget(71316, "ibhat")
    base = build_ib_f2(g)
    d = 2 * g
    top: Set[Simplex] = set(base.simplices[g - 1])
    # intersection type: (a_1..a_k; b) with a_2..a_k inside <a_1, b>^perp
    for a1, b in combinations(range(1, 1 << d), 2):
        if not pair_f2(g, a1, b):
            continue
        perp = [x for x in range(1, 1 << d) if not pair_f2(g, x, a1) and not pair_f2(g, x, b)]
        for k in range(0, g):
            for rest in combinations(perp, k):
                if _isotropic(g, rest) and _independent([a1, b, *rest]):
                    top.add(tuple(sorted((a1, b) + rest)))
    # additive type: a standard simplex plus the sum of 2 or 3 of its vertices
    for s in base.simplices[g - 1] + base.simplices.get(g - 2, []):
        for h in (2, 3):
            for sub in combinations(s, h):
                acc = 0
                for x in sub:
                    acc ^= x
                top.add(tuple(sorted(s + (acc,))))
    simplices, _ = _closure(top, None)
    kinds = {}
    for dim, ss in simplices.items():
        for s in ss:
            k = classify_f2(g, s)
            if k is None:
                raise AssertionError(f"face {s} has no simplex type")
            kinds[s] = k
    return ArithmeticComplex(g, "ibhat", simplices, kinds)


def _vec(x: int, g: int) -> Vector:
    return tuple((x >> i) & 1 for i in range(2 * g))


def _bits(v: Sequence[int]) -> int:
    return sum(1 << i for i, x in enumerate(v) if x % 2)


# --------------------------------------------------------------- homology


@dataclass(frozen=True)
class DegreeHomology:
    degree: int
    betti_f2: Optional[int]
    betti_z: Optional[int]
    torsion: Tuple[int, ...] = ()


@dataclass(frozen=True)
class HomologyProfile:
    complex_name: str
    g: int
    counts: Tuple[int, ...]
    degrees: Tuple[DegreeHomology, ...]
    reduced: bool = True

    def euler_check(self) -> bool:
        chi = sum((-1) ** d * c for d, c in enumerate(self.counts))
        reduced_chi = chi - 1 if self.reduced else chi
        for attr in ("betti_f2", "betti_z"):
            vals = [getattr(h, attr) for h in self.degrees]
            if all(v is not None for v in vals):
                if sum((-1) ** h.degree * v for h, v in zip(self.degrees, vals)) != reduced_chi:
                    return False
        return True

    def to_json(self) -> Dict:
        return {
            "complex": self.complex_name,
            "g": self.g,
            "counts": list(self.counts),
            "reduced": self.reduced,
            "degrees": [
                {"degree": h.degree, "betti_f2": h.betti_f2, "betti_z": h.betti_z, "torsion": list(h.torsion)}
                for h in self.degrees
            ],
        }


def homology_profile(X: ArithmeticComplex, coefficients: str = "both", max_degree: Optional[int] = None) -> HomologyProfile:
    """Reduced homology through max_degree (default: all degrees).

    Ranks come from sparse elimination of the boundary matrices; over Z the
    leftover non-unit block goes through Smith normal form, and its non-unit
    divisors are the torsion of the degree below.
    """
    if coefficients not in ("z", "f2", "both"):
        raise ValueError("coefficients must be z, f2 or both")
    top = X.dim
    last = top if max_degree is None else min(max_degree, top)
    counts = X.counts()
    want_z = coefficients in ("z", "both")
    want_f2 = coefficients in ("f2", "both")
    rank_z: Dict[int, int] = {0: 1 if counts and counts[0] else 0}
    rank_f2: Dict[int, int] = dict(rank_z)
    torsion: Dict[int, List[int]] = {}
    for d in range(1, min(last + 1, top) + 1):
        cols = X.boundary_columns(d)
        if want_z:
            r, divs = sparse_elementary_divisors(cols)
            rank_z[d] = r
            torsion[d - 1] = divs
        if want_f2:
            r2, _ = sparse_elementary_divisors(cols, modulus=2)
            rank_f2[d] = r2
    if last + 1 > top:
        rank_z[top + 1] = rank_f2[top + 1] = 0
    degrees = []
    for k in range(last + 1):
        bz = counts[k] - rank_z[k] - rank_z[k + 1] if want_z else None
        bf = counts[k] - rank_f2[k] - rank_f2[k + 1] if want_f2 else None
        degrees.append(DegreeHomology(k, bf, bz, tuple(torsion.get(k, [])) if want_z else ()))
    return HomologyProfile(X.name, X.g, tuple(counts), tuple(degrees))


def boundary_f2(chain: Iterable[Simplex]) -> Set[Simplex]:
    out: Set[Simplex] = set()
    for s in chain:
        s = tuple(sorted(s))
        for k in range(len(s)):
            out ^= {s[:k] + s[k + 1 :]}
    return out


# ------------------------------------------------------- Z <-> F2 simplices


def _pair_z(form: SymplecticForm, x: Sequence[int], y: Sequence[int]) -> int:
    return form.pair(x, y)


def _lax(v: Sequence[int]) -> Vector:
    return primitive_normalize(v)


def _extendable(form: SymplecticForm, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    try:
        complete_partial_basis(PartialSymplecticBasis(tuple(a), tuple(b), form))
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class _ZStructure:
    kind: str
    a: Tuple[Vector, ...]  # oriented partial basis a-part
    b: Tuple[Vector, ...]  # at most one vector, intersection type only
    total: Optional[Vector] = None  # additive: the vertex equal to the signed sum
    summands: Tuple[int, ...] = ()  # indices into a
    signs: Tuple[int, ...] = ()


def _z_structure(S: Sequence[Sequence[int]], form: SymplecticForm) -> Optional[_ZStructure]:
    vs = [tuple(v) for v in S]
    if not vs or any(not any(v) for v in vs):
        return None
    m = len(vs)
    pairs = {(i, j): form.pair(vs[i], vs[j]) for i in range(m) for j in range(i + 1, m)}
    nonzero = {k: p for k, p in pairs.items() if p}
    if not nonzero:
        if _extendable(form, vs, ()):
            return _ZStructure("standard", tuple(vs), ())
    elif len(nonzero) == 1:
        (i, j), p = next(iter(nonzero.items()))
        if abs(p) == 1:
            a1, b = vs[i], vs[j]
            if p < 0:
                b = tuple(-x for x in b)
            rest = [vs[k] for k in range(m) if k not in (i, j)]
            if _extendable(form, [a1] + rest, [b]):
                return _ZStructure("intersection", tuple([a1] + rest), (b,))
    for t in range(m):
        rest = [vs[k] for k in range(m) if k != t]
        if any(form.pair(x, y) for x, y in combinations(vs, 2)):
            break
        if not _extendable(form, rest, ()):
            continue
        coeffs = solve_int(transpose(as_matrix(rest)), vs[t])
        if coeffs is None:
            continue
        support = [k for k, c in enumerate(coeffs) if c]
        if len(support) in (2, 3) and all(abs(coeffs[k]) == 1 for k in support):
            return _ZStructure(
                "additive", tuple(rest), (), vs[t], tuple(support), tuple(coeffs[k] for k in support)
            )
    return None


def classify_z(S: Sequence[Sequence[int]], form: Optional[SymplecticForm] = None) -> Optional[str]:
    if not S:
        return None
    form = form or standard_form(len(S[0]) // 2)
    st = _z_structure(S, form)
    return st.kind if st else None


def reduce_simplex(S: Sequence[Sequence[int]], form: Optional[SymplecticForm] = None) -> TypedSimplex:
    """Entrywise mod-2 image of a simplex over Z, keeping its type."""
    if not S:
        raise ValueError("empty simplex")
    g = len(S[0]) // 2
    form = form or standard_form(g)
    st = _z_structure(S, form)
    if st is None:
        raise ValueError("not a simplex over Z")
    verts = tuple(sorted({_bits(v) for v in S}))
    if len(verts) != len(S):
        raise AssertionError("reduction collapsed two vertices")
    kind = classify_f2(g, verts)
    if kind != st.kind:
        raise AssertionError(f"reduction changed the type: {st.kind} -> {kind}")
    return TypedSimplex(verts, kind)


def apply_to_simplex(M: Matrix, S: Sequence[Sequence[int]]) -> List[Vector]:
    return [mat_vec(M, v) for v in S]


def _same_lax_sets(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    return sorted(_lax(v) for v in A) == sorted(_lax(v) for v in B)


def match_simplices(S1: Sequence[Sequence[int]], S2: Sequence[Sequence[int]], form: Optional[SymplecticForm] = None) -> Matrix:
    """M in Sp[2] with M(S1) = S2 as sets of lax vectors."""
    g = len(S1[0]) // 2
    form = form or standard_form(g)
    r1 = reduce_simplex(S1, form)
    r2 = reduce_simplex(S2, form)
    if r1 != r2:
        raise ValueError("the two simplices have different reductions")
    st1 = _z_structure(S1, form)
    by_bits = {_bits(v): tuple(v) for v in S2}

    def partner(v: Sequence[int]) -> Vector:
        return by_bits[_bits(v)]

    if st1.kind in ("standard", "intersection"):
        a1 = list(st1.a)
        b1 = list(st1.b)
        a2 = [partner(v) for v in a1]
        b2 = [partner(v) for v in b1]
        if b1 and form.pair(a2[0], b2[0]) < 0:
            b2 = [tuple(-x for x in b2[0])]
    else:
        # additive: S2's vertex over the sum is a +-1 combination of the partners;
        # flip partner signs so it is the plain sum, and likewise on S1
        a1 = list(st1.a)
        for k, s in zip(st1.summands, st1.signs):
            if s < 0:
                a1[k] = tuple(-x for x in a1[k])
        a2 = [partner(v) for v in a1]
        w0 = partner(st1.total)
        coeffs = solve_int(transpose(as_matrix(a2)), w0)
        if coeffs is None or sorted(k for k, c in enumerate(coeffs) if c) != sorted(st1.summands):
            raise AssertionError("sum vertex does not match")
        for k in st1.summands:
            if coeffs[k] < 0:
                a2[k] = tuple(-x for x in a2[k])
        b1 = b2 = []
    M = _carry_partial_basis(a1, b1, a2, b2, form)
    if not (in_level_two(M) and is_symplectic(M, form) and _same_lax_sets(apply_to_simplex(M, S1), S2)):
        raise AssertionError("matching matrix failed verification")
    return M


def _carry_partial_basis(a1, b1, a2, b2, form: SymplecticForm) -> Matrix:
    """Sp[2] element sending the partial basis (a1; b1) to (a2; b2), which agree mod 2."""
    A1, B1 = complete_partial_basis(PartialSymplecticBasis(tuple(a1), tuple(b1), form))
    A2, B2 = complete_partial_basis(PartialSymplecticBasis(tuple(a2), tuple(b2), form))
    P1 = transpose(as_matrix(A1 + B1))
    P2 = transpose(as_matrix(A2 + B2))
    # P^{-1} for a symplectic basis matrix: -Omega P^T G
    omega = standard_form(form.g).gram
    P1inv = tuple(tuple(-x for x in r) for r in mat_mul(mat_mul(omega, transpose(P1)), form.gram))
    M1 = mat_mul(P2, P1inv)
    N = reduce_mod2(M1)
    M2 = lift_mod2_stabilizer(N, a2, b2, form)
    return mat_mul(symplectic_inverse(M2, form), M1)


# --------------------------------------------------------- sphere filling


def standard_basis_f2(g: int) -> Tuple[List[int], List[int]]:
    return [1 << i for i in range(g)], [1 << (g + i) for i in range(g)]


def _is_symplectic_basis_f2(g: int, a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != g or len(b) != g:
        return False
    for i in range(g):
        for j in range(g):
            if pair_f2(g, a[i], a[j]) or pair_f2(g, b[i], b[j]) or pair_f2(g, a[i], b[j]) != (i == j):
                return False
    return True


def sphere_cycle(a: Sequence[int], b: Sequence[int]) -> Set[Simplex]:
    """Top simplices of the join of the pairs {a_i, b_i}: one vertex from each."""
    g = len(a)
    if not _is_symplectic_basis_f2(g, a, b):
        raise ValueError("not a symplectic basis")
    return {tuple(sorted(choice)) for choice in product(*zip(a, b))}


def verify_sphere_filling(a: Sequence[int], b: Sequence[int]) -> Tuple[bool, Dict]:
    """The four intersection-type tetrahedra {a1, b1, x, y} fill the g = 3 sphere."""
    g = len(a)
    if g != 3 or not _is_symplectic_basis_f2(g, a, b):
        return False, {"reason": "not a symplectic basis of F2^6"}
    tets = [tuple(sorted((a[0], b[0], x, y))) for x in (a[1], b[1]) for y in (a[2], b[2])]
    kinds = [classify_f2(g, t) for t in tets]
    cycle = sphere_cycle(a, b)
    ok = all(k == "intersection" for k in kinds) and boundary_f2(tets) == cycle and not boundary_f2(cycle)
    return ok, {"tetrahedra": [list(t) for t in tets], "kinds": kinds, "cycle": sorted(list(c) for c in cycle)}


# ---------------------------------------------------------- shapes of sets


_SHAPES = (
    (0, ()),
    (1, ()),
    (2, ()),
    (3, ()),
    (2, ((0, 1),)),
    (4, ()),
    (3, ((0, 1),)),
    (3, ((0, 1, 2),)),
)


def set_shape(vs: Iterable[int]) -> Optional[int]:
    """Index of the first template {v_1..v_m} + sums that the set matches."""
    target = frozenset(vs)
    for idx, (m, sums) in enumerate(_SHAPES):
        if len(target) != m + len(sums):
            continue
        for base in permutations(sorted(target), m):
            if not _independent(base):
                continue
            built = set(base)
            for sub in sums:
                acc = 0
                for i in sub:
                    acc ^= base[i]
                built.add(acc)
            if built == target:
                return idx
    return None


def verify_setsofvec(n: int) -> Tuple[bool, Dict[int, int]]:
    """Every subset of at most four nonzero vectors of F2^n has a listed shape."""
    if not 1 <= n <= 5:
        raise ValueError("n must be between 1 and 5")
    census: Dict[int, int] = {}
    for size in range(5):
        for sub in combinations(range(1, 1 << n), size):
            shape = set_shape(sub)
            if shape is None:
                return False, census
            census[shape] = census.get(shape, 0) + 1
    return True, census


# ---------------------------------------------------------- random inputs


def random_sp_f2(g: int, rng: random.Random, length: int = 30) -> SpF2:
    form = standard_form(g)
    d = 2 * g
    cols = tuple(1 << j for j in range(d))
    m = SpF2(cols)
    for _ in range(length):
        t = f2_transvection(rng.randrange(1, 1 << d), form)
        m = SpF2(tuple(f2_apply(t, c) for c in m.cols))
    return m


def random_basis_f2(g: int, rng: random.Random) -> Tuple[List[int], List[int]]:
    m = random_sp_f2(g, rng)
    a, b = standard_basis_f2(g)
    return [f2_apply(m, x) for x in a], [f2_apply(m, x) for x in b]


def random_z_simplex(g: int, rng: random.Random, kind: str, size: int, T: Optional[Matrix] = None) -> List[Vector]:
    """T applied to a base simplex of the given kind and vertex count."""
    d = 2 * g
    e = [tuple(1 if k == i else 0 for k in range(d)) for i in range(d)]
    a = e[:g]
    b = e[g:]
    sgn = lambda: rng.choice((1, -1))
    if kind == "standard":
        base = [_scaled(sgn(), a[i]) for i in range(size)]
    elif kind == "intersection":
        base = [a[i] for i in range(size - 1)] + [b[0]]
    elif kind == "additive":
        k = size - 1
        h = rng.choice([x for x in (2, 3) if x <= k])
        signs = [sgn() for _ in range(h)]
        total = tuple(sum(s * a[i][t] for i, s in enumerate(signs)) for t in range(d))
        base = [a[i] for i in range(k)] + [total]
    else:
        raise ValueError(kind)
    T = T if T is not None else identity(d)
    return [_scaled(sgn(), mat_vec(T, v)) for v in base]


def _scaled(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * x for x in v)

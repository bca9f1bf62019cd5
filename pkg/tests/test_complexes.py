import random
from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypertorelli.complexes import (
    ResourceBoundExceeded,
    apply_to_simplex,
    boundary_f2,
    build_ib_f2,
    build_ibhat_f2,
    build_tits_f2,
    classify_f2,
    classify_z,
    homology_profile,
    match_simplices,
    random_basis_f2,
    random_sp_f2,
    random_z_simplex,
    reduce_simplex,
    set_shape,
    sphere_cycle,
    standard_basis_f2,
    verify_setsofvec,
    verify_sphere_filling,
)
from hypertorelli.exact_linalg import identity, mat_mul, primitive_normalize
from hypertorelli.symplectic import f2_apply, in_level_two, random_symplectic, standard_form, transvection


@lru_cache(maxsize=None)
def tits(g):
    return build_tits_f2(g)


@lru_cache(maxsize=None)
def ib(g):
    return build_ib_f2(g)


@lru_cache(maxsize=None)
def ibhat():
    return build_ibhat_f2(3)


def test_tits_counts():
    assert tits(1).counts() == [3]
    assert tits(2).counts() == [30, 45]
    assert tits(3).counts()[0] == 63 + 315 + 135


def test_ib_counts():
    assert ib(2).counts() == [15, 45]
    assert ib(3).counts() == [63, 945, 3780]
    for s in ib(3).simplices[2]:
        assert classify_f2(3, s) == "standard"


def test_ibhat_census():
    X = ibhat()
    by_kind = Counter((len(s), k) for s, k in X.kinds.items())
    assert by_kind[(2, "intersection")] == 1008
    assert by_kind[(3, "additive")] == 315
    assert by_kind[(3, "standard")] == 3780
    assert X.counts() == [63, 1953, 19215, 50085]
    assert X.is_closed()


@pytest.mark.parametrize("build", [lambda: tits(2), lambda: tits(3), lambda: ib(3), ibhat])
def test_boundary_squares_to_zero(build):
    X = build()
    for d in range(2, X.dim + 1):
        upper = X.boundary_columns(d)
        lower = X.boundary_columns(d - 1)
        for col in upper[:400]:
            acc = {}
            for i, s in col.items():
                for j, t in lower[i].items():
                    acc[j] = acc.get(j, 0) + s * t
            assert not any(acc.values())


@pytest.mark.parametrize(
    "name,g,degree,rank",
    [("tits", 1, 0, 2), ("tits", 2, 1, 16), ("tits", 3, 2, 512), ("ib", 2, 1, 31), ("ib", 3, 2, 2897)],
)
def test_homology_concentrated_in_top_degree(name, g, degree, rank):
    X = tits(g) if name == "tits" else ib(g)
    prof = homology_profile(X, "both")
    assert prof.euler_check()
    for h in prof.degrees:
        want = rank if h.degree == degree else 0
        assert (h.betti_z, h.betti_f2, h.torsion) == (want, want, ())


def test_homology_profile_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        homology_profile(ib(2), "q")


def test_memory_gate(monkeypatch):
    monkeypatch.setenv("HT_MAX_MEM", "1M")
    with pytest.raises(ResourceBoundExceeded):
        build_ibhat_f2(3)
    monkeypatch.setenv("HT_MAX_MEM", "4G")
    assert build_ib_f2(2).counts() == [15, 45]


def test_builders_reject_large_g():
    with pytest.raises(ResourceBoundExceeded):
        build_tits_f2(4)
    with pytest.raises(ResourceBoundExceeded):
        build_ib_f2(4)
    with pytest.raises(ValueError):
        build_ibhat_f2(2)


@given(st.integers(0, 10**6))
def test_types_are_sp_equivariant(seed):
    rng = random.Random(seed)
    T = random_sp_f2(3, rng)
    X = ibhat()
    for dim in (1, 2, 3):
        for s in rng.sample(X.simplices[dim], 10):
            image = tuple(sorted(f2_apply(T, v) for v in s))
            assert image in X and X.kind_of(image) == X.kind_of(s)


# ------------------------------------------------------------ simplices over Z


def unit(d, i):
    return tuple(1 if k == i else 0 for k in range(d))


def test_reduce_simplex_examples():
    a1, a2, b1 = unit(6, 0), unit(6, 1), unit(6, 3)
    assert reduce_simplex([a1, a2]).kind == "standard"
    add = reduce_simplex([tuple(x + y for x, y in zip(a1, a2)), a1, a2])
    assert add.kind == "additive" and add.vertices == (1, 2, 3)
    assert reduce_simplex([a1, b1]).kind == "intersection"
    with pytest.raises(ValueError):
        reduce_simplex([tuple(2 * x for x in a1)])
    assert classify_z([a1, a2, b1]) == "intersection"


def level2(rng, g=3):
    std = standard_form(g)
    m = identity(2 * g)
    for _ in range(4):
        v = [rng.randint(-1, 1) for _ in range(2 * g)]
        if any(v):
            m = mat_mul(m, transvection(v, std, 2 * rng.choice((1, -1))))
    return m


def _same(A, B):
    return sorted(map(primitive_normalize, A)) == sorted(map(primitive_normalize, B))


def test_match_identical_simplices():
    S = [unit(6, 0), unit(6, 1)]
    M = match_simplices(S, S)
    assert in_level_two(M) and _same(apply_to_simplex(M, S), S)


@given(st.integers(0, 10**6), st.sampled_from(["standard", "intersection", "additive"]))
def test_match_random_translates(seed, kind):
    rng = random.Random(seed)
    size = {"standard": rng.randint(1, 3), "intersection": rng.randint(2, 4), "additive": rng.randint(3, 4)}[kind]
    T = random_symplectic(3, rng, 10)
    S1 = random_z_simplex(3, rng, kind, size, T)
    assert reduce_simplex(S1).kind == kind
    S2 = apply_to_simplex(level2(rng), S1)
    M = match_simplices(S1, S2)
    assert in_level_two(M) and _same(apply_to_simplex(M, S1), S2)


def test_match_additive_with_flipped_signs():
    a1, a2, a3 = unit(6, 0), unit(6, 1), unit(6, 2)
    S1 = [a1, a2, a3, tuple(x + y for x, y in zip(a1, a2))]
    S2 = [a1, a2, a3, tuple(x - y for x, y in zip(a1, a2))]
    M = match_simplices(S1, S2)
    assert in_level_two(M) and _same(apply_to_simplex(M, S1), S2)


def test_match_rejects_different_reductions():
    with pytest.raises(ValueError):
        match_simplices([unit(6, 0)], [unit(6, 1)])


# ------------------------------------------------------------ spheres and shapes


def test_sphere_cycle():
    a, b = standard_basis_f2(3)
    cyc = sphere_cycle(a, b)
    assert len(cyc) == 8
    assert not boundary_f2(cyc)
    for s in cyc:
        assert s in ib(3) and classify_f2(3, s) == "standard"
    with pytest.raises(ValueError):
        sphere_cycle(a, a)


def test_sphere_filling():
    ok, cert = verify_sphere_filling(*standard_basis_f2(3))
    assert ok and cert["kinds"] == ["intersection"] * 4
    rng = random.Random(0)
    for _ in range(50):
        a, b = random_basis_f2(3, rng)
        assert verify_sphere_filling(a, b)[0]
        for t in verify_sphere_filling(a, b)[1]["tetrahedra"]:
            assert tuple(t) in ibhat()
    a, b = standard_basis_f2(3)
    assert not verify_sphere_filling([a[0] ^ b[1]] + a[1:], b)[0]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_setsofvec(n):
    ok, census = verify_setsofvec(n)
    assert ok
    assert sum(census.values()) == sum(_binom(2**n - 1, k) for k in range(5))


def _binom(a, b):
    from math import comb

    return comb(a, b)


def test_set_shapes():
    assert set_shape([]) == 0
    assert set_shape([1, 2, 3]) == 4  # v1, v2, v1 + v2
    assert set_shape([1, 2, 4, 7]) == 7
    assert set_shape([1, 2, 4, 8]) == 5
    with pytest.raises(ValueError):
        verify_setsofvec(6)

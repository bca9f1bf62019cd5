import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypertorelli.braid_burau import BraidWord, burau_symplectic, lift_class
from hypertorelli.exact_linalg import identity, is_identity, lax_equal, mat_mul, mat_scale, mat_sub, mat_vec, rank_q
from hypertorelli.marked_disk import DiskContext, geometric_intersection
from hypertorelli.symplectic import (
    PartialSymplecticBasis,
    SpF2,
    chain_symplectic_form,
    chain_to_standard,
    closure_order,
    complete_partial_basis,
    corrector_curves,
    corrector_factors,
    enumerate_sp_f2,
    f2_apply,
    f2_identity,
    f2_is_symplectic,
    f2_mul,
    f2_to_matrix,
    f2_transvection,
    factor_f2_transvections,
    geometric_form,
    geometric_standard_basis,
    in_level_two,
    is_symplectic,
    lift_mod2,
    lift_mod2_stabilizer,
    random_stabilizer_level2,
    random_symplectic,
    reduce_mod2,
    stabilizer_corrector_pair,
    stabilizer_corrector_single,
    standard_form,
    standard_to_chain,
    symplectic_inverse,
    transvection,
    xi_generating_set,
)


def unit(d, i):
    return tuple(1 if k == i else 0 for k in range(d))


seeds = st.integers(0, 10**6)
genera = st.integers(1, 4)


def test_transvection_examples():
    std = standard_form(2)
    a1, b1 = unit(4, 0), unit(4, 2)
    t = transvection(a1, std)
    assert mat_vec(t, a1) == a1
    assert mat_vec(t, b1) == (-1, 0, 1, 0)  # b1 + <b1, a1> a1 = b1 - a1
    assert transvection((0, -1, 0, 0), std) == transvection((0, 1, 0, 0), std)
    with pytest.raises(ValueError):
        transvection((0, 0, 0, 0), std)


@given(genera, st.data())
def test_squared_transvection_is_rank_one(g, data):
    v = data.draw(st.lists(st.integers(-3, 3), min_size=2 * g, max_size=2 * g).filter(any))
    std = standard_form(g)
    t2 = transvection(v, std, 2)
    diff = mat_sub(t2, identity(2 * g))
    assert rank_q(diff) == 1
    assert all(_parallel(col, v) for col in zip(*diff))
    assert in_level_two(t2) and is_symplectic(t2, std)


def _parallel(u, v):
    """u is a multiple of v (2x2 minors vanish)."""
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


@given(genera, seeds)
def test_reduction_is_multiplicative(g, seed):
    rng = random.Random(seed)
    m, n = random_symplectic(g, rng, 8), random_symplectic(g, rng, 8)
    assert reduce_mod2(mat_mul(m, n)) == f2_mul(reduce_mod2(m), reduce_mod2(n))
    assert reduce_mod2(identity(2 * g)) == f2_identity(2 * g)
    assert f2_is_symplectic(reduce_mod2(m), standard_form(g))


@given(genera, seeds)
def test_symplectic_inverse(g, seed):
    m = random_symplectic(g, random.Random(seed), 10)
    assert is_identity(mat_mul(m, symplectic_inverse(m, standard_form(g))))


def test_spf2_packing_and_matrix_view():
    n = SpF2((0b01, 0b11))
    assert SpF2.unpack(n.pack(), 2) == n
    assert f2_to_matrix(n) == ((1, 1), (0, 1))
    assert f2_apply(n, 0b10) == 0b11


def test_level_two_membership():
    rng = random.Random(5)
    std = standard_form(3)
    for _ in range(50):
        m = identity(6)
        for _ in range(4):
            v = [rng.randint(-2, 2) for _ in range(6)]
            if any(v):
                m = mat_mul(m, transvection(v, std, 2 * rng.choice((1, -1))))
        assert in_level_two(m)
    for i in range(1, 7):
        assert not in_level_two(burau_symplectic(BraidWord.generator(7, i)))


# ------------------------------------------------------------ completion


def _gram_ok(a, b, form):
    g = form.g
    return all(
        form.pair(a[i], a[j]) == 0 and form.pair(b[i], b[j]) == 0 and form.pair(a[i], b[j]) == (i == j)
        for i in range(g)
        for j in range(g)
    )


def test_complete_empty_and_single():
    std = standard_form(3)
    a, b = complete_partial_basis(PartialSymplecticBasis((), (), std))
    assert _gram_ok(a, b, std)
    a, b = complete_partial_basis(PartialSymplecticBasis((unit(6, 0),), (), std))
    assert a[0] == unit(6, 0) and _gram_ok(a, b, std)


@given(st.integers(1, 4), seeds, st.data())
def test_complete_random_truncations(g, seed, data):
    rng = random.Random(seed)
    form = data.draw(st.sampled_from([standard_form(g), chain_symplectic_form(g)]))
    T = random_symplectic(g, rng, 12, form)
    full_a, full_b = complete_partial_basis(PartialSymplecticBasis((), (), form))
    k = data.draw(st.integers(0, g))
    l = data.draw(st.integers(0, k))
    a = [mat_vec(T, v) for v in full_a[:k]]
    b = [mat_vec(T, v) for v in full_b[:l]]
    A, B = complete_partial_basis(PartialSymplecticBasis(tuple(a), tuple(b), form))
    assert list(A[:k]) == a and list(B[:l]) == b
    assert _gram_ok(A, B, form)


def test_complete_rejects_non_primitive():
    std = standard_form(2)
    with pytest.raises((ValueError, AssertionError)):
        complete_partial_basis(PartialSymplecticBasis(((2, 0, 0, 0),), (), std))
    with pytest.raises((ValueError, AssertionError)):
        complete_partial_basis(PartialSymplecticBasis(((1, 0, 0, 0),), ((0, 1, 0, 0),), std))


def test_complete_over_f2():
    std = standard_form(3)
    a, b = complete_partial_basis(PartialSymplecticBasis(((1, 1, 0, 0, 0, 0),), (), std, "F2"))
    assert a[0] == (1, 1, 0, 0, 0, 0)
    for i in range(3):
        for j in range(3):
            assert std.pair(a[i], b[j]) % 2 == (i == j)
            assert std.pair(a[i], a[j]) % 2 == 0 and std.pair(b[i], b[j]) % 2 == 0


# ------------------------------------------------------------ lifting


def test_lift_identity_and_transvection():
    std = standard_form(2)
    assert lift_mod2(f2_identity(4)) == identity(4)
    w = 0b0101
    m = lift_mod2(f2_transvection(w, std))
    assert reduce_mod2(m) == f2_transvection(w, std) and is_symplectic(m, std)


def test_lift_round_trip_exhaustive_g2():
    group = enumerate_sp_f2(2)
    std = standard_form(2)
    for packed in group.elements:
        n = SpF2.unpack(int(packed), 4)
        m = lift_mod2(n)
        assert reduce_mod2(m) == n and is_symplectic(m, std)


@given(st.integers(1, 4), seeds)
def test_factorization_reproduces_element(g, seed):
    rng = random.Random(seed)
    for form in (standard_form(g), chain_symplectic_form(g)):
        n = reduce_mod2(random_symplectic(g, rng, 15, form))
        ws = factor_f2_transvections(n, form)
        assert len(ws) <= 4 * g
        acc = f2_identity(2 * g)
        for w in ws:
            acc = f2_mul(acc, f2_transvection(w, form))
        assert acc == n
        m = lift_mod2(n, form)
        assert reduce_mod2(m) == n and is_symplectic(m, form)


def test_stabilizer_lift_examples():
    std = standard_form(3)
    a1 = unit(6, 0)
    assert lift_mod2_stabilizer(f2_identity(6), [a1]) == identity(6)
    n = reduce_mod2(transvection(unit(6, 3), std, 2))
    m = lift_mod2_stabilizer(n, [a1])
    assert mat_vec(m, a1) == a1 and reduce_mod2(m) == n
    with pytest.raises(ValueError):
        lift_mod2_stabilizer(f2_transvection(0b001000, std), [a1])


def test_stabilizer_lift_random_fixing_a1():
    rng = random.Random(11)
    std = standard_form(3)
    a1 = unit(6, 0)
    for _ in range(100):
        m = identity(6)
        for _ in range(10):
            v = [rng.randint(-1, 1) for _ in range(6)]
            v[3] = 0
            if any(v):
                m = mat_mul(m, transvection(v, std, rng.choice((1, -1))))
        n = reduce_mod2(m)
        out = lift_mod2_stabilizer(n, [a1])
        assert mat_vec(out, a1) == a1 and reduce_mod2(out) == n and is_symplectic(out, std)


@given(st.integers(2, 4), seeds, st.data())
def test_stabilizer_lift_general(g, seed, data):
    rng = random.Random(seed)
    std = standard_form(g)
    d = 2 * g
    k = data.draw(st.integers(0, g))
    l = data.draw(st.integers(0, g))
    if k + l == 0:
        return
    T = random_symplectic(g, rng, 10)
    a = [mat_vec(T, unit(d, i)) for i in range(k)]
    b = [mat_vec(T, unit(d, g + i)) for i in range(l)]
    w = identity(d)
    for _ in range(8):
        v = [rng.randint(-1, 1) for _ in range(d)]
        for i in range(k):
            v[g + i] = 0
        for i in range(l):
            v[i] = 0
        if any(v):
            w = mat_mul(w, transvection(v, std, rng.choice((1, -1))))
    n = reduce_mod2(mat_mul(mat_mul(T, w), symplectic_inverse(T, std)))
    out = lift_mod2_stabilizer(n, a, b)
    assert reduce_mod2(out) == n and is_symplectic(out, std)
    assert all(mat_vec(out, v) == tuple(v) for v in a + b)


# ------------------------------------------------------------ geometric basis and correctors


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_geometric_basis_matches_curves(g):
    n = 2 * g + 1
    P = geometric_standard_basis(g)
    form = geometric_form(g)
    cols = list(zip(*P))
    a, b = cols[:g], cols[g:]
    for i in range(g):
        for j in range(g):
            assert form.pair(a[i], b[j]) == (i == j)
    for i in range(2, g + 1):
        e = lift_class(n, (2, 3, 2 * i, 2 * i + 1))
        f = lift_class(n, (1,) + tuple(range(4, 2 * i + 1)))
        assert lax_equal(tuple(x + y for x, y in zip(a[0], a[i - 1])), e)
        assert lax_equal(tuple(x + y for x, y in zip(a[0], b[i - 1])), f)


@given(st.integers(2, 4), seeds)
def test_coordinate_changes_are_inverse(g, seed):
    m = random_symplectic(g, random.Random(seed), 8)
    assert chain_to_standard(standard_to_chain(m, g), g) == m
    c = standard_to_chain(m, g)
    assert is_symplectic(c, chain_symplectic_form(g))


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_corrector_vectors_are_curve_lifts(g):
    n = 2 * g + 1
    ctx = DiskContext(n)
    P = geometric_standard_basis(g)
    for v, curve in corrector_curves(g).items():
        assert lax_equal(mat_vec(P, v), lift_class(n, curve))
        assert geometric_intersection(ctx, curve, (2, 3)) == 0


def test_corrector_identity_and_single_transvection():
    assert stabilizer_corrector_single(identity(6)) == identity(6)
    assert stabilizer_corrector_pair(identity(6)) == identity(6)
    std = standard_form(3)
    y = transvection(unit(6, 0), std, 2)  # tau_{a1}^2: b1 -> b1 - 2 a1
    z = stabilizer_corrector_single(y)
    assert mat_vec(mat_mul(z, y), unit(6, 3)) == unit(6, 3)


def test_corrector_rejects_bad_input():
    std = standard_form(3)
    with pytest.raises(ValueError):
        stabilizer_corrector_single(transvection(unit(6, 3), std, 1))
    with pytest.raises(ValueError):
        stabilizer_corrector_single(transvection(unit(6, 3), std, 2))  # moves a1
    with pytest.raises(ValueError):
        stabilizer_corrector_pair(transvection(unit(6, 4), std, 2))  # moves a2


@given(st.integers(2, 4), seeds)
def test_corrector_contracts(g, seed):
    rng = random.Random(seed)
    d = 2 * g
    y = random_stabilizer_level2(g, rng, fixed=(0,))
    z = stabilizer_corrector_single(y)
    assert mat_vec(mat_mul(z, y), unit(d, g)) == unit(d, g)
    assert in_level_two(z)
    col = [y[i][g] for i in range(d)]
    assert all(e % 2 == 0 for _, e in corrector_factors(col[:g], col[g:], g))
    y2 = random_stabilizer_level2(g, rng, fixed=(0, 1), flip=True)
    z2 = stabilizer_corrector_pair(y2)
    assert mat_vec(mat_mul(z2, y2), unit(d, g)) == unit(d, g)
    assert mat_vec(z2, unit(d, 1)) == unit(d, 1)


@pytest.mark.parametrize("g", [3, 4])
def test_xi_generating_set(g):
    xs = xi_generating_set(g)
    assert len(xs) == 2 * g + 1
    assert mat_scale(-1, identity(2 * g)) in xs
    v23 = lift_class(2 * g + 1, (2, 3))
    for x in xs:
        assert lax_equal(mat_vec(x, v23), v23)
        assert is_symplectic(x, chain_symplectic_form(g))
    with pytest.raises(ValueError):
        xi_generating_set(2)


# ------------------------------------------------------------ enumeration


def test_enumeration_small_orders():
    assert enumerate_sp_f2(1).order == 6
    group = enumerate_sp_f2(2)
    assert group.order == 720
    assert f2_identity(4) in group
    assert SpF2((0b0001, 0b0001, 0b0100, 0b1000)) not in group
    with pytest.raises(ValueError):
        enumerate_sp_f2(4)


def test_braid_images_mod2_lie_in_the_group():
    group = enumerate_sp_f2(2)
    for i in range(1, 5):
        m = chain_to_standard(burau_symplectic(BraidWord.generator(5, i)), 2)
        assert reduce_mod2(m) in group


def test_closure_of_a_cyclic_group():
    std = standard_form(1)
    t = f2_transvection(0b01, std)
    assert closure_order([t]).size == 2

import random
from itertools import combinations
from math import comb

import pytest

from hypertorelli.braid_burau import burau_symplectic, chain_form, curve_twist_word, lift_class, transvection_matrix
from hypertorelli.exact_linalg import identity, is_identity, mat_mul, mat_sub, rank_q
from hypertorelli.hull_oracle import _cross, _thicken, intersection_by_geometry, marked_points
from hypertorelli.marked_disk import DiskContext, alg_intersection_abs, geometric_intersection
from hypertorelli.presentations import (
    b0_word,
    generate_RQ,
    generate_RSp,
    generate_RSp_hat,
    involved_curves,
    reducibility_criterion,
    s_cijk_word,
    shadow_pi,
    sp_curves,
    sp_eval,
    surgery_shadow,
    verify_the_fact,
    verify_q_shadow,
    verify_reducibility_sweep,
    verify_sp_relations,
    verify_surgery_consistency,
)


def test_curve_table():
    c = sp_curves(3)
    assert len(c) == 7 + 10
    assert c["a0"].members == (1, 2, 3, 4)
    assert c["v''"].members == (1, 2, 3, 4, 6, 7)
    assert c["a6"].members == (6, 7)
    with pytest.raises(ValueError):
        sp_curves(2)


def test_rq_census():
    rels = generate_RQ(3)
    fam = {}
    for r in rels:
        fam.setdefault(r.family, []).append(r)
    assert len(fam["odd_twist"]) == comb(7, 3) + comb(7, 5) + comb(7, 7) == 57
    assert len(fam["disjointness_Q"]) == 2 * comb(7, 4)
    assert len(fam["crossing"]) == 4 * comb(7, 4)
    assert all(len(r.word) == 6 for r in fam["triangle"])
    assert len({r.case_id for r in rels}) == len(rels)


def test_rsp_families():
    rels = generate_RSp(3)
    families = {r.family.split("(")[0] for r in rels}
    assert families == {"disjointness_Sp", "braid", "chain3", "lantern", "auxiliary", "bounding_pair"}
    aux = [r for r in rels if r.family.startswith("auxiliary")]
    assert len(aux) == 10
    vii = next(r for r in aux if r.family == "auxiliary(vii)")
    # t_v = t_u t_u' t_u^-1, written as t_v (t_u t_u' t_u^-1)^-1
    assert vii.word == (("v", 1), ("u", 1), ("u'", -1), ("u", -1))
    hat = generate_RSp_hat(3)
    assert len(hat) == len(rels) + 17


def test_sp_eval_examples():
    assert sp_eval((), 3) == identity(6)
    lhs = sp_eval((("a1", 1), ("a2", 1), ("a1", 1)), 3)
    rhs = sp_eval((("a2", 1), ("a1", 1), ("a2", 1)), 3)
    assert lhs == rhs
    chain = tuple(("a" + str(i), 1) for i in (1, 2, 3)) * 4
    assert sp_eval(chain, 3) == sp_eval((("a0", 1),) + b0_word(), 3)
    assert sp_eval((("a1", 2),), 3) == sp_eval((("a1", 1), ("a1", 1)), 3)


@pytest.mark.parametrize("g", [3, 4, 5])
def test_sp_relations_hold(g):
    rep = verify_sp_relations(g)
    assert rep.ok, rep.failures[:3]
    assert rep.total_cases == len(generate_RSp(g))


def test_shadow_single_generator():
    m = shadow_pi((((2, 5), 1),), 3)
    assert rank_q(mat_sub(m, identity(6))) == 1
    assert is_identity(shadow_pi((((2, 5), 1), ((2, 5), -1)), 3))


def test_s_cijk():
    assert shadow_pi(s_cijk_word(1, 2, 3), 3) == burau_symplectic(curve_twist_word(7, (1, 2, 3)))
    assert shadow_pi(s_cijk_word(2, 3, 1), 3) == shadow_pi(s_cijk_word(1, 2, 3), 3)
    w = s_cijk_word(2, 4, 7)
    assert is_identity(shadow_pi(w + w, 3))
    with pytest.raises(ValueError):
        s_cijk_word(1, 1, 2)


def test_surgery_examples():
    # disjoint: unchanged
    assert surgery_shadow(("a1", 1), (4, 5), 3) == shadow_pi((((4, 5), 1),), 3)
    # a1 = c{1,2} acting on c{2,3}: the two half-twist images have classes v23 +- v12,
    # and one of them is the convex chord c{1,3}
    form = chain_form(3)
    v12, v23 = lift_class(7, (1, 2)), lift_class(7, (2, 3))
    images = {eps: surgery_shadow(("a1", eps), (2, 3), 3) for eps in (1, -1)}
    classes = [tuple(x + s * y for x, y in zip(v23, v12)) for s in (1, -1)]
    assert sorted(images.values()) == sorted(transvection_matrix(c, form, 2) for c in classes)
    assert transvection_matrix(lift_class(7, (1, 3)), form, 2) in images.values()
    for eps, m in images.items():
        t, tinv = sp_eval((("a1", eps),), 3), sp_eval((("a1", -eps),), 3)
        assert m == mat_mul(mat_mul(t, shadow_pi((((2, 3), 1),), 3)), tinv)


@pytest.mark.parametrize("g", [3, 4])
def test_surgery_consistency(g):
    rep = verify_surgery_consistency(g)
    assert rep.ok, rep.failures[:3]


def test_q_shadow_g3():
    rep = verify_q_shadow(3)
    assert rep.ok, rep.failures[:3]
    assert rep.total_cases == (1 + 17 * 2) * len(generate_RQ(3))


@pytest.mark.slow
def test_q_shadow_g4():
    assert verify_q_shadow(4).ok


def test_corrupted_rule_is_caught():
    def swapped(ctx, a, c):
        # 0 and 2 exchanged in the four-crossing case
        k = alg_intersection_abs(ctx, a, c)
        return 2 - k if geometric_intersection(ctx, a, c) == 4 else k

    rep = verify_q_shadow(3, abs_rule=swapped)
    assert not rep.ok
    rep2 = verify_q_shadow(3, abs_rule=lambda ctx, a, c: 1 if geometric_intersection(ctx, a, c) else 0)
    assert not rep2.ok


# ------------------------------------------------------------ reducibility


def test_reducibility_examples():
    rels = {r.family: r for r in generate_RSp(3)}
    vii = rels["auxiliary(vii)"]
    assert reducibility_criterion(vii, (4, 7), 3) is None
    assert reducibility_criterion(vii, (4, 6), 3) == 3
    braid = next(r for r in generate_RSp(3) if r.family == "braid" and r.params == ("a1", "a2"))
    assert reducibility_criterion(braid, (5, 6), 3) == 1


@pytest.mark.parametrize("g,exceptions", [(3, [["auxiliary(vii)", [4, 7]]]), (4, []), (5, [])])
def test_reducibility_sweep(g, exceptions):
    rep = verify_reducibility_sweep(g)
    assert rep.ok, rep.failures
    assert rep.notes["exceptions"] == exceptions


def _segment_crossings(poly, p, q):
    count = 0
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        d1, d2 = _cross(p, q, a), _cross(p, q, b)
        d3, d4 = _cross(a, b, p), _cross(a, b, q)
        assert 0 not in (d1, d2, d3, d4)
        if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
            count += 1
    return count


def _geometric_conditions(r, chord, g):
    n = 2 * g + 1
    pts = marked_points(n)
    curves = [tuple(chord)] + [a.members for a in involved_curves(r, g)]
    polys = [_thicken(n, c, {}) for c in curves]
    cond1 = all(intersection_by_geometry(n, chord, c) == 0 for c in curves[1:])
    # a radial segment from the point far out past the disk
    cond2 = any(
        all(_segment_crossings(P, pts[k], (pts[k][0] * 3, pts[k][1] * 3)) == 0 for P in polys) for k in range(n)
    )
    cond3 = any(all(_segment_crossings(P, pts[k], pts[(k + 1) % n]) == 0 for P in polys) for k in range(n))
    return cond1, cond2, cond3


def test_reducibility_agrees_with_geometry():
    g = 3
    rng = random.Random(0)
    cases = [(r, c) for r in generate_RSp_hat(g) for c in combinations(range(1, 8), 2)]
    sample = rng.sample(cases, 150)
    vii = next(r for r in generate_RSp(g) if r.family == "auxiliary(vii)")
    sample += [(vii, (4, 7)), (vii, (4, 6))]
    for r, c in sample:
        geo = _geometric_conditions(r, c, g)
        want = next((i + 1 for i, ok in enumerate(geo) if ok), None)
        assert reducibility_criterion(r, c, g) == want, (r.case_id, c, geo)


@pytest.mark.parametrize("g", [3, 4])
def test_the_fact(g):
    rep = verify_the_fact(g)
    assert rep.ok
    assert rep.notes["non_example"]["max_intersection"] > 4


def test_the_fact_non_example_witness():
    ctx = DiskContext(7)
    assert geometric_intersection(ctx, (1, 2, 4, 6), (3, 5, 7)) == 6

"""Verification suites.  Each returns a SuiteReport; an empty failure list is a pass."""

from __future__ import annotations

import random
from itertools import combinations
from math import gcd
from typing import Callable, Dict, Optional

from . import presentations as pres
from .braid_burau import (
    BraidWord,
    burau_symplectic,
    chain_form,
    curve_twist_word,
    exponent_sum,
    lift_class,
    pure_twist_word,
    transvection_matrix,
)
from .complexes import (
    build_ib_f2,
    build_ibhat_f2,
    build_tits_f2,
    homology_profile,
    match_simplices,
    random_basis_f2,
    random_z_simplex,
    reduce_simplex,
    apply_to_simplex,
    standard_basis_f2,
    verify_setsofvec,
    verify_sphere_filling,
)
from .exact_linalg import (
    identity,
    is_identity,
    lax_equal,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    matrix_to_json,
    primitive_normalize,
    rank_q,
)
from .marked_disk import DiskContext, all_chords, alg_intersection_abs
from .reporting import SuiteReport, timed
from .symplectic import (
    chain_symplectic_form,
    chain_to_standard,
    closure_order,
    corrector_curves,
    corrector_factors,
    enumerate_sp_f2,
    geometric_standard_basis,
    in_level_two,
    is_symplectic,
    lift_mod2,
    lift_mod2_stabilizer,
    random_stabilizer_level2,
    random_symplectic,
    reduce_mod2,
    standard_form,
    stabilizer_corrector_pair,
    stabilizer_corrector_single,
    symplectic_inverse,
    transvection,
    xi_generating_set,
)

__all__ = ["SUITES", "run_suite", "SP_ORDERS"]

SP_ORDERS = {1: 6, 2: 720, 3: 1451520}


def sp_relations(g: int, **_) -> SuiteReport:
    return pres.verify_sp_relations(g)


def reducibility(g: int, **_) -> SuiteReport:
    return pres.verify_reducibility_sweep(g)


def q_shadow(g: int, **_) -> SuiteReport:
    rep = pres.verify_q_shadow(g)
    surg = pres.verify_surgery_consistency(g)
    rep.total_cases += surg.total_cases
    rep.failures += surg.failures
    rep.elapsed_ms += surg.elapsed_ms
    rep.notes["surgery_consistency_cases"] = surg.total_cases
    return rep


def the_fact(g: int, **_) -> SuiteReport:
    rep = pres.verify_the_fact(g)
    non = rep.notes["non_example"]
    rep.check(non["max_intersection"] > 4, "non-example:c{1,2,4,6}", "c{1,2,4,6}", "> 4", non["max_intersection"])
    return rep


def burau_kernel(g: int, **_) -> SuiteReport:
    """Pure twists vanish mod 2, squared odd twists vanish, the full twist is -I,
    and each even twist is the square of the transvection along its lift."""
    n = 2 * g + 1
    rep = SuiteReport("burau-kernel", g)
    d = 2 * g
    form = chain_form(g)
    with timed(rep):
        for i, j in combinations(range(1, n + 1), 2):
            m = burau_symplectic(pure_twist_word(n, i, j))
            rep.check(in_level_two(m), f"A{i}{j}", [i, j], "I mod 2", matrix_to_json(m))
        for k in range(3, n + 1, 2):
            for B in combinations(range(1, n + 1), k):
                m = burau_symplectic(curve_twist_word(n, B) ** 2)
                rep.check(is_identity(m), f"odd{B}^2", list(B), "identity", matrix_to_json(m))
        full = burau_symplectic(curve_twist_word(n, range(1, n + 1)))
        rep.check(full == mat_scale(-1, identity(d)), "full-twist", n, "-I", matrix_to_json(full))
        for k in range(2, n, 2):
            for A in combinations(range(1, n + 1), k):
                m = burau_symplectic(curve_twist_word(n, A))
                v = lift_class(n, A)
                ok = rank_q(mat_sub(m, identity(d))) == 1 and primitive_normalize(v) == v
                ok = ok and m == transvection_matrix(v, form, 2)
                rep.check(ok, f"even{A}", list(A), "tau_v^2 with primitive v", matrix_to_json(m))
    return rep


def abelianization(g: Optional[int] = None, **_) -> SuiteReport:
    """Exponent sum of a squared odd twist about 2k+1 points is 8k^2 + 4k."""
    rep = SuiteReport("abelianization", None)
    with timed(rep):
        sums = {}
        for k in range(1, 5):
            n = 2 * k + 1
            s = exponent_sum(curve_twist_word(n, range(1, n + 1)) ** 2)
            sums[n] = s
            rep.check(s == 8 * k * k + 4 * k, f"k={k}", n, 8 * k * k + 4 * k, s)
        rep.check(sums[3] == 12 and sums[5] == 40, "small", [3, 5], [12, 40], [sums[3], sums[5]])
        rep.check(gcd(sums[3], sums[5]) == 4, "gcd", [12, 40], 4, gcd(sums[3], sums[5]))
        rep.notes["exponent_sums"] = {str(n): s for n, s in sums.items()}
        rep.notes["gcd_12_40"] = gcd(12, 40)
    return rep


def alg_intersection(g: int, **_) -> SuiteReport:
    """|i|(a, c) from the combinatorial rule equals |<lift a, lift c>|."""
    n = 2 * g + 1
    ctx = DiskContext(n)
    form = chain_symplectic_form(g)
    rep = SuiteReport("alg-intersection", g)
    with timed(rep):
        for name, a in pres.sp_curves(g).items():
            va = lift_class(n, a)
            for c in all_chords(ctx):
                want = abs(form.pair(va, lift_class(n, c)))
                got = alg_intersection_abs(ctx, a, c)
                rep.check(got == want, f"{name}:{c}", [str(a), str(c)], want, got)
    return rep


def enumeration(g: int, **_) -> SuiteReport:
    """|Sp_2g(F2)| by closure, and whether the mod-2 braid images generate it."""
    rep = SuiteReport("enumeration", g)
    with timed(rep):
        group = enumerate_sp_f2(g)
        rep.check(group.order == SP_ORDERS[g], "order", g, SP_ORDERS[g], group.order)
        n = 2 * g + 1
        gens = [reduce_mod2(chain_to_standard(burau_symplectic(BraidWord.generator(n, i)), g)) for i in range(1, n)]
        rep.check(all(x in group for x in gens), "braid-images-in-group", g, True, False)
        braid_order = int(closure_order(gens).size)
        rep.notes["braid_image_order"] = braid_order
        rep.check(braid_order == group.order, "braid-images-generate", g, group.order, braid_order)
        if g >= 2:
            # one extra transvection, along the lift of c{1,2,3,4}, meets only x_4 mod 2
            v = lift_class(n, (1, 2, 3, 4))
            extra = reduce_mod2(chain_to_standard(transvection(v, chain_symplectic_form(g)), g))
            full = int(closure_order(gens + [extra]).size)
            rep.notes["braid_plus_one_order"] = full
            rep.check(full == group.order, "braid-plus-one-generate", g, group.order, full)
    return rep


def complex_homology(g: int, which: str = "all", **_) -> SuiteReport:
    """Reduced homology of the Tits building, IB and (g = 3) the augmented complex."""
    rep = SuiteReport("complex-homology", g)
    with timed(rep):
        targets = ["tits", "ib"] + (["ibhat"] if g == 3 else [])
        if which != "all":
            targets = [which]
        profiles = {}
        for name in targets:
            X = {"tits": build_tits_f2, "ib": build_ib_f2, "ibhat": build_ibhat_f2}[name](g)
            rep.check(X.is_closed(), f"{name}:closed", g, True, False)
            prof = homology_profile(X, "z" if name == "ibhat" else "both")
            profiles[name] = prof.to_json()
            rep.check(prof.euler_check(), f"{name}:euler", g, True, False)
            top = g - 1
            for h in prof.degrees:
                if name == "ibhat":
                    if h.degree <= 2:
                        rep.check(h.betti_z == 0 and not h.torsion, f"{name}:H{h.degree}", g, 0, [h.betti_z, list(h.torsion)])
                    continue
                if h.degree == top:
                    if name == "tits":
                        want = 2 ** (g * g)
                        rep.check(h.betti_z == want and h.betti_f2 == want, f"{name}:H{top}", g, want, h.betti_z)
                    else:
                        rep.check(h.betti_z == h.betti_f2 and h.betti_z > 0, f"{name}:H{top}", g, "free", h.betti_z)
                else:
                    rep.check(h.betti_z == 0 and h.betti_f2 == 0, f"{name}:H{h.degree}", g, 0, [h.betti_z, h.betti_f2])
        rep.notes["profiles"] = profiles
    return rep


def sphere_filling(g: int = 3, seed: int = 0, samples: int = 50, **_) -> SuiteReport:
    rep = SuiteReport("sphere-filling", 3)
    rng = random.Random(seed)
    with timed(rep):
        ok, cert = verify_sphere_filling(*standard_basis_f2(3))
        rep.check(ok, "standard", "standard basis", True, cert)
        for t in range(samples):
            a, b = random_basis_f2(3, rng)
            ok, cert = verify_sphere_filling(a, b)
            rep.check(ok, f"random-{t}", [a, b], True, cert)
        a, b = standard_basis_f2(3)
        bad_ok, _ = verify_sphere_filling([a[0] ^ b[1]] + a[1:], b)
        rep.check(not bad_ok, "perturbed", "a1 -> a1 + b2", "rejected", "accepted")
    return rep


def constructive(g: int = 3, seed: int = 0, correctors: int = 1000, lifts: int = 200, matches: int = 500, **_) -> SuiteReport:
    """Correctors, mod-2 lifts and simplex matching on random inputs."""
    rep = SuiteReport("constructive", g)
    rng = random.Random(seed)
    std = standard_form(g)
    d = 2 * g
    e = [tuple(1 if k == i else 0 for k in range(d)) for i in range(d)]
    curves = corrector_curves(g)
    P = geometric_standard_basis(g)
    n = 2 * g + 1
    with timed(rep):
        for t in range(correctors):
            y = random_stabilizer_level2(g, rng, fixed=(0,))
            z = stabilizer_corrector_single(y)
            zy = mat_mul(z, y)
            ok = tuple(r[g] for r in zy) == e[g] and in_level_two(z) and is_symplectic(z, std)
            ok = ok and _factors_are_curves(y, g, curves, P, n, avoid=((2, 3),))
            rep.check(ok, f"single-{t}", matrix_to_json(y), "Z Y b1 = b1", matrix_to_json(zy))
        for t in range(correctors):
            y = random_stabilizer_level2(g, rng, fixed=(0, 1), flip=True)
            z = stabilizer_corrector_pair(y)
            zy = mat_mul(z, y)
            ok = tuple(r[g] for r in zy) == e[g] and tuple(r[1] for r in z) == e[1] and in_level_two(z)
            ok = ok and _factors_are_curves(y, g, curves, P, n, avoid=((2, 3), (4, 5)))
            rep.check(ok, f"pair-{t}", matrix_to_json(y), "Z Y b1 = b1, Z a2 = a2", matrix_to_json(zy))
        for t in range(lifts):
            target = reduce_mod2(random_symplectic(g, rng, 20))
            m = lift_mod2(target)
            rep.check(reduce_mod2(m) == target and is_symplectic(m, std), f"lift-{t}", None, "round trip", matrix_to_json(m))
        for t in range(lifts):
            k = rng.randint(1, g)
            l = rng.randint(0, k)
            T = random_symplectic(g, rng, 12)
            a = [mat_vec(T, e[i]) for i in range(k)]
            b = [mat_vec(T, e[g + i]) for i in range(l)]
            # something fixing the a's and b's: conjugate of a stabilizer word
            w = identity(d)
            for _ in range(8):
                v = [rng.randint(-1, 1) for _ in range(d)]
                for i in range(k):
                    v[g + i] = 0
                for i in range(l):
                    v[i] = 0
                if any(v):
                    w = mat_mul(w, transvection(v, std, rng.choice((1, -1))))
            target = reduce_mod2(mat_mul(mat_mul(T, w), symplectic_inverse(T, std)))
            m = lift_mod2_stabilizer(target, a, b)
            ok = reduce_mod2(m) == target and all(mat_vec(m, v) == tuple(v) for v in a + b)
            rep.check(ok, f"stabilizer-lift-{t}", [k, l], "fixes and reduces", matrix_to_json(m))
        for t in range(matches):
            kind = rng.choice(["standard", "intersection", "additive"])
            size = {"standard": rng.randint(1, g), "intersection": rng.randint(2, g + 1), "additive": rng.randint(3, g + 1)}[kind]
            T = random_symplectic(g, rng, 10)
            s1 = random_z_simplex(g, rng, kind, size, T)
            y = _random_level2(g, rng)
            s2 = s1
            if kind == "additive" and rng.random() < 0.5:
                # same reduction, possibly different signs and summands
                other = random_z_simplex(g, rng, kind, size, T)
                if reduce_simplex(other) == reduce_simplex(s1):
                    s2 = other
            s2 = apply_to_simplex(y, s2)
            try:
                m = match_simplices(s1, s2)
                ok = in_level_two(m) and sorted(map(primitive_normalize, apply_to_simplex(m, s1))) == sorted(
                    map(primitive_normalize, s2)
                )
                got = matrix_to_json(m)
            except (AssertionError, ValueError) as exc:
                ok, got = False, str(exc)
            rep.check(ok, f"match-{t}", [kind, [list(v) for v in s1], [list(v) for v in s2]], "M in Sp[2] with M S1 = S2", got)
        for t, x in enumerate(xi_generating_set(max(g, 3))):
            v23 = lift_class(2 * max(g, 3) + 1, (2, 3))
            rep.check(lax_equal(mat_vec(x, v23), v23), f"xi-{t}", t, "fixes <v23>", list(mat_vec(x, v23)))
    return rep


def _factors_are_curves(y, g, curves, P, n, avoid) -> bool:
    from .marked_disk import geometric_intersection

    ctx = DiskContext(n)
    ell = [y[i][g] for i in range(g)]
    m = [y[g + i][g] for i in range(g)]
    for v, ex in corrector_factors(ell, m, g):
        if ex % 2:
            return False
        c = curves.get(v)
        if c is None or not lax_equal(mat_vec(P, v), lift_class(n, c)):
            return False
        if any(geometric_intersection(ctx, c, x) for x in avoid):
            return False
    return True


def _random_level2(g: int, rng: random.Random):
    std = standard_form(g)
    m = identity(2 * g)
    for _ in range(4):
        v = [rng.randint(-1, 1) for _ in range(2 * g)]
        if any(v):
            m = mat_mul(m, transvection(v, std, 2 * rng.choice((1, -1))))
    return m


def setsofvec(g: Optional[int] = None, n_max: int = 4, **_) -> SuiteReport:
    rep = SuiteReport("setsofvec", None)
    with timed(rep):
        for n in range(1, n_max + 1):
            ok, census = verify_setsofvec(n)
            rep.check(ok, f"n={n}", n, True, census)
            rep.notes[f"n={n}"] = {str(k): v for k, v in sorted(census.items())}
    return rep


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "sp-relations": sp_relations,
    "reducibility": reducibility,
    "q-shadow": q_shadow,
    "burau-kernel": burau_kernel,
    "abelianization": abelianization,
    "alg-intersection": alg_intersection,
    "the-fact": the_fact,
    "enumeration": enumeration,
    "complex-homology": complex_homology,
    "sphere-filling": sphere_filling,
    "constructive": constructive,
    "setsofvec": setsofvec,
}


def run_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**params)

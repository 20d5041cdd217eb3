import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stringtop.complexes import ChainComplex, sign
from stringtop.dga import DGCategory, category_from_algebra, validate_dg_category, validate_dga
from stringtop.hochschild import (CochainOverflow, connes_b, cup, gerstenhaber, hh, hh_category, hhc,
                                  hochschild_boundary, hochschild_complex)
from stringtop.models import exterior_algebra, loop_homology_oracle, polynomial_algebra, truncated_polynomial


def nz(d):
    return {k: v for k, v in sorted(d.items()) if v}


GROUND = validate_dga({"basis": [("1", 0)], "unit": "1", "augmentation": [("1", 1)]})
UPPER = validate_dga({"basis": [("1", 0), ("e", 0), ("n", 0)], "unit": "1",
                      "multiplication": [("e", "e", "e", 1), ("e", "n", "n", 1)],
                      "augmentation": [("1", 1), ("e", 1)]})
SPLIT = validate_dga({"basis": [("1", 0), ("e", 0)], "unit": "1", "multiplication": [("e", "e", "e", 1)],
                      "augmentation": [("1", 1)]})


def test_hh_ground_field():
    assert nz(hh(GROUND, window=(-3, 3)).dims) == {0: 1}
    assert nz(hhc(GROUND, window=(-3, 3)).dims) == {0: 1}


def test_hh_polynomial_matches_oracle():
    r = hh(polynomial_algebra(2, 14), window=(0, 9))
    assert r.dims_list() == [1, 0, 1, 1, 1, 1, 1, 1, 1, 1]
    oracle = loop_homology_oracle(3, (0, 9))
    assert r.dims_list() == [oracle[n] for n in range(10)]
    assert r.report.stable


def test_hh_one_object_category():
    A = truncated_polynomial(0, 3)
    assert hh(category_from_algebra(A), window=(0, 4), cutoff=6).dims == hh(A, window=(0, 4), cutoff=6).dims


@pytest.mark.parametrize("a, center", [(UPPER, 1), (SPLIT, 2), (truncated_polynomial(0, 3), 3)],
                         ids=["upper-triangular", "k x k", "k[x]/x^3"])
def test_hhc_zero_is_center(a, center):
    r = hhc(a, window=(-1, 1), cutoff=6)
    assert r.dims[0] == center


def test_small_algebra_values():
    # k[x]/(x^3): HH_n = 2 for n >= 1, HH^1 = derivations x -> x, x -> x^2
    A = truncated_polynomial(0, 3)
    assert hh(A, window=(0, 3), cutoff=6).dims_list() == [3, 2, 2, 2]
    assert nz(hhc(A, window=(-2, 0), cutoff=6).dims) == {-2: 2, -1: 2, 0: 3}


def test_cup_on_center_is_multiplication():
    A = truncated_polynomial(0, 3)
    h = hhc(A, window=(-2, 1), cutoff=6).source
    for i, j in itertools.product(range(3), repeat=2):
        got = cup(h, {((), i): 1}, {((), j): 1})
        assert got == ({((), i + j): 1} if i + j < 3 else {})


def test_unit_cup_is_identity():
    L = exterior_algebra(-3)
    r = hhc(L, window=(-4, 6))
    h = r.source
    for d, reps in r.representatives.items():
        for f in reps:
            assert cup(h, {((), 0): 1}, f) == {k: v for k, v in f.items() if v}


def test_bracket_on_derivations():
    A = truncated_polynomial(0, 3)
    h = hhc(A, window=(-2, 1), cutoff=6).source
    D1 = {((1,), 1): 1, ((2,), 2): 2}   # x -> x
    D2 = {((1,), 2): 1}                 # x -> x^2
    assert h.is_cocycle(D1) and h.is_cocycle(D2)
    # [D1, D2] = D1 D2 - D2 D1 sends x to 2x^2 - x^2
    b = gerstenhaber(h, D1, D2)
    diff = dict(b)
    diff[((1,), 2)] = diff.get(((1,), 2), 0) - 1
    assert h.is_coboundary(diff)


def test_bracket_self_even_vanishes():
    L = exterior_algebra(-3)
    r = hhc(L, window=(-4, 6))
    h = r.source
    for d in (0, 2, 4):
        for f in r.representatives.get(d, []):
            try:
                assert h.is_coboundary(gerstenhaber(h, f, f))
            except CochainOverflow:
                pass


def test_cup_generators_of_exterior_cohomology():
    L = exterior_algebra(-3)
    r = hhc(L, window=(-4, 6))
    h = r.source
    x, u = r.representatives[-3][0], r.representatives[2][0]
    assert not h.is_coboundary(cup(h, x, u))
    assert not h.is_coboundary(cup(h, u, u))


def _graded_commutative(h, classes, lo, hi):
    for (df, f), (dg, g) in itertools.product(classes, repeat=2):
        if lo <= df + dg <= hi:
            e = dict(cup(h, f, g))
            for k, v in cup(h, g, f).items():
                e[k] = e.get(k, 0) - sign(df * dg) * v
            assert h.is_coboundary(e), (df, dg)


def _derivation(h, classes, lo, hi):
    checked = 0
    for (df, f), (dg, g), (dk, k) in itertools.product(classes, repeat=3):
        if not lo <= df + dg + dk <= hi:
            continue
        try:
            lhs = gerstenhaber(h, f, cup(h, g, k))
            r1 = cup(h, gerstenhaber(h, f, g), k)
            r2 = cup(h, g, gerstenhaber(h, f, k))
        except CochainOverflow:
            continue
        e = dict(lhs)
        for kk, v in r1.items():
            e[kk] = e.get(kk, 0) - v
        for kk, v in r2.items():
            e[kk] = e.get(kk, 0) - sign((df + 1) * dg) * v
        assert h.is_coboundary(e), (df, dg, dk)
        checked += 1
    return checked


@pytest.mark.parametrize("a, window", [(truncated_polynomial(0, 2), (-4, 0)),
                                       (exterior_algebra(-3), (-4, 6))], ids=["k[x]/x^2", "Λ(x-3)"])
def test_cup_commutative_and_bracket_derivation(a, window):
    r = hhc(a, window=window)
    h = r.source
    classes = [(d, z) for d in sorted(r.representatives) for z in r.representatives[d]]
    _graded_commutative(h, classes, *window)
    assert _derivation(h, classes, *window) > 0


def test_connes_b_examples():
    P = polynomial_algebra(2, 14)
    h = hochschild_complex(P, cutoff=6, window=(0, 9))
    assert connes_b(h, {(0, ()): 1}) == {}
    by = connes_b(h, {(1, ()): 1})
    assert by
    assert not hochschild_boundary(h, by)
    assert not h.complex.is_boundary(by, 3)


@pytest.mark.parametrize("a", [truncated_polynomial(0, 2), truncated_polynomial(2, 2), exterior_algebra(-3),
                               exterior_algebra(1)], ids=lambda a: "%s" % (a.name,))
@given(data=st.data())
def test_connes_b_identities(a, data):
    h = hochschild_complex(a, cutoff=5, window=(-20, 20))
    labels = h.complex.labels()
    chain = data.draw(st.dictionaries(st.sampled_from(labels), st.integers(-3, 3), max_size=5))
    chain = {k: v for k, v in chain.items() if v}
    assert connes_b(h, connes_b(h, chain)) == {}
    bB = hochschild_boundary(h, connes_b(h, chain))
    Bb = connes_b(h, hochschild_boundary(h, chain))
    total = dict(bB)
    for k, v in Bb.items():
        total[k] = total.get(k, 0) + v
    assert not {k: v for k, v in total.items() if v}


def test_codiscrete_category_is_morita_trivial():
    c = validate_dg_category({"objects": ["x", "y"],
                              "morphisms": {"x,x": [("ix", 0)], "x,y": [("f", 0)], "y,x": [("g", 0)],
                                            "y,y": [("iy", 0)]},
                              "composition": [("f", "g", "ix", 1), ("g", "f", "iy", 1)],
                              "identity": {"x": "ix", "y": "iy"}})
    assert hh_category(c, window=(0, 4), cutoff=6).dims == hh(GROUND, window=(0, 4), cutoff=6).dims


def test_upper_triangular_category_splits():
    c = validate_dg_category({"objects": ["x", "y"],
                              "morphisms": {"x,x": [("ix", 0), ("a", -3)], "x,y": [("f", 0)], "y,y": [("iy", 0)]},
                              "identity": {"x": "ix", "y": "iy"}})
    W = (-8, 2)
    got = hh_category(c, window=W)
    a = hh(exterior_algebra(-3), window=W).dims
    k = hh(GROUND, window=W).dims
    assert got.dims == {n: a.get(n, 0) + k.get(n, 0) for n in range(W[0], W[1] + 1)}
    assert got.report.stable


def _duplicated(a, names=("p", "q")):
    """Every mor(i, j) a copy of a, composition by multiplication."""
    mor, comp = {}, {}
    for i, j in itertools.product(names, repeat=2):
        mor[(i, j)] = ChainComplex([((i, j, l), d) for l, d in a.complex.basis.elements], {})
    for i, j, k in itertools.product(names, repeat=3):
        for x, y in itertools.product(a.labels(), repeat=2):
            img = a.mul(x, y)
            if img:
                comp[((i, j, x), (j, k, y))] = {(i, k, t): c for t, c in img.items()}
    return DGCategory(list(names), mor, comp, {i: (i, i, a.unit) for i in names})


@pytest.mark.parametrize("a, window", [(truncated_polynomial(0, 2), (0, 3)), (exterior_algebra(-3), (-6, 0))],
                         ids=["k[x]/x^2", "Λ(x-3)"])
def test_duplicating_objects_keeps_hh(a, window):
    one = hh(a, window=window, cutoff=5)
    two = hh_category(_duplicated(a), window=window, cutoff=5)
    assert one.dims == two.dims

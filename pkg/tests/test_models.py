import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringtop.bar import ext, tor
from stringtop.dga import trivial_module
from stringtop.models import (Brane, UnsupportedBrane, WindowTooSmall, even_sphere_cochains, fiber_module,
                              loop_bimodule, loop_homology_oracle, path_algebra, sphere_model)


def nz(d):
    return {k: v for k, v in sorted(d.items()) if v}


def betti(a, lo, hi):
    return nz(a.complex.betti(range(lo, hi + 1)))


def test_s3_cochains_are_exterior():
    m = sphere_model(3, (-10, 10))
    assert betti(m.cochain_algebra, -10, 10) == {-3: 1, 0: 1}


def test_s3_loop_dga_is_polynomial():
    m = sphere_model(3, (-10, 10))
    assert betti(m.loop_dga, 0, 10) == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1, 10: 1}


def test_s2_cochains_have_two_classes():
    m = sphere_model(2, (-12, 6))
    m.cochain_algebra.validate()
    assert betti(m.cochain_algebra, -12, 0) == {-2: 1, 0: 1}


@pytest.mark.parametrize("n", [2, 4])
def test_even_cochains_model(n):
    a = even_sphere_cochains(n, -6 * n)
    a.validate()
    # x^k with k >= 2 is killed by d(x^{k-2} y): only 1 and x survive above the truncation edge
    assert betti(a, -5 * n, 0) == {-n: 1, 0: 1}


def test_even_loop_dga():
    m = sphere_model(2, (-6, 10))
    assert all(v == 1 for v in betti(m.loop_dga, 0, 10).values())
    assert sorted(betti(m.loop_dga, 0, 10)) == list(range(0, 11))


def test_sphere_model_rejects_small_n_and_bad_windows():
    with pytest.raises(ValueError):
        sphere_model(1)
    with pytest.raises(WindowTooSmall):
        sphere_model(3, (2, 8))
    with pytest.raises(WindowTooSmall):
        sphere_model(3, (-4, 8), loop_top=2, module_top=10)


def test_both_algebras_validate():
    for n in (2, 3, 4, 5):
        m = sphere_model(n, (-8, 8))
        m.cochain_algebra.validate()
        m.loop_dga.validate()
        assert m.offsets["poincare"] == n


# -- branes --------------------------------------------------------------------------

def test_brane_parsing():
    assert Brane.parse("point") == Brane("point")
    assert Brane.parse("k") == Brane("manifold")
    assert Brane.parse("S1") == Brane("nullhomotopic", ((0, 1), (1, 1)))
    assert Brane.parse("s0") == Brane("nullhomotopic", ((0, 2),))
    with pytest.raises(UnsupportedBrane):
        Brane.parse("torus")


def test_point_brane_is_free():
    m = sphere_model(3, (-6, 6))
    f = fiber_module(m, "point")
    assert f.generators == (m.loop_dga.unit,)
    assert nz(f.complex.betti(range(0, m.module_top + 1))) == {d: 1 for d in range(0, m.module_top + 1, 2)}


def test_manifold_brane_is_k():
    m = sphere_model(3, (-6, 6))
    f = fiber_module(m, "manifold")
    assert nz(f.complex.betti(range(-2, 3))) == {0: 1}


def test_circle_brane():
    m = sphere_model(3, (-6, 6))
    f = fiber_module(m, "S1")
    assert nz(f.complex.betti(range(0, 3))) == {0: 1, 1: 1, 2: 1}
    k = trivial_module(m.loop_dga, "right")
    r = tor(k, m.loop_dga, f, window=(-2, 6))
    assert nz(r.dims) == {0: 1, 1: 1}
    assert r.report.stable


def test_unsupported_branes():
    m = sphere_model(3, (-6, 6))
    with pytest.raises(UnsupportedBrane):
        fiber_module(m, Brane("nullhomotopic", ((3, 1),)))
    with pytest.raises(UnsupportedBrane):
        fiber_module(m, Brane("nullhomotopic", ()))
    with pytest.raises(UnsupportedBrane):
        fiber_module(m, Brane("fibration"))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_eilenberg_moore_for_models(n):
    m = sphere_model(n, (-10, 10))
    A = m.loop_dga
    r = tor(trivial_module(A, "right"), A, trivial_module(A), window=(-10, 10))
    coh = betti(m.cochain_algebra, -10, 10)
    assert nz(r.dims) == {-d: v for d, v in coh.items()}
    e = ext(A, trivial_module(A), trivial_module(A), window=(-10, 10))
    assert nz(e.dims) == coh


# -- path algebras --------------------------------------------------------------------

def test_point_path_algebra_is_loop_homology():
    m = sphere_model(3, (-8, 8))
    P = path_algebra(m, "point", window=(-8, 8))
    assert betti(P, -8, 8) == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}


def test_manifold_path_algebra_is_cohomology():
    m = sphere_model(3, (-8, 8))
    P = path_algebra(m, "manifold", window=(-8, 8))
    assert betti(P, -8, 8) == {-3: 1, 0: 1}
    x = [l for l in P.labels() if P.deg[l] == -3][0]
    assert P.mul(x, x) == {}


def test_circle_path_algebra_counts():
    # ΩS³ × S¹ × S¹ shifted down by one: Ext(F, F) for F free on e0, e1
    m = sphere_model(3, (-6, 8))
    P = path_algebra(m, "S1", window=(-6, 8))
    got = betti(P, -6, 8)
    loop = {d: 1 for d in range(0, 20, 2)}
    circle2 = {0: 1, 1: 2, 2: 1}
    expect = {}
    for a, x in loop.items():
        for b, y in circle2.items():
            d = a + b - 1
            if -6 <= d <= 8:
                expect[d] = expect.get(d, 0) + x * y
    assert got == expect


def test_loop_bimodule():
    m = sphere_model(3, (-6, 6))
    b = loop_bimodule(m)
    assert b.side == "bimodule"
    assert max(b.complex.degrees()) <= m.module_top


# -- oracle ---------------------------------------------------------------------------

def test_oracle_s3():
    assert list(loop_homology_oracle(3, (0, 6)).values()) == [1, 0, 1, 1, 1, 1, 1]
    assert loop_homology_oracle(3, (0, 9))[1] == 0


def test_oracle_s2_is_one_everywhere():
    assert set(loop_homology_oracle(2, (0, 12)).values()) == {1}


def test_oracle_s4():
    got = nz(loop_homology_oracle(4, (0, 16)))
    assert got == {0: 1, 3: 1, 4: 1, 9: 1, 10: 1, 15: 1, 16: 1}


@settings(max_examples=12)
@given(st.integers(2, 7))
def test_oracle_poincare_series(n):
    # 1 + (t^{n-1} + t^n)/(1 - t^{2n-2}) for even n, (1 + t^n)/(1 - t^{n-1}) for odd n
    hi = 4 * n
    got = loop_homology_oracle(n, (0, hi))
    expect = {d: 0 for d in range(hi + 1)}
    if n % 2:
        for a in range(hi + 1):
            for e in (0, 1):
                d = (n - 1) * a + n * e
                if d <= hi:
                    expect[d] += 1
    else:
        expect[0] += 1
        for a in range(hi + 1):
            for s in (n - 1, n):
                d = s + (2 * n - 2) * a
                if d <= hi:
                    expect[d] += 1
    assert got == expect


def test_oracle_negative_degrees_are_zero():
    assert loop_homology_oracle(3, (-4, 2)) == {-4: 0, -3: 0, -2: 0, -1: 0, 0: 1, 1: 0, 2: 1}
    with pytest.raises(WindowTooSmall):
        loop_homology_oracle(3, (2, 6))

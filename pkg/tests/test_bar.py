import pytest
from hypothesis import given
from hypothesis import strategies as st

from stringtop.bar import (EmptyWindow, MinimalResolution, MissingAugmentation, bar_complex, certificate,
                           derived_hom_category, enumerate_words, ext, ext_algebra, ext_category,
                           persistent_homology, required_length, shifted_degrees, tor)
from stringtop.corefield import Field
from stringtop.dga import DGAlgebra, as_module, trivial_module, truncate
from stringtop.complexes import ChainComplex
from stringtop.models import (exterior_algebra, fiber_module, polynomial_algebra, sphere_model,
                              truncated_polynomial)


def nz(d):
    return {k: v for k, v in sorted(d.items()) if v}


@pytest.fixture(scope="module")
def s3():
    return sphere_model(3, (-10, 10))


def test_bar_free_module_contractible():
    A = truncated_polynomial(2, 4)
    b = bar_complex(trivial_module(A, "right"), A, as_module(A, "left"), window=(-2, 10))
    assert nz(b.complex.betti(range(-2, 11))) == {0: 1}


def test_bar_polynomial():
    A = polynomial_algebra(2, 12)
    b = bar_complex(trivial_module(A, "right"), A, trivial_module(A), window=(0, 8))
    assert b.certified
    assert nz(b.complex.betti(range(0, 9))) == {0: 1, 3: 1}


def test_bar_exterior():
    L = exterior_algebra(-3)
    b = bar_complex(trivial_module(L, "right"), L, trivial_module(L), window=(-8, 0))
    assert nz(b.complex.betti(range(-8, 1))) == {0: 1, -2: 1, -4: 1, -6: 1, -8: 1}


def test_bar_d_squared_zero_full_sweep(s3):
    A = s3.loop_dga
    b = bar_complex(trivial_module(A, "right"), A, fiber_module(s3, "s1"), window=(-2, 8))
    cx = b.complex
    for l in cx.labels():
        assert not cx.apply_d(cx.d(l))


def test_tor_sphere(s3):
    A = s3.loop_dga
    r = tor(trivial_module(A, "right"), A, trivial_module(A), window=(0, 3))
    assert r.dims_list() == [1, 0, 0, 1]
    assert r.report.stable and r.report.certified


def test_tor_with_free_module(s3):
    A = s3.loop_dga
    r = tor(trivial_module(A, "right"), A, fiber_module(s3, "point"), window=(-4, 8))
    assert nz(r.dims) == {0: 1}


def test_tor_circle_brane(s3):
    A = s3.loop_dga
    r = tor(trivial_module(A, "right"), A, fiber_module(s3, "s1"), window=(-4, 8))
    assert nz(r.dims) == {0: 1, 1: 1}


def test_ext_sphere(s3):
    A = s3.loop_dga
    r = ext(A, trivial_module(A), trivial_module(A), window=(-8, 2))
    assert nz(r.dims) == {-3: 1, 0: 1}
    assert r.report.stable


def test_ext_from_free_is_homology():
    A = truncated_polynomial(2, 4)
    n = ChainComplex([("k", 0)], {})
    r = ext(A, as_module(A, "left"), trivial_module(A), window=(-10, 10))
    assert nz(r.dims) == nz(n.betti())


def test_ext_exterior_positive_degrees():
    # universal coefficients: ext at -n is dual to tor at n, and tor sits in 0,-2,-4,...
    L = exterior_algebra(-3)
    r = ext(L, trivial_module(L), trivial_module(L), window=(-2, 10))
    assert nz(r.dims) == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1, 10: 1}
    t = tor(trivial_module(L, "right"), L, trivial_module(L), window=(-10, 2))
    assert all(r.dims.get(n, 0) == t.dims.get(-n, 0) for n in range(-2, 11))


def test_ext_algebra_of_free_is_homology_algebra():
    A = truncated_polynomial(2, 4)
    E = ext_algebra(A, as_module(A, "left"), window=(-2, 8))
    assert sorted(E.deg.values()) == [0, 2, 4, 6]
    g = [l for l in E.labels() if E.deg[l] == 2][0]
    assert E.mul_chains(E.mul_chains({g: 1}, {g: 1}), {g: 1})


def test_ext_algebra_polynomial_is_exterior(s3):
    A = s3.loop_dga
    E = ext_algebra(A, trivial_module(A), window=(-8, 2))
    xi = [l for l in E.labels() if E.deg[l] == -3]
    assert len(xi) == 1
    assert E.mul(xi[0], xi[0]) == {}


def test_ext_algebra_exterior_is_polynomial():
    L = exterior_algebra(-3)
    E = ext_algebra(L, trivial_module(L), window=(-2, 12))
    u = [l for l in E.labels() if E.deg[l] == 2][0]
    p = {u: 1}
    for k in range(2, 7):
        p = E.mul_chains(p, {u: 1})
        assert p and all(E.deg[l] == 2 * k for l in p)


def test_ext_category_single_free_module():
    A = truncated_polynomial(2, 4)
    c = ext_category(A, [as_module(A)], window=(-2, 8), names=["A"])
    assert sorted(c.deg.values()) == [0, 2, 4, 6]


def test_ext_category_two_objects(s3):
    A = s3.loop_dga
    P, k = fiber_module(s3, "point"), trivial_module(A)
    W = (-8, 8)
    c = ext_category(A, [P, k], window=W, names=["pt", "M"])
    assert c.stable

    def dims(x, y):
        out = {}
        for l, d in c.mor[(x, y)].basis.elements:
            out[d] = out.get(d, 0) + 1
        return out

    assert dims("M", "M") == {0: 1, -3: 1}
    assert dims("pt", "pt") == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}
    assert dims("pt", "M") == nz(ext(A, P, k, window=W).dims)
    assert dims("M", "pt") == nz(ext(A, k, P, window=W).dims)


def test_ext_category_duplicate_objects_isomorphic():
    L = exterior_algebra(-3)
    k1, k2 = trivial_module(L), trivial_module(L)
    c = ext_category(L, [k1, k2], window=(-2, 6), names=["a", "b"])
    f = [l for l, d in c.mor[("a", "b")].basis.elements if d == 0]
    g = [l for l, d in c.mor[("b", "a")].basis.elements if d == 0]
    assert len(f) == len(g) == 1
    assert c.compose(f[0], g[0]) == {c.identity["a"]: 1}
    assert c.compose(g[0], f[0]) == {c.identity["b"]: 1}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_duality_on_models(n):
    m = sphere_model(n, (-10, 10))
    A = m.loop_dga
    e = ext(A, trivial_module(A), trivial_module(A), window=(-10, 10))
    t = tor(trivial_module(A, "right"), A, trivial_module(A), window=(-10, 10))
    assert all(e.dims.get(-d, 0) == t.dims.get(d, 0) for d in range(-10, 11))


def test_over_prime_field():
    m = sphere_model(3, (-8, 8), field=Field(5))
    A = m.loop_dga
    t = tor(trivial_module(A, "right"), A, trivial_module(A), window=(0, 6))
    assert nz(t.dims) == {0: 1, 3: 1}


def test_errors():
    a = DGAlgebra(ChainComplex([("1", 0)], {}), "1", {})
    with pytest.raises(MissingAugmentation):
        bar_complex(None, a, None)
    A = truncated_polynomial(2, 3)
    with pytest.raises(EmptyWindow):
        tor(trivial_module(A, "right"), A, trivial_module(A), window=(3, 1))


# -- word enumeration and certificates -----------------------------------


def test_certificate_signs():
    assert certificate({"y": 3}) == 1
    assert certificate({"x": -2, "z": -1}) == -1
    assert certificate({"a": 1, "b": -1}) == 0
    assert required_length({"y": 3}, 0, 9) == 3
    assert required_length({"x": -2}, -8, 0) == 4
    assert required_length({"a": 1, "b": -1}, 0, 3) is None


@given(st.dictionaries(st.sampled_from("abc"), st.integers(1, 3), min_size=1), st.integers(0, 8))
def test_enumerate_words_exact_under_certificate(shifts, hi):
    need = required_length(shifts, 0, hi)
    words = enumerate_words(shifts, sorted(shifts), need, 0, hi)
    more = enumerate_words(shifts, sorted(shifts), need + 3, 0, hi)
    assert words == more
    assert all(0 <= sum(shifts[x] for x in w) <= hi for w in words)


def test_shifted_degrees():
    assert shifted_degrees(exterior_algebra(-3)) == {1: -2}


# -- stability ------------------------------------------------------------


def test_lowered_cutoff_is_flagged_unstable():
    A = polynomial_algebra(2, 12)
    good = tor(trivial_module(A, "right"), A, trivial_module(A), cutoff=8, window=(0, 8))
    assert good.report.stable and good.report.certified
    low = tor(trivial_module(A, "right"), A, trivial_module(A), cutoff=1, window=(0, 8))
    assert not low.report.certified
    assert not low.report.stable


@given(st.integers(0, 3))
def test_cutoff_monotone_when_certified(extra):
    A = polynomial_algebra(2, 14)
    base = tor(trivial_module(A, "right"), A, trivial_module(A), cutoff=6, window=(0, 10))
    bigger = tor(trivial_module(A, "right"), A, trivial_module(A), cutoff=6 + extra, window=(0, 10))
    assert base.dims == bigger.dims


# -- minimal resolutions -------------------------------------------------------

def _resolution_complex(R, lo, hi):
    basis, diff = [], {}
    for t in range(lo, hi + 1):
        for z in R.basis_in_degree(t):
            basis.append((z, t))
    present = {z for z, _ in basis}
    for z, t in basis:
        img = {k: c for k, c in R.d_element({z: 1}).items() if k in present}
        if img:
            diff[z] = img
    return ChainComplex(basis, diff)


def test_koszul_resolution_of_k():
    A = truncated_polynomial(2, 5)
    R = MinimalResolution(trivial_module(A), A, 0, 12)
    assert sorted(R.gens.values()) == [0, 3, 12]
    cx = _resolution_complex(R, 0, 11)
    assert nz(cx.betti(range(0, 11))) == {0: 1}


def test_resolution_over_negative_exterior():
    A = exterior_algebra(-3)
    R = MinimalResolution(trivial_module(A), A, -10, 0)
    # one generator per power of the Ext class, each killing x times the last
    assert sorted(R.gens.values()) == [-10, -8, -6, -4, -2, 0]
    cx = _resolution_complex(R, -9, 0)
    assert nz(cx.betti(range(-9, 1))) == {0: 1}


def test_resolution_with_differential():
    s4 = sphere_model(4, (-12, 4))
    A = s4.cochain_algebra
    R = MinimalResolution(trivial_module(A), A, -12, 0)
    cx = _resolution_complex(R, -11, 0)
    assert nz(cx.betti(range(-10, 1))) == {0: 1}


def test_free_module_resolves_itself():
    A = truncated_polynomial(2, 4)
    R = MinimalResolution(as_module(A), A, 0, 10)
    assert list(R.gens.values()) == [0]
    assert not any(R.dR.values())


def test_minimal_resolution_needs_connected_algebra():
    cx = ChainComplex([(0, 0), ("a", 2), ("b", -2)], {})
    A = DGAlgebra(cx, 0, {}, {0: 1})
    with pytest.raises(ValueError):
        MinimalResolution(trivial_module(A), A, -4, 4)


def test_derived_hom_category_validates_and_keeps_hh():
    from stringtop.hochschild import hh, hh_category
    B = truncated_polynomial(2, 5)
    C = derived_hom_category(B, [as_module(B), trivial_module(B)], 0, 6, names=["pt", "k"])
    # End(R_k) computes Ext(k, k) = k[ξ]/ξ² in degrees 0 and -3
    assert nz(C.mor[("k", "k")].betti(range(-6, 7))) == {-3: 1, 0: 1}
    r = hh_category(C, cutoff=1, window=(0, 8))
    assert r.dims_list() == hh(B, window=(0, 8), cutoff=5).dims_list() == [1, 0, 1, 1, 1, 1, 1, 1, 1]
    assert r.report.stable


def test_homology_category_is_not_morita_invariant():
    # Ext with Yoneda products alone drops the Massey structure linking the
    # two objects, and an extra class survives in degree 0
    from stringtop.hochschild import hh_category
    P = polynomial_algebra(2, 10)
    E = ext_category(P, [as_module(P), trivial_module(P)], names=["pt", "k"])
    assert hh_category(E, cutoff=1, window=(0, 8)).dims[0] == 2
    C = ext_category(P, [as_module(P), trivial_module(P)], window=(0, 8), names=["pt", "k"], chain_level=True)
    assert hh_category(C, cutoff=1, window=(0, 8)).dims[0] == 1


def test_persistent_homology_discards_top_junk():
    # a truncation that cuts a contractible pair in half
    small = ChainComplex([("a", 0)], {})
    big = ChainComplex([("a", 0), ("b", 1)], {"b": {"a": 1}})
    assert small.homology(0).dimension == 1
    assert persistent_homology(small, big, 0)[0] == 0
    assert persistent_homology(small, big, 0, "quotient")[0] == 1
    with pytest.raises(ValueError):
        persistent_homology(small, big, 0, "sideways")

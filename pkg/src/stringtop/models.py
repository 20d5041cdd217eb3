"""Small rational models of spheres, their loop spaces and brane modules.

Cochain algebras live in non-positive degrees (H^k in degree -k).  The
loop DGA of S^n is the tensor algebra on one generator of degree n - 1,
truncated; for odd n this is the polynomial algebra k[y].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .bar import ext_algebra
from .complexes import ChainComplex
from .corefield import QQ, Field
from .dga import DGAlgebra, DGModule, as_module, free_module, trivial_module, truncate

Window = Tuple[int, int]


class WindowTooSmall(ValueError):
    pass


class UnsupportedBrane(ValueError):
    pass


def _need_window(window: Window) -> Window:
    lo, hi = window
    if lo > hi or not lo <= 0 <= hi:
        raise WindowTooSmall("window %s must contain degree 0" % (window,))
    return lo, hi


def polynomial_algebra(deg: int, top: int, field: Field = QQ, name: str = "") -> DGAlgebra:
    """k[y] with |y| = deg > 0 (or the tensor algebra T(y), same thing as an
    algebra), truncated to degrees <= top."""
    if deg <= 0:
        raise ValueError("generator degree must be positive")
    N = top // deg
    basis = [(i, deg * i) for i in range(N + 1)]
    mult = {(i, j): {i + j: 1} for i in range(1, N + 1) for j in range(1, N + 1) if i + j <= N}
    cx = ChainComplex(basis, {}, field)
    a = DGAlgebra(cx, 0, mult, {0: 1}, name=name or "k[y%d]" % deg,
                  reliable=(None, top), check=False)
    a.truncated = True
    return a


def exterior_algebra(deg: int, field: Field = QQ, name: str = "") -> DGAlgebra:
    """Λ(x) on one generator of odd degree (x² = 0)."""
    cx = ChainComplex([(0, 0), (1, deg)], {}, field)
    return DGAlgebra(cx, 0, {}, {0: 1}, name=name or "Λ(x%d)" % deg)


def truncated_polynomial(deg: int, n: int, field: Field = QQ) -> DGAlgebra:
    """k[x]/(x^n) as an honest (not truncated) algebra."""
    basis = [(i, deg * i) for i in range(n)]
    mult = {(i, j): {i + j: 1} for i in range(1, n) for j in range(1, n) if i + j < n}
    return DGAlgebra(ChainComplex(basis, {}, field), 0, mult, {0: 1}, name="k[x]/x^%d" % n)


def even_sphere_cochains(n: int, bottom: int, field: Field = QQ) -> DGAlgebra:
    """Λ(x, y) with |x| = -n, |y| = -(2n-1), dy = x², truncated at ``bottom``.

    x has even degree, so the basis is x^i and x^i·y.
    """
    basis, diff, mult = [], {}, {}
    mons = []
    i = 0
    while -n * i >= bottom:
        mons.append((i, 0))
        if -n * i - (2 * n - 1) >= bottom:
            mons.append((i, 1))
        i += 1
    present = set(mons)
    deg = {(i, e): -n * i - (2 * n - 1) * e for i, e in mons}
    for m in mons:
        basis.append((m, deg[m]))
    for i, e in mons:
        if e == 1 and (i + 2, 0) in present:
            diff[(i, 1)] = {(i + 2, 0): 1}
    for a in mons:
        for b in mons:
            if a[1] + b[1] > 1:
                continue
            t = (a[0] + b[0], a[1] + b[1])
            if t in present:
                # y is odd, x even: no sign unless both carry y (excluded)
                mult[(a, b)] = {t: 1}
    cx = ChainComplex(basis, diff, field)
    a = DGAlgebra(cx, (0, 0), mult, {(0, 0): 1}, name="C*(S%d)" % n,
                  reliable=(bottom, None), check=False)
    a.truncated = True
    return a


@dataclass
class SphereModel:
    """Models of S^n for one degree window.

    Brane modules are cut at ``module_top``; the loop DGA itself is kept
    to the larger ``loop_top`` so that long bar words never see the
    algebra's truncation inside the window.
    """

    n: int
    window: Window
    cochain_algebra: DGAlgebra
    loop_dga: DGAlgebra
    loop_top: int
    module_top: int
    offsets: Dict[str, int] = field(default_factory=dict)


def sphere_model(n: int, window: Window = (-12, 12), padding: int = 4, field: Field = QQ,
                 module_top: Optional[int] = None, loop_top: Optional[int] = None) -> SphereModel:
    """Cochain and loop models of S^n good for computations in ``window``.

    Reliable ranges recorded on the algebras and modules say where each
    truncation starts to show.
    """
    if n < 2:
        raise ValueError("sphere dimension must be at least 2")
    lo, hi = _need_window(window)
    T = module_top if module_top is not None else max(hi, n) + padding
    top = loop_top if loop_top is not None else T + max(-lo, n) + padding
    if top < T:
        raise WindowTooSmall("loop truncation %d below module truncation %d" % (top, T))
    loop = polynomial_algebra(n - 1, top, field, name="C_*(ΩS%d)" % n)
    if n % 2:
        coch = exterior_algebra(-n, field, name="C*(S%d)" % n)
    else:
        coch = even_sphere_cochains(n, min(lo, -2 * n) - padding, field)
    return SphereModel(n, (lo, hi), coch, loop, top, T, {"poincare": n, "loop": 0})


def loop_bimodule(model: SphereModel) -> DGModule:
    """The loop DGA as a bimodule over itself, cut at the module truncation."""
    m = truncate(as_module(model.loop_dga, "bimodule"), (0, model.module_top))
    m.name = model.loop_dga.name
    return m


@dataclass(frozen=True)
class Brane:
    """A submanifold N of M: a point, all of M, or a nullhomotopic N with given Betti numbers."""

    kind: str
    betti: Tuple[Tuple[int, int], ...] = ()

    @staticmethod
    def parse(text: str) -> "Brane":
        t = text.strip().lower()
        if t in ("point", "pt", "free"):
            return Brane("point")
        if t in ("manifold", "m", "k"):
            return Brane("manifold")
        if t.startswith("s") and t[1:].isdigit():
            d = int(t[1:])
            return Brane("nullhomotopic", ((0, 1), (d, 1)) if d else ((0, 2),))
        raise UnsupportedBrane(text)


def fiber_module(model: SphereModel, brane) -> DGModule:
    """A module model of the homotopy fiber of N -> M over the loop DGA."""
    if isinstance(brane, str):
        brane = Brane.parse(brane)
    A = model.loop_dga
    T = model.module_top
    if brane.kind == "point":
        m = truncate(as_module(A, "left"), (0, T))
        m.name = "C_*(F_pt)"
        return m
    if brane.kind == "manifold":
        return trivial_module(A, "left")
    if brane.kind == "nullhomotopic":
        gens = []
        for d, b in brane.betti:
            if d < 0 or d >= model.n:
                raise UnsupportedBrane("homology of N must sit in degrees [0, %d)" % model.n)
            gens += [("e%d_%d" % (d, i), d) for i in range(b)]
        if not gens:
            raise UnsupportedBrane("empty brane")
        return free_module(A, gens, name="C_*(ΩM)⊗H(N)", window=(0, T))
    raise UnsupportedBrane(brane.kind)


def path_algebra(model: SphereModel, brane, cutoff: int = 8, window: Optional[Window] = None) -> DGAlgebra:
    """Ext over the loop DGA of the brane module: a model of C_*(P_{N,N})."""
    return ext_algebra(model.loop_dga, fiber_module(model, brane), cutoff, window or model.window)


def loop_homology_oracle(n: int, window: Window = (0, 12)) -> Dict[int, int]:
    """Betti numbers of the free loop space of S^n over ℚ.

    Computed from the commutative free-loop model: Λ(x_n) ⊗ ℚ[x̄_{n-1}]
    with d = 0 for odd n; for even n generators x (n), y (2n-1),
    x̄ (n-1), ȳ (2n-2) with dy = x², dȳ = -2x·x̄.
    """
    if n < 2:
        raise ValueError("sphere dimension must be at least 2")
    lo, hi = _need_window(window)
    top = hi + 1
    if n % 2:
        mons = [(e, c) for e in (0, 1) for c in range(top // (n - 1) + 1)]
        degs = {m: n * m[0] + (n - 1) * m[1] for m in mons}
        cx = ChainComplex([(m, -d) for m, d in degs.items() if d <= top], {})
    else:
        degs = {}
        for a in range(top // n + 1):
            for e in (0, 1):
                for f in (0, 1):
                    for c in range(top // (2 * n - 2) + 1):
                        d = n * a + (2 * n - 1) * e + (n - 1) * f + (2 * n - 2) * c
                        if d <= top:
                            degs[(a, e, f, c)] = d
        diff = {}
        for (a, e, f, c), d in degs.items():
            img = {}
            if e:
                t = (a + 2, 0, f, c)
                if t in degs:
                    img[t] = img.get(t, 0) + 1
            if c and not f:
                t = (a + 1, e, 1, c - 1)
                if t in degs:
                    img[t] = img.get(t, 0) + (-1) ** e * (-2 * c)
            if img:
                diff[(a, e, f, c)] = img
        # cohomological grading: negate degrees so d has degree -1
        cx = ChainComplex([(m, -d) for m, d in degs.items()], diff)
    return {k: (cx.homology(-k).dimension if k >= 0 else 0) for k in range(lo, hi + 1)}

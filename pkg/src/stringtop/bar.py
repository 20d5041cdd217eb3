"""Normalized two-sided bar constructions: Tor, Ext and Yoneda products.

A bar element ``l[a1|...|ak]r`` is stored as the label ``(l, (a1, ..., ak), r)``
with degree |l| + Σ(|ai| + 1) + |r|.  Factors run over the non-unit basis
of the (augmentation-adapted) algebra, i.e. over a basis of the
augmentation ideal.

Infinite complexes are cut by word length (``cutoff``) and degree
(``window``).  When every shifted factor degree |a| + 1 has the same strict
sign the needed word length is finite and computed exactly; otherwise the
computation is repeated at ``cutoff + 2`` and the two answers compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .complexes import Chain, ChainComplex, Label, sign
from .corefield import Echelon, kernel_of_columns, solve, vaxpy
from .dga import DGAlgebra, DGCategory, DGModule, adapted, merge_reliable

Window = Tuple[int, int]


class MissingAugmentation(ValueError):
    pass


class EmptyWindow(ValueError):
    pass


class LiftFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    checked_cutoffs: Tuple[int, int]
    window: Window
    certified: bool = False
    required_length: Optional[int] = None
    reliable: Tuple[Optional[int], Optional[int]] = (None, None)
    notes: Tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "stable": self.stable,
            "checked_cutoffs": list(self.checked_cutoffs),
            "window": list(self.window),
            "certified": self.certified,
            "required_length": self.required_length,
            "reliable": list(self.reliable),
            "notes": list(self.notes),
        }


@dataclass
class DerivedResult:
    """Graded dimensions of a derived functor plus how far to trust them."""

    kind: str
    dims: Dict[int, int]
    representatives: Dict[int, List[Chain]]
    report: StabilityReport
    complex: Optional[ChainComplex] = None
    offset: int = 0
    source: object = None

    def dims_list(self) -> List[int]:
        lo, hi = self.report.window
        return [self.dims.get(n, 0) for n in range(lo, hi + 1)]


def _check_window(window: Window) -> Window:
    lo, hi = window
    if lo > hi:
        raise EmptyWindow("window [%d, %d] is empty" % (lo, hi))
    return int(lo), int(hi)


def require_augmented(a: DGAlgebra) -> DGAlgebra:
    if a.augmentation is None:
        raise MissingAugmentation("%s has no augmentation" % (a.name or "algebra"))
    return adapted(a)


# -- words --------------------------------------------------------------------

def shifted_degrees(a: DGAlgebra) -> Dict[Label, int]:
    return {l: a.deg[l] + 1 for l in a.ideal_basis()}


def certificate(shifts: Mapping[Label, int]) -> int:
    """+1 / -1 when all shifted degrees are >= 1 / <= -1, else 0."""
    vals = list(shifts.values())
    if not vals or all(v >= 1 for v in vals):
        return 1
    if all(v <= -1 for v in vals):
        return -1
    return 0


def required_length(shifts: Mapping[Label, int], word_lo: int, word_hi: int) -> Optional[int]:
    """Longest word that can have degree in [word_lo, word_hi], or None if unbounded."""
    vals = list(shifts.values())
    if not vals:
        return 0
    c = certificate(shifts)
    if c > 0:
        return max(0, word_hi // min(vals)) if word_hi >= 0 else 0
    if c < 0:
        return max(0, (-word_lo) // (-max(vals))) if word_lo <= 0 else 0
    return None


def enumerate_words(shifts: Mapping[Label, int], order: Sequence[Label], max_len: int,
                    word_lo: int, word_hi: int) -> List[Tuple[Label, ...]]:
    """All words of length <= max_len whose shifted degree lies in [word_lo, word_hi]."""
    labels = [l for l in order if l in shifts]
    if word_lo > word_hi:
        return []
    mn = min((shifts[l] for l in labels), default=0)
    mx = max((shifts[l] for l in labels), default=0)
    out: List[Tuple[Label, ...]] = []

    def rec(prefix, s, left):
        if word_lo <= s <= word_hi:
            out.append(tuple(prefix))
        if left == 0:
            return
        for l in labels:
            t = s + shifts[l]
            r = left - 1
            reach_lo = t + min(0, r * mn)
            reach_hi = t + max(0, r * mx)
            if reach_hi < word_lo or reach_lo > word_hi:
                continue
            prefix.append(l)
            rec(prefix, t, r)
            prefix.pop()

    rec([], 0, max_len)
    out.sort(key=lambda w: (len(w), [labels.index(x) for x in w]))
    return out


# -- the bar differential ----------------------------------------------------

class _Factor:
    """One end of a bar element: a module with degree, differential and action."""

    def __init__(self, deg, d, act):
        self.deg = deg
        self.d = d
        self.act = act


def _ideal_product(A: DGAlgebra, x: Label, y: Label) -> Chain:
    u = A.unit
    return {t: c for t, c in A.mul(x, y).items() if t != u}


def _ideal_d(A: DGAlgebra, x: Label) -> Chain:
    u = A.unit
    return {t: c for t, c in A.complex.d(x).items() if t != u}


def bar_d(A: DGAlgebra, L: _Factor, R: _Factor, l: Label, word: Tuple[Label, ...], r: Label) -> Chain:
    """d(l[a1|..|ak]r) = internal part + face maps, Koszul signs on suspended factors."""
    deg = A.deg
    out: Chain = {}
    k = len(word)
    # eps[i] = |l| + sum_{j<i} (|a_j| + 1)
    eps = [L.deg[l]]
    for a in word:
        eps.append(eps[-1] + deg[a] + 1)
    for l2, c in L.d(l).items():
        vaxpy(out, {(l2, word, r): c}, 1)
    for i, a in enumerate(word):
        s = -sign(eps[i])
        for a2, c in _ideal_d(A, a).items():
            vaxpy(out, {(l, word[:i] + (a2,) + word[i + 1:], r): c}, s)
    s = sign(eps[k])
    for r2, c in R.d(r).items():
        vaxpy(out, {(l, word, r2): c}, s)
    if k == 0:
        return out
    s = sign(eps[0])
    for l2, c in L.act(l, word[0], "right").items():
        vaxpy(out, {(l2, word[1:], r): c}, s)
    for i in range(1, k):
        s = sign(eps[i])
        for t, c in _ideal_product(A, word[i - 1], word[i]).items():
            vaxpy(out, {(l, word[:i - 1] + (t,) + word[i + 1:], r): c}, s)
    s = -sign(eps[k - 1])
    for r2, c in R.act(word[-1], r, "left").items():
        vaxpy(out, {(l, word[:-1], r2): c}, s)
    return out


def _right_factor(m: DGModule, A: DGAlgebra) -> _Factor:
    def act(x, a, side):
        return _adapted_action(m, A, a, x, side="right")
    return _Factor(m.deg, m.complex.d, act)


def _left_factor(n: DGModule, A: DGAlgebra) -> _Factor:
    def act(a, x, side):
        return _adapted_action(n, A, a, x, side="left")
    return _Factor(n.deg, n.complex.d, act)


def _adapted_action(m: DGModule, A: DGAlgebra, a: Label, x: Label, side: str) -> Chain:
    """Action of the ideal element labelled ``a`` (meaning a - ε(a)·1 in the original basis)."""
    orig = m.algebra
    img = dict(m.act(a, x) if side == "left" else m.ract(x, a))
    if orig is not A and orig.augmentation is not None:
        e = orig.augmentation.get(a)
        if e:
            vaxpy(img, {x: 1}, -e)
    return img


def _algebra_as_right_factor(A: DGAlgebra) -> _Factor:
    def act(x, a, side):
        return A.mul(x, a)
    return _Factor(A.deg, A.complex.d, act)


# -- bar complexes -----------------------------------------------------------

@dataclass
class BarComplex:
    left: DGModule
    algebra: DGAlgebra
    right: DGModule
    cutoff: int
    window: Window
    complex: ChainComplex
    certified: bool
    required_length: Optional[int]
    reliable: Tuple[Optional[int], Optional[int]]


def _bar_reliable(A: DGAlgebra, m: DGModule, n: DGModule) -> Tuple[Optional[int], Optional[int]]:
    """Degree range in which homology of the bar complex ignores every truncation."""
    mlo, mhi = min(m.complex.degrees(), default=0), max(m.complex.degrees(), default=0)
    nlo, nhi = min(n.complex.degrees(), default=0), max(n.complex.degrees(), default=0)
    hi_caps, lo_caps = [], []
    if A.reliable[1] is not None:
        hi_caps.append(A.reliable[1] + mlo + nlo)
    if A.reliable[0] is not None:
        lo_caps.append(A.reliable[0] + mhi + nhi)
    if m.reliable[1] is not None:
        hi_caps.append(m.reliable[1] + nlo - 1)
    if m.reliable[0] is not None:
        lo_caps.append(m.reliable[0] + nhi + 1)
    if n.reliable[1] is not None:
        hi_caps.append(n.reliable[1] + mlo - 1)
    if n.reliable[0] is not None:
        lo_caps.append(n.reliable[0] + mhi + 1)
    return (max(lo_caps) if lo_caps else None, min(hi_caps) if hi_caps else None)


def bar_complex(m: DGModule, a: DGAlgebra, n: DGModule, cutoff: int = 8, window: Window = (-12, 12),
                check: bool = True) -> BarComplex:
    """B(m, a, n) restricted to degrees [lo-1, hi+1] and words of length <= cutoff.

    ``m`` is a right module and ``n`` a left module over ``a``.  When a
    finiteness certificate exists the word length is raised to what the
    window needs, so the chain groups are exact.
    """
    lo, hi = _check_window(window)
    A = require_augmented(a)
    shifts = shifted_degrees(A)
    mdeg, ndeg = m.deg, n.deg
    mds = [mdeg[x] for x in m.labels()] or [0]
    nds = [ndeg[x] for x in n.labels()] or [0]
    wlo, whi = lo - 1 - max(mds) - max(nds), hi + 1 - min(mds) - min(nds)
    need = required_length(shifts, wlo, whi)
    certified = need is not None and cutoff >= need
    L = need if certified else cutoff
    words = enumerate_words(shifts, A.labels(), L, wlo, whi)
    wdeg = {w: sum(shifts[x] for x in w) for w in words}
    basis = []
    for w in words:
        for x in m.labels():
            for y in n.labels():
                d = mdeg[x] + wdeg[w] + ndeg[y]
                if lo - 1 <= d <= hi + 1:
                    basis.append(((x, w, y), d))
    present = {b for b, _ in basis}
    bottom = lo - 1
    Lf, Rf = _right_factor(m, A), _left_factor(n, A)
    diff = {}
    for b, d in basis:
        if d == bottom:
            continue
        img = bar_d(A, Lf, Rf, *b)
        img = {t: c for t, c in img.items() if t in present}
        if img:
            diff[b] = img
    cx = ChainComplex(basis, diff, A.field, check=check)
    rel = _bar_reliable(A, m, n)
    return BarComplex(m, A, n, cutoff, (lo, hi), cx, certified, need, rel)


def _homology_dims(cx: ChainComplex, window: Window, prefer: Mapping[int, List[Chain]] = None):
    dims, reps = {}, {}
    for d in range(window[0], window[1] + 1):
        h = cx.homology(d, prefer=(prefer or {}).get(d, ()))
        dims[d] = h.dimension
        reps[d] = h.representatives
    return dims, reps


def _within(rel, window) -> bool:
    lo, hi = window
    return (rel[0] is None or rel[0] <= lo) and (rel[1] is None or rel[1] >= hi)


def persistent_homology(small: ChainComplex, big: ChainComplex, n: int, direction: str = "sub",
                        prefer: Sequence[Chain] = ()) -> Tuple[int, List[Chain]]:
    """Image of H_n(small) -> H_n(big) ("sub") or of H_n(big) -> H_n(small) ("quotient").

    ``small`` shares labels with ``big``: a subcomplex for "sub", a quotient
    obtained by dropping labels for "quotient".  Representatives are cycles
    of ``small`` independent modulo the relevant boundaries.
    """
    if direction == "sub":
        host, source = big, small
    elif direction == "quotient":
        host, source = small, big
    else:
        raise ValueError("direction must be 'sub' or 'quotient'")
    ech = Echelon()
    for col in host.d_columns(n + 1):
        ech.add(col)
    present = set(host.labels(n))
    _, ker, _ = kernel_of_columns(source.d_columns(n))
    cand = list(prefer) + [source.from_vector(v, n) for v in ker]
    reps = []
    for z in cand:
        z = {l: c for l, c in z.items() if l in present}
        if z and ech.add(host.to_vector(z, n))[0]:
            reps.append(z)
    return len(reps), reps


def _persistent_dims(small, big, window, direction, prefer=None):
    dims, reps = {}, {}
    for d in range(window[0], window[1] + 1):
        dims[d], reps[d] = persistent_homology(small, big, d, direction, (prefer or {}).get(d, ()))
    return dims, reps


def _stability(build: Callable[[int], Tuple[ChainComplex, bool, Optional[int], tuple]], cutoff: int,
               window: Window, prefer=None, extra_notes=(), persistent: Optional[str] = None):
    """Homology at ``cutoff`` plus a comparison against ``cutoff + 2``.

    With ``persistent`` set, an uncertified build reports the image of the
    cutoff-s homology in the cutoff-(s+1) one and compares it with the image
    one step further; raw truncated homology can carry spurious classes near
    the longest words that only these images discard.
    """
    obj, cx, certified, need, rel = build(cutoff)
    notes = list(extra_notes)
    if certified:
        dims, reps = _homology_dims(cx, window, prefer)
        stable = True
        checked = (cutoff, cutoff)
        notes.append("finite: words up to length %d are exhaustive" % need)
    elif persistent:
        cx1 = build(cutoff + 1)[1]
        cx2 = build(cutoff + 2)[1]
        dims, reps = _persistent_dims(cx, cx1, window, persistent, prefer)
        dims2, _ = _persistent_dims(cx1, cx2, window, persistent)
        stable = dims == dims2
        checked = (cutoff, cutoff + 1, cutoff + 2)
        notes.append("persistent images between cutoffs %s" % (checked,))
        if not stable:
            bad = [d for d in dims if dims[d] != dims2[d]]
            notes.append("dimensions change between cutoffs in degrees %s" % bad)
    else:
        dims, reps = _homology_dims(cx, window, prefer)
        _, cx2, _, _, _ = build(cutoff + 2)
        dims2, _ = _homology_dims(cx2, window)
        stable = dims == dims2
        checked = (cutoff, cutoff + 2)
        if not stable:
            bad = [d for d in dims if dims[d] != dims2[d]]
            notes.append("dimensions change between cutoffs in degrees %s" % bad)
    inside = _within(rel, window)
    if not inside:
        notes.append("window exceeds the truncation-reliable range %s" % (rel,))
    report = StabilityReport(stable and inside, checked, window, certified, need, rel, tuple(notes))
    return obj, cx, dims, reps, report


def tor(m: DGModule, a: DGAlgebra, n: DGModule, cutoff: int = 8, window: Window = (-12, 12)) -> DerivedResult:
    """Tor^a(m, n) = homology of the bar complex, with a stability report."""
    _check_window(window)

    def build(s):
        b = bar_complex(m, a, n, s, window)
        return b, b.complex, b.certified, b.required_length, b.reliable

    b, cx, dims, reps, report = _stability(build, cutoff, window)
    return DerivedResult("tor", dims, reps, report, cx, source=b)


# -- resolutions and derived Hom -------------------------------------------

class Resolution:
    """A semi-free resolution R -> M of a left module, described by generators.

    ``dR[g]`` lists ``(coeff, a, g2)`` with d(1·g) = Σ coeff · a·g2, and
    ``aug[g]`` is ε(1·g) in M.  Bar resolutions use generators
    ``(word, m)``; free modules resolve themselves with generator ``v``.
    """

    def __init__(self, module: DGModule, algebra: DGAlgebra, cutoff: int, deg_lo: int, deg_hi: int,
                 prefer_free: bool = True):
        self.module = module
        self.A = algebra
        self.cutoff = cutoff
        self.free = prefer_free and module.free_map is not None and module.algebra is algebra
        self.gens: Dict[Label, int] = {}
        self.dR: Dict[Label, List[Tuple[object, Label, Label]]] = {}
        self.aug: Dict[Label, Chain] = {}
        self.length: Dict[Label, int] = {}
        A = algebra
        if self.free:
            inv = {v: l for l, v in module.free_map.items()}
            self._inv = inv
            for g in module.generators:
                lab = inv.get((A.unit, g))
                if lab is None:
                    continue
                d = module.deg[lab]
                if deg_lo <= d <= deg_hi:
                    self.gens[g] = d
                    self.length[g] = 0
                    self.aug[g] = {lab: A.field.one}
                    terms = []
                    for t, c in module.complex.d(lab).items():
                        a2, g2 = module.free_map[t]
                        terms.append((c, a2, g2))
                    self.dR[g] = terms
            self.certified, self.required = True, 0
            return
        shifts = shifted_degrees(A)
        mds = [module.deg[x] for x in module.labels()] or [0]
        wlo, whi = deg_lo - max(mds), deg_hi - min(mds)
        need = required_length(shifts, wlo, whi)
        self.certified = need is not None and cutoff >= need
        self.required = need
        L = need if self.certified else cutoff
        words = enumerate_words(shifts, A.labels(), L, wlo, whi)
        Af = _algebra_as_right_factor(A)
        Mf = _left_factor(module, A)
        for w in words:
            wd = sum(shifts[x] for x in w)
            for x in module.labels():
                d = wd + module.deg[x]
                if deg_lo <= d <= deg_hi:
                    g = (w, x)
                    self.gens[g] = d
                    self.length[g] = len(w)
        for g in self.gens:
            w, x = g
            img = bar_d(A, Af, Mf, A.unit, w, x)
            terms = []
            for (a2, w2, x2), c in img.items():
                terms.append((c, a2, (w2, x2)))
            self.dR[g] = terms
            self.aug[g] = {x: A.field.one} if not w else {}

    def order(self) -> List[Label]:
        return sorted(self.gens, key=lambda g: (self.length[g], self.gens[g]))

    # elements of R are chains over labels (a, g)
    def d_element(self, z: Chain) -> Chain:
        """Differential of Σ c·(a·g) in R."""
        A = self.A
        out: Chain = {}
        for (a, g), c in z.items():
            for a2, x in A.complex.d(a).items():
                vaxpy(out, {(a2, g): x}, c)
            s = sign(A.deg[a])
            for c2, b, g2 in self.dR.get(g, ()):
                for t, x in A.mul(a, b).items():
                    vaxpy(out, {(t, g2): x * c2}, c * s)
        return out

    def aug_element(self, z: Chain) -> Chain:
        out: Chain = {}
        M = self.module
        for (a, g), c in z.items():
            e = self.aug.get(g)
            if e:
                for x, y in e.items():
                    vaxpy(out, _act(M, self.A, a, x), c * y)
        return out

    def basis_in_degree(self, t: int) -> List[Label]:
        A = self.A
        out = []
        for g, dg in self.gens.items():
            for a in A.labels():
                if A.deg[a] + dg == t:
                    out.append((a, g))
        return out


def _act(M: DGModule, A: DGAlgebra, a: Label, x: Label) -> Chain:
    if a == A.unit:
        return {x: A.field.one}
    return _adapted_action(M, A, a, x, side="left")


def _hom_reliable(A: DGAlgebra, m: DGModule, n: DGModule, R: "Resolution") -> Tuple[Optional[int], Optional[int]]:
    free = R.free
    if free:
        # only the generators matter; the module is its own resolution
        gd = list(R.gens.values()) or [0]
        mlo, mhi = min(gd), max(gd)
    else:
        mlo, mhi = min(m.complex.degrees(), default=0), max(m.complex.degrees(), default=0)
    nlo, nhi = min(n.complex.degrees(), default=0), max(n.complex.degrees(), default=0)
    lo_caps, hi_caps = [], []
    if n.reliable[1] is not None:
        hi_caps.append(n.reliable[1] - mhi - 1)
    if n.reliable[0] is not None:
        lo_caps.append(n.reliable[0] - mlo + 1)
    if m.reliable[1] is not None and not free:
        lo_caps.append(nlo - m.reliable[1] + 1)
    if m.reliable[0] is not None and not free:
        hi_caps.append(nhi - m.reliable[0] - 1)
    if not free:
        if A.reliable[1] is not None:
            lo_caps.append(nlo - mhi - A.reliable[1])
        if A.reliable[0] is not None:
            hi_caps.append(nhi - mlo - A.reliable[0])
    return (max(lo_caps) if lo_caps else None, min(hi_caps) if hi_caps else None)


class HomComplex:
    """Hom_A(R_m, n) for a resolution R_m; label ``(g, e)`` sends generator g to e."""

    def __init__(self, a: DGAlgebra, m: DGModule, n: DGModule, cutoff: int, window: Window,
                 check: bool = True):
        lo, hi = _check_window(window)
        A = require_augmented(a)
        self.A, self.m, self.n = A, m, n
        self.window = (lo, hi)
        nds = [n.deg[x] for x in n.labels()] or [0]
        glo, ghi = min(nds) - hi - 1, max(nds) - lo + 1
        self.R = Resolution(m, A, cutoff, glo, ghi)
        R = self.R
        self.certified = R.certified
        self.required = R.required
        basis = []
        for g, dg in R.gens.items():
            for e in n.labels():
                d = n.deg[e] - dg
                if lo - 1 <= d <= hi + 1:
                    basis.append(((g, e), d))
        present = {b for b, _ in basis}
        refs: Dict[Label, List[Tuple[object, Label, Label]]] = {}
        for g2, terms in R.dR.items():
            for c, a2, g in terms:
                refs.setdefault(g, []).append((c, a2, g2))
        diff = {}
        for (g, e), d in basis:
            if d == lo - 1:
                continue
            img: Chain = {}
            for e2, c in n.complex.d(e).items():
                vaxpy(img, {(g, e2): c}, 1)
            sf = -sign(d)
            for c, a2, g2 in refs.get(g, ()):
                s = sf * sign(d * A.deg[a2])
                for e2, x in _act(n, A, a2, e).items():
                    vaxpy(img, {(g2, e2): c * x}, s)
            img = {t: c for t, c in img.items() if t in present}
            if img:
                diff[(g, e)] = img
        self.complex = ChainComplex(basis, diff, A.field, check=check)
        self.reliable = _hom_reliable(A, m, n, R)

    def evaluate(self, f: Chain, g: Label) -> Chain:
        """f(1·g) in n."""
        out: Chain = {}
        for (g2, e), c in f.items():
            if g2 == g:
                vaxpy(out, {e: c}, 1)
        return out

    def evaluate_element(self, f: Chain, z: Chain, fdeg: int) -> Chain:
        """f(Σ c·a·g) = Σ c (-1)^{|f||a|} a·f(g)."""
        out: Chain = {}
        A, n = self.A, self.n
        for (a, g), c in z.items():
            val = self.evaluate(f, g)
            if not val:
                continue
            s = sign(fdeg * A.deg[a])
            for e, x in val.items():
                vaxpy(out, _act(n, A, a, e), c * x * s)
        return out

    def identity_cocycle(self) -> Optional[Chain]:
        """The augmentation R_m -> m as a degree-0 cocycle (only when n is m)."""
        if self.n is not self.m:
            return None
        out = {}
        for g, e in self.R.aug.items():
            for x, c in e.items():
                if (g, x) in self.complex.deg:
                    out[(g, x)] = c
        return out


def ext(a: DGAlgebra, m: DGModule, n: DGModule, cutoff: int = 8, window: Window = (-12, 12)) -> DerivedResult:
    """Ext_a(m, n) from Hom out of a resolution of m (bar, or m itself if free)."""
    _check_window(window)

    built = {}

    def build(s):
        h = built.get(s) or HomComplex(a, m, n, s, window)
        built[s] = h
        return h, h.complex, h.certified, h.required, h.reliable

    prefer = None
    if m is n:
        idc = build(cutoff)[0].identity_cocycle()
        if idc:
            prefer = {0: [idc]}
    h, cx, dims, reps, report = _stability(build, cutoff, window, prefer)
    return DerivedResult("ext", dims, reps, report, cx, source=h)


# -- Yoneda products ---------------------------------------------------------

class _Lift:
    """A chain map F: R_m -> R_n over A with ε∘F = f, built generator by generator."""

    def __init__(self, source: HomComplex, source_res: Resolution, target_res: Resolution,
                 f: Chain, fdeg: int):
        self.src = source
        self.res = source_res
        self.tgt = target_res
        self.f = f
        self.fdeg = fdeg
        self.values: Dict[Label, Chain] = {}
        self._systems: Dict[int, tuple] = {}

    def _system(self, t: int):
        if t not in self._systems:
            R = self.tgt
            basis = R.basis_in_degree(t)
            cols = []
            for z in basis:
                col = {}
                for lab, c in R.d_element({z: 1}).items():
                    col[("R", lab)] = c
                for lab, c in R.aug_element({z: 1}).items():
                    col[("N", lab)] = c
                cols.append(col)
            self._systems[t] = (basis, cols)
        return self._systems[t]

    def value(self, g: Label) -> Chain:
        if g in self.values:
            return self.values[g]
        A = self.src.A
        R = self.res
        fd = self.fdeg
        t = R.gens[g] + fd
        # F(d g) = Σ c (-1)^{|f||a|} a·F(g2)
        Fdg: Chain = {}
        for c, a, g2 in R.dR[g]:
            s = sign(fd * A.deg[a])
            for (b, h), x in self.value(g2).items():
                for p, y in A.mul(a, b).items():
                    vaxpy(Fdg, {(p, h): y * x}, c * s)
        rhs = {("R", lab): sign(fd) * c for lab, c in Fdg.items() if c}
        for e, c in self.src.evaluate(self.f, g).items():
            rhs[("N", e)] = c
        basis, cols = self._system(t)
        keys = {}
        for col in cols:
            for k in col:
                keys.setdefault(k, len(keys))
        for k in rhs:
            keys.setdefault(k, len(keys))
        vcols = [{keys[k]: c for k, c in col.items()} for col in cols]
        b = {keys[k]: c for k, c in rhs.items() if c}
        x = solve(vcols, b)
        if x is None:
            raise LiftFailure("cannot lift cocycle on generator %r within cutoff %d" % (g, self.tgt.cutoff))
        val = {basis[i]: c for i, c in x.items() if c}
        self.values[g] = val
        return val


class HomologyBasis:
    """Coordinates of cycles in a fixed homology basis of one degree."""

    def __init__(self, cx: ChainComplex, n: int, reps: List[Chain]):
        self.cx, self.n, self.reps = cx, n, reps
        self.ech = Echelon(track=True)
        self.nb = 0
        for col in cx.d_columns(n + 1):
            self.ech.add(col)
            self.nb += 1
        for r in reps:
            indep, _ = self.ech.add(cx.to_vector(r, n))
            if not indep:
                raise ValueError("representatives are not independent modulo boundaries")

    def coords(self, z: Chain) -> List:
        v = self.cx.to_vector(z, self.n)
        r, combo = self.ech.reduce(v, {})
        if r:
            raise ValueError("chain is not in the span of cycles")
        return [-combo.get(self.nb + i, 0) for i in range(len(self.reps))]


def _yoneda(hm: HomComplex, hn: HomComplex, hp: HomComplex, f: Chain, fdeg: int, g: Chain, gdeg: int,
            cache: dict) -> Chain:
    """Cocycle in ``hp`` = Hom(R_m, p) representing the diagrammatic product f·g = g∘F."""
    key = id(f)
    lift = cache.get(key)
    if lift is None:
        lift = _Lift(hm, hp.R, hn.R, f, fdeg)
        cache[key] = lift
    out: Chain = {}
    tdeg = fdeg + gdeg
    lo, hi = hm.window
    if not (lo <= tdeg <= hi):
        return out
    R = hp.R
    target = hp.n
    for gen, dg in R.gens.items():
        need = dg + tdeg
        if not any(target.deg[e] == need for e in target.labels()):
            continue
        val = hn.evaluate_element(g, lift.value(gen), gdeg)
        for e, c in val.items():
            vaxpy(out, {(gen, e): c}, 1)
    return out


@dataclass
class _ExtData:
    hom: HomComplex
    dims: Dict[int, int]
    reps: Dict[int, List[Chain]]
    report: StabilityReport
    bases: Dict[int, HomologyBasis] = field(default_factory=dict)

    def basis(self, n):
        if n not in self.bases:
            self.bases[n] = HomologyBasis(self.hom.complex, n, self.reps[n])
        return self.bases[n]


def _ext_data(a, m, n, cutoff, window) -> _ExtData:
    r = ext(a, m, n, cutoff, window)
    return _ExtData(r.source, r.dims, r.representatives, r.report)


def ext_category(a: DGAlgebra, modules: Sequence[DGModule], cutoff: int = 8, window: Window = (-12, 12),
                 names: Optional[Sequence[Hashable]] = None, chain_level: bool = False) -> DGCategory:
    """Objects = modules, mor(x, y) = Ext(x, y) with Yoneda composition (d = 0).

    This homology category forgets higher products, so it is not Morita
    equivalent to ``a`` in general.  ``chain_level=True`` returns
    ``derived_hom_category`` on generators in the window instead, which is.

    Composites leaving the window are dropped.  When classes sit in both
    positive and negative degrees this can break associativity through an
    intermediate composite outside the window, so the axioms are only
    checked for one-signed windows and ``truncated`` is set otherwise.
    """
    lo, hi = _check_window(window)
    if chain_level:
        return derived_hom_category(a, modules, lo, hi, names)
    names = list(names) if names is not None else [m.name or "M%d" % i for i, m in enumerate(modules)]
    if len(set(names)) != len(names):
        names = ["%s#%d" % (nm, i) for i, nm in enumerate(names)]
    data: Dict[Tuple, _ExtData] = {}
    for i, m in enumerate(modules):
        for j, n in enumerate(modules):
            data[(i, j)] = _ext_data(a, m, n, cutoff, window)
    mor = {}
    labels: Dict[Tuple, List[Tuple[Label, int, Chain]]] = {}
    identity = {}
    for (i, j), ed in data.items():
        basis = []
        lab = []
        for d in range(lo, hi + 1):
            for k, rep in enumerate(ed.reps[d]):
                name = (names[i], names[j], d, k)
                basis.append((name, d))
                lab.append((name, d, rep))
        mor[(names[i], names[j])] = ChainComplex(basis, {}, a.field)
        labels[(i, j)] = lab
        if i == j:
            idc = ed.hom.identity_cocycle()
            if not idc or not ed.reps[0] or ed.reps[0][0] != idc:
                raise LiftFailure("identity class of %s missing from the window" % names[i])
            identity[names[i]] = (names[i], names[i], 0, 0)
    comp = {}
    cache: Dict = {}
    idx = range(len(modules))
    for i in idx:
        for j in idx:
            for k in idx:
                src, tgt, out = data[(i, j)], data[(j, k)], data[(i, k)]
                for fname, fd, frep in labels[(i, j)]:
                    for gname, gd, grep in labels[(j, k)]:
                        td = fd + gd
                        if not lo <= td <= hi or not out.dims.get(td):
                            continue
                        lift_cache = cache.setdefault((i, j, k), {})
                        z = _yoneda(src.hom, tgt.hom, out.hom, frep, fd, grep, gd, lift_cache)
                        z = _align(z, out.hom)
                        co = out.basis(td).coords(z)
                        img = {(names[i], names[k], td, t): c for t, c in enumerate(co) if c}
                        if img:
                            comp[(fname, gname)] = img
    reports = [ed.report for ed in data.values()]
    rel = (None, None)
    for ed in data.values():
        rel = merge_reliable(rel, ed.hom.reliable)
    degs = [d for cx in mor.values() for _, d in cx.basis.elements]
    mixed = bool(degs) and min(degs) < 0 < max(degs)
    cat = DGCategory(names, mor, comp, identity, name="Ext", reliable=rel, check=not mixed)
    cat.truncated = mixed
    cat.reports = reports
    cat.stable = all(r.stable for r in reports)
    return cat


def _align(z: Chain, hom: HomComplex) -> Chain:
    out = {}
    for lab, c in z.items():
        if lab not in hom.complex.deg:
            # generators beyond the computed cutoff cannot carry this class
            continue
        out[lab] = c
    return out


def ext_algebra(a: DGAlgebra, m: DGModule, cutoff: int = 8, window: Window = (-12, 12)) -> DGAlgebra:
    """Ext_a(m, m) with the Yoneda product as a d = 0 graded algebra.

    The product is diagrammatic (x·y = y∘x), which for m = a returns the
    homology algebra of a itself rather than its opposite.
    """
    cat = ext_category(a, [m], cutoff, window, names=["m"])
    cx = cat.mor[("m", "m")]
    aug = None
    if cx.dim(0) == 1:
        aug = {cat.identity["m"]: 1}
    alg = DGAlgebra(cx, cat.identity["m"], cat.comp, aug, name="Ext(%s)" % (m.name or "m"),
                    reliable=cat.reliable, check=not cat.truncated)
    alg.truncated = cat.truncated
    alg.report = cat.reports[0]
    return alg


# -- minimal resolutions and the derived Hom category ------------------------

class MinimalResolution(Resolution):
    """Semi-free resolution R -> M over a connected algebra, built one degree at a time.

    Connected means the augmentation ideal sits entirely in positive or
    entirely in negative degrees.  Starting from the module and moving in
    the same direction, each degree first gets cycle generators until
    H(R) -> H(M) is onto, then generators one degree up that kill the
    kernel.  Generators stop at the edge of ``[deg_lo, deg_hi]``, so
    H(R) -> H(M) is an isomorphism away from that edge.  The algebra should
    be an honest finite quotient (e.g. a truncated polynomial ring), not an
    unreliable truncation.
    """

    def __init__(self, module: DGModule, algebra: DGAlgebra, deg_lo: int, deg_hi: int):
        A = require_augmented(algebra)
        self.module, self.A, self.cutoff = module, A, 0
        self.free = False
        self.gens, self.dR, self.aug, self.length = {}, {}, {}, {}
        self.certified, self.required = True, 0
        ideal = [A.deg[x] for x in A.labels() if x != A.unit]
        if all(d > 0 for d in ideal):
            step = 1
        elif all(d < 0 for d in ideal):
            step = -1
        else:
            raise ValueError("minimal resolutions need a connected algebra")
        mds = [module.deg[x] for x in module.labels()]
        if not mds:
            return
        if step == 1:
            degrees = range(max(min(mds), deg_lo), deg_hi + 1)
        else:
            degrees = range(min(max(mds), deg_hi), deg_lo - 2, -1)
        for t in degrees:
            if t >= deg_lo:
                self._surject(t)
            if deg_lo <= t + 1 <= deg_hi:
                self._kill(t)

    def _new(self, t: int, terms, aug: Chain):
        g = ("g", t, sum(1 for d in self.gens.values() if d == t))
        self.gens[g] = t
        self.length[g] = len(self.gens)
        self.dR[g] = terms
        self.aug[g] = aug

    def _cycles(self, t: int) -> List[Chain]:
        basis = self.basis_in_degree(t)
        cols = []
        for z in basis:
            cols.append(self.d_element({z: 1}))
        keys: Dict[Label, int] = {}
        vcols = [{keys.setdefault(k, len(keys)): c for k, c in col.items() if c} for col in cols]
        _, ker, _ = kernel_of_columns(vcols)
        return [{basis[i]: c for i, c in v.items() if c} for v in ker]

    def _surject(self, t: int):
        M = self.module.complex
        ech = Echelon()
        for col in M.d_columns(t + 1):
            ech.add(col)
        for z in self._cycles(t):
            e = self.aug_element(z)
            if e:
                ech.add(M.to_vector(e, t))
        _, ker, _ = kernel_of_columns(M.d_columns(t))
        for v in ker:
            if ech.add(v)[0]:
                self._new(t, [], M.from_vector(v, t))

    def _kill(self, t: int):
        M = self.module.complex
        Z = self._cycles(t)
        if not Z:
            return
        # pairs (z, m) with ε(z) = d m
        keys: Dict[Label, int] = {}
        cols = []
        for z in Z:
            cols.append({keys.setdefault(k, len(keys)): c for k, c in self.aug_element(z).items() if c})
        top = M.labels(t + 1)
        for m in top:
            cols.append({keys.setdefault(k, len(keys)): -c for k, c in M.d(m).items() if c})
        _, ker, _ = kernel_of_columns(cols)
        ech = Echelon()
        rkeys: Dict[Label, int] = {}
        for z in self.basis_in_degree(t + 1):
            ech.add({rkeys.setdefault(k, len(rkeys)): c for k, c in self.d_element({z: 1}).items() if c})
        for v in ker:
            z: Chain = {}
            m: Chain = {}
            for i, c in v.items():
                if i < len(Z):
                    vaxpy(z, Z[i], c)
                else:
                    m[top[i - len(Z)]] = c
            z = {k: c for k, c in z.items() if c}
            if z and ech.add({rkeys.setdefault(k, len(rkeys)): c for k, c in z.items()})[0]:
                self._new(t + 1, [(c, a, g) for (a, g), c in z.items()], m)


def derived_hom_category(a: DGAlgebra, modules: Sequence[DGModule], deg_lo: int, deg_hi: int,
                         names: Optional[Sequence[Hashable]] = None, check: bool = True) -> DGCategory:
    """DG-category with mor(X, Y) = Hom_a(R_X, R_Y) for minimal resolutions R.

    This is the chain-level derived category on the given modules; unlike
    ``ext_category`` it keeps higher structure, so its Hochschild homology
    is Morita invariant.  Generators live in ``[deg_lo, deg_hi]`` and the
    label ``(x, y, g, b, h)`` is the map sending generator g to b·h.  The
    identity of x is stored as its own label ``("id", x)`` in place of the
    first generator's ``g -> 1·g``.  The composite f·u is (-1)^{|f||u|} u∘f,
    the sign that makes diagrammatic order satisfy the Leibniz rule.
    """
    A = require_augmented(a)
    names = list(names) if names is not None else [m.name or "M%d" % i for i, m in enumerate(modules)]
    if len(set(names)) != len(names):
        names = ["%s#%d" % (nm, i) for i, nm in enumerate(names)]
    res = {x: MinimalResolution(m, A, deg_lo, deg_hi) for x, m in zip(names, modules)}
    for x in names:
        if not res[x].gens:
            raise ValueError("module %s has no generators in the window" % (x,))
    first = {x: min(res[x].gens, key=res[x].length.get) for x in names}
    one = A.field.one

    def ident(x):
        return {(x, x, g, A.unit, g): one for g in res[x].gens}

    def to_new(c: Chain) -> Chain:
        out = dict(c)
        for x in names:
            g0 = first[x]
            lam = out.pop((x, x, g0, A.unit, g0), 0)
            if lam:
                for lab, v in ident(x).items():
                    if lab[2] != g0:
                        vaxpy(out, {lab: v}, -lam)
                vaxpy(out, {("id", x): one}, lam)
        return {k: v for k, v in out.items() if v}

    def to_old(lab: Label) -> Chain:
        if lab[0] == "id":
            return ident(lab[1])
        return {lab: one}

    Ad = A.deg
    refs = {}
    for x in names:
        r: Dict[Label, list] = {}
        for g2, terms in res[x].dR.items():
            for c, b, g in terms:
                r.setdefault(g, []).append((c, b, g2))
        refs[x] = r

    def fdeg(lab):
        x, y, g, b, h = lab
        return Ad[b] + res[y].gens[h] - res[x].gens[g]

    def delta(lab) -> Chain:
        x, y, g, b, h = lab
        fd = fdeg(lab)
        out: Chain = {}
        # d∘f
        for (t, h2), c in res[y].d_element({(b, h): one}).items():
            vaxpy(out, {(x, y, g, t, h2): c}, 1)
        # -(-1)^{|f|} f∘d : generator g2 with d g2 ∋ c·b'·g goes to c (-1)^{|f||b'|} b'·b·h
        for c, b2, g2 in refs[x].get(g, ()):
            s = -sign(fd) * sign(fd * Ad[b2])
            for t, v in A.mul(b2, b).items():
                vaxpy(out, {(x, y, g2, t, h): c * v}, s)
        return out

    def compose(f, u) -> Chain:
        # f·u = (-1)^{|f||u|} u∘f, and u(b·h) = (-1)^{|u||b|} b·u(h)
        x, y, g, b, h = f
        y2, z, k, b2, h2 = u
        if y2 != y or k != h:
            return {}
        s = sign(fdeg(u) * (Ad[b] + fdeg(f)))
        return {(x, z, g, t, h2): v * s for t, v in A.mul(b, b2).items()}

    basis = {}
    for x in names:
        for y in names:
            els = []
            for g, dg in res[x].gens.items():
                for h, dh in res[y].gens.items():
                    for b in A.labels():
                        lab = (x, y, g, b, h)
                        if x == y and g == h == first[x] and b == A.unit:
                            lab = ("id", x)
                        els.append((lab, Ad[b] + dh - dg))
            basis[(x, y)] = els
    mor = {}
    for key, els in basis.items():
        diff = {}
        for lab, _ in els:
            full: Chain = {}
            for o, c in to_old(lab).items():
                vaxpy(full, delta(o), c)
            img = to_new(full)
            if img:
                diff[lab] = img
        mor[key] = ChainComplex(els, diff, A.field, check=check)
    comp = {}
    for x in names:
        for y in names:
            for z in names:
                for f, _ in basis[(x, y)]:
                    if f[0] == "id":
                        continue
                    for u, _ in basis[(y, z)]:
                        if u[0] == "id":
                            continue
                        img = to_new(compose(f, u))
                        if img:
                            comp[(f, u)] = img
    cat = DGCategory(names, mor, comp, {x: ("id", x) for x in names}, name="RHom", reliable=a.reliable,
                     check=check)
    cat.resolutions = res
    cat.reports = []
    cat.stable = True
    return cat

"""Normalized Hochschild chains and cochains, cup, Gerstenhaber bracket, Connes' B.

Chains of a DG-category are cyclic words ``(f0, (f1, ..., fn))`` with
f0: λ0 -> λ1, ..., fn: λn -> λ0 and composition written diagrammatically.
Normalization drops every word with an identity in positions >= 1.  An
algebra is the one-object case; a bimodule of coefficients replaces the
f0 slot.

Cochains of an algebra A with coefficients P are tables ``(word, p)``:
the map sending the word to p and every other word to 0.  A word w has
degree Σ(|a| + 1) and the cochain (w, p) has degree |p| - |w|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Tuple

from .bar import (DerivedResult, MissingAugmentation, Window, _Factor, _check_window, _stability, bar_d,
                  required_length)
from .complexes import Chain, ChainComplex, Label, sign
from .corefield import vaxpy
from .dga import DGAlgebra, DGCategory, DGModule, merge_reliable


class CochainOverflow(ValueError):
    """An operation produced a cochain outside the computed complex."""


# -- cyclic words -------------------------------------------------------------

class _CyclicData:
    """Letters of the normalized Hochschild complex and how they compose."""

    def __init__(self, field, objects, pos0, letters, d0, dl, right0, left0, comp, identities):
        self.field = field
        self.objects = objects
        self.pos0 = pos0          # label -> (src, tgt, deg), slot 0
        self.letters = letters    # label -> (src, tgt, deg), slots >= 1
        self.d0, self.dl = d0, dl
        self.right0 = right0      # (p, a) -> p·a
        self.left0 = left0        # (a, p) -> a·p
        self.comp = comp          # (a, b) -> a·b
        self.identities = identities


def _category_data(c: DGCategory) -> _CyclicData:
    ids = {c.identity[x]: x for x in c.objects}
    info = {l: (c.where[l][0], c.where[l][1], c.deg[l]) for l in c.where}
    letters = {l: v for l, v in info.items() if l not in ids}
    return _CyclicData(c.field, c.objects, info, letters, lambda l: c.d({l: 1}), lambda l: c.d({l: 1}),
                       c.compose, c.compose, c.compose, ids)


def _algebra_data(a: DGAlgebra, p: Optional[DGModule]) -> _CyclicData:
    u = a.unit
    letters = {l: ("*", "*", a.deg[l]) for l in a.labels() if l != u}
    if p is None:
        pos0 = {l: ("*", "*", a.deg[l]) for l in a.labels()}
        return _CyclicData(a.field, ("*",), pos0, letters, a.complex.d, a.complex.d, a.mul, a.mul, a.mul,
                           {u: "*"})
    pos0 = {l: ("*", "*", p.deg[l]) for l in p.labels()}
    return _CyclicData(a.field, ("*",), pos0, letters, p.complex.d, a.complex.d, p.ract, p.act, a.mul,
                       {u: "*"})


def _cyclic_words(data: _CyclicData, max_len: int, lo: int, hi: int):
    """Normalized cyclic words with total degree in [lo, hi]."""
    shifts = {l: v[2] + 1 for l, v in data.letters.items()}
    by_src: Dict[Hashable, List[Label]] = {}
    for l, (s, t, d) in data.letters.items():
        by_src.setdefault(s, []).append(l)
    mn = min(shifts.values(), default=0)
    mx = max(shifts.values(), default=0)
    out = []

    def rec(f0, home, at, word, deg, left):
        if at == home and lo <= deg <= hi:
            out.append(((f0, tuple(word)), deg))
        if left == 0:
            return
        for l in by_src.get(at, ()):
            t = deg + shifts[l]
            r = left - 1
            if t + max(0, r * mx) < lo or t + min(0, r * mn) > hi:
                continue
            word.append(l)
            rec(f0, home, data.letters[l][1], word, t, r)
            word.pop()

    for f0, (s, t, d) in data.pos0.items():
        rec(f0, s, t, [], d, max_len)
    return out


def _hochschild_d(data: _CyclicData, f0: Label, word: Tuple[Label, ...]) -> Chain:
    P, L = data.pos0, data.letters
    ids = data.identities
    out: Chain = {}
    n = len(word)
    eps = [P[f0][2]]
    for a in word:
        eps.append(eps[-1] + L[a][2] + 1)

    def put(g0, w, c):
        if any(x in ids for x in w):
            return
        vaxpy(out, {(g0, w): c}, 1)

    for g, c in data.d0(f0).items():
        put(g, word, c)
    for i, a in enumerate(word):
        s = -sign(eps[i])
        for b, c in data.dl(a).items():
            put(f0, word[:i] + (b,) + word[i + 1:], s * c)
    if n == 0:
        return out
    s = sign(P[f0][2])
    for g, c in data.right0(f0, word[0]).items():
        put(g, word[1:], s * c)
    for i in range(1, n):
        s = sign(eps[i])
        for b, c in data.comp(word[i - 1], word[i]).items():
            put(f0, word[:i - 1] + (b,) + word[i + 1:], s * c)
    last = word[-1]
    s = -sign(eps[n - 1] * (L[last][2] + 1))
    for g, c in data.left0(last, f0).items():
        put(g, word[:-1], s * c)
    return out


@dataclass
class HochschildChainComplex:
    data: _CyclicData
    complex: ChainComplex
    cutoff: int
    window: Window
    certified: bool
    required_length: Optional[int]
    reliable: Tuple[Optional[int], Optional[int]]


def _chain_complex_of(data: _CyclicData, cutoff: int, window: Window, reliable, check=True):
    lo, hi = _check_window(window)
    shifts = {l: v[2] + 1 for l, v in data.letters.items()}
    d0s = [v[2] for v in data.pos0.values()] or [0]
    need = required_length(shifts, lo - 1 - max(d0s), hi + 1 - min(d0s))
    certified = need is not None and cutoff >= need
    L = need if certified else cutoff
    basis = _cyclic_words(data, L, lo - 1, hi + 1)
    present = {b for b, _ in basis}
    diff = {}
    for b, d in basis:
        if d == lo - 1:
            continue
        img = {t: c for t, c in _hochschild_d(data, *b).items() if t in present}
        if img:
            diff[b] = img
    cx = ChainComplex(basis, diff, data.field, check=check)
    return HochschildChainComplex(data, cx, cutoff, (lo, hi), certified, need, reliable)


def _shrink(rel, k=1):
    lo, hi = rel
    return (None if lo is None else lo + k, None if hi is None else hi - k)


def hochschild_complex(source, coefficients: Optional[DGModule] = None, cutoff: int = 8,
                       window: Window = (-12, 12)) -> HochschildChainComplex:
    if isinstance(source, DGCategory):
        data = _category_data(source)
        rel = source.reliable or (None, None)
    else:
        if source.augmentation is None:
            raise MissingAugmentation("%s has no augmentation" % (source.name or "algebra"))
        data = _algebra_data(source, coefficients)
        rel = source.reliable
        if coefficients is not None:
            rel = merge_reliable(rel, coefficients.reliable)
    return _chain_complex_of(data, cutoff, window, _shrink(rel))


def hh(source, coefficients: Optional[DGModule] = None, cutoff: int = 8, window: Window = (-12, 12),
       offset: int = 0, persistent: bool = False) -> DerivedResult:
    """Hochschild homology of an algebra (optionally with bimodule coefficients) or DG-category.

    ``persistent`` reports images of homology between cutoffs for
    uncertified builds (see ``bar.persistent_homology``).
    """
    _check_window(window)

    def build(s):
        h = hochschild_complex(source, coefficients, s, window)
        return h, h.complex, h.certified, h.required_length, h.reliable

    h, cx, dims, reps, report = _stability(build, cutoff, window, persistent="sub" if persistent else None)
    return DerivedResult("hh", dims, reps, report, cx, offset=offset, source=h)


def hh_category(c: DGCategory, cutoff: int = 8, window: Window = (-12, 12),
                persistent: bool = True) -> DerivedResult:
    """HH of a category.  Mixed-sign shifts across objects are common here, so
    persistent images are the default."""
    return hh(c, None, cutoff, window, persistent=persistent)


# -- Connes' operator -------------------------------------------------------

def connes_b(h: HochschildChainComplex, chain: Chain) -> Chain:
    """B(f0[f1|..|fn]) = Σ_i ± id[f_i|..|f_n|f_0|..|f_{i-1}], zero on identities in slot 0.

    Only defined without coefficients.  Terms outside the computed basis
    are kept, so B of a chain can be fed to B again.
    """
    data = h.data
    ids = data.identities
    L = dict(data.letters)
    out: Chain = {}
    for (f0, word), c in chain.items():
        if f0 in ids:
            continue
        full = (f0,) + word
        sh = [(data.pos0[f0][2] + 1)] + [L[a][2] + 1 for a in word]
        total = sum(sh)
        before = 0
        for i in range(len(full)):
            rot = full[i:] + full[:i]
            src = data.pos0[full[i]][0] if i == 0 else L[full[i]][0]
            ident = _identity_at(data, src)
            s = sign(before * (total - before))
            vaxpy(out, {(ident, rot): c}, s)
            before += sh[i]
    return out


def _identity_at(data: _CyclicData, obj) -> Label:
    for l, x in data.identities.items():
        if x == obj:
            return l
    raise KeyError(obj)


def hochschild_boundary(h: HochschildChainComplex, chain: Chain) -> Chain:
    """The Hochschild differential on arbitrary normalized chains (no window cut)."""
    out: Chain = {}
    for (f0, word), c in chain.items():
        vaxpy(out, _hochschild_d(h.data, f0, word), c)
    return out


# -- cochains ---------------------------------------------------------------

class HochschildCochainComplex:
    """Normalized Hochschild cochains C^*(A, P) cut to words of length <= cutoff."""

    def __init__(self, a: DGAlgebra, coefficients: Optional[DGModule] = None, cutoff: int = 8,
                 window: Window = (-12, 12), check: bool = True):
        lo, hi = _check_window(window)
        if a.augmentation is None:
            raise MissingAugmentation("%s has no augmentation" % (a.name or "algebra"))
        self.A = a
        self.P = coefficients
        self.window = (lo, hi)
        self.cutoff = cutoff
        u = a.unit
        self.letters = [l for l in a.labels() if l != u]
        shifts = {l: a.deg[l] + 1 for l in self.letters}
        self.shifts = shifts
        plabels = a.labels() if coefficients is None else coefficients.labels()
        pdeg = a.deg if coefficients is None else coefficients.deg
        self.pdeg = pdeg
        pds = [pdeg[x] for x in plabels] or [0]
        wlo, whi = min(pds) - hi - 1, max(pds) - lo + 1
        need = required_length(shifts, wlo, whi)
        self.certified = need is not None and cutoff >= need
        self.required = need
        Lmax = need if self.certified else cutoff
        from .bar import enumerate_words
        words = enumerate_words(shifts, self.letters, Lmax, wlo, whi)
        self.words = words
        self.wdeg = {w: sum(shifts[x] for x in w) for w in words}
        basis = []
        for w in words:
            for p in plabels:
                d = pdeg[p] - self.wdeg[w]
                if lo - 1 <= d <= hi + 1:
                    basis.append(((w, p), d))
        present = {b for b, _ in basis}
        # who sees w in its bar differential: d(1[w']1) = Σ c x[w]y
        fa = _Factor(a.deg, a.complex.d, lambda x, b, side: a.mul(x, b))
        fb = _Factor(a.deg, a.complex.d, lambda b, x, side: a.mul(b, x))
        refs: Dict[Tuple, List] = {}
        for w2 in words:
            for (x, w, y), c in bar_d(a, fa, fb, u, w2, u).items():
                refs.setdefault(w, []).append((c, x, y, w2))
        self.refs = refs
        diff = {}
        for (w, p), d in basis:
            if d == lo - 1:
                continue
            img: Chain = {}
            for p2, c in self._dP(p).items():
                vaxpy(img, {(w, p2): c}, 1)
            sf = -sign(d)
            for c, x, y, w2 in refs.get(w, ()):
                s = sf * sign(d * a.deg[x])
                for p2, z in self._bimod(x, p, y).items():
                    vaxpy(img, {(w2, p2): c * z}, s)
            img = {t: c for t, c in img.items() if t in present}
            if img:
                diff[(w, p)] = img
        self.complex = ChainComplex(basis, diff, a.field, check=check)
        self.reliable = self._reliable(a.reliable, coefficients.reliable if coefficients else a.reliable,
                                       shifts, pds)

    @staticmethod
    def _reliable(arel, prel, shifts, pds):
        """Degrees unaffected by cutting the letters (arel) or the coefficients (prel)."""
        lo_caps, hi_caps = [], []
        mn = min(shifts.values(), default=1)
        if prel[1] is not None:
            hi_caps.append(prel[1] - max(mn, 1) - 1)
        if prel[0] is not None:
            lo_caps.append(prel[0] + max(-mn, 1) + 1)
        # a missing letter forces |w| > cut + 1
        if arel[1] is not None:
            lo_caps.append(max(pds) - arel[1] - 1)
        if arel[0] is not None:
            hi_caps.append(min(pds) - arel[0] + 1)
        return (max(lo_caps) if lo_caps else None, min(hi_caps) if hi_caps else None)

    def _dP(self, p):
        if self.P is None:
            return self.A.complex.d(p)
        return self.P.complex.d(p)

    def _bimod(self, x, p, y) -> Chain:
        a = self.A
        if self.P is None:
            return a.mul_chains(a.mul(x, p), {y: 1})
        left = self.P.act(x, p)
        out: Chain = {}
        for q, c in left.items():
            vaxpy(out, self.P.ract(q, y), c)
        return out

    def deg(self, f: Chain) -> int:
        ds = {self.pdeg[p] - self.wdeg.get(w, sum(self.shifts[x] for x in w)) for (w, p) in f}
        if len(ds) != 1:
            raise ValueError("cochain is not homogeneous")
        return ds.pop()

    def _check(self, f: Chain, what: str) -> Chain:
        missing = [l for l in f if l not in self.complex.deg]
        if missing:
            raise CochainOverflow("%s leaves the computed complex at %r" % (what, missing[0]))
        return f

    def is_cocycle(self, f: Chain) -> bool:
        return not self.complex.apply_d(f)

    def is_coboundary(self, f: Chain) -> bool:
        f = {l: c for l, c in f.items() if c}
        if not f:
            return True
        return self.complex.is_boundary(f, self.deg(f))


def hhc(a: DGAlgebra, coefficients: Optional[DGModule] = None, cutoff: int = 8, window: Window = (-12, 12),
        offset: int = 0) -> DerivedResult:
    """Hochschild cohomology HH^*(a, coefficients); the default coefficients are a itself."""
    _check_window(window)

    def build(s):
        h = HochschildCochainComplex(a, coefficients, s, window)
        return h, h.complex, h.certified, h.required, h.reliable

    unit_cochain = None
    if coefficients is None:
        unit_cochain = {0: [{((), a.unit): a.field.one}]}
    h, cx, dims, reps, report = _stability(build, cutoff, window, unit_cochain)
    return DerivedResult("hhc", dims, reps, report, cx, offset=offset, source=h)


def _alg_mul(h: HochschildCochainComplex, p, q) -> Chain:
    if h.P is not None:
        raise ValueError("cup product needs algebra coefficients")
    return h.A.mul(p, q)


def cup(h: HochschildCochainComplex, f: Chain, g: Chain) -> Chain:
    """(f ∪ g)(w1 w2) = (-1)^{|g||w1|} f(w1) g(w2)."""
    if not f or not g:
        return {}
    gd = h.deg(g)
    out: Chain = {}
    for (w1, p), c in f.items():
        s = sign(gd * sum(h.shifts[x] for x in w1))
        for (w2, q), e in g.items():
            for t, x in _alg_mul(h, p, q).items():
                vaxpy(out, {(w1 + w2, t): x}, s * c * e)
    return h._check(out, "cup product")


def circle(h: HochschildCochainComplex, f: Chain, g: Chain) -> Chain:
    """f∘g: insert g into each slot of f; g's value projected off the unit."""
    if not f or not g:
        return {}
    gd = h.deg(g)
    u = h.A.unit
    by_value: Dict[Label, List] = {}
    for (w2, q), e in g.items():
        if q != u:
            by_value.setdefault(q, []).append((w2, e))
    out: Chain = {}
    for (w, p), c in f.items():
        pre = 0
        for i, x in enumerate(w):
            s = sign((gd + 1) * pre)
            for w2, e in by_value.get(x, ()):
                vaxpy(out, {(w[:i] + w2 + w[i + 1:], p): c * e}, s)
            pre += h.shifts[x]
    return h._check(out, "circle product")


def gerstenhaber(h: HochschildCochainComplex, f: Chain, g: Chain) -> Chain:
    """[f, g] = f∘g - (-1)^{(|f|+1)(|g|+1)} g∘f."""
    if not f or not g:
        return {}
    fd, gd = h.deg(f), h.deg(g)
    out = dict(circle(h, f, g))
    vaxpy(out, circle(h, g, f), -sign((fd + 1) * (gd + 1)))
    return {l: c for l, c in out.items() if c}

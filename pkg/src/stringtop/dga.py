"""DG-algebras, DG-modules and small DG-categories given by structure constants.

Every constructor validates all axioms on basis elements and raises
:class:`AxiomViolation` naming the first failure and its witnesses.
Composition in a DG-category is written diagrammatically: for
``f: x -> y`` and ``g: y -> z`` the product ``f·g`` lies in ``mor(x, z)``,
so a one-object category is literally an algebra.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .complexes import AxiomViolation, Chain, ChainComplex, Label, UnknownLabel, sign
from .corefield import Field, vaxpy

Window = Tuple[int, int]


def _clean_table(table, deg, field, arity_labels):
    out = {}
    for key, img in table.items():
        for l in key:
            if l not in deg and l not in arity_labels:
                raise UnknownLabel(l)
        clean = {}
        for t, c in img.items():
            c = field(c)
            if c:
                clean[t] = c
        if clean:
            out[key] = clean
    return out


class DGAlgebra:
    """Unital DG-algebra on an explicit basis.

    ``mult[(a, b)]`` is the chain a·b; absent pairs multiply to zero except
    that the unit always acts as the identity.  ``augmentation`` maps basis
    labels to scalars (absent labels map to 0); None marks the algebra as
    ineligible for bar constructions.  ``reliable`` is the degree range in
    which a truncated model agrees with the honest algebra.
    """

    def __init__(self, complex: ChainComplex, unit: Label, mult: Mapping[Tuple[Label, Label], Mapping],
                 augmentation: Optional[Mapping[Label, object]] = None, name: str = "",
                 reliable: Optional[Window] = None, check: bool = True):
        self.complex = complex
        self.field: Field = complex.field
        self.deg = complex.deg
        if unit not in self.deg:
            raise UnknownLabel(unit)
        self.unit = unit
        self.name = name
        self.mult: Dict[Tuple[Label, Label], Chain] = {}
        for (a, b), img in mult.items():
            for l in (a, b):
                if l not in self.deg:
                    raise UnknownLabel(l)
            clean = {}
            for t, c in img.items():
                if t not in self.deg:
                    raise UnknownLabel(t)
                c = self.field(c)
                if c:
                    clean[t] = c
            if clean:
                self.mult[(a, b)] = clean
        one = self.field.one
        for l in self.deg:
            self.mult[(unit, l)] = {l: one}
            self.mult[(l, unit)] = {l: one}
        self.augmentation = None
        if augmentation is not None:
            self.augmentation = {}
            for l, c in augmentation.items():
                if l not in self.deg:
                    raise UnknownLabel(l)
                c = self.field(c)
                if c:
                    self.augmentation[l] = c
        self.reliable: Tuple[Optional[int], Optional[int]] = reliable or (None, None)
        self.truncated = False
        if check:
            self.validate()

    # -- arithmetic ---------------------------------------------------------

    def labels(self) -> List[Label]:
        return self.complex.labels()

    def mul(self, a: Label, b: Label) -> Chain:
        return self.mult.get((a, b), {})

    def mul_chains(self, u: Chain, v: Chain) -> Chain:
        out: Chain = {}
        for a, x in u.items():
            for b, y in v.items():
                img = self.mult.get((a, b))
                if img:
                    vaxpy(out, img, x * y)
        return out

    def d(self, c: Chain) -> Chain:
        return self.complex.apply_d(c)

    def eps(self, c: Chain):
        if self.augmentation is None:
            return None
        return sum((x * self.augmentation.get(l, 0) for l, x in c.items()), self.field.zero)

    @property
    def augmented(self) -> bool:
        return self.augmentation is not None

    def ideal_basis(self) -> List[Label]:
        """Basis labels other than the unit; the augmentation ideal once adapted."""
        return [l for l in self.labels() if l != self.unit]

    def is_adapted(self) -> bool:
        if self.augmentation is None:
            return False
        return all(l == self.unit or not c for l, c in self.augmentation.items()) and \
            self.augmentation.get(self.unit) == self.field.one

    # -- validation --------------------------------------------------------

    def validate(self) -> None:
        labels = self.labels()
        deg = self.deg
        for (a, b), img in self.mult.items():
            for t in img:
                if deg[t] != deg[a] + deg[b]:
                    raise AxiomViolation("multiplication degree", (a, b),
                                         "%s·%s has a term %s of degree %d" % (a, b, t, deg[t]))
        if deg[self.unit] != 0:
            raise AxiomViolation("unit degree", (self.unit,))
        if self.complex.diff.get(self.unit):
            raise AxiomViolation("unit is a cycle", (self.unit,))
        for a in labels:
            for b in labels:
                for c in labels:
                    left = self.mul_chains(self.mul(a, b), {c: 1})
                    right = self.mul_chains({a: 1}, self.mul(b, c))
                    if left != right:
                        raise AxiomViolation("associativity", (a, b, c))
        for a in labels:
            da = self.complex.d(a)
            for b in labels:
                lhs = self.d(self.mul(a, b))
                rhs = self.mul_chains(da, {b: 1})
                vaxpy(rhs, self.mul_chains({a: 1}, self.complex.d(b)), sign(deg[a]))
                if lhs != rhs:
                    raise AxiomViolation("Leibniz", (a, b))
        if self.augmentation is not None:
            for l, c in self.augmentation.items():
                if deg[l] != 0:
                    raise AxiomViolation("augmentation degree", (l,))
            if self.eps({self.unit: 1}) != 1:
                raise AxiomViolation("augmentation unital", (self.unit,))
            for a in labels:
                if self.eps(self.complex.d(a)):
                    raise AxiomViolation("augmentation chain map", (a,))
                for b in labels:
                    if self.eps(self.mul(a, b)) != self.eps({a: 1}) * self.eps({b: 1}):
                        raise AxiomViolation("augmentation multiplicative", (a, b))

    def __repr__(self):
        return "DGAlgebra(%s, %r)" % (self.name or "?", self.complex)


class DGModule:
    """A left, right or bimodule over a DG-algebra.

    ``left[(a, m)]`` and ``right[(m, a)]`` hold the actions.  A left module
    built by :func:`free_module` records ``generators``: its basis is
    ``(a, v)`` = a·v and Ext computations use it directly as its own
    semi-free resolution.
    """

    def __init__(self, complex: ChainComplex, algebra: DGAlgebra, side: str = "left",
                 left: Optional[Mapping] = None, right: Optional[Mapping] = None,
                 generators: Optional[Sequence[Label]] = None, name: str = "",
                 reliable: Optional[Window] = None, check: bool = True):
        if side not in ("left", "right", "bimodule"):
            raise ValueError("side must be left, right or bimodule")
        self.complex = complex
        self.algebra = algebra
        self.field = complex.field
        self.deg = complex.deg
        self.side = side
        self.name = name
        self.generators = tuple(generators) if generators is not None else None
        self.free_map: Optional[Dict[Label, Tuple[Label, Label]]] = None
        self.left = self._table(left or {}, "left") if side in ("left", "bimodule") else {}
        self.right = self._table(right or {}, "right") if side in ("right", "bimodule") else {}
        self.reliable: Tuple[Optional[int], Optional[int]] = reliable or (None, None)
        if check:
            self.validate()

    def _table(self, table, kind):
        out = {}
        u = self.algebra.unit
        one = self.field.one
        for key, img in table.items():
            a, m = key if kind == "left" else (key[1], key[0])
            if a not in self.algebra.deg:
                raise UnknownLabel(a)
            if m not in self.deg:
                raise UnknownLabel(m)
            clean = {}
            for t, c in img.items():
                if t not in self.deg:
                    raise UnknownLabel(t)
                c = self.field(c)
                if c:
                    clean[t] = c
            if clean:
                out[key] = clean
        for m in self.deg:
            out[(u, m) if kind == "left" else (m, u)] = {m: one}
        return out

    def labels(self) -> List[Label]:
        return self.complex.labels()

    def act(self, a: Label, m: Label) -> Chain:
        return self.left.get((a, m), {})

    def ract(self, m: Label, a: Label) -> Chain:
        return self.right.get((m, a), {})

    def act_chains(self, u: Chain, v: Chain) -> Chain:
        out: Chain = {}
        for a, x in u.items():
            for m, y in v.items():
                img = self.left.get((a, m))
                if img:
                    vaxpy(out, img, x * y)
        return out

    def ract_chains(self, v: Chain, u: Chain) -> Chain:
        out: Chain = {}
        for m, y in v.items():
            for a, x in u.items():
                img = self.right.get((m, a))
                if img:
                    vaxpy(out, img, x * y)
        return out

    def validate(self) -> None:
        A = self.algebra
        al = A.labels()
        ml = self.labels()
        deg, adeg = self.deg, A.deg
        if self.side in ("left", "bimodule"):
            for (a, m), img in self.left.items():
                for t in img:
                    if deg[t] != adeg[a] + deg[m]:
                        raise AxiomViolation("action degree", (a, m))
            for a in al:
                for b in al:
                    ab = A.mul(a, b)
                    for m in ml:
                        if self.act_chains(ab, {m: 1}) != self.act_chains({a: 1}, self.act(b, m)):
                            raise AxiomViolation("action associativity", (a, b, m))
            for a in al:
                for m in ml:
                    lhs = self.complex.apply_d(self.act(a, m))
                    rhs = self.act_chains(A.complex.d(a), {m: 1})
                    vaxpy(rhs, self.act_chains({a: 1}, self.complex.d(m)), sign(adeg[a]))
                    if lhs != rhs:
                        raise AxiomViolation("action Leibniz", (a, m))
        if self.side in ("right", "bimodule"):
            for (m, a), img in self.right.items():
                for t in img:
                    if deg[t] != adeg[a] + deg[m]:
                        raise AxiomViolation("action degree", (m, a))
            for a in al:
                for b in al:
                    ab = A.mul(a, b)
                    for m in ml:
                        if self.ract_chains({m: 1}, ab) != self.ract_chains(self.ract(m, a), {b: 1}):
                            raise AxiomViolation("action associativity", (m, a, b))
            for m in ml:
                for a in al:
                    lhs = self.complex.apply_d(self.ract(m, a))
                    rhs = self.ract_chains(self.complex.d(m), {a: 1})
                    vaxpy(rhs, self.ract_chains({m: 1}, A.complex.d(a)), sign(deg[m]))
                    if lhs != rhs:
                        raise AxiomViolation("action Leibniz", (m, a))
        if self.side == "bimodule":
            for a in al:
                for m in ml:
                    for b in al:
                        if self.ract_chains(self.act(a, m), {b: 1}) != self.act_chains({a: 1}, self.ract(m, b)):
                            raise AxiomViolation("bimodule compatibility", (a, m, b))

    def __repr__(self):
        return "DGModule(%s, %s, %r)" % (self.name or "?", self.side, self.complex)


class DGCategory:
    """Finite DG-category: ``mor[(x, y)]`` complexes with globally unique labels.

    ``comp[(f, g)]`` is the diagrammatic composite f·g for f: x -> y,
    g: y -> z.  ``identity[x]`` is a degree-0 cycle label of mor(x, x).
    """

    def __init__(self, objects: Sequence[Hashable], mor: Mapping[Tuple, ChainComplex],
                 comp: Mapping[Tuple[Label, Label], Mapping], identity: Mapping[Hashable, Label],
                 name: str = "", reliable: Optional[Window] = None, check: bool = True):
        self.objects = tuple(objects)
        self.mor: Dict[Tuple, ChainComplex] = {}
        self.field = None
        self.where: Dict[Label, Tuple] = {}
        self.deg: Dict[Label, int] = {}
        for x in self.objects:
            for y in self.objects:
                c = mor.get((x, y))
                if c is None:
                    c = ChainComplex([], {}, next(iter(mor.values())).field)
                self.mor[(x, y)] = c
                self.field = c.field
                for l, d in c.basis.elements:
                    if l in self.where:
                        raise ValueError("label %r used in two morphism complexes" % (l,))
                    self.where[l] = (x, y)
                    self.deg[l] = d
        self.identity = dict(identity)
        for x in self.objects:
            if self.identity.get(x) not in self.mor[(x, x)].deg:
                raise AxiomViolation("identity exists", (x,))
        one = self.field.one
        self.comp: Dict[Tuple[Label, Label], Chain] = {}
        for (f, g), img in comp.items():
            for l in (f, g):
                if l not in self.where:
                    raise UnknownLabel(l)
            clean = {}
            for t, c in img.items():
                if t not in self.where:
                    raise UnknownLabel(t)
                c = self.field(c)
                if c:
                    clean[t] = c
            if clean:
                self.comp[(f, g)] = clean
        for l, (x, y) in self.where.items():
            self.comp[(self.identity[x], l)] = {l: one}
            self.comp[(l, self.identity[y])] = {l: one}
        self.name = name
        self.reliable = reliable
        if check:
            self.validate()

    def compose(self, f: Label, g: Label) -> Chain:
        return self.comp.get((f, g), {})

    def compose_chains(self, u: Chain, v: Chain) -> Chain:
        out: Chain = {}
        for f, x in u.items():
            for g, y in v.items():
                img = self.comp.get((f, g))
                if img:
                    vaxpy(out, img, x * y)
        return out

    def d(self, c: Chain) -> Chain:
        out: Chain = {}
        for l, x in c.items():
            img = self.mor[self.where[l]].diff.get(l)
            if img:
                vaxpy(out, img, x)
        return out

    def validate(self) -> None:
        where, deg = self.where, self.deg
        for x in self.objects:
            i = self.identity[x]
            if deg[i] != 0 or self.d({i: 1}):
                raise AxiomViolation("identity is a degree-0 cycle", (x,))
        for (f, g), img in self.comp.items():
            (x, y), (y2, z) = where[f], where[g]
            if y != y2:
                raise AxiomViolation("composable", (f, g))
            for t in img:
                if where[t] != (x, z) or deg[t] != deg[f] + deg[g]:
                    raise AxiomViolation("composition degree", (f, g))
        objs = self.objects
        for x in objs:
            for y in objs:
                for z in objs:
                    for f in self.mor[(x, y)].labels():
                        df = self.mor[(x, y)].d(f)
                        for g in self.mor[(y, z)].labels():
                            fg = self.compose(f, g)
                            lhs = self.d(fg)
                            rhs = self.compose_chains(df, {g: 1})
                            vaxpy(rhs, self.compose_chains({f: 1}, self.mor[(y, z)].d(g)), sign(deg[f]))
                            if lhs != rhs:
                                raise AxiomViolation("composition Leibniz", (f, g))
                            for w in objs:
                                for h in self.mor[(z, w)].labels():
                                    a = self.compose_chains(fg, {h: 1})
                                    b = self.compose_chains({f: 1}, self.compose(g, h))
                                    if a != b:
                                        raise AxiomViolation("composition associativity", (f, g, h))

    def __repr__(self):
        return "DGCategory(%s, objects=%s)" % (self.name or "?", list(self.objects))


# -- document-level validators ----------------------------------------------

def validate_dga(spec: Mapping, field: Optional[Field] = None) -> DGAlgebra:
    """Build a :class:`DGAlgebra` from a plain mapping.

    Keys: ``basis`` [(label, degree)], ``unit``, ``differential``
    [(src, dst, coeff)], ``multiplication`` [(a, b, result, coeff)],
    optional ``augmentation`` [(label, coeff)] and ``field``.
    """
    if field is None:
        field = Field.parse(spec.get("field", "Q")) if isinstance(spec.get("field", "Q"), str) else spec["field"]
    basis = [(l, int(d)) for l, d in spec["basis"]]
    deg = dict(basis)
    diff: Dict[Label, Chain] = {}
    for src, dst, c in spec.get("differential", ()):
        for l in (src, dst):
            if l not in deg:
                raise UnknownLabel(l)
        row = diff.setdefault(src, {})
        row[dst] = row.get(dst, 0) + field(c)
    mult: Dict[Tuple, Chain] = {}
    for a, b, r, c in spec.get("multiplication", ()):
        for l in (a, b, r):
            if l not in deg:
                raise UnknownLabel(l)
        row = mult.setdefault((a, b), {})
        row[r] = row.get(r, 0) + field(c)
    aug = spec.get("augmentation")
    if aug is not None:
        aug = {l: field(c) for l, c in aug}
    cx = ChainComplex(basis, diff, field)
    return DGAlgebra(cx, spec["unit"], mult, aug, name=spec.get("name", ""))


def validate_dg_category(spec: Mapping, field: Optional[Field] = None) -> DGCategory:
    """Build a :class:`DGCategory` from a plain mapping.

    Keys: ``objects``; ``morphisms`` {"x,y": [(label, degree)]} or a list of
    (x, y, [(label, degree)]); ``differential`` [(src, dst, coeff)];
    ``composition`` [(f, g, result, coeff)]; ``identity`` {x: label}.
    """
    if field is None:
        field = Field.parse(spec.get("field", "Q"))
    objects = list(spec["objects"])
    mors = spec["morphisms"]
    if isinstance(mors, Mapping):
        mors = [tuple(k.split(",")) + (v,) for k, v in mors.items()]
    diff_rows: Dict[Label, Chain] = {}
    for src, dst, c in spec.get("differential", ()):
        row = diff_rows.setdefault(src, {})
        row[dst] = row.get(dst, 0) + field(c)
    mor = {}
    for x, y, basis in mors:
        basis = [(l, int(d)) for l, d in basis]
        labels = {l for l, _ in basis}
        diff = {l: img for l, img in diff_rows.items() if l in labels}
        for l, img in diff.items():
            for t in img:
                if t not in labels:
                    raise AxiomViolation("differential stays in its morphism complex", (l, t))
        mor[(x, y)] = ChainComplex(basis, diff, field)
    comp: Dict[Tuple, Chain] = {}
    for f, g, r, c in spec.get("composition", ()):
        row = comp.setdefault((f, g), {})
        row[r] = row.get(r, 0) + field(c)
    return DGCategory(objects, mor, comp, spec["identity"], name=spec.get("name", ""))


# -- constructions -----------------------------------------------------------

def _cut_sides(degrees, window):
    """Reliable range produced by cutting ``degrees`` down to ``window``."""
    lo, hi = window
    below = any(d < lo for d in degrees)
    above = any(d > hi for d in degrees)
    return (lo if below else None, hi if above else None)


def merge_reliable(r1, r2):
    """Intersect two reliable ranges whose sides may be None (unbounded)."""
    lo = [x for x in (r1[0], r2[0]) if x is not None]
    hi = [x for x in (r1[1], r2[1]) if x is not None]
    return (max(lo) if lo else None, min(hi) if hi else None)


def category_from_algebra(a: DGAlgebra, obj: Hashable = "*") -> DGCategory:
    return DGCategory([obj], {(obj, obj): a.complex}, a.mult, {obj: a.unit}, name=a.name, reliable=a.reliable)


def opposite(a: DGAlgebra) -> DGAlgebra:
    """a ·op b = (-1)^{|a||b|} b·a, labels preserved."""
    deg = a.deg
    mult = {}
    for (x, y), img in a.mult.items():
        s = sign(deg[x] * deg[y])
        mult[(y, x)] = {t: s * c for t, c in img.items()}
    return DGAlgebra(a.complex, a.unit, mult, a.augmentation, name=(a.name + "^op"), reliable=a.reliable)


def as_module(a: DGAlgebra, side: str = "left") -> DGModule:
    left = {(x, y): img for (x, y), img in a.mult.items()} if side in ("left", "bimodule") else None
    right = {(x, y): img for (x, y), img in a.mult.items()} if side in ("right", "bimodule") else None
    m = DGModule(a.complex, a, side, left, right, name=a.name, reliable=a.reliable, check=True)
    if side == "left":
        # basis element b is b·1, so A is free on its unit
        m.generators = (a.unit,)
        m.free_map = {l: (l, a.unit) for l in a.labels()}
    return m


def trivial_module(a: DGAlgebra, side: str = "left", label: Label = "k") -> DGModule:
    """The ground field as a module through the augmentation."""
    if a.augmentation is None:
        raise ValueError("trivial module needs an augmentation")
    cx = ChainComplex([(label, 0)], {}, a.field)
    tab = {}
    for l in a.labels():
        e = a.augmentation.get(l)
        if e:
            tab[(l, label) if side != "right" else (label, l)] = {label: e}
    left = tab if side in ("left", "bimodule") else None
    right = tab if side == "right" else None
    if side == "bimodule":
        right = {(label, l): v for (l, _), v in tab.items()}
    return DGModule(cx, a, side, left, right, name="k")


def free_module(a: DGAlgebra, generators: Sequence[Tuple[Label, int]], diff: Optional[Mapping] = None,
                name: str = "", window: Optional[Window] = None) -> DGModule:
    """Semi-free left module A ⊗ V, basis ``(a, v)``.

    ``diff`` gives d(1⊗v) as {(a, w): coeff}.  With ``window`` the basis is
    cut to those degrees (the quotient by everything above the window).
    """
    diff = diff or {}
    basis = []
    for v, dv in generators:
        for l in a.labels():
            d = a.deg[l] + dv
            if window is None or window[0] <= d <= window[1]:
                basis.append(((l, v), d))
    present = {l for l, _ in basis}
    f = a.field
    dmap: Dict[Label, Chain] = {}
    # d(a⊗v) = da⊗v + (-1)^|a| a·d(1⊗v)
    for (l, v), _ in basis:
        img: Chain = {}
        for l2, c in a.complex.d(l).items():
            vaxpy(img, {(l2, v): c}, 1)
        s = sign(a.deg[l])
        for (b, w), c in diff.get(v, {}).items():
            for t, x in a.mul(l, b).items():
                vaxpy(img, {(t, w): f(c) * x}, s)
        img = {k: x for k, x in img.items() if k in present}
        if img:
            dmap[(l, v)] = img
    cx = ChainComplex(basis, dmap, f)
    left = {}
    for (l, v), _ in basis:
        for b in a.labels():
            img = {(t, v): x for t, x in a.mul(b, l).items() if (t, v) in present}
            if img:
                left[(b, (l, v))] = img
    rel = a.reliable
    if window is not None:
        degs = [d for (l, v), d in
                [((l, v), a.deg[l] + dv) for v, dv in generators for l in a.labels()]]
        rel = merge_reliable(rel, _cut_sides(degs, window))
    m = DGModule(cx, a, "left", left, None, generators=[v for v, _ in generators], name=name, reliable=rel)
    m.free_map = {l: l for l in present}
    return m


def truncate(x, window: Window):
    """Restrict an algebra or module to basis degrees in ``window``.

    Products and differentials leaving the window are dropped, and the
    result's ``reliable`` range is intersected with the window.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError("empty window")
    keep = [(l, d) for l, d in x.complex.basis.elements if lo <= d <= hi]
    ks = {l for l, _ in keep}
    diff = {l: {t: c for t, c in img.items() if t in ks} for l, img in x.complex.diff.items() if l in ks}
    cx = ChainComplex(keep, diff, x.complex.field)
    rel = merge_reliable(x.reliable, _cut_sides(x.complex.degrees(), window))
    if isinstance(x, DGAlgebra):
        mult = {k: {t: c for t, c in img.items() if t in ks}
                for k, img in x.mult.items() if k[0] in ks and k[1] in ks}
        aug = None if x.augmentation is None else {l: c for l, c in x.augmentation.items() if l in ks}
        out = DGAlgebra(cx, x.unit, mult, aug, name=x.name, reliable=rel)
        out.truncated = x.truncated or len(keep) < len(x.complex.basis.elements)
        out.dropped = [(k, t) for k, img in x.mult.items() if k[0] in ks and k[1] in ks
                       for t in img if t not in ks]
        return out
    left = {k: {t: c for t, c in img.items() if t in ks} for k, img in x.left.items() if k[1] in ks}
    right = {k: {t: c for t, c in img.items() if t in ks} for k, img in x.right.items() if k[0] in ks}
    out = DGModule(cx, x.algebra, x.side, left, right, generators=x.generators, name=x.name, reliable=rel)
    if x.free_map is not None:
        out.free_map = {l: v for l, v in x.free_map.items() if l in ks}
    return out


def adapted(a: DGAlgebra) -> DGAlgebra:
    """Rebase so that the augmentation kills every non-unit basis element.

    Label ``b`` of the result stands for ``b - ε(b)·1``; the non-unit labels
    then span the augmentation ideal.
    """
    if a.augmentation is None:
        raise ValueError("algebra has no augmentation")
    if a.is_adapted():
        return a
    u = a.unit
    eps = {l: a.augmentation.get(l, 0) for l in a.labels()}
    one = a.field.one

    def to_old(l):
        if l == u or not eps[l]:
            return {l: one}
        return {l: one, u: -eps[l]}

    def to_new(c):
        # old b = new b + ε(b)·1
        out = {}
        for l, x in c.items():
            vaxpy(out, {l: one}, x)
            if l != u and eps[l]:
                vaxpy(out, {u: one}, x * eps[l])
        return out

    labels = a.labels()
    mult = {}
    for x in labels:
        for y in labels:
            img = to_new(a.mul_chains(to_old(x), to_old(y)))
            if img:
                mult[(x, y)] = img
    diff = {}
    for x in labels:
        img = to_new(a.d(to_old(x)))
        if img:
            diff[x] = img
    cx = ChainComplex(a.complex.basis.elements, diff, a.field)
    return DGAlgebra(cx, u, mult, {u: one}, name=a.name, reliable=a.reliable)

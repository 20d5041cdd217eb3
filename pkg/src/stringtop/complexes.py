"""Finite-type chain complexes with labelled bases.

Grading is homological throughout: the differential has degree -1, and
cochain objects live in non-positive degrees.  Labels are any hashable
values (strings for user data, tuples for tensor and Hom constructions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .corefield import QQ, Echelon, Field, Mod, Rational, Vector, kernel_of_columns, vaxpy

Label = Hashable
Chain = Dict[Label, object]


class AxiomViolation(ValueError):
    """An algebraic axiom failed; ``witnesses`` names the offending basis elements."""

    def __init__(self, axiom: str, witnesses: tuple, detail: str = ""):
        self.axiom = axiom
        self.witnesses = tuple(witnesses)
        self.detail = detail
        msg = "%s violated at %s" % (axiom, ", ".join(map(str, self.witnesses)))
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class UnknownLabel(KeyError):
    pass


def chain_add(u: Chain, v: Chain, c=1) -> Chain:
    out = dict(u)
    vaxpy(out, v, c)
    return out


def sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class GradedBasis:
    elements: Tuple[Tuple[Label, int], ...]

    def __post_init__(self):
        labels = [l for l, _ in self.elements]
        if len(set(labels)) != len(labels):
            seen, dup = set(), None
            for l in labels:
                if l in seen:
                    dup = l
                    break
                seen.add(l)
            raise ValueError("duplicate basis label %r" % (dup,))

    def degree_map(self) -> Dict[Label, int]:
        return dict(self.elements)


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    dimension: int
    representatives: List[Chain]


class ChainComplex:
    """Basis ``[(label, degree)]`` plus differential ``{label: {label: coeff}}``.

    Validity (degree -1 and d∘d = 0) is checked on construction unless
    ``check=False``; builders that prove d² = 0 separately may skip it.
    """

    def __init__(self, basis: Iterable[Tuple[Label, int]], diff: Optional[Mapping[Label, Mapping]] = None,
                 field: Field = QQ, check: bool = True):
        self.field = field
        self.basis = GradedBasis(tuple(basis))
        self.deg: Dict[Label, int] = self.basis.degree_map()
        self._by_degree: Dict[int, List[Label]] = {}
        for l, d in self.basis.elements:
            self._by_degree.setdefault(d, []).append(l)
        self._index = {d: {l: i for i, l in enumerate(ls)} for d, ls in self._by_degree.items()}
        self.diff: Dict[Label, Chain] = {}
        for src, img in (diff or {}).items():
            if src not in self.deg:
                raise UnknownLabel(src)
            clean = {}
            for tgt, c in img.items():
                if tgt not in self.deg:
                    raise UnknownLabel(tgt)
                c = field(c) if not _in_field(c, field) else c
                if c:
                    clean[tgt] = c
            if clean:
                self.diff[src] = clean
        if check:
            self.validate()

    # -- structure ---------------------------------------------------------

    def validate(self) -> None:
        for src, img in self.diff.items():
            for tgt in img:
                if self.deg[tgt] != self.deg[src] - 1:
                    raise AxiomViolation("differential degree", (src, tgt),
                                         "d(%s) has a term in degree %d" % (src, self.deg[tgt]))
        for src in self.diff:
            dd = self.apply_d(self.diff[src])
            if dd:
                raise AxiomViolation("d^2 = 0", (src,), "d(d(%s)) = %s" % (src, self.field.format_chain(dd)))

    def labels(self, n: Optional[int] = None) -> List[Label]:
        if n is None:
            return [l for l, _ in self.basis.elements]
        return self._by_degree.get(n, [])

    def degrees(self) -> List[int]:
        return sorted(self._by_degree)

    def dim(self, n: int) -> int:
        return len(self._by_degree.get(n, ()))

    def apply_d(self, c: Chain) -> Chain:
        out: Chain = {}
        for l, x in c.items():
            img = self.diff.get(l)
            if img:
                vaxpy(out, img, x)
        return out

    def d(self, label: Label) -> Chain:
        return dict(self.diff.get(label, {}))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * len(ls) for d, ls in self._by_degree.items())

    # -- coordinates -------------------------------------------------------

    def to_vector(self, c: Chain, n: int) -> Vector:
        idx = self._index.get(n, {})
        out = {}
        for l, x in c.items():
            if x:
                if l not in idx:
                    raise ValueError("%r is not a basis element of degree %d" % (l, n))
                out[idx[l]] = x
        return out

    def from_vector(self, v: Vector, n: int) -> Chain:
        ls = self._by_degree.get(n, [])
        return {ls[i]: x for i, x in v.items() if x}

    def d_columns(self, n: int) -> List[Vector]:
        """Columns of d_n : C_n -> C_{n-1} in the degree-(n-1) basis coordinates."""
        idx = self._index.get(n - 1, {})
        cols = []
        for l in self._by_degree.get(n, []):
            cols.append({idx[t]: x for t, x in self.diff.get(l, {}).items()})
        return cols

    # -- homology ----------------------------------------------------------

    def homology(self, n: int, prefer: Sequence[Chain] = ()) -> HomologyResult:
        """H_n with cycle representatives.

        Representatives are chosen greedily: boundaries first, then the
        ``prefer`` cycles, then kernel vectors in pivot order.
        """
        _, ker, _ = kernel_of_columns(self.d_columns(n))
        ech = Echelon()
        for col in self.d_columns(n + 1):
            ech.add(col)
        nb = len(ech)
        reps = []
        for c in prefer:
            v = self.to_vector(c, n)
            if self.apply_d(c):
                raise ValueError("preferred chain is not a cycle")
            if ech.add(v)[0]:
                reps.append(self.from_vector(v, n))
        for v in ker:
            if ech.add(v)[0]:
                reps.append(self.from_vector(v, n))
        dim = len(ker) - nb
        assert dim == len(reps), (dim, len(reps))
        return HomologyResult(n, dim, reps)

    def betti(self, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
        if degrees is None:
            degrees = self.degrees()
        return {n: self.homology(n).dimension for n in degrees}

    def total_betti(self) -> Dict[int, int]:
        """All homology dims, checked against the Euler characteristic."""
        b = self.betti()
        chi = sum((-1) ** (n % 2) * x for n, x in b.items())
        if chi != self.euler_characteristic():
            raise AssertionError("Euler characteristic mismatch")
        return b

    def is_boundary(self, c: Chain, n: int) -> bool:
        from .corefield import solve
        return solve(self.d_columns(n + 1), self.to_vector(c, n)) is not None

    def __repr__(self):
        dims = {d: len(ls) for d, ls in sorted(self._by_degree.items())}
        return "ChainComplex(%s)" % dims


def _in_field(c, field: Field) -> bool:
    if field.p is None:
        return isinstance(c, (int, Fraction, Rational))
    return isinstance(c, Mod) and c.p == field.p


def homology(c: ChainComplex, n: int) -> HomologyResult:
    return c.homology(n)


def unit_complex(field: Field = QQ, label: Label = "1") -> ChainComplex:
    return ChainComplex([(label, 0)], {}, field)


def tensor_complex(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """c ⊗ d with labels ``(a, b)`` and d(a⊗b) = da⊗b + (-1)^|a| a⊗db."""
    basis = [((a, b), c.deg[a] + d.deg[b]) for a, _ in c.basis.elements for b, _ in d.basis.elements]
    diff = {}
    for a, da in c.basis.elements:
        for b, _ in d.basis.elements:
            img: Chain = {}
            for a2, x in c.diff.get(a, {}).items():
                img[(a2, b)] = x
            s = sign(da)
            for b2, x in d.diff.get(b, {}).items():
                vaxpy(img, {(a, b2): x}, s)
            if img:
                diff[(a, b)] = img
    return ChainComplex(basis, diff, c.field)


def hom_complex(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Hom(c, d): label ``(a, b)`` is the map a ↦ b, degree |b| - |a|.

    δ(f) = d∘f - (-1)^|f| f∘d.
    """
    incoming: Dict[Label, List[Tuple[Label, object]]] = {}
    for src, img in c.diff.items():
        for tgt, x in img.items():
            incoming.setdefault(tgt, []).append((src, x))
    basis = [((a, b), d.deg[b] - c.deg[a]) for a, _ in c.basis.elements for b, _ in d.basis.elements]
    diff = {}
    for a, da in c.basis.elements:
        for b, db in d.basis.elements:
            deg_f = db - da
            img: Chain = {}
            for b2, x in d.diff.get(b, {}).items():
                vaxpy(img, {(a, b2): x}, 1)
            s = -sign(deg_f)
            for a2, x in incoming.get(a, ()):
                vaxpy(img, {(a2, b): x}, s)
            if img:
                diff[(a, b)] = img
    return ChainComplex(basis, diff, c.field)


def shift(c: ChainComplex, m: int) -> ChainComplex:
    """Degrees raised by m, differential multiplied by (-1)^m."""
    s = sign(m)
    basis = [(l, d + m) for l, d in c.basis.elements]
    diff = {l: {t: s * x for t, x in img.items()} for l, img in c.diff.items()}
    return ChainComplex(basis, diff, c.field, check=False)


def dual(c: ChainComplex) -> ChainComplex:
    """Linear dual Hom(c, k), relabelled by the original labels."""
    h = hom_complex(c, unit_complex(c.field, label=None))
    basis = [(a, deg) for (a, _), deg in h.basis.elements]
    diff = {a: {a2: x for (a2, _), x in img.items()} for (a, _), img in h.diff.items()}
    return ChainComplex(basis, diff, c.field, check=False)


def relabel(c: ChainComplex, f) -> ChainComplex:
    basis = [(f(l), d) for l, d in c.basis.elements]
    diff = {f(l): {f(t): x for t, x in img.items()} for l, img in c.diff.items()}
    return ChainComplex(basis, diff, c.field, check=False)

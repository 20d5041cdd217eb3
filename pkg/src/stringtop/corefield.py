"""Exact scalars and sparse linear algebra over Q and F_p.

Vectors are sparse dicts ``{index: scalar}`` with no zero entries.  Every
rank, kernel and quotient downstream is computed here, so nothing in the
package ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:  # GMP rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction

Vector = Dict[int, object]


_RATIONAL_TYPES = (Rational,)


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Mod:
    """Residue modulo a prime ``p``, stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError("mixed moduli %d and %d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, _RATIONAL_TYPES)):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero mod %d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Mod(self._lift(other), self.p) / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """The ground field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p):
                raise FieldError("%d is not prime" % self.p)
            if self.p >= 2 ** 31:
                raise FieldError("prime must be below 2^31")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else "Fp:%d" % self.p

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, Mod):
                raise FieldError("residue given to the rational field")
            if isinstance(x, str):
                return Rational(Fraction(x))
            return Rational(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldError("residue mod %d given to F_%d" % (x.p, self.p))
            return x
        if isinstance(x, (Fraction, _RATIONAL_TYPES)):
            return Mod(int(x.numerator), self.p) / Mod(int(x.denominator), self.p)
        return Mod(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def format(self, x) -> str:
        if isinstance(x, Mod):
            return str(x.v)
        x = Rational(x)
        if x.denominator == 1:
            return str(int(x.numerator))
        return "%d/%d" % (int(x.numerator), int(x.denominator))

    def format_chain(self, v: Vector) -> str:
        return "{%s}" % ", ".join("%r: %s" % (k, self.format(c)) for k, c in sorted(v.items(), key=lambda kv: repr(kv[0])))

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls()
        if text.startswith("Fp"):
            rest = text[2:].lstrip(":")
            return cls(int(rest))
        raise FieldError("unknown field %r (expected Q or Fp:<p>)" % text)


QQ = Field()


# -- sparse vectors ---------------------------------------------------------

def vadd(u: Vector, v: Vector, c=1) -> Vector:
    """Return ``u + c*v`` as a fresh dict."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vaxpy(u: Vector, v: Vector, c) -> None:
    """In place ``u += c*v``."""
    for k, x in v.items():
        y = u.get(k, 0) + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def vscale(v: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def dense(v: Vector, n: int, zero=0) -> tuple:
    return tuple(v.get(i, zero) for i in range(n))


def sparse(v: Sequence) -> Vector:
    return {i: x for i, x in enumerate(v) if x}


# -- incremental echelon form -----------------------------------------------

class Echelon:
    """Row echelon basis grown one vector at a time.

    Each stored row has its pivot at its smallest index with coefficient 1.
    With ``track=True`` every row remembers the combination of inserted
    vectors it came from, which is what ``solve`` and kernels need.
    """

    def __init__(self, track: bool = False):
        self.rows: Dict[int, Vector] = {}
        self.combos: Dict[int, Vector] = {}
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vector, combo: Optional[Vector] = None) -> Tuple[Vector, Optional[Vector]]:
        v = dict(v)
        rows = self.rows
        done = -1
        while True:
            cand = [k for k in v if k in rows and k > done]
            if not cand:
                break
            k = min(cand)
            c = v[k]
            vaxpy(v, rows[k], -c)
            if combo is not None:
                vaxpy(combo, self.combos[k], -c)
            done = k
        return v, combo

    def add(self, v: Vector) -> Tuple[bool, Optional[Vector]]:
        """Insert ``v``; returns (independent, dependency-combination-if-dependent)."""
        idx = self.count
        self.count += 1
        combo = {idx: 1} if self.track else None
        r, combo = self.reduce(v, combo)
        if not r:
            return False, combo
        p = min(r)
        inv = 1 / r[p] if not isinstance(r[p], int) else Rational(1, r[p])
        r = {k: x * inv for k, x in r.items()}
        self.rows[p] = r
        if self.track:
            self.combos[p] = {k: x * inv for k, x in combo.items()}
        return True, None

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduced_rows(self) -> List[Vector]:
        """Fully reduced (RREF) rows in pivot order."""
        piv = sorted(self.rows)
        out = {p: dict(self.rows[p]) for p in piv}
        for p in reversed(piv):
            row = out[p]
            for q in piv:
                if q < p and p in out[q]:
                    vaxpy(out[q], row, -out[q][p])
        return [out[p] for p in piv]


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[int, int, object], ...] = ()

    def __post_init__(self):
        seen = set()
        clean = []
        for r, c, x in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, self.rows, self.cols))
            if (r, c) in seen:
                raise ValueError("duplicate entry at (%d, %d)" % (r, c))
            seen.add((r, c))
            if x:
                clean.append((r, c, x))
        object.__setattr__(self, "entries", tuple(sorted(clean, key=lambda e: (e[0], e[1]))))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field = QQ) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = [(i, j, field(x)) for i, row in enumerate(rows) for j, x in enumerate(row) if x]
        return cls(nr, nc, tuple(ent))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Vector]) -> "SparseMatrix":
        ent = [(r, j, x) for j, col in enumerate(columns) for r, x in col.items()]
        return cls(nrows, len(columns), tuple(ent))

    def row_dicts(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.rows)]
        for r, c, x in self.entries:
            out[r][c] = x
        return out

    def col_dicts(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.cols)]
        for r, c, x in self.entries:
            out[c][r] = x
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, tuple((c, r, x) for r, c, x in self.entries))

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for r, c, x in self.entries:
            if c in v:
                y = out.get(r, 0) + x * v[c]
                if y:
                    out[r] = y
                else:
                    out.pop(r, None)
        return out


@dataclass(frozen=True)
class RankKernelImage:
    rank: int
    kernel: List[tuple] = field(default_factory=list)
    image: List[tuple] = field(default_factory=list)


def kernel_of_columns(columns: Sequence[Vector]) -> Tuple[int, List[Vector], List[Vector]]:
    """Rank, kernel basis and reduced image rows of the map sending e_j to ``columns[j]``."""
    ech = Echelon(track=True)
    kernel = []
    for col in columns:
        indep, combo = ech.add(col)
        if not indep:
            kernel.append(combo)
    return len(ech), kernel, ech.reduced_rows()


def rank_kernel_image(m: SparseMatrix) -> RankKernelImage:
    """Rank, RREF-derived kernel basis and echelon basis of the column space."""
    zero = 0
    ech = Echelon()
    for row in m.row_dicts():
        ech.add(row)
    rref = ech.reduced_rows()
    pivots = [min(r) for r in rref]
    free = [c for c in range(m.cols) if c not in set(pivots)]
    kernel = []
    for f in free:
        v = {f: 1}
        for p, r in zip(pivots, rref):
            if f in r:
                v[p] = -r[f]
        kernel.append(dense(v, m.cols, zero))
    col_ech = Echelon()
    for col in m.col_dicts():
        col_ech.add(col)
    image = [dense(r, m.rows, zero) for r in col_ech.reduced_rows()]
    return RankKernelImage(len(pivots), kernel, image)


def rank(m: SparseMatrix) -> int:
    ech = Echelon()
    for row in m.row_dicts():
        ech.add(row)
    return len(ech)


def quotient_basis(sub: Iterable[Sequence], ambient_dim: int) -> List[tuple]:
    """Standard vectors completing ``sub`` to a basis, lowest index first."""
    ech = Echelon()
    for v in sub:
        if len(v) != ambient_dim:
            raise ValueError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
        ech.add(sparse(v))
    out = []
    for j in range(ambient_dim):
        indep, _ = ech.add({j: 1})
        if indep:
            out.append(tuple(1 if i == j else 0 for i in range(ambient_dim)))
    return out


def solve(columns: Sequence[Vector], b: Vector) -> Optional[Vector]:
    """Some ``x`` with ``sum x_j columns[j] = b``, or None if inconsistent."""
    ech = Echelon(track=True)
    for col in columns:
        ech.add(col)
    r, combo = ech.reduce(b, {})
    if r:
        return None
    return {k: -x for k, x in combo.items() if x}

"""Open-closed 2d TQFT data over a field: Frobenius algebras, θ maps, Cardy.

Algebras are ungraded and given on explicit bases; elements are sparse
dicts ``{label: scalar}``.  ``δ(a) = Σ_i a ψ_i ⊗ ψ^i`` with dual bases
⟨ψ^i, ψ_j⟩ = δ_ij for the pairing ⟨a, b⟩ = ε(ab).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dfield
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .complexes import Chain, Label
from .corefield import QQ, Field, Rational, kernel_of_columns, solve, vaxpy
from .dga import DGAlgebra


class DegeneratePairing(ValueError):
    def __init__(self, radical: List[Chain], detail: str = ""):
        self.radical = radical
        super().__init__(detail or "trace pairing is degenerate; radical %s" % (radical,))


class NotAssociative(ValueError):
    def __init__(self, witness: Tuple[Label, Label, Label]):
        self.witness = witness
        super().__init__("(ab)c != a(bc) for %r" % (witness,))


class WiringTypeError(TypeError):
    pass


@dataclass
class FrobeniusAlgebra:
    labels: Tuple[Label, ...]
    mult: Dict[Tuple[Label, Label], Chain]
    unit: Chain
    trace: Dict[Label, object]
    field: Field = QQ
    dual: Dict[Label, Chain] = dfield(default_factory=dict)   # e_i -> ψ^i
    gram: Dict[Tuple[Label, Label], object] = dfield(default_factory=dict)

    def mul(self, u: Chain, v: Chain) -> Chain:
        out: Chain = {}
        for a, x in u.items():
            for b, y in v.items():
                img = self.mult.get((a, b))
                if img:
                    vaxpy(out, img, x * y)
        return out

    def eps(self, u: Chain):
        return sum((x * self.trace.get(a, 0) for a, x in u.items()), self.field.zero)

    def pair(self, u: Chain, v: Chain):
        return self.eps(self.mul(u, v))

    def casimir(self) -> List[Tuple[Chain, Chain]]:
        """Pairs (ψ_i, ψ^i)."""
        return [({l: self.field.one}, self.dual[l]) for l in self.labels]

    def is_commutative(self) -> Optional[Tuple[Label, Label]]:
        for a, b in itertools.combinations(self.labels, 2):
            if self.mul({a: 1}, {b: 1}) != self.mul({b: 1}, {a: 1}):
                return (a, b)
        return None

    def handle(self) -> Chain:
        """h = Σ ψ^i ψ_i."""
        out: Chain = {}
        for p, q in self.casimir():
            vaxpy(out, self.mul(q, p), 1)
        return out


def _clean(c: Mapping, f: Field) -> Chain:
    out = {}
    for k, v in c.items():
        v = f(v)
        if v:
            out[k] = v
    return out


def frobenius_validate(algebra, trace: Mapping[Label, object], field: Optional[Field] = None) -> FrobeniusAlgebra:
    """Check associativity, unit and nondegeneracy; return the algebra with dual bases.

    ``algebra`` is a DGAlgebra concentrated in degree 0 or a mapping with
    keys ``basis`` (labels), ``mult`` {(a, b): chain} and ``unit`` (label or chain).
    """
    if isinstance(algebra, DGAlgebra):
        if any(d != 0 for d in algebra.deg.values()):
            raise ValueError("Frobenius algebras here are ungraded")
        f = algebra.field
        labels = tuple(algebra.labels())
        mult = dict(algebra.mult)
        unit = {algebra.unit: f.one}
    else:
        f = field or QQ
        labels = tuple(algebra["basis"])
        mult = {tuple(k): _clean(v, f) for k, v in algebra["mult"].items()}
        u = algebra["unit"]
        unit = _clean(u, f) if isinstance(u, Mapping) else {u: f.one}
    mult = {k: v for k, v in mult.items() if v}
    tr = _clean(trace, f)
    fa = FrobeniusAlgebra(labels, mult, unit, tr, f)
    one = f.one
    for a in labels:
        if fa.mul(unit, {a: one}) != {a: one} or fa.mul({a: one}, unit) != {a: one}:
            raise ValueError("unit law fails at %r" % (a,))
    for a, b, c in itertools.product(labels, repeat=3):
        ab = fa.mul({a: one}, {b: one})
        bc = fa.mul({b: one}, {c: one})
        if fa.mul(ab, {c: one}) != fa.mul({a: one}, bc):
            raise NotAssociative((a, b, c))
    n = len(labels)
    G = [[fa.pair({a: one}, {b: one}) for b in labels] for a in labels]
    fa.gram = {(labels[i], labels[j]): G[i][j] for i in range(n) for j in range(n) if G[i][j]}
    # radical: v with Σ_i v_i G[i][j] = 0 for all j
    cols = [{j: G[i][j] for j in range(n) if G[i][j]} for i in range(n)]
    _, ker, _ = kernel_of_columns(cols)
    if ker:
        rad = [{labels[i]: x for i, x in v.items() if x} for v in ker]
        raise DegeneratePairing(rad)
    # ψ^i = Σ_k X[i][k] e_k with Σ_k X[i][k] G[k][j] = δ_ij
    for i, l in enumerate(labels):
        x = solve(cols, {i: one})
        fa.dual[l] = {labels[k]: c for k, c in x.items() if c}
    return fa


def cardy_map(fa: FrobeniusAlgebra, phi: Chain) -> Chain:
    """Σ_i ψ^i φ ψ_i."""
    out: Chain = {}
    for p, q in fa.casimir():
        vaxpy(out, fa.mul(fa.mul(q, phi), p), 1)
    return {k: v for k, v in out.items() if v}


# -- open-closed data --------------------------------------------------------

@dataclass
class OpenClosedData:
    """Closed algebra, one Frobenius open algebra per brane and θ_λ: C -> O_λλ.

    ``theta[λ][c]`` is θ_λ(c) for each closed basis label c.  Off-diagonal
    sectors ``offdiag[(λ, μ)]`` are optional bases with compositions
    ``offcomp[(x, y)]`` for x ∈ O_λμ, y ∈ O_μν (diagonal sectors compose by
    their own products).
    """

    closed: FrobeniusAlgebra
    open: Dict[Hashable, FrobeniusAlgebra]
    theta: Dict[Hashable, Dict[Label, Chain]]
    offdiag: Dict[Tuple[Hashable, Hashable], Tuple[Label, ...]] = dfield(default_factory=dict)
    offcomp: Dict[Tuple[Label, Label], Chain] = dfield(default_factory=dict)
    name: str = ""

    def theta_map(self, lam, c: Chain) -> Chain:
        out: Chain = {}
        for l, x in c.items():
            vaxpy(out, self.theta[lam].get(l, {}), x)
        return {k: v for k, v in out.items() if v}


def adjoint(data: OpenClosedData, lam) -> Dict[Label, Chain]:
    """θ*_λ on the open basis: ⟨θ_λ(a), φ⟩_open = ⟨a, θ*_λ(φ)⟩_closed."""
    C, O = data.closed, data.open[lam]
    out = {}
    for phi in O.labels:
        # θ*(φ) = Σ_k c_k e_k with Σ_k ⟨e_i, e_k⟩ c_k = ⟨θ(e_i), φ⟩
        b = {}
        for i, a in enumerate(C.labels):
            v = O.pair(data.theta_map(lam, {a: C.field.one}), {phi: O.field.one})
            if v:
                b[i] = v
        cols = [{i: C.gram.get((a, k), 0) for i, a in enumerate(C.labels) if C.gram.get((a, k), 0)}
                for k in C.labels]
        x = solve(cols, b)
        if x is None:
            raise DegeneratePairing([], "closed pairing cannot represent θ*")
        out[phi] = {C.labels[k]: c for k, c in x.items() if c}
    return out


@dataclass
class CheckEntry:
    axiom: str
    subject: str
    passed: bool
    witness: Optional[str] = None


@dataclass
class VerificationReport:
    entries: List[CheckEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> List[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def by_axiom(self, axiom: str) -> List[CheckEntry]:
        return [e for e in self.entries if e.axiom == axiom]


def verify_open_closed(data: OpenClosedData) -> VerificationReport:
    """Check every axiom independently and record each outcome."""
    C = data.closed
    f = C.field
    one = f.one
    entries: List[CheckEntry] = []
    w = C.is_commutative()
    entries.append(CheckEntry("closed commutative", "C", w is None, None if w is None else repr(w)))
    entries.append(CheckEntry("closed nondegenerate", "C", len(C.dual) == len(C.labels)))
    for lam, O in data.open.items():
        s = str(lam)
        entries.append(CheckEntry("open nondegenerate", s, len(O.dual) == len(O.labels)))
        th = lambda c: data.theta_map(lam, c)
        bad = None
        for a, b in itertools.product(C.labels, repeat=2):
            if th(C.mul({a: one}, {b: one})) != O.mul(th({a: one}), th({b: one})):
                bad = (a, b)
                break
        entries.append(CheckEntry("theta multiplicative", s, bad is None, None if bad is None else repr(bad)))
        u = th(C.unit)
        ok = u == {k: v for k, v in O.unit.items() if v}
        entries.append(CheckEntry("theta unital", s, ok, None if ok else format_chain(u, f)))
        bad = None
        for a in C.labels:
            t = th({a: one})
            for x in O.labels:
                if O.mul(t, {x: one}) != O.mul({x: one}, t):
                    bad = (a, x)
                    break
            if bad:
                break
        entries.append(CheckEntry("theta central", s, bad is None, None if bad is None else repr(bad)))
        try:
            star = adjoint(data, lam)
        except DegeneratePairing as e:
            entries.append(CheckEntry("cardy", s, False, str(e)))
            continue
        for phi in O.labels:
            lhs = th(star[phi])
            rhs = cardy_map(O, {phi: one})
            ok = lhs == rhs
            entries.append(CheckEntry("cardy", "%s:%s" % (s, phi), ok,
                                      None if ok else "θθ* = %s, Σψ^iφψ_i = %s" % (format_chain(lhs, f), format_chain(rhs, f))))
    return VerificationReport(entries)


# -- fixtures -----------------------------------------------------------------

def matrix_algebra(n: int, field: Field = QQ) -> FrobeniusAlgebra:
    labels = tuple((i, j) for i in range(n) for j in range(n))
    mult = {((i, j), (j, k)): {(i, k): field.one} for i in range(n) for j in range(n) for k in range(n)}
    unit = {(i, i): field.one for i in range(n)}
    trace = {(i, i): 1 for i in range(n)}
    return frobenius_validate({"basis": labels, "mult": mult, "unit": unit}, trace, field)


def dual_numbers(trace: Mapping[int, object] = None, field: Field = QQ) -> FrobeniusAlgebra:
    """k[x]/(x²) on basis {0: 1, 1: x}; default trace ε(1) = 0, ε(x) = 1."""
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return frobenius_validate({"basis": (0, 1), "mult": mult, "unit": 0}, trace or {1: 1}, field)


def truncated_poly_frobenius(n: int, top_trace, field: Field = QQ) -> FrobeniusAlgebra:
    """k[u]/(u^n) with ε(u^{n-1}) = top_trace and ε = 0 on lower powers."""
    mult = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return frobenius_validate({"basis": tuple(range(n)), "mult": mult, "unit": 0}, {n - 1: top_trace}, field)


def matrix_fixture(n: int, closed_trace=1) -> OpenClosedData:
    """C = k with ε(1) = closed_trace, one brane with O = M_n, θ(1) = Id."""
    C = frobenius_validate({"basis": ("1",), "mult": {("1", "1"): {"1": 1}}, "unit": "1"}, {"1": closed_trace})
    O = matrix_algebra(n)
    return OpenClosedData(C, {"b": O}, {"b": {"1": dict(O.unit)}}, name="M%d" % n)


def dual_numbers_fixture(closed_scale=1) -> OpenClosedData:
    """C = k[u]/(u³) with ε(u²) = closed_scale/2, O = k[x]/(x²) with ε(x) = 1,
    θ(u) = x, θ(u²) = 0.

    Taking C = O with θ = id cannot satisfy Cardy: the right side sends 1 to 2x
    but θθ* is the identity.  The cubic closed algebra gives θθ*(1) = 2x.
    """
    C = truncated_poly_frobenius(3, Rational(1, 2) * closed_scale)
    O = dual_numbers()
    return OpenClosedData(C, {"b": O}, {"b": {0: {0: 1}, 1: {1: 1}}}, name="k[x]/x^2")


def commutative_semisimple(traces: Sequence, field: Field = QQ) -> FrobeniusAlgebra:
    """k^m with idempotent basis e_i and ε(e_i) = traces[i]."""
    m = len(traces)
    labels = tuple(range(m))
    mult = {(i, i): {i: 1} for i in range(m)}
    unit = {i: 1 for i in range(m)}
    return frobenius_validate({"basis": labels, "mult": mult, "unit": unit},
                              {i: t for i, t in enumerate(traces)}, field)


def partition_function(fa: FrobeniusAlgebra, genus: int):
    """Z(g) = ε(h^g) for the handle element h = Σ ψ^i ψ_i."""
    x = dict(fa.unit)
    h = fa.handle()
    for _ in range(genus):
        x = fa.mul(x, h)
    return fa.eps(x)


def format_chain(c: Chain, f: Field = QQ) -> str:
    return f.format_chain(c)


# -- cobordism words -----------------------------------------------------------

CLOSED_KINDS = ("unit-disc", "trace-disc", "pants-multiply", "pants-comultiply", "cylinder", "swap")
OPEN_KINDS = ("open-unit", "open-trace", "open-pants", "open-copants", "open-cylinder")
MIXED_KINDS = ("whistle-in", "whistle-out")
ARITY = {
    "unit-disc": (0, 1), "trace-disc": (1, 0), "pants-multiply": (2, 1), "pants-comultiply": (1, 2),
    "cylinder": (1, 1), "swap": (2, 2), "open-unit": (0, 1), "open-trace": (1, 0), "open-pants": (2, 1),
    "open-copants": (1, 2), "open-cylinder": (1, 1), "whistle-in": (1, 1), "whistle-out": (1, 1),
}

CIRCLE = "C"


@dataclass(frozen=True)
class CobordismNode:
    name: str
    kind: str
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    param: Optional[str] = None


@dataclass
class CobordismWord:
    """Generator DAG: wires are named; circles have type "C", intervals (λ, μ)."""

    inputs: List[Tuple[str, object]]
    outputs: List[str]
    nodes: List[CobordismNode]

    def to_text(self) -> str:
        def ty(t):
            return CIRCLE if t == CIRCLE else "%s,%s" % t
        lines = ["input: " + " ".join("%s:%s" % (w, ty(t)) for w, t in self.inputs),
                 "output: " + " ".join(self.outputs)]
        for n in self.nodes:
            k = n.kind if n.param is None else "%s[%s]" % (n.kind, n.param)
            lines.append("node %s = %s %s -> %s" % (n.name, k, " ".join(n.inputs), " ".join(n.outputs)))
        return "\n".join(l.rstrip() for l in lines) + "\n"


def parse_cobordism(text: str) -> CobordismWord:
    """Parse the line format written by :meth:`CobordismWord.to_text`.

    ``input: c0:C i0:b,b`` / ``output: c3`` / ``node m = pants-multiply c1 c2 -> c3``;
    brane parameters go in brackets, e.g. ``whistle-in[b]``.  ``#`` starts a comment.
    """
    inputs, outputs, nodes = [], [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("input:"):
            for tok in line[6:].split():
                w, _, t = tok.partition(":")
                if t == CIRCLE:
                    inputs.append((w, CIRCLE))
                else:
                    a, _, b = t.partition(",")
                    if not a or not b:
                        raise WiringTypeError("bad wire type %r" % tok)
                    inputs.append((w, (a, b)))
        elif line.startswith("output:"):
            outputs = line[7:].split()
        elif line.startswith("node "):
            head, _, rest = line[5:].partition("=")
            ins, arrow, outs = rest.partition("->")
            if not arrow:
                raise WiringTypeError("node line needs '->': %r" % raw)
            toks = ins.split()
            if not toks:
                raise WiringTypeError("node without generator: %r" % raw)
            kind, param = toks[0], None
            if "[" in kind:
                kind, _, param = kind.partition("[")
                param = param.rstrip("]")
            nodes.append(CobordismNode(head.strip(), kind, tuple(toks[1:]), tuple(outs.split()), param))
        else:
            raise WiringTypeError("cannot parse line %r" % raw)
    return CobordismWord(inputs, outputs, nodes)


def _topological(word: CobordismWord) -> List[CobordismNode]:
    produced = {w for w, _ in word.inputs}
    pending = list(word.nodes)
    order = []
    while pending:
        ready = [n for n in pending if all(w in produced for w in n.inputs)]
        if not ready:
            raise WiringTypeError("wiring has a cycle or an undefined wire among %s" % [n.name for n in pending])
        for n in ready:
            order.append(n)
            produced.update(n.outputs)
            pending.remove(n)
    return order


def typecheck(data: OpenClosedData, word: CobordismWord, order: Optional[Sequence[str]] = None):
    """Wire types of a word; raises WiringTypeError on any mismatch."""
    types: Dict[str, object] = {}
    used = set()
    for w, t in word.inputs:
        if w in types:
            raise WiringTypeError("wire %s declared twice" % w)
        types[w] = t
    nodes = _topological(word) if order is None else [next(n for n in word.nodes if n.name == o) for o in order]
    branes = set(data.open)

    def iv(w):
        t = types[w]
        if t == CIRCLE:
            raise WiringTypeError("wire %s is a circle, expected an interval" % w)
        return t

    def circ(w):
        if types[w] != CIRCLE:
            raise WiringTypeError("wire %s is an interval, expected a circle" % w)

    def brane(p):
        if p not in branes:
            raise WiringTypeError("unknown brane %r" % (p,))
        return p

    for n in nodes:
        if n.kind not in ARITY:
            raise WiringTypeError("unknown generator %r" % n.kind)
        if (len(n.inputs), len(n.outputs)) != ARITY[n.kind]:
            raise WiringTypeError("%s expects %d inputs and %d outputs" % ((n.kind,) + ARITY[n.kind]))
        for w in n.inputs:
            if w not in types:
                raise WiringTypeError("wire %s used before it exists" % w)
            if w in used:
                raise WiringTypeError("wire %s consumed twice" % w)
            used.add(w)
        k = n.kind
        if k in ("unit-disc",):
            out = [CIRCLE]
        elif k in ("trace-disc",):
            circ(n.inputs[0]); out = []
        elif k == "pants-multiply":
            circ(n.inputs[0]); circ(n.inputs[1]); out = [CIRCLE]
        elif k == "pants-comultiply":
            circ(n.inputs[0]); out = [CIRCLE, CIRCLE]
        elif k == "cylinder":
            out = [types[n.inputs[0]]]
        elif k == "swap":
            out = [types[n.inputs[1]], types[n.inputs[0]]]
        elif k == "open-unit":
            b = brane(n.param); out = [(b, b)]
        elif k == "open-trace":
            a, b = iv(n.inputs[0])
            if a != b:
                raise WiringTypeError("open-trace needs a diagonal interval, got %s" % ((a, b),))
            out = []
        elif k == "open-pants":
            (a, b), (c, d) = iv(n.inputs[0]), iv(n.inputs[1])
            if b != c:
                raise WiringTypeError("open-pants: brane %r does not match %r" % (b, c))
            out = [(a, d)]
        elif k == "open-copants":
            a, b = iv(n.inputs[0])
            m = n.param or a
            if not a == b == m:
                raise WiringTypeError("open-copants is only supported within one brane")
            out = [(a, m), (m, b)]
        elif k == "open-cylinder":
            out = [iv(n.inputs[0])]
        elif k == "whistle-in":
            circ(n.inputs[0]); b = brane(n.param); out = [(b, b)]
        elif k == "whistle-out":
            a, b = iv(n.inputs[0])
            if a != b:
                raise WiringTypeError("whistle-out needs a diagonal interval")
            out = [CIRCLE]
        for w, t in zip(n.outputs, out):
            if w in types:
                raise WiringTypeError("wire %s produced twice" % w)
            types[w] = t
    for w in word.outputs:
        if w not in types:
            raise WiringTypeError("output wire %s never produced" % w)
        if w in used:
            raise WiringTypeError("output wire %s is also consumed" % w)
    dangling = [w for w in types if w not in used and w not in word.outputs]
    if dangling:
        raise WiringTypeError("wires %s are neither consumed nor outputs" % dangling)
    return types, nodes


@dataclass
class LinearMap:
    """Matrix of a cobordism: input basis tuple -> {output basis tuple: coeff}."""

    inputs: List[Tuple[str, object]]
    outputs: List[Tuple[str, object]]
    entries: Dict[Tuple, Chain]

    def scalar(self):
        if self.inputs or self.outputs:
            raise ValueError("not a closed surface")
        return self.entries.get((), {}).get((), 0)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return all({k: v for k, v in self.entries.get(x, {}).items() if v} ==
                   {k: v for k, v in other.entries.get(x, {}).items() if v} for x in keys)


def _space(data: OpenClosedData, t) -> Tuple[Label, ...]:
    if t == CIRCLE:
        return data.closed.labels
    a, b = t
    if a == b:
        return data.open[a].labels
    if (a, b) not in data.offdiag:
        raise WiringTypeError("no open sector for %s" % ((a, b),))
    return data.offdiag[(a, b)]


def _generator(data: OpenClosedData, node: CobordismNode, types, star_cache):
    """The tensor of one generator: input labels -> {output label tuple: coeff}."""
    C = data.closed
    one = C.field.one
    k = node.kind

    def open_alg(w):
        return data.open[types[w][0]]

    if k == "unit-disc":
        return lambda xs: {(l,): c for l, c in C.unit.items()}
    if k == "trace-disc":
        return lambda xs: {(): C.trace.get(xs[0], 0)} if C.trace.get(xs[0], 0) else {}
    if k == "pants-multiply":
        return lambda xs: {(l,): c for l, c in C.mul({xs[0]: one}, {xs[1]: one}).items()}
    if k == "pants-comultiply":
        return lambda xs: _coproduct(C, xs[0])
    if k == "cylinder" or k == "open-cylinder":
        return lambda xs: {(xs[0],): one}
    if k == "swap":
        return lambda xs: {(xs[1], xs[0]): one}
    if k == "open-unit":
        O = data.open[node.param]
        return lambda xs: {(l,): c for l, c in O.unit.items()}
    if k == "open-trace":
        O = open_alg(node.inputs[0])
        return lambda xs: {(): O.trace[xs[0]]} if O.trace.get(xs[0], 0) else {}
    if k == "open-pants":
        (a, b), (_, d) = types[node.inputs[0]], types[node.inputs[1]]
        if a == b == d:
            O = data.open[a]
            return lambda xs: {(l,): c for l, c in O.mul({xs[0]: one}, {xs[1]: one}).items()}
        return lambda xs: {(l,): c for l, c in data.offcomp.get((xs[0], xs[1]), {}).items()}
    if k == "open-copants":
        O = open_alg(node.inputs[0])
        return lambda xs: _coproduct(O, xs[0])
    if k == "whistle-in":
        lam = node.param
        return lambda xs: {(l,): c for l, c in data.theta[lam].get(xs[0], {}).items()}
    if k == "whistle-out":
        lam = types[node.inputs[0]][0]
        if lam not in star_cache:
            star_cache[lam] = adjoint(data, lam)
        star = star_cache[lam]
        return lambda xs: {(l,): c for l, c in star[xs[0]].items()}
    raise WiringTypeError("unknown generator %r" % k)


def _coproduct(fa: FrobeniusAlgebra, x: Label) -> Dict[Tuple, object]:
    out: Dict[Tuple, object] = {}
    for p, q in fa.casimir():
        left = fa.mul({x: fa.field.one}, p)
        for a, c in left.items():
            for b, e in q.items():
                out[(a, b)] = out.get((a, b), 0) + c * e
    return {k: v for k, v in out.items() if v}


def eval_cobordism(data: OpenClosedData, word: CobordismWord, order: Optional[Sequence[str]] = None) -> LinearMap:
    """Contract the generator tensors along the DAG.

    ``order`` optionally fixes the node evaluation order (any topological
    order gives the same map; tests use this as the gluing check).
    """
    types, nodes = typecheck(data, word, order)
    in_wires = [w for w, _ in word.inputs]
    in_spaces = [_space(data, types[w]) for w in in_wires]
    star_cache: Dict = {}
    tensors = [(_generator(data, n, types, star_cache), n) for n in nodes]
    entries: Dict[Tuple, Chain] = {}
    for basis in itertools.product(*in_spaces):
        state: Dict[Tuple, object] = {tuple(sorted(zip(in_wires, basis))): data.closed.field.one}
        for fn, n in tensors:
            new: Dict[Tuple, object] = {}
            cache: Dict[Tuple, Dict] = {}
            for assign, c in state.items():
                d = dict(assign)
                xs = tuple(d.pop(w) for w in n.inputs)
                img = cache.get(xs)
                if img is None:
                    img = cache[xs] = fn(xs)
                for ys, e in img.items():
                    d2 = dict(d)
                    d2.update(zip(n.outputs, ys))
                    key = tuple(sorted(d2.items()))
                    new[key] = new.get(key, 0) + c * e
            state = {k: v for k, v in new.items() if v}
        col: Chain = {}
        for assign, c in state.items():
            d = dict(assign)
            col[tuple(d[w] for w in word.outputs)] = c
        if col:
            entries[basis] = col
    return LinearMap(list(word.inputs), [(w, types[w]) for w in word.outputs], entries)


# -- standard words ----------------------------------------------------------

def _word(text: str) -> CobordismWord:
    return parse_cobordism(text)


STANDARD_WORDS = {
    "cylinder": "input: a:C\noutput: b\nnode n = cylinder a -> b\n",
    "torus": ("input:\noutput:\nnode u = unit-disc -> a\nnode d = pants-comultiply a -> b c\n"
              "node m = pants-multiply b c -> e\nnode t = trace-disc e ->\n"),
    "torus-swap": ("input:\noutput:\nnode u = unit-disc -> a\nnode d = pants-comultiply a -> b c\n"
                   "node s = swap b c -> b2 c2\nnode m = pants-multiply b2 c2 -> e\nnode t = trace-disc e ->\n"),
    "assoc-left": ("input: a:C b:C c:C\noutput: z\nnode m1 = pants-multiply a b -> ab\n"
                   "node m2 = pants-multiply ab c -> z\n"),
    "assoc-right": ("input: a:C b:C c:C\noutput: z\nnode m1 = pants-multiply b c -> bc\n"
                    "node m2 = pants-multiply a bc -> z\n"),
    "frobenius-left": ("input: a:C b:C\noutput: x y\nnode d = pants-comultiply b -> b1 y\n"
                       "node m = pants-multiply a b1 -> x\n"),
    "frobenius-right": ("input: a:C b:C\noutput: x y\nnode m = pants-multiply a b -> ab\n"
                        "node d = pants-comultiply ab -> x y\n"),
    "pants": "input: a:C b:C\noutput: c\nnode m = pants-multiply a b -> c\n",
}


def standard_word(name: str) -> CobordismWord:
    return parse_cobordism(STANDARD_WORDS[name])


def cardy_words(brane: str) -> Tuple[CobordismWord, CobordismWord]:
    """The annulus between two intervals, once through the closed sector
    (whistle-out then whistle-in) and once cut open (Σ ψ_i φ ψ^i)."""
    t = "input: p:%s,%s\noutput: q\n" % (brane, brane)
    closed = t + "node o = whistle-out p -> c\nnode i = whistle-in[%s] c -> q\n" % brane
    cut = t + ("node u = open-unit[%s] -> e\nnode d = open-copants e -> a b\n"
               "node m1 = open-pants a p -> ap\nnode m2 = open-pants ap b -> q\n" % brane)
    return parse_cobordism(closed), parse_cobordism(cut)

"""Command-line driver.

    stringtop hh --model sphere:3 --window 0:9
    stringtop tor --model sphere:3 --left k --right k
    stringtop tqft-verify dual-bad
    stringtop verify-suite cardy --format json

Reports are plain JSON-compatible documents; exact coefficients are
written as strings "p/q".  Exit codes: 0 success, 1 a verification failed,
2 bad input (including algebra documents that violate an axiom).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field as dfield
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .bar import DerivedResult, EmptyWindow, LiftFailure, MissingAugmentation, ext, ext_algebra, ext_category, tor
from .complexes import AxiomViolation, ChainComplex, UnknownLabel
from .corefield import QQ, Field, FieldError
from .dga import DGAlgebra, DGModule, as_module, trivial_module, truncate, validate_dga
from .hochschild import hh, hh_category, hhc
from .models import (UnsupportedBrane, WindowTooSmall, exterior_algebra, fiber_module, loop_bimodule,
                     loop_homology_oracle, polynomial_algebra, sphere_model, truncated_polynomial)
from . import tqft

DEFAULT_WINDOW = (-12, 12)
DEFAULT_CUTOFF = 8
# words over a chain-level Hom category grow fast; persistent images settle at length 1
CHAIN_LEVEL_CUTOFF = 1


class InputError(ValueError):
    """Bad command line or document: exit code 2."""


# -- documents -----------------------------------------------------------------

def _label(x):
    if isinstance(x, list):
        return tuple(_label(y) for y in x)
    return x


def _coeff(x) -> str:
    return QQ.format(x)


def load_algebra_document(doc: dict, field: Optional[Field] = None):
    """An AlgebraSpecDocument (dict) as a DGAlgebra, or a bare ChainComplex
    when no unit is given.  Errors carry the offending entry."""
    if not isinstance(doc, dict):
        raise InputError("algebra document must be a JSON object")
    try:
        f = field or Field.parse(str(doc.get("field", "Q")))
        basis = [(_label(l), int(d)) for l, d in doc["basis"]]
        spec = {
            "basis": basis,
            "differential": [(_label(s), _label(t), c) for s, t, c in doc.get("differential", [])],
            "multiplication": [(_label(a), _label(b), _label(r), c) for a, b, r, c in doc.get("multiplication", [])],
            "name": doc.get("name", ""),
        }
        if "augmentation" in doc:
            spec["augmentation"] = [(_label(l), c) for l, c in doc["augmentation"]]
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, (AxiomViolation, UnknownLabel)):
            raise
        raise InputError("malformed algebra document: %s" % e) from e
    if "unit" not in doc:
        dd: Dict = {}
        for s, t, c in spec["differential"]:
            row = dd.setdefault(s, {})
            row[t] = row.get(t, 0) + f(c)
        return ChainComplex(basis, dd, f)
    spec["unit"] = _label(doc["unit"])
    return validate_dga(spec, f)


def _json_label(x):
    return [_json_label(y) for y in x] if isinstance(x, tuple) else x


def algebra_document(a: DGAlgebra) -> dict:
    """The AlgebraSpecDocument of an algebra; ``load_algebra_document`` inverts it."""
    f = a.field
    cx = a.complex
    doc = {
        "field": "Q" if f.p is None else "Fp:%d" % f.p,
        "name": a.name,
        "basis": [[_json_label(l), d] for l, d in cx.basis.elements],
        "unit": _json_label(a.unit),
        "differential": [[_json_label(s), _json_label(t), f.format(c)]
                         for s in cx.labels() for t, c in sorted(cx.d(s).items(), key=repr) if c],
        "multiplication": [[_json_label(x), _json_label(y), _json_label(r), f.format(c)]
                           for (x, y), img in sorted(a.mult.items(), key=repr)
                           for r, c in sorted(img.items(), key=repr) if c],
    }
    if a.augmentation is not None:
        doc["augmentation"] = [[_json_label(l), f.format(c)] for l, c in sorted(a.augmentation.items(), key=repr) if c]
    return doc


@dataclass
class RawDocument:
    """A document emitted as-is (JSON), e.g. a model written out for reuse."""

    body: dict
    passed: bool = True

    def render(self, fmt: str) -> str:
        return json.dumps(self.body, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror)) from e
    except json.JSONDecodeError as e:
        raise InputError("%s: line %d: %s" % (path, e.lineno, e.msg)) from e


@dataclass
class ReportDocument:
    kind: str
    inputs: Dict[str, object]
    window: Optional[Tuple[int, int]] = None
    cutoffs: List[int] = dfield(default_factory=list)
    dims: Dict[int, int] = dfield(default_factory=dict)
    stability: List[dict] = dfield(default_factory=list)
    offsets: Dict[str, int] = dfield(default_factory=dict)
    entries: List[dict] = dfield(default_factory=list)
    data: Dict[str, object] = dfield(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e["passed"] for e in self.entries)

    def as_dict(self) -> dict:
        lo_hi = list(self.window) if self.window is not None else None
        table = ([[n, self.dims.get(n, 0)] for n in range(self.window[0], self.window[1] + 1)]
                 if self.window is not None and self.dims else [])
        return {
            "kind": self.kind,
            "inputs": self.inputs,
            "window": lo_hi,
            "cutoffs": list(self.cutoffs),
            "dims": table,
            "stability": self.stability,
            "offsets": dict(sorted(self.offsets.items())),
            "entries": self.entries,
            "data": self.data,
            "passed": self.passed,
        }

    def render(self, fmt: str) -> str:
        d = self.as_dict()
        if fmt == "json":
            return json.dumps(d, sort_keys=True, indent=2) + "\n"
        if fmt == "csv":
            out = io.StringIO()
            w = csv.writer(out, lineterminator="\n")
            if self.entries:
                w.writerow(["check", "passed", "detail"])
                for e in self.entries:
                    w.writerow([e["name"], int(e["passed"]), e.get("detail", "")])
            else:
                w.writerow(["degree", "dim"])
                w.writerows(d["dims"])
            return out.getvalue()
        lines = ["kind: %s" % self.kind]
        for k in sorted(self.inputs):
            lines.append("input %s: %s" % (k, self.inputs[k]))
        if self.window is not None:
            lines.append("window: %d:%d" % tuple(self.window))
        if self.cutoffs:
            lines.append("cutoffs: %s" % ",".join(map(str, self.cutoffs)))
        if d["dims"]:
            lines.append("degrees: %s" % ",".join(str(n) for n, _ in d["dims"]))
            lines.append("table: %s" % ",".join(str(v) for _, v in d["dims"]))
        for s in self.stability:
            lines.append("stability %s: stable=%s certified=%s checked=%s reliable=%s" % (
                s.get("what", self.kind), s["stable"], s["certified"], s["checked_cutoffs"], s["reliable"]))
        for k, v in sorted(self.offsets.items()):
            lines.append("offset %s: %d" % (k, v))
        for k in sorted(self.data):
            lines.append("%s: %s" % (k, json.dumps(self.data[k], sort_keys=True)))
        for e in self.entries:
            lines.append("%s %s%s" % ("PASS" if e["passed"] else "FAIL", e["name"],
                                      (": " + e["detail"]) if e.get("detail") else ""))
        return "\n".join(lines) + "\n"


def _stab(r: DerivedResult, what: str) -> dict:
    d = r.report.as_dict()
    d["what"] = what
    return d


def _entry(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


# -- models and modules --------------------------------------------------------

MODELS = {
    "sphere:N": "loop-space model of S^N (k[y_{N-1}] for odd N)",
    "cochains:N": "cochain model of S^N (Λ(x_{-N}) for odd N)",
    "poly:D[:TOP]": "k[y] with |y| = D, truncated at degree TOP",
    "exterior:D": "Λ(x) with |x| = D",
    "truncpoly:D:N": "k[x]/(x^N) with |x| = D",
    "<path>.json": "an algebra document",
}


@dataclass
class Source:
    algebra: DGAlgebra
    model: object = None
    name: str = ""


def resolve_algebra(name: str, window, field: Field = QQ) -> Source:
    if name.endswith(".json"):
        a = load_algebra_document(_read_json(name), None if field is QQ else field)
        if not isinstance(a, DGAlgebra):
            raise InputError("%s has no unit; not an algebra" % name)
        return Source(a, None, name)
    head, _, rest = name.partition(":")
    try:
        args = [int(x) for x in rest.split(":")] if rest else []
    except ValueError:
        raise InputError("bad model parameters in %r" % name) from None
    if head in ("sphere", "cochains"):
        if len(args) != 1:
            raise InputError("%s needs one parameter N" % head)
        m = sphere_model(args[0], window, field=field)
        return Source(m.loop_dga if head == "sphere" else m.cochain_algebra, m, name)
    if head == "poly" and len(args) in (1, 2):
        top = args[1] if len(args) == 2 else max(abs(window[0]), abs(window[1])) + 8
        return Source(polynomial_algebra(args[0], top, field), None, name)
    if head == "exterior" and len(args) == 1:
        return Source(exterior_algebra(args[0], field), None, name)
    if head == "truncpoly" and len(args) == 2:
        return Source(truncated_polynomial(args[0], args[1], field), None, name)
    raise InputError("unknown model %r; expected one of %s" % (name, ", ".join(MODELS)))


def resolve_module(token: str, src: Source, side: str) -> DGModule:
    if token in ("k", "trivial"):
        return trivial_module(src.algebra, side)
    if src.model is not None and src.algebra is src.model.loop_dga and side == "left":
        return fiber_module(src.model, token)
    if token in ("free", "point", "pt"):
        m = as_module(src.algebra, side)
        if src.model is not None:
            m = truncate(m, (0, src.model.module_top))
        return m
    raise InputError("unsupported module %r on the %s" % (token, side))


def _derived_report(kind: str, r: DerivedResult, inputs: dict, cutoff: int) -> ReportDocument:
    return ReportDocument(kind, inputs, r.report.window, sorted(set(r.report.checked_cutoffs)), dict(r.dims),
                          [_stab(r, kind)], {"degree": r.offset} if r.offset else {})


# -- subcommands ---------------------------------------------------------------

def cmd_homology(ns) -> ReportDocument:
    obj = load_algebra_document(_read_json(ns.spec), ns.field_obj if ns.field else None)
    cx = obj.complex if isinstance(obj, DGAlgebra) else obj
    lo, hi = ns.window
    dims = cx.betti(range(lo, hi + 1))
    return ReportDocument("homology", {"spec": ns.spec}, (lo, hi), [], dims)


def _model_window(ns):
    lo, hi = ns.window
    return (min(lo, 0), max(hi, 0))


def cmd_tor(ns) -> ReportDocument:
    src = resolve_algebra(ns.model, _model_window(ns), ns.field_obj)
    m = resolve_module(ns.right, src, "right")
    n = resolve_module(ns.left, src, "left")
    r = tor(m, src.algebra, n, ns.cutoff, ns.window)
    return _derived_report("tor", r, {"model": ns.model, "right": ns.right, "left": ns.left}, ns.cutoff)


def cmd_ext(ns) -> ReportDocument:
    src = resolve_algebra(ns.model, _model_window(ns), ns.field_obj)
    m = resolve_module(ns.source, src, "left")
    n = resolve_module(ns.target, src, "left")
    r = ext(src.algebra, m, n, ns.cutoff, ns.window)
    return _derived_report("ext", r, {"model": ns.model, "source": ns.source, "target": ns.target}, ns.cutoff)


def cmd_ext_algebra(ns) -> ReportDocument:
    src = resolve_algebra(ns.model, _model_window(ns), ns.field_obj)
    m = resolve_module(ns.module, src, "left")
    e = ext_algebra(src.algebra, m, ns.cutoff, ns.window)
    dims: Dict[int, int] = {}
    for l in e.complex.labels():
        dims[e.complex.deg[l]] = dims.get(e.complex.deg[l], 0) + 1
    mult = sorted([[repr(a), repr(b), repr(c), _coeff(v)] for (a, b), row in e.mult.items() for c, v in row.items()])
    rep = e.report.as_dict()
    rep["what"] = "ext-algebra"
    return ReportDocument("ext-algebra", {"model": ns.model, "module": ns.module}, tuple(ns.window),
                          sorted(set(e.report.checked_cutoffs)), dims, [rep], {}, [], {"multiplication": mult})


def cmd_hh(ns) -> ReportDocument:
    src = resolve_algebra(ns.model, _model_window(ns), ns.field_obj)
    r = hh(src.algebra, None, ns.cutoff, ns.window, ns.offset)
    return _derived_report("hh", r, {"model": ns.model}, ns.cutoff)


def cmd_hhc(ns) -> ReportDocument:
    src = resolve_algebra(ns.model, _model_window(ns), ns.field_obj)
    coeff = None
    if ns.coefficients == "loop":
        if src.model is None:
            raise InputError("--coefficients loop needs a sphere model")
        coeff = loop_bimodule(src.model)
    r = hhc(src.algebra, coeff, ns.cutoff, ns.window, ns.offset)
    return _derived_report("hhc", r, {"model": ns.model, "coefficients": ns.coefficients}, ns.cutoff)


def cmd_hh_category(ns) -> ReportDocument:
    src = resolve_algebra(ns.model, _model_window(ns), ns.field_obj)
    names = [b.strip() for b in ns.objects.split(",") if b.strip()]
    mods = [resolve_module(b, src, "left") for b in names]
    # resolution generators stay inside the requested window; a wider one only adds letters
    wide = ns.window if ns.chain_level else (min(-12, ns.window[0]), max(12, ns.window[1]))
    c = ext_category(src.algebra, mods, ns.ext_cutoff, wide, names, chain_level=ns.chain_level)
    cutoff = ns.cutoff if ns.cutoff is not None else (CHAIN_LEVEL_CUTOFF if ns.chain_level else DEFAULT_CUTOFF)
    r = hh_category(c, cutoff, ns.window)
    inputs = {"model": ns.model, "objects": ",".join(names), "chain_level": ns.chain_level}
    doc = _derived_report("hh-category", r, inputs, cutoff)
    for nm, rep in zip(["%s,%s" % (x, y) for x in names for y in names], c.reports):
        s = rep.as_dict()
        s["what"] = "ext " + nm
        doc.stability.append(s)
    return doc


FIXTURES: Dict[str, Callable[[], tqft.OpenClosedData]] = {
    "m2": lambda: tqft.matrix_fixture(2),
    "m3": lambda: tqft.matrix_fixture(3),
    "dual": lambda: tqft.dual_numbers_fixture(),
    "m2-bad": lambda: tqft.matrix_fixture(2, closed_trace=2),
    "m3-bad": lambda: tqft.matrix_fixture(3, closed_trace=2),
    "dual-bad": lambda: tqft.dual_numbers_fixture(2),
}
FIXTURES["bad-data"] = FIXTURES["dual-bad"]


def _frobenius_doc(d: dict, f: Field) -> tqft.FrobeniusAlgebra:
    basis = tuple(_label(x) for x in d["basis"])
    mult: Dict = {}
    for a, b, r, c in d.get("multiplication", []):
        row = mult.setdefault((_label(a), _label(b)), {})
        row[_label(r)] = row.get(_label(r), 0) + f(c)
    unit = {_label(l): f(c) for l, c in d["unit"]}
    trace = {_label(l): f(c) for l, c in d["trace"]}
    return tqft.frobenius_validate({"basis": basis, "mult": mult, "unit": unit}, trace, f)


def load_tqft_document(doc: dict) -> tqft.OpenClosedData:
    """``{"field", "closed": F, "open": {brane: F}, "theta": {brane: [[c, o, coeff]]}}``
    where F has basis, multiplication quadruples, unit and trace pairs."""
    try:
        f = Field.parse(str(doc.get("field", "Q")))
        closed = _frobenius_doc(doc["closed"], f)
        opens = {b: _frobenius_doc(v, f) for b, v in sorted(doc.get("open", {}).items())}
        theta = {}
        for b, rows in doc.get("theta", {}).items():
            t: Dict = theta.setdefault(b, {})
            for c, o, x in rows:
                r = t.setdefault(_label(c), {})
                r[_label(o)] = r.get(_label(o), 0) + f(x)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, (tqft.DegeneratePairing, tqft.NotAssociative)):
            raise
        raise InputError("malformed tqft document: %s" % e) from e
    return tqft.OpenClosedData(closed, opens, theta, name=doc.get("name", ""))


def resolve_tqft(name: str) -> tqft.OpenClosedData:
    if name in FIXTURES:
        return FIXTURES[name]()
    if name.endswith(".json"):
        return load_tqft_document(_read_json(name))
    raise InputError("unknown tqft data %r; fixtures: %s" % (name, ", ".join(sorted(FIXTURES))))


def cmd_tqft_verify(ns) -> ReportDocument:
    data = resolve_tqft(ns.data)
    rep = tqft.verify_open_closed(data)
    entries = [_entry("%s %s" % (e.axiom, e.subject), e.passed,
                      "" if e.passed or not e.witness else "witness %s" % e.witness)
               for e in rep.entries]
    return ReportDocument("tqft-verify", {"data": ns.data}, None, [], {}, [], {}, entries)


def cmd_tqft_eval(ns) -> ReportDocument:
    data = resolve_tqft(ns.data)
    if ns.word in tqft.STANDARD_WORDS:
        text = tqft.STANDARD_WORDS[ns.word]
    else:
        try:
            with open(ns.word) as fh:
                text = fh.read()
        except OSError as e:
            raise InputError("cannot read word %s: %s" % (ns.word, e.strerror)) from e
    word = tqft.parse_cobordism(text)
    lm = tqft.eval_cobordism(data, word)
    f = data.closed.field
    matrix = sorted([[repr(i), repr(o), f.format(c)] for i, col in lm.entries.items() for o, c in col.items() if c])
    out = {"matrix": matrix}
    if not lm.inputs and not lm.outputs:
        out["scalar"] = f.format(lm.scalar())
    return ReportDocument("tqft-eval", {"data": ns.data, "word": ns.word}, None, [], {}, [], {}, [], out)


def cmd_models(ns):
    if ns.emit:
        if not ns.model:
            raise InputError("models --emit needs --model")
        return RawDocument(algebra_document(resolve_algebra(ns.model, _model_window(ns), ns.field_obj).algebra))
    if not ns.model:
        return ReportDocument("models", {}, None, [], {}, [], {}, [], {"models": MODELS,
                              "branes": ["point", "manifold", "s<d>"], "fixtures": sorted(FIXTURES)})
    head, _, rest = ns.model.partition(":")
    if head != "sphere" or not rest.isdigit():
        raise InputError("models: only sphere:N has a free-loop oracle")
    lo, hi = ns.window
    dims = loop_homology_oracle(int(rest), (max(lo, 0), max(hi, 0)))
    m = sphere_model(int(rest), _model_window(ns))
    info = {"loop_dga": m.loop_dga.name, "cochain_algebra": m.cochain_algebra.name,
            "loop_top": m.loop_top, "module_top": m.module_top}
    return ReportDocument("models", {"model": ns.model}, (lo, hi), [], dims, [], dict(m.offsets), [], info)


def cmd_verify_suite(ns) -> ReportDocument:
    return verify_suite(ns.name)


# -- suites --------------------------------------------------------------------

def _nonzero(d: Dict[int, int]) -> Dict[int, int]:
    return {k: v for k, v in sorted(d.items()) if v}


def _suite_eilenberg_moore(doc: ReportDocument):
    W = (-10, 10)
    doc.window = W
    for n in (2, 3):
        m = sphere_model(n, W)
        A = m.loop_dga
        kl, kr = trivial_module(A, "left"), trivial_module(A, "right")
        t = tor(kr, A, kl, window=W)
        e = ext(A, kl, kl, window=W)
        doc.stability += [_stab(t, "tor S^%d" % n), _stab(e, "ext S^%d" % n)]
        doc.entries.append(_entry("tor(k,C_*(ΩS^%d),k) = H_*(S^%d)" % (n, n),
                                  _nonzero(t.dims) == {0: 1, n: 1} and t.report.stable, str(_nonzero(t.dims))))
        doc.entries.append(_entry("ext(k,k) over C_*(ΩS^%d) = H^*(S^%d)" % (n, n),
                                  _nonzero(e.dims) == {0: 1, -n: 1} and e.report.stable, str(_nonzero(e.dims))))


def _suite_poincare(doc: ReportDocument):
    lo, hi = -8, 8
    m = sphere_model(3, (lo, hi + 3))
    A = m.loop_dga
    kl, kr = trivial_module(A, "left"), trivial_module(A, "right")
    doc.window = (lo, hi)
    doc.offsets["poincare"] = m.offsets["poincare"]
    s = m.offsets["poincare"]
    for brane in ("point", "manifold", "s1"):
        P = fiber_module(m, brane)
        e = ext(A, kl, P, window=(lo, hi))
        t = tor(kr, A, P, window=(lo + s, hi + s))
        doc.stability += [_stab(e, "ext(k,%s)" % brane), _stab(t, "tor(k,%s)" % brane)]
        ok = all(e.dims.get(d, 0) == t.dims.get(d + s, 0) for d in range(lo, hi + 1))
        doc.entries.append(_entry("ext_d(k,%s) = tor_{d+%d}(k,%s)" % (brane, s, brane),
                                  ok and e.report.stable and t.report.stable,
                                  "ext %s tor %s" % (_nonzero(e.dims), _nonzero(t.dims))))


def _suite_hochschild_sphere(doc: ReportDocument):
    W = (0, 9)
    m = sphere_model(3, W)
    oracle = loop_homology_oracle(3, (0, 12))
    r = hh(m.loop_dga, window=W)
    doc.window = W
    doc.dims = dict(r.dims)
    doc.stability.append(_stab(r, "hh loop dga"))
    doc.entries.append(_entry("hh(C_*(ΩS^3)) = H_*(LS^3) on [0,9]",
                              r.dims_list() == [oracle.get(n, 0) for n in range(0, 10)] and r.report.stable,
                              ",".join(map(str, r.dims_list()))))
    off = 3
    Wc = (-3, 6)
    c = hhc(sphere_model(3, (-8, 8)).cochain_algebra, window=Wc, offset=off)
    doc.offsets["hhc cochains"] = off
    doc.stability.append(_stab(c, "hhc cochains"))
    shifted = [c.dims.get(n, 0) for n in range(Wc[0], Wc[1] + 1)]
    doc.entries.append(_entry("hhc(C^*(S^3)) = H_*(LS^3) shifted by %d" % off,
                              shifted == [oracle.get(n + off, 0) for n in range(Wc[0], Wc[1] + 1)]
                              and c.report.stable, ",".join(map(str, shifted))))


def _suite_morita(doc: ReportDocument):
    W = (-8, 8)
    m = sphere_model(3, W)
    a = hhc(m.loop_dga, loop_bimodule(m), window=W)
    b = hhc(m.cochain_algebra, window=W)
    doc.window = W
    doc.offsets["morita"] = m.offsets["loop"]
    doc.stability += [_stab(a, "hhc loop dga"), _stab(b, "hhc cochains")]
    doc.entries.append(_entry("hhc(C_*(ΩS^3)) = hhc(C^*(S^3))",
                              a.dims_list() == b.dims_list() and a.report.stable and b.report.stable,
                              "%s vs %s" % (_nonzero(a.dims), _nonzero(b.dims))))
    E = ext_algebra(m.cochain_algebra, trivial_module(m.cochain_algebra, "left"), window=(-2, 12))
    degs = sorted(E.complex.deg[l] for l in E.complex.labels())
    gens = [l for l in E.complex.labels() if E.complex.deg[l] == 2]
    powers_ok = len(gens) == 1
    if powers_ok:
        x = {gens[0]: 1}
        p = dict(x)
        for k in range(2, 6):
            p = E.mul_chains(p, x)
            powers_ok = powers_ok and bool(p) and all(E.complex.deg[l] == 2 * k for l in p)
    rep = E.report.as_dict()
    rep["what"] = "ext-algebra cochains"
    doc.stability.append(rep)
    doc.entries.append(_entry("ext_algebra(C^*(S^3), k) = k[u], |u| = 2",
                              degs == list(range(0, 13, 2)) and powers_ok and E.report.stable, str(degs)))


def _suite_category(doc: ReportDocument):
    W = (0, 8)
    # k[y_2] cut at 10 is an honest quotient algebra; the resolution of k stays in W
    A = polynomial_algebra(2, 10, name="C_*(ΩS^3)")
    mods = [as_module(A), trivial_module(A)]
    C = ext_category(A, mods, window=W, names=["point", "k"], chain_level=True)
    r = hh_category(C, CHAIN_LEVEL_CUTOFF, W)
    base = hh(A, window=W)
    doc.window = W
    doc.dims = dict(r.dims)
    doc.stability += [_stab(r, "hh chain-level category"), _stab(base, "hh k[y_2]")]
    doc.entries.append(_entry("hh({point, k}) = hh(k[y_2]) on [0,8]",
                              r.dims_list() == base.dims_list() and r.report.stable and base.report.stable,
                              "%s vs %s" % (r.dims_list(), base.dims_list())))
    # the Ext-only category, for contrast: it is not Morita equivalent
    E = ext_category(A, mods, names=["point", "k"])
    doc.data["homology category hh"] = hh_category(E, CHAIN_LEVEL_CUTOFF, W).dims_list()


def _suite_cardy(doc: ReportDocument):
    for name in ("m2", "m3", "dual"):
        data = FIXTURES[name]()
        rep = tqft.verify_open_closed(data)
        doc.entries.append(_entry("verify_open_closed %s" % name, rep.passed,
                                  "; ".join("%s %s" % (e.axiom, e.subject) for e in rep.failures())))
        for b in sorted(data.open):
            w1, w2 = tqft.cardy_words(b)
            doc.entries.append(_entry("annulus two ways %s/%s" % (name, b),
                                      tqft.eval_cobordism(data, w1) == tqft.eval_cobordism(data, w2)))
    for name in ("m2-bad", "m3-bad", "dual-bad"):
        rep = tqft.verify_open_closed(FIXTURES[name]())
        doc.entries.append(_entry("%s rejected by cardy" % name,
                                  not rep.passed and any(e.axiom == "cardy" for e in rep.failures())))


SUITES = {
    "eilenberg-moore": _suite_eilenberg_moore,
    "poincare": _suite_poincare,
    "hochschild-sphere": _suite_hochschild_sphere,
    "morita": _suite_morita,
    "category": _suite_category,
    "cardy": _suite_cardy,
}


def verify_suite(name: str) -> ReportDocument:
    if name not in SUITES:
        raise InputError("unknown suite %r; expected one of %s" % (name, ", ".join(SUITES)))
    doc = ReportDocument("verify-suite", {"suite": name}, cutoffs=[DEFAULT_CUTOFF, DEFAULT_CUTOFF + 2])
    SUITES[name](doc)
    return doc


# -- argument parsing ----------------------------------------------------------

def parse_window(text: str) -> Tuple[int, int]:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("window must be lo:hi, got %r" % text) from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window %s is empty" % text)
    return lo, hi


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError("%s: %s" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=parse_window, default=DEFAULT_WINDOW, help="degree window lo:hi")
    common.add_argument("--cutoff", type=int, default=None,
                        help="bar/word length cutoff (default %d, %d with --chain-level)"
                        % (DEFAULT_CUTOFF, CHAIN_LEVEL_CUTOFF))
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--field", default=None, help="Q or Fp:<p>")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = _Parser(prog="stringtop", description="Derived invariants of string topology models.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("homology", parents=[common], help="homology of a chain complex or algebra document")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_homology)

    s = sub.add_parser("tor", parents=[common], help="tor(M, A, N)")
    s.add_argument("--model", required=True)
    s.add_argument("--right", default="k", help="right module M")
    s.add_argument("--left", default="k", help="left module N (a brane for sphere models)")
    s.set_defaults(fn=cmd_tor)

    s = sub.add_parser("ext", parents=[common], help="ext_A(M, N) of left modules")
    s.add_argument("--model", required=True)
    s.add_argument("--source", default="k")
    s.add_argument("--target", default="k")
    s.set_defaults(fn=cmd_ext)

    s = sub.add_parser("ext-algebra", parents=[common], help="the Yoneda algebra ext_A(M, M)")
    s.add_argument("--model", required=True)
    s.add_argument("--module", default="k")
    s.set_defaults(fn=cmd_ext_algebra)

    for name, fn in (("hh", cmd_hh), ("hhc", cmd_hhc)):
        s = sub.add_parser(name, parents=[common], help="Hochschild %s" % ("homology" if name == "hh" else "cohomology"))
        s.add_argument("--model", required=True)
        s.add_argument("--offset", type=int, default=0, help="recorded degree offset")
        if name == "hhc":
            s.add_argument("--coefficients", choices=("diagonal", "loop"), default="diagonal")
        s.set_defaults(fn=fn)

    s = sub.add_parser("hh-category", parents=[common], help="Hochschild homology of an ext category")
    s.add_argument("--model", required=True)
    s.add_argument("--objects", default="point,k", help="comma separated branes/modules")
    s.add_argument("--ext-cutoff", type=int, default=DEFAULT_CUTOFF)
    s.add_argument("--chain-level", action="store_true",
                   help="use derived Hom complexes of minimal resolutions instead of Ext")
    s.set_defaults(fn=cmd_hh_category)

    s = sub.add_parser("tqft-verify", parents=[common], help="check open-closed TQFT axioms")
    s.add_argument("data", help="fixture name or data document")
    s.set_defaults(fn=cmd_tqft_verify)

    s = sub.add_parser("tqft-eval", parents=[common], help="evaluate a cobordism word")
    s.add_argument("data")
    s.add_argument("word", help="standard word name or word file")
    s.set_defaults(fn=cmd_tqft_eval)

    s = sub.add_parser("models", parents=[common], help="list models or show a loop homology oracle")
    s.add_argument("--model", default=None)
    s.add_argument("--emit", action="store_true", help="write the model's algebra as an algebra document")
    s.set_defaults(fn=cmd_models)

    s = sub.add_parser("verify-suite", parents=[common], help="run a bundled acceptance battery")
    s.add_argument("name", help=", ".join(SUITES))
    s.set_defaults(fn=cmd_verify_suite)
    return p


def _join_windows(argv: List[str]) -> List[str]:
    # "--window -2:12" would otherwise be read as an unknown flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append("--window=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(_join_windows(list(sys.argv[1:] if argv is None else argv)))
        ns.field_obj = Field.parse(ns.field) if ns.field else QQ
        if ns.cutoff is None and ns.fn is not cmd_hh_category:
            ns.cutoff = DEFAULT_CUTOFF
        doc = ns.fn(ns)
    except (InputError, FieldError, AxiomViolation, UnknownLabel, WindowTooSmall, UnsupportedBrane,
            EmptyWindow, MissingAugmentation, tqft.WiringTypeError, tqft.DegeneratePairing,
            tqft.NotAssociative) as e:
        stderr.write("error: %s: %s\n" % (type(e).__name__, e))
        return 2
    except LiftFailure as e:
        stderr.write("error: LiftFailure: %s\n" % e)
        return 1
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    text = doc.render(ns.format)
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0 if doc.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

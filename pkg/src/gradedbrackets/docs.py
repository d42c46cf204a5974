"""Text documents describing charts, algebroids, tensors and dual pairs.

The format is line oriented. A document starts with ``kind: <kind>`` and
continues with ``[section]`` blocks of ``key tokens: value`` lines::

    kind: jacobi-algebroid
    [chart]
    base: x1 x2
    [frame]
    names: e1 e2
    dual: eps1 eps2
    [anchor]
    e1 x1: x1
    [structure]
    e1 e2 e2: 1
    [cocycle]
    eps1: 1

``[structure]`` lines read ``i j k: c`` for ``[e_i, e_j] = c e_k``; only
``i < j`` is stored and the rest follows by skew symmetry. ``[anchor]``
lines read ``e coord: f``. Without a ``[frame]`` section the algebroid is the
tangent algebroid of the chart. Tensors live in ``[tensor NAME]`` sections
whose first line is ``space: multivector`` or ``space: form``; the unit
multi-index is written ``1``. Dual pairs add ``[dual-anchor]``,
``[dual-structure]`` and ``[dual-cocycle]`` in terms of the coframe names.

Lines starting with ``#`` are comments. :func:`print_doc` is canonical, so
``parse_doc(print_doc(doc)) == doc``. The same content can be stored as JSON
with :func:`doc_to_json` / :func:`doc_from_json`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebroid import AlgebroidSpec
from .errors import ParseError
from .grassmann import FORM, MULTIVECTOR, GrassmannElement
from .jacobi import FirstOrderOp, JacobiAlgebroid
from .multilinear import MultilinearOp
from .scalar import Chart, Scalar, format_scalar, parse_scalar

KINDS = ("algebroid", "jacobi-algebroid", "tensor", "first-order-op", "dual-pair")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass
class StructureDoc:
    kind: str
    chart: Chart
    frame: tuple[str, ...] | None = None
    coframe: tuple[str, ...] | None = None
    label: str | None = None
    anchor: dict = field(default_factory=dict)  # (i, coord) -> Scalar
    structure: dict = field(default_factory=dict)  # (i, j, k) -> Scalar, i < j
    cocycle: dict = field(default_factory=dict)  # k -> Scalar
    dual_anchor: dict = field(default_factory=dict)
    dual_structure: dict = field(default_factory=dict)
    dual_cocycle: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)  # name -> (space kind, {idx: Scalar})
    operators: dict = field(default_factory=dict)  # name -> MultilinearOp
    note: str | None = None

    # -- building objects -----------------------------------------------------
    def names(self):
        if self.frame is None:
            return tuple("d_" + c for c in self.chart.coords), tuple("d" + c for c in self.chart.coords)
        return self.frame, self.coframe

    def algebroid(self) -> AlgebroidSpec:
        frame, coframe = self.names()
        if self.frame is None:
            if not self.anchor and not self.structure:
                return AlgebroidSpec.tangent(self.chart, self.label or "base-tangent")
            return _build_algebroid(self.chart, frame, coframe, self.anchor, self.structure,
                                    self.label or "base-tangent")
        return _build_algebroid(self.chart, frame, coframe, self.anchor, self.structure,
                                self.label or "algebroid-section")

    def jacobi_algebroid(self, check=True) -> JacobiAlgebroid:
        A = self.algebroid()
        return JacobiAlgebroid(A, _element(A.forms, {(k,): c for k, c in self.cocycle.items()}), check)

    def dual_jacobi_algebroid(self, check=True) -> JacobiAlgebroid:
        frame, coframe = self.names()
        A = _build_algebroid(self.chart, coframe, frame, self.dual_anchor, self.dual_structure,
                             "algebroid-section")
        return JacobiAlgebroid(A, _element(A.forms, {(k,): c for k, c in self.dual_cocycle.items()}), check)

    def dual_pair(self):
        from .bialgebroid import DualPair

        return DualPair(self.jacobi_algebroid(), self.dual_jacobi_algebroid())

    def tensor(self, name: str, A: AlgebroidSpec | None = None) -> GrassmannElement:
        A = A or self.algebroid()
        if name not in self.tensors:
            raise KeyError(f"document has no tensor {name!r}")
        kind, terms = self.tensors[name]
        return _element(A.sections if kind == MULTIVECTOR else A.forms, terms)

    def first_order_op(self) -> FirstOrderOp:
        A = self.algebroid()
        first = self.tensor("first", A) if "first" in self.tensors else A.sections.zero()
        second = self.tensor("second", A) if "second" in self.tensors else A.sections.zero()
        return FirstOrderOp(first, second)

    def with_tensor(self, name: str, x: GrassmannElement) -> "StructureDoc":
        self.tensors[name] = (x.space.kind, dict(x.terms))
        return self

    def with_operator(self, name: str, op: MultilinearOp) -> "StructureDoc":
        self.operators[name] = op
        return self


def _element(space, terms) -> GrassmannElement:
    return GrassmannElement(space, {idx: c for idx, c in terms.items()})


def _build_algebroid(chart, frame, coframe, anchor, structure, label) -> AlgebroidSpec:
    n = chart.dim
    rows = [[chart.zero()] * n for _ in frame]
    for (i, coord), f in anchor.items():
        rows[i][chart.index(coord)] = f
    return AlgebroidSpec(chart, frame, rows, dict(structure), coframe, label)


# -- from objects ------------------------------------------------------------------


def _algebroid_fields(A: AlgebroidSpec):
    anchor = {}
    for i, row in enumerate(A.anchor):
        for coord, f in zip(A.chart.coords, row):
            if f:
                anchor[(i, coord)] = f
    structure = {}
    for (i, j), slot in A.structure.items():
        if i < j:
            for k, c in slot.items():
                structure[(i, j, k)] = c
    return anchor, structure


def doc_from_algebroid(A: AlgebroidSpec, cocycle: GrassmannElement | None = None,
                       kind: str | None = None) -> StructureDoc:
    default_tangent = AlgebroidSpec.tangent(A.chart, A.sections.label)
    if A == default_tangent:
        doc = StructureDoc(kind or "algebroid", A.chart)
        if A.sections.label != "base-tangent":
            doc.label = A.sections.label
    else:
        anchor, structure = _algebroid_fields(A)
        label = A.sections.label if A.sections.label != "algebroid-section" else None
        doc = StructureDoc(kind or "algebroid", A.chart, A.frame, A.coframe, label, anchor, structure)
    if cocycle is not None:
        doc.cocycle = {idx[0]: c for idx, c in cocycle.terms.items()}
        if kind is None:
            doc.kind = "jacobi-algebroid"
    return doc


def doc_from_jacobi(J: JacobiAlgebroid) -> StructureDoc:
    return doc_from_algebroid(J.algebroid, J.cocycle, "jacobi-algebroid")


def doc_from_tensors(A: AlgebroidSpec, tensors: dict, kind: str = "tensor",
                     cocycle: GrassmannElement | None = None) -> StructureDoc:
    doc = doc_from_algebroid(A, cocycle, kind)
    for name, x in tensors.items():
        doc.with_tensor(name, x)
    return doc


def doc_from_first_order(op: FirstOrderOp, A: AlgebroidSpec) -> StructureDoc:
    return doc_from_tensors(A, {"first": op.first, "second": op.second}, "first-order-op")


def doc_from_dual_pair(P) -> StructureDoc:
    doc = doc_from_algebroid(P.J.algebroid, P.J.cocycle, "dual-pair")
    if doc.frame is None:
        doc.frame, doc.coframe = doc.names()
    anchor, structure = _algebroid_fields(P.J_star.algebroid)
    doc.dual_anchor = anchor
    doc.dual_structure = structure
    doc.dual_cocycle = {idx[0]: c for idx, c in P.J_star.cocycle.terms.items()}
    return doc


# -- printing ----------------------------------------------------------------------


def _index_text(names, idx) -> str:
    return " ".join(names[i] for i in idx) if idx else "1"


def print_doc(doc: StructureDoc) -> str:
    frame, coframe = doc.names()
    c = doc.chart
    out = [f"kind: {doc.kind}"]
    if doc.label:
        out.append(f"label: {doc.label}")
    if doc.note:
        out.append(f"note: {doc.note}")
    out.append("[chart]")
    for key in ("base", "fiber", "aux"):
        vals = getattr(c, key)
        if vals:
            out.append(f"{key}: {' '.join(vals)}")
    if c.exp_coord:
        out.append(f"exp: {c.exp_coord}")
    if doc.frame is not None:
        out.append("[frame]")
        out.append(f"names: {' '.join(doc.frame)}")
        out.append(f"dual: {' '.join(doc.coframe)}")

    def anchor_block(title, anchor, names):
        if anchor:
            out.append(f"[{title}]")
            for (i, coord) in sorted(anchor, key=lambda k: (k[0], c.index(k[1]))):
                out.append(f"{names[i]} {coord}: {format_scalar(anchor[(i, coord)])}")

    def structure_block(title, structure, names):
        if structure:
            out.append(f"[{title}]")
            for key in sorted(structure):
                i, j, k = key
                out.append(f"{names[i]} {names[j]} {names[k]}: {format_scalar(structure[key])}")

    def cocycle_block(title, cocycle, names):
        if cocycle:
            out.append(f"[{title}]")
            for k in sorted(cocycle):
                out.append(f"{names[k]}: {format_scalar(cocycle[k])}")

    anchor_block("anchor", doc.anchor, frame)
    structure_block("structure", doc.structure, frame)
    cocycle_block("cocycle", doc.cocycle, coframe)
    anchor_block("dual-anchor", doc.dual_anchor, coframe)
    structure_block("dual-structure", doc.dual_structure, coframe)
    cocycle_block("dual-cocycle", doc.dual_cocycle, frame)
    for name in sorted(doc.tensors):
        kind, terms = doc.tensors[name]
        names = frame if kind == MULTIVECTOR else coframe
        out.append(f"[tensor {name}]")
        out.append(f"space: {kind}")
        for idx in sorted(terms, key=lambda t: (len(t), t)):
            out.append(f"{_index_text(names, idx)}: {format_scalar(terms[idx])}")
    for name in sorted(doc.operators):
        op = doc.operators[name]
        out.append(f"[operator {name}]")
        out.append(f"degree: {op.degree}")
        out.append(f"dim: {op.dim or 0}")
        for idx, c in op.nonzero_entries():
            out.append(f"{' '.join(str(i) for i in idx)}: {c}")
    return "\n".join(out) + "\n"


# -- parsing -----------------------------------------------------------------------


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text

    def error(self, message, column=1):
        return ParseError(message, line=self.number, column=column)

    def split(self):
        """``(key tokens with columns, value text, value column)``."""
        if ":" not in self.text:
            raise self.error("expected 'key: value'")
        pos = self.text.index(":")
        keys = []
        for m in re.finditer(r"\S+", self.text[:pos]):
            keys.append((m.group(), m.start() + 1))
        value = self.text[pos + 1:]
        stripped = value.lstrip()
        col = pos + 2 + (len(value) - len(stripped))
        return keys, stripped.rstrip(), col

    def scalar(self, text, column, chart) -> Scalar:
        try:
            return parse_scalar(text, chart)
        except ParseError as e:
            raise ParseError(e.message, line=self.number, column=column + (e.column or 1) - 1) from None


def _lookup(line: _Line, names, token, column, what="name"):
    name, col = token, column
    if name not in names:
        raise line.error(f"undeclared {what} {name!r}", col)
    return names.index(name)


def parse_doc(text: str) -> StructureDoc:
    lines = []
    for n, raw in enumerate(text.splitlines(), start=1):
        s = raw.rstrip()
        if not s.strip() or s.lstrip().startswith("#"):
            continue
        lines.append(_Line(n, s))
    if not lines:
        raise ParseError("empty document", line=1, column=1)

    header: dict = {}
    sections: list[tuple[str, str | None, _Line, list[_Line]]] = []
    for line in lines:
        stripped = line.text.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise line.error("unterminated section header", len(line.text))
            parts = stripped[1:-1].split()
            if not parts:
                raise line.error("empty section header")
            title = parts[0]
            arg = parts[1] if len(parts) > 1 else None
            if len(parts) > 2:
                raise line.error("too many words in section header")
            sections.append((title, arg, line, []))
        elif sections:
            sections[-1][3].append(line)
        else:
            keys, value, col = line.split()
            if len(keys) != 1 or keys[0][0] not in ("kind", "label", "note"):
                raise line.error("expected 'kind:', 'label:' or 'note:' before the first section")
            header[keys[0][0]] = (value, col, line)

    if "kind" not in header:
        raise ParseError("missing 'kind:' line", line=lines[0].number, column=1)
    kind, kcol, kline = header["kind"]
    if kind not in KINDS:
        raise kline.error(f"unknown kind {kind!r}", kcol)

    by_title = {}
    for title, arg, line, body in sections:
        key = (title, arg)
        if key in by_title:
            raise line.error(f"duplicate section [{title}{' ' + arg if arg else ''}]")
        known = ("chart", "frame", "anchor", "structure", "cocycle", "dual-anchor",
                 "dual-structure", "dual-cocycle", "tensor", "operator")
        if title not in known:
            raise line.error(f"unknown section {title!r}", 2)
        if (title in ("tensor", "operator")) != (arg is not None):
            raise line.error("only tensor sections take a name")
        by_title[key] = (line, body)

    if ("chart", None) not in by_title:
        raise ParseError("missing [chart] section", line=lines[0].number, column=1)
    chart = _parse_chart(*by_title[("chart", None)])
    doc = StructureDoc(kind, chart)
    if "label" in header:
        doc.label = header["label"][0]
    if "note" in header:
        doc.note = header["note"][0]
    if ("frame", None) in by_title:
        doc.frame, doc.coframe = _parse_frame(*by_title[("frame", None)], chart)
    frame, coframe = doc.names()

    def body(title):
        return by_title.get((title, None), (None, []))[1]

    doc.anchor = _parse_anchor(body("anchor"), frame, chart)
    doc.structure = _parse_structure(body("structure"), frame, chart)
    doc.cocycle = _parse_cocycle(body("cocycle"), coframe, chart)
    doc.dual_anchor = _parse_anchor(body("dual-anchor"), coframe, chart)
    doc.dual_structure = _parse_structure(body("dual-structure"), coframe, chart)
    doc.dual_cocycle = _parse_cocycle(body("dual-cocycle"), frame, chart)
    for (title, arg), (line, lines_) in by_title.items():
        if title == "tensor":
            doc.tensors[arg] = _parse_tensor(line, lines_, frame, coframe, chart)
        elif title == "operator":
            doc.operators[arg] = _parse_operator(line, lines_)
    return doc


def _parse_chart(head: _Line, body: list[_Line]) -> Chart:
    vals = {}
    for line in body:
        keys, value, col = line.split()
        if len(keys) != 1 or keys[0][0] not in ("base", "fiber", "aux", "exp"):
            raise line.error("chart keys are base, fiber, aux and exp")
        name = keys[0][0]
        if name in vals:
            raise line.error(f"duplicate chart key {name!r}")
        names = value.split()
        for m in re.finditer(r"\S+", value):
            if not _NAME.match(m.group()) or m.group() == "exp":
                raise line.error(f"invalid coordinate name {m.group()!r}", col + m.start())
        vals[name] = (tuple(names), line, col)
    exp = None
    if "exp" in vals:
        names, line, col = vals.pop("exp")
        if len(names) != 1:
            raise line.error("exp takes one coordinate", col)
        exp = names[0]
    try:
        return Chart(*(vals.get(k, ((),))[0] for k in ("base", "fiber", "aux")), exp_coord=exp)
    except ValueError as e:
        raise head.error(str(e)) from None


def _parse_frame(head: _Line, body: list[_Line], chart: Chart):
    vals = {}
    for line in body:
        keys, value, col = line.split()
        if len(keys) != 1 or keys[0][0] not in ("names", "dual"):
            raise line.error("frame keys are names and dual")
        for m in re.finditer(r"\S+", value):
            if not _NAME.match(m.group()):
                raise line.error(f"invalid generator name {m.group()!r}", col + m.start())
        vals[keys[0][0]] = tuple(value.split())
    if "names" not in vals:
        raise head.error("frame needs 'names:'")
    frame = vals["names"]
    coframe = vals.get("dual") or tuple(n + "*" for n in frame)
    if len(coframe) != len(frame):
        raise head.error("frame and dual frame have different lengths")
    if len(set(frame + coframe)) != 2 * len(frame):
        raise head.error("frame and dual frame names must be distinct")
    return frame, coframe


def _parse_anchor(body, names, chart):
    out = {}
    for line in body:
        keys, value, col = line.split()
        if len(keys) != 2:
            raise line.error("anchor lines read 'generator coordinate: value'")
        i = _lookup(line, names, *keys[0])
        coord, ccol = keys[1]
        if coord not in chart.coords:
            raise line.error(f"undeclared coordinate {coord!r}", ccol)
        if (i, coord) in out:
            raise line.error("duplicate anchor entry")
        f = line.scalar(value, col, chart)
        if f:
            out[(i, coord)] = f
    return out


def _parse_structure(body, names, chart):
    out = {}
    for line in body:
        keys, value, col = line.split()
        if len(keys) != 3:
            raise line.error("structure lines read 'i j k: value' (degree inconsistency)")
        i, j, k = (_lookup(line, names, *t) for t in keys)
        f = line.scalar(value, col, chart)
        if i == j:
            if f:
                raise line.error("[e,e] must vanish", keys[0][1])
            continue
        if i > j:
            i, j, f = j, i, -f
        if (i, j, k) in out:
            raise line.error("duplicate structure entry")
        if f:
            out[(i, j, k)] = f
    return out


def _parse_cocycle(body, names, chart):
    out = {}
    for line in body:
        keys, value, col = line.split()
        if len(keys) != 1:
            raise line.error("cocycle must be a 1-form (degree inconsistency)",
                             keys[1][1] if len(keys) > 1 else 1)
        k = _lookup(line, names, *keys[0])
        if k in out:
            raise line.error("duplicate cocycle entry")
        f = line.scalar(value, col, chart)
        if f:
            out[k] = f
    return out


def _parse_tensor(head, body, frame, coframe, chart):
    if not body:
        raise head.error("tensor section needs a 'space:' line")
    keys, value, col = body[0].split()
    if len(keys) != 1 or keys[0][0] != "space" or value not in (MULTIVECTOR, FORM):
        raise body[0].error("first tensor line must be 'space: multivector' or 'space: form'")
    names = frame if value == MULTIVECTOR else coframe
    terms = {}
    for line in body[1:]:
        keys, text, vcol = line.split()
        if not keys:
            raise line.error("missing multi-index")
        if [k for k, _ in keys] == ["1"]:
            idx = ()
        else:
            idx = [_lookup(line, names, *t, what="generator") for t in keys]
            if len(set(idx)) != len(idx):
                raise line.error("repeated generator in multi-index")
            sign = 1
            for a in range(len(idx)):
                for b in range(a + 1, len(idx)):
                    if idx[a] > idx[b]:
                        sign = -sign
            idx = tuple(sorted(idx))
        f = line.scalar(text, vcol, chart)
        if idx and sign < 0:
            f = -f
        if idx in terms:
            raise line.error("duplicate multi-index")
        if f:
            terms[tuple(idx)] = f
    return value, terms


def _parse_operator(head, body) -> MultilinearOp:
    vals = {}
    for line in body[:2]:
        keys, value, col = line.split()
        if len(keys) != 1 or keys[0][0] not in ("degree", "dim"):
            raise line.error("operator sections start with 'degree:' and 'dim:'")
        try:
            vals[keys[0][0]] = int(value)
        except ValueError:
            raise line.error(f"expected an integer, got {value!r}", col) from None
    if set(vals) != {"degree", "dim"}:
        raise head.error("operator sections start with 'degree:' and 'dim:'")
    degree, dim = vals["degree"], vals["dim"]
    if degree < -1 or dim < 0:
        raise head.error("operator degree must be >= -1 and dim >= 0")
    arity = degree + 2
    op = MultilinearOp.zero(dim, degree)
    t = op.tensor.copy()
    for line in body[2:]:
        keys, value, col = line.split()
        if len(keys) != arity:
            raise line.error(f"expected {arity} indices (degree inconsistency)")
        idx = []
        for tok, tcol in keys:
            if not tok.isdigit() or int(tok) >= dim:
                raise line.error(f"index {tok!r} out of range", tcol)
            idx.append(int(tok))
        try:
            t[tuple(idx)] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise line.error(f"invalid rational {value!r}", col) from None
    return MultilinearOp(t, degree)


# -- JSON ----------------------------------------------------------------------------


def doc_to_json(doc: StructureDoc) -> str:
    frame, coframe = doc.names()
    c = doc.chart

    def anchor(a, names):
        return [[names[i], coord, format_scalar(f)] for (i, coord), f in sorted(a.items(), key=lambda kv: (kv[0][0], c.index(kv[0][1])))]

    def structure(s, names):
        return [[names[i], names[j], names[k], format_scalar(f)] for (i, j, k), f in sorted(s.items())]

    def cocycle(s, names):
        return [[names[k], format_scalar(f)] for k, f in sorted(s.items())]

    data = {
        "kind": doc.kind,
        "chart": {"base": list(c.base), "fiber": list(c.fiber), "aux": list(c.aux), "exp": c.exp_coord},
    }
    if doc.label:
        data["label"] = doc.label
    if doc.note:
        data["note"] = doc.note
    if doc.frame is not None:
        data["frame"] = {"names": list(doc.frame), "dual": list(doc.coframe)}
    for key, val in (
        ("anchor", anchor(doc.anchor, frame)),
        ("structure", structure(doc.structure, frame)),
        ("cocycle", cocycle(doc.cocycle, coframe)),
        ("dual-anchor", anchor(doc.dual_anchor, coframe)),
        ("dual-structure", structure(doc.dual_structure, coframe)),
        ("dual-cocycle", cocycle(doc.dual_cocycle, frame)),
    ):
        if val:
            data[key] = val
    if doc.tensors:
        data["tensors"] = {}
        for name in sorted(doc.tensors):
            kind, terms = doc.tensors[name]
            names = frame if kind == MULTIVECTOR else coframe
            data["tensors"][name] = {
                "space": kind,
                "terms": [[[names[i] for i in idx], format_scalar(terms[idx])]
                          for idx in sorted(terms, key=lambda t: (len(t), t))],
            }
    if doc.operators:
        data["operators"] = {
            name: {"degree": op.degree, "dim": op.dim or 0,
                   "entries": [[list(idx), str(c)] for idx, c in op.nonzero_entries()]}
            for name, op in sorted(doc.operators.items())
        }
    return json.dumps(data, indent=2, sort_keys=True)


def doc_from_json(text: str) -> StructureDoc:
    """Convert JSON to the text format and parse that, so both share validation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    try:
        out = [f"kind: {data['kind']}"]
        for key in ("label", "note"):
            if data.get(key):
                out.append(f"{key}: {data[key]}")
        ch = data["chart"]
        out.append("[chart]")
        for key in ("base", "fiber", "aux"):
            if ch.get(key):
                out.append(f"{key}: {' '.join(ch[key])}")
        if ch.get("exp"):
            out.append(f"exp: {ch['exp']}")
        if "frame" in data:
            out += ["[frame]", f"names: {' '.join(data['frame']['names'])}",
                    f"dual: {' '.join(data['frame']['dual'])}"]
        for key in ("anchor", "structure", "cocycle", "dual-anchor", "dual-structure", "dual-cocycle"):
            if data.get(key):
                out.append(f"[{key}]")
                for row in data[key]:
                    out.append(f"{' '.join(row[:-1])}: {row[-1]}")
        for name, t in sorted(data.get("tensors", {}).items()):
            out += [f"[tensor {name}]", f"space: {t['space']}"]
            for idx, value in t["terms"]:
                out.append(f"{' '.join(idx) if idx else '1'}: {value}")
        for name, op in sorted(data.get("operators", {}).items()):
            out += [f"[operator {name}]", f"degree: {op['degree']}", f"dim: {op['dim']}"]
            for idx, value in op["entries"]:
                out.append(f"{' '.join(str(i) for i in idx)}: {value}")
    except (KeyError, TypeError, IndexError) as e:
        raise ParseError(f"malformed JSON document: {e}") from None
    return parse_doc("\n".join(out) + "\n")


def load_doc(path: str) -> StructureDoc:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return doc_from_json(text)
    return parse_doc(text)

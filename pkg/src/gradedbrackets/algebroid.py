"""Trivialized Lie algebroids and their Cartan calculus.

An :class:`AlgebroidSpec` is a frame ``e_1..e_r`` over a chart with an anchor
matrix ``a(e_i) = sum_mu a^mu_i d/dx^mu`` and structure functions
``[e_i, e_j] = sum_k c^k_ij e_k``, extended to all sections by the Leibniz
rule. From it we get the Schouten-Nijenhuis bracket on multisections, the
exterior derivative on forms and the Lie derivative along sections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .errors import DegreeError, SpaceMismatch
from .grassmann import (
    MULTIVECTOR,
    GrassmannElement,
    Space,
    contract,
    merge_sign,
    wedge,
)
from .scalar import Chart, Scalar


def _as_scalar(chart: Chart, c) -> Scalar:
    if isinstance(c, Scalar):
        return c.to_chart(chart)
    return chart.const(c)


class AlgebroidSpec:
    """Lie algebroid structure on a trivial bundle with a given frame.

    ``anchor[i][mu]`` is the ``mu``-th component of ``a(e_i)``;
    ``structure[(i, j)][k]`` is ``c^k_ij``. Only one of ``(i, j)`` and
    ``(j, i)`` needs to be supplied; the other is filled in by skew symmetry.
    """

    def __init__(
        self,
        chart: Chart,
        frame,
        anchor=None,
        structure: Mapping | None = None,
        coframe=None,
        label: str = "algebroid-section",
    ):
        self.chart = chart
        self.frame = tuple(frame)
        r = len(self.frame)
        n = chart.dim
        if coframe is None:
            coframe = tuple(_default_dual(name) for name in self.frame)
        self.coframe = tuple(coframe)
        if anchor is None:
            anchor = [[0] * n for _ in range(r)]
        if len(anchor) != r or any(len(row) != n for row in anchor):
            raise ValueError(f"anchor must be a {r}x{n} matrix")
        self.anchor = tuple(tuple(_as_scalar(chart, c) for c in row) for row in anchor)
        self.structure = self._complete_structure(structure or {})
        self.sections = Space(chart, self.frame, self.coframe, MULTIVECTOR, label)
        self.forms = self.sections.dual()
        self._monomial_cache: dict = {}

    def _index(self, i) -> int:
        if isinstance(i, str):
            return self.frame.index(i)
        return int(i)

    def _complete_structure(self, raw: Mapping) -> dict:
        out: dict[tuple[int, int], dict[int, Scalar]] = {}
        r = len(self.frame)

        def put(i, j, k, c):
            c = _as_scalar(self.chart, c)
            if i == j:
                if c:
                    raise ValueError(f"bracket [e{i},e{i}] must vanish")
                return
            for (a, b, s) in ((i, j, c), (j, i, -c)):
                slot = out.setdefault((a, b), {})
                prev = slot.get(k)
                if prev is not None and prev != s:
                    raise ValueError(f"inconsistent structure functions for ({i},{j})")
                slot[k] = s

        for key, val in raw.items():
            if len(key) == 3:
                i, j, k = (self._index(x) for x in key)
                put(i, j, k, val)
            else:
                i, j = (self._index(x) for x in key)
                for k, c in val.items():
                    put(i, j, self._index(k), c)
        for (i, j), slot in list(out.items()):
            if not (0 <= i < r and 0 <= j < r) or any(not 0 <= k < r for k in slot):
                raise ValueError("structure function index out of range")
            out[(i, j)] = {k: c for k, c in slot.items() if c}
        return {key: val for key, val in out.items() if val}

    # -- constructors -----------------------------------------------------
    @classmethod
    def tangent(cls, chart: Chart, label: str = "base-tangent") -> "AlgebroidSpec":
        """Tangent algebroid over all coordinates of ``chart``."""
        n = chart.dim
        frame = tuple("d_" + c for c in chart.coords)
        coframe = tuple("d" + c for c in chart.coords)
        anchor = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(chart, frame, anchor, {}, coframe, label)

    @classmethod
    def lie_algebra(cls, frame, structure, chart: Chart | None = None) -> "AlgebroidSpec":
        """Lie algebra viewed as an algebroid with zero anchor (over a point by default)."""
        return cls(chart or Chart(), frame, None, structure)

    def replace(self, anchor=None, structure=None) -> "AlgebroidSpec":
        return AlgebroidSpec(
            self.chart,
            self.frame,
            self.anchor if anchor is None else anchor,
            self.structure if structure is None else structure,
            self.coframe,
            self.sections.label,
        )

    @property
    def rank(self) -> int:
        return len(self.frame)

    def __eq__(self, other):
        if not isinstance(other, AlgebroidSpec):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.frame == other.frame
            and self.coframe == other.coframe
            and self.anchor == other.anchor
            and self.structure == other.structure
        )

    def __hash__(self):
        return hash((self.chart, self.frame, self.coframe, self.anchor))

    def is_tangent(self) -> bool:
        n = self.chart.dim
        if self.rank != n or self.structure:
            return False
        return all(
            self.anchor[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )

    # -- anchor -----------------------------------------------------------
    def anchor_action(self, i: int, f: Scalar) -> Scalar:
        """``a(e_i)(f)``."""
        out = self.chart.zero()
        coords = self.chart.coords
        for mu, a in enumerate(self.anchor[i]):
            if a:
                out = out + a * f.partial(coords[mu])
        return out

    def act(self, x: GrassmannElement, f: Scalar) -> Scalar:
        """Anchor of a section applied to a function."""
        self._require_section(x)
        out = self.chart.zero()
        for idx, c in x.terms.items():
            out = out + c * self.anchor_action(idx[0], f)
        return out

    def anchor_field(self, x: GrassmannElement) -> list[Scalar]:
        """Components of ``a(X)`` along the chart coordinates."""
        self._require_section(x)
        comps = [self.chart.zero()] * self.chart.dim
        for idx, c in x.terms.items():
            for mu, a in enumerate(self.anchor[idx[0]]):
                if a:
                    comps[mu] = comps[mu] + c * a
        return comps

    def d_function(self, f: Scalar) -> GrassmannElement:
        terms = {}
        for i in range(self.rank):
            v = self.anchor_action(i, f)
            if v:
                terms[(i,)] = v
        return GrassmannElement(self.forms, terms, _trusted=True)

    def frame_bracket(self, i: int, j: int) -> GrassmannElement:
        slot = self.structure.get((i, j), {})
        return GrassmannElement(self.sections, {(k,): c for k, c in slot.items()}, _trusted=True)

    def _require_section(self, x: GrassmannElement):
        if x.space != self.sections:
            raise SpaceMismatch("expected a section of this algebroid")
        d = x.tensor_degree
        if d not in (None, 1):
            raise DegreeError(f"expected a section (tensor degree 1), got degree {d}")

    def section(self, components) -> GrassmannElement:
        """Section from a list of coefficients or a name -> coefficient mapping."""
        if isinstance(components, Mapping):
            items = {(self._index(k),): _as_scalar(self.chart, v) for k, v in components.items()}
        else:
            items = {(i,): _as_scalar(self.chart, v) for i, v in enumerate(components)}
        return GrassmannElement(self.sections, items)

    def form(self, components) -> GrassmannElement:
        if isinstance(components, Mapping):
            items = {
                (self.coframe.index(k) if isinstance(k, str) else k,): _as_scalar(self.chart, v)
                for k, v in components.items()
            }
        else:
            items = {(i,): _as_scalar(self.chart, v) for i, v in enumerate(components)}
        return GrassmannElement(self.forms, items)

    # -- extension L + R ---------------------------------------------------
    def extension(self, name: str = "I", dual_name: str = "dI") -> "AlgebroidSpec":
        """``L + R`` with ``I`` prepended: zero anchor, central, so that
        ``[(X,f),(Y,g)] = ([X,Y], a(X)g - a(Y)f)``."""
        n = self.chart.dim
        anchor = [[0] * n] + [list(row) for row in self.anchor]
        structure = {
            (i + 1, j + 1): {k + 1: c for k, c in slot.items()}
            for (i, j), slot in self.structure.items()
        }
        return AlgebroidSpec(
            self.chart,
            (name,) + self.frame,
            anchor,
            structure,
            (dual_name,) + self.coframe,
            self.sections.label,
        )

    # -- Schouten-Nijenhuis machinery -----------------------------------------
    def monomial_bracket(self, I: tuple[int, ...], J: tuple[int, ...]) -> dict:
        """``[e_I, e_J]`` for frame wedge monomials, as a term dict."""
        key = (I, J)
        hit = self._monomial_cache.get(key)
        if hit is not None:
            return hit
        acc: dict = {}
        for k, ik in enumerate(I):
            rest_i = I[:k] + I[k + 1:]
            for l, jl in enumerate(J):
                slot = self.structure.get((ik, jl))
                if not slot:
                    continue
                rest_j = J[:l] + J[l + 1:]
                s0, rest = merge_sign(rest_i, rest_j)
                if not s0:
                    continue
                sign = s0 * (-1 if (k + l) & 1 else 1)
                for m, c in slot.items():
                    s1, idx = merge_sign((m,), rest)
                    if not s1:
                        continue
                    v = c if sign * s1 > 0 else -c
                    prev = acc.get(idx)
                    acc[idx] = v if prev is None else prev + v
        acc = {k: v for k, v in acc.items() if v}
        self._monomial_cache[key] = acc
        return acc


def _default_dual(name: str) -> str:
    if name.startswith("d_"):
        return "d" + name[2:]
    return name + "*"


def _accumulate(acc: dict, idx, value: Scalar):
    prev = acc.get(idx)
    acc[idx] = value if prev is None else prev + value


def _inner_d(A: AlgebroidSpec, g: Scalar, I: tuple[int, ...], cache: dict):
    """Terms of ``i_{dg} e_I``: list of (index, coefficient)."""
    out = []
    for p, i in enumerate(I):
        key = (id(g), i)
        v = cache.get(key)
        if v is None:
            v = A.anchor_action(i, g)
            cache[key] = v
        if v:
            out.append((I[:p] + I[p + 1:], v if p % 2 == 0 else -v))
    return out


def sn_bracket(x: GrassmannElement, y: GrassmannElement, A: AlgebroidSpec) -> GrassmannElement:
    """Schouten-Nijenhuis bracket of multisections of ``A``.

    Graded so that a k-vector has degree k-1; ``[X, f] = a(X)(f)`` for a
    section ``X`` and ``ad_X`` is a graded derivation of the wedge product.
    Computed term by term from

        [f e_I, g e_J] = f g [e_I, e_J]
                         + (-1)^(m-1) f (i_dg e_I) ^ e_J
                         - (-1)^((m-1)(n-1) + n-1) g (i_df e_J) ^ e_I

    with ``m = |I|``, ``n = |J|`` and ``[e_I, e_J]`` expanded over pairs of
    frame factors.
    """
    if x.space != A.sections or y.space != A.sections:
        raise SpaceMismatch("sn_bracket needs multisections of the given algebroid")
    acc: dict = {}
    cache: dict = {}
    for I, f in x.terms.items():
        m = len(I)
        for J, g in y.terms.items():
            n = len(J)
            if m and n:
                mono = A.monomial_bracket(I, J)
                if mono:
                    fg = f * g
                    for idx, c in mono.items():
                        _accumulate(acc, idx, fg * c)
            if m:
                s2 = 1 if (m - 1) % 2 == 0 else -1
                for rest, v in _inner_d(A, g, I, cache):
                    sign, idx = merge_sign(rest, J)
                    if sign:
                        _accumulate(acc, idx, f * v if sign * s2 > 0 else -(f * v))
            if n:
                e = (m - 1) * (n - 1) + (n - 1)
                s3 = -1 if e % 2 == 0 else 1
                for rest, v in _inner_d(A, f, J, cache):
                    sign, idx = merge_sign(rest, I)
                    if sign:
                        _accumulate(acc, idx, g * v if sign * s3 > 0 else -(g * v))
    return GrassmannElement(A.sections, {k: v for k, v in acc.items() if v}, _trusted=True)


def _eval_form(mu_terms: dict, l: int, rest: tuple[int, ...], chart: Chart) -> Scalar | None:
    """``mu(e_l, e_rest)`` for sorted ``rest``."""
    sign, idx = merge_sign((l,), rest)
    if not sign:
        return None
    c = mu_terms.get(idx)
    if c is None:
        return None
    return c if sign > 0 else -c


def exterior_d(mu: GrassmannElement, A: AlgebroidSpec) -> GrassmannElement:
    """Exterior derivative of an algebroid form, evaluated on frame tuples by

        dmu(X_1..X_{k+1}) = sum_i (-1)^(i+1) a(X_i) mu(..no X_i..)
                          + sum_{i<j} (-1)^(i+j) mu([X_i,X_j], ..no X_i, X_j..)
    """
    if mu.space != A.forms:
        raise SpaceMismatch("exterior_d needs a form of the given algebroid")
    r = A.rank
    acc: dict = {}
    chart = A.chart
    for k, part in mu.homogeneous_parts().items():
        terms = part.terms
        for K in combinations(range(r), k + 1):
            val = chart.zero()
            for i in range(k + 1):
                c = terms.get(K[:i] + K[i + 1:])
                if c is not None:
                    v = A.anchor_action(K[i], c)
                    val = val + v if i % 2 == 0 else val - v
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    slot = A.structure.get((K[i], K[j]))
                    if not slot:
                        continue
                    rest = K[:i] + K[i + 1:j] + K[j + 1:]
                    sign = 1 if (i + j) % 2 == 0 else -1
                    for l, c in slot.items():
                        m = _eval_form(terms, l, rest, chart)
                        if m is not None:
                            val = val + c * m if sign > 0 else val - c * m
            if val:
                _accumulate(acc, K, val)
    return GrassmannElement(A.forms, {k: v for k, v in acc.items() if v}, _trusted=True)


def lie_derivative(x: GrassmannElement, mu: GrassmannElement, A: AlgebroidSpec) -> GrassmannElement:
    """``L_X mu = i_X d mu + d i_X mu`` for a section ``X``."""
    if x.space != A.sections:
        raise SpaceMismatch("lie_derivative needs a section of the given algebroid")
    if x.terms and x.tensor_degree != 1:
        raise DegreeError("Lie derivative is defined along sections (Lie degree 0)")
    return contract(x, exterior_d(mu, A)) + exterior_d(contract(x, mu), A)


# -- validation -------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)

    def first(self):
        return self.failures[0] if self.failures else None

    def lines(self) -> list[str]:
        if self.ok:
            return ["PASS"]
        return [f"FAIL {kind} {where}: {defect}" for kind, where, defect in self.failures]


def vector_field_bracket(v: list[Scalar], w: list[Scalar], chart: Chart) -> list[Scalar]:
    coords = chart.coords
    out = []
    for nu in range(chart.dim):
        s = chart.zero()
        for mu in range(chart.dim):
            if v[mu]:
                s = s + v[mu] * w[nu].partial(coords[mu])
            if w[mu]:
                s = s - w[mu] * v[nu].partial(coords[mu])
        out.append(s)
    return out


def algebroid_validate(A: AlgebroidSpec, stop_at_first: bool = True) -> ValidationReport:
    """Jacobi identity on frame triples and anchor morphism on frame pairs.

    Together with the built-in Leibniz rule these imply the full algebroid
    axioms, since the Jacobiator is tensorial once the anchor is a morphism.
    """
    failures = []
    r = A.rank
    frame = [A.sections.gen(i) for i in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            lhs = A.anchor_field(A.frame_bracket(i, j))
            rhs = vector_field_bracket(list(A.anchor[i]), list(A.anchor[j]), A.chart)
            diff = [a - b for a, b in zip(lhs, rhs)]
            if any(diff):
                defect = ", ".join(
                    f"{c}: {d}" for c, d in zip(A.chart.coords, diff) if d
                )
                failures.append(("anchor", (A.frame[i], A.frame[j]), defect))
                if stop_at_first:
                    return ValidationReport(False, failures)
    for i, j, k in combinations(range(r), 3):
        X, Y, Z = frame[i], frame[j], frame[k]
        jac = (
            sn_bracket(sn_bracket(X, Y, A), Z, A)
            + sn_bracket(sn_bracket(Y, Z, A), X, A)
            + sn_bracket(sn_bracket(Z, X, A), Y, A)
        )
        if jac:
            failures.append(("jacobi", (A.frame[i], A.frame[j], A.frame[k]), str(jac)))
            if stop_at_first:
                return ValidationReport(False, failures)
    return ValidationReport(not failures, failures)


def one(A: AlgebroidSpec) -> GrassmannElement:
    """The unit function as a multisection of Lie degree -1."""
    return A.sections.one()


def scalar_times(f, x: GrassmannElement) -> GrassmannElement:
    if isinstance(f, (int, Fraction)):
        return x * f
    return x * f.to_chart(x.chart)


__all__ = [
    "AlgebroidSpec",
    "ValidationReport",
    "algebroid_validate",
    "exterior_d",
    "lie_derivative",
    "sn_bracket",
    "vector_field_bracket",
    "wedge",
]

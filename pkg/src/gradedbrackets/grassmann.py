"""Graded exterior algebras over a chart: multivectors and forms.

A :class:`GrassmannElement` is a finite map from strictly increasing index
tuples (into the generator names of a :class:`Space`) to nonzero
:class:`~gradedbrackets.scalar.Scalar` coefficients. Multivectors and forms of
the same bundle live in mutually dual spaces whose generators are paired by
position.

Sign conventions:

* single contractions are left derivations,
  ``i_{e_i}(eps^{j_0} ^ ... ^ eps^{j_k}) = sum_p (-1)^p delta_{i j_p} ...``;
* multi-contractions apply the first factor first,
  ``i_{e_1 ^ e_2} = i_{e_2} o i_{e_1}``, so the full pairing is the
  determinant: ``<e_1 ^ e_2, eps^1 ^ eps^2> = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DegreeError, InhomogeneousError, SpaceMismatch
from .scalar import Chart, Scalar

MULTIVECTOR = "multivector"
FORM = "form"


@dataclass(frozen=True)
class Space:
    """Generators of an exterior algebra together with the dual generators."""

    chart: Chart
    names: tuple[str, ...]
    dual_names: tuple[str, ...]
    kind: str = MULTIVECTOR
    label: str = "algebroid-section"

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "dual_names", tuple(self.dual_names))
        if len(self.names) != len(self.dual_names):
            raise ValueError("generator and dual generator counts differ")
        if self.kind not in (MULTIVECTOR, FORM):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names {self.names}")

    @property
    def rank(self) -> int:
        return len(self.names)

    def dual(self) -> "Space":
        other = FORM if self.kind == MULTIVECTOR else MULTIVECTOR
        label = {
            "algebroid-section": "algebroid-form",
            "algebroid-form": "algebroid-section",
            "base-tangent": "base-cotangent",
            "base-cotangent": "base-tangent",
            "total-space-tangent": "total-space-cotangent",
            "total-space-cotangent": "total-space-tangent",
        }.get(self.label, self.label)
        return Space(self.chart, self.dual_names, self.names, other, label)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SpaceMismatch(f"unknown generator {name!r} in {self.names}") from None

    def zero(self) -> "GrassmannElement":
        return GrassmannElement(self, {})

    def one(self) -> "GrassmannElement":
        return GrassmannElement(self, {(): self.chart.one()})

    def scalar(self, f) -> "GrassmannElement":
        if not isinstance(f, Scalar):
            f = self.chart.const(f)
        return GrassmannElement(self, {(): f})

    def gen(self, i) -> "GrassmannElement":
        if isinstance(i, str):
            i = self.index(i)
        return GrassmannElement(self, {(i,): self.chart.one()})

    def basis(self, degree: int) -> list[tuple[int, ...]]:
        return list(combinations(range(self.rank), degree))


def merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Sign and sorted index of ``e_a ^ e_b``; returns ``(0, None)`` on overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    inversions = 0
    j = 0
    out = []
    nb = len(b)
    for x in a:
        while j < nb and b[j] < x:
            out.append(b[j])
            j += 1
        if j < nb and b[j] == x:
            return 0, None
        inversions += j
        out.append(x)
    out.extend(b[j:])
    return (-1 if inversions & 1 else 1), tuple(out)


def contract_index(i: int, idx: tuple[int, ...]):
    """Left contraction of a single generator: sign and remaining index."""
    for p, j in enumerate(idx):
        if j == i:
            return (-1 if p & 1 else 1), idx[:p] + idx[p + 1:]
        if j > i:
            break
    return 0, None


def contract_multi(inner: tuple[int, ...], idx: tuple[int, ...]):
    """``i_{g_inner}`` applied to ``g_idx`` with the first factor first."""
    sign = 1
    for i in inner:
        s, idx = contract_index(i, idx)
        if not s:
            return 0, None
        sign *= s
    return sign, idx


class GrassmannElement:
    """Immutable element of the exterior algebra of a :class:`Space`."""

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: Space, terms: Mapping | None = None, _trusted=False):
        self.space = space
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            chart = space.chart
            r = space.rank
            for idx, c in (terms or {}).items():
                idx = tuple(idx)
                if any(b <= a for a, b in zip(idx, idx[1:])):
                    raise ValueError(f"multi-index {idx} is not strictly increasing")
                if idx and (idx[0] < 0 or idx[-1] >= r):
                    raise ValueError(f"multi-index {idx} out of range")
                if not isinstance(c, Scalar):
                    c = chart.const(c)
                elif c.chart != chart:
                    c = c.to_chart(chart)
                if c:
                    clean[idx] = c
            self.terms = clean
        self._hash = None

    @property
    def chart(self) -> Chart:
        return self.space.chart

    # -- grading ----------------------------------------------------------
    def degrees(self) -> set[int]:
        return {len(i) for i in self.terms}

    @property
    def tensor_degree(self) -> int | None:
        """Common tensor degree, ``None`` for zero; raises if inhomogeneous."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise InhomogeneousError(f"element has tensor degrees {sorted(ds)}")
        return next(iter(ds))

    @property
    def lie_degree(self) -> int | None:
        d = self.tensor_degree
        return None if d is None else d - 1

    def homogeneous_parts(self) -> dict[int, "GrassmannElement"]:
        parts: dict[int, dict] = {}
        for idx, c in self.terms.items():
            parts.setdefault(len(idx), {})[idx] = c
        return {d: GrassmannElement(self.space, t, _trusted=True) for d, t in parts.items()}

    def part(self, degree: int) -> "GrassmannElement":
        return GrassmannElement(
            self.space, {i: c for i, c in self.terms.items() if len(i) == degree}, _trusted=True
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, idx) -> Scalar:
        if isinstance(idx, str):
            idx = (self.space.index(idx),)
        idx = tuple(self.space.index(i) if isinstance(i, str) else i for i in idx)
        sign = 1
        if any(b <= a for a, b in zip(idx, idx[1:])):
            sign, idx = _sort_with_sign(idx)
            if not sign:
                return self.chart.zero()
        c = self.terms.get(idx)
        if c is None:
            return self.chart.zero()
        return c if sign == 1 else -c

    def scalar_part(self) -> Scalar:
        return self.terms.get((), self.chart.zero())

    # -- linear structure -------------------------------------------------
    def _check(self, other: "GrassmannElement"):
        if other.space is not self.space and other.space != self.space:
            raise SpaceMismatch(f"{self.space.names}/{self.space.kind} vs {other.space.names}/{other.space.kind}")

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            if isinstance(other, (int, Fraction, Scalar)):
                other = self.space.scalar(other)
            else:
                return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for i, c in other.terms.items():
            s = out.get(i)
            if s is None:
                out[i] = c
            else:
                s = s + c
                if s:
                    out[i] = s
                else:
                    del out[i]
        return GrassmannElement(self.space, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.space, {i: -c for i, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.space.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, f):
        """Multiplication by a scalar function or rational number."""
        if isinstance(f, GrassmannElement):
            raise TypeError("use wedge() for products of Grassmann elements")
        if isinstance(f, Scalar) and f.chart != self.chart:
            f = f.to_chart(self.chart)
        if isinstance(f, (int, Fraction)) and f == 1:
            return self
        out = {}
        for i, c in self.terms.items():
            p = c * f
            if p:
                out[i] = p
        return GrassmannElement(self.space, out, _trusted=True)

    __rmul__ = __mul__

    def wedge(self, other: "GrassmannElement") -> "GrassmannElement":
        return wedge(self, other)

    def map_coefficients(self, fn) -> "GrassmannElement":
        out = {}
        for i, c in self.terms.items():
            v = fn(c)
            if v:
                out[i] = v
        return GrassmannElement(self.space, out, _trusted=True)

    def reinterpret(self, space: Space) -> "GrassmannElement":
        """Same coefficients read in another space of equal rank (e.g. L-multivector as L*-form)."""
        if space.rank != self.space.rank:
            raise SpaceMismatch("rank differs")
        return GrassmannElement(space, {i: c.to_chart(space.chart) for i, c in self.terms.items()}, _trusted=True)

    def embed(self, space: Space, index_map: Mapping[int, int] | None = None) -> "GrassmannElement":
        """Push into a bigger space by a generator index map (default: by name)."""
        if index_map is None:
            index_map = {i: space.index(n) for i, n in enumerate(self.space.names)}
        out = {}
        for idx, c in self.terms.items():
            new = tuple(index_map[i] for i in idx)
            sign, srt = _sort_with_sign(new) if new else (1, ())
            if not sign:
                continue
            c = c.to_chart(space.chart)
            out[srt] = out.get(srt, space.chart.zero()) + (c if sign == 1 else -c)
        return GrassmannElement(space, {i: c for i, c in out.items() if c}, _trusted=True)

    # -- equality/printing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): self.chart.const(other)} if other else {})
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"GrassmannElement({format_element(self)!r})"


def _sort_with_sign(idx: tuple[int, ...]):
    """Sort an index tuple, returning permutation sign (0 on repeats)."""
    lst = list(idx)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and lst[j - 1] == lst[j]:
            return 0, None
    return sign, tuple(lst)


def format_element(x: GrassmannElement) -> str:
    """One-line canonical text: ``(coeff)[g1,g2] + (coeff)[]``."""
    if not x.terms:
        return "0"
    names = x.space.names
    parts = []
    for idx, c in x.sorted_terms():
        gens = ",".join(names[i] for i in idx)
        parts.append(f"({c})[{gens}]")
    return " + ".join(parts)


def element(space: Space, items: Iterable) -> GrassmannElement:
    """Build from ``(generators, coefficient)`` pairs; generators may be names, unsorted."""
    out: dict = {}
    for gens, c in items:
        idx = tuple(space.index(g) if isinstance(g, str) else g for g in gens)
        sign, srt = _sort_with_sign(idx) if idx else (1, ())
        if not sign:
            continue
        if not isinstance(c, Scalar):
            c = space.chart.const(c)
        out[srt] = out.get(srt, space.chart.zero()) + (c if sign == 1 else -c)
    return GrassmannElement(space, out)


def wedge(*xs: GrassmannElement) -> GrassmannElement:
    if not xs:
        raise ValueError("wedge of nothing")
    out = xs[0]
    for y in xs[1:]:
        out._check(y)
        res: dict = {}
        for i, a in out.terms.items():
            for j, b in y.terms.items():
                sign, k = merge_sign(i, j)
                if not sign:
                    continue
                p = a * b
                if sign < 0:
                    p = -p
                s = res.get(k)
                res[k] = p if s is None else s + p
        out = GrassmannElement(out.space, {k: c for k, c in res.items() if c}, _trusted=True)
    return out


def _check_dual(a: GrassmannElement, b: GrassmannElement):
    sa, sb = a.space, b.space
    if sa.chart != sb.chart or sa.names != sb.dual_names or sa.dual_names != sb.names or sa.kind == sb.kind:
        raise SpaceMismatch("contraction needs mutually dual spaces")


def contract(inner: GrassmannElement, outer: GrassmannElement) -> GrassmannElement:
    """Interior product ``i_inner(outer)`` for elements of dual spaces.

    Lowers the degree of ``outer`` by the tensor degree of ``inner``;
    components that would go below degree zero are dropped.
    """
    _check_dual(inner, outer)
    res: dict = {}
    for i, a in inner.terms.items():
        for j, b in outer.terms.items():
            if len(i) > len(j):
                continue
            sign, k = contract_multi(i, j)
            if not sign:
                continue
            p = a * b
            if sign < 0:
                p = -p
            s = res.get(k)
            res[k] = p if s is None else s + p
    return GrassmannElement(outer.space, {k: c for k, c in res.items() if c}, _trusted=True)


def pairing(x: GrassmannElement, mu: GrassmannElement) -> Scalar:
    """Determinant pairing of equal-degree parts; other degrees pair to zero."""
    _check_dual(x, mu)
    out = x.chart.zero()
    for i, a in x.terms.items():
        b = mu.terms.get(i)
        if b is not None:
            out = out + a * b
    return out


def is_homogeneous(x: GrassmannElement) -> bool:
    return len(x.degrees()) <= 1


def require_degree(x: GrassmannElement, degree: int, what: str = "element"):
    d = x.tensor_degree
    if d is not None and d != degree:
        raise DegreeError(f"{what} must have tensor degree {degree}, got {d}")

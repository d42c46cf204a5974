"""Multilinear operators: Gerstenhaber insertion and bracket, the
Nijenhuis-Richardson bracket, antisymmetrization and the wedge product.

Two realizations are provided. :class:`MultilinearOp` is a dense tensor over
``Q^d`` and is used as a brute-force oracle. :class:`FnMultilinearOp` wraps an
evaluator on polynomial functions and models multidifferential operators of
first order; :func:`split_first_order` recovers their components as
multivector fields.

A ``(p+1)``-linear map has Lie degree ``p``; degree ``-1`` elements are plain
vectors (or functions).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .errors import DegreeError, NotFirstOrderError, NotSkewError, SpaceMismatch
from .grassmann import GrassmannElement, pairing, wedge
from .scalar import Chart, Scalar

ZERO = Fraction(0)


def perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def unshuffles(n: int, k: int):
    """Permutations of ``range(n)`` increasing on the first ``k`` and the last
    ``n - k`` places, as ``(sign, order)`` pairs."""
    for block in combinations(range(n), k):
        rest = [i for i in range(n) if i not in block]
        order = list(block) + rest
        yield perm_sign(order), order


def _fractions(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(ZERO)
    return arr


class MultilinearOp:
    """Dense ``(p+1)``-linear map ``V x ... x V -> V`` on ``V = Q^dim``.

    ``tensor[out, i0, ..., ip]`` is the ``out`` component of the value on basis
    vectors ``e_i0, ..., e_ip``. Lie degree ``-1`` is a vector; degree ``-2``
    is the zero space and only appears as a formal result.
    """

    def __init__(self, tensor, degree: int | None = None):
        arr = np.array(tensor, dtype=object)
        if degree is None:
            degree = arr.ndim - 2
        if degree < -2:
            raise DegreeError(f"no operators of degree {degree}")
        if degree == -2:
            arr = np.array(ZERO, dtype=object)
        elif arr.ndim != degree + 2 or len(set(arr.shape)) > 1:
            raise ValueError(f"tensor shape {arr.shape} does not fit degree {degree}")
        self.tensor = np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr
        self.degree = degree

    @property
    def dim(self) -> int | None:
        return self.tensor.shape[0] if self.degree >= -1 else None

    @property
    def arity(self) -> int:
        return self.degree + 1

    @classmethod
    def zero(cls, dim: int, degree: int) -> "MultilinearOp":
        if degree < -1:
            return cls(0, -2)
        return cls(_fractions((dim,) * (degree + 2)), degree)

    @classmethod
    def vector(cls, components) -> "MultilinearOp":
        return cls(np.array([Fraction(c) for c in components], dtype=object), -1)

    @classmethod
    def from_table(cls, dim: int, arity: int, table: dict) -> "MultilinearOp":
        """From ``{(i0, .., ip): {out: coeff}}`` on basis vectors."""
        t = _fractions((dim,) * (arity + 1))
        for args, vals in table.items():
            for k, c in vals.items():
                t[(k,) + tuple(args)] = Fraction(c)
        return cls(t, arity - 1)

    def __call__(self, *vectors):
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        out = self.tensor
        for v in reversed(vectors):
            out = np.tensordot(out, np.array(v, dtype=object), axes=([out.ndim - 1], [0]))
        return out

    def _compatible(self, other: "MultilinearOp"):
        if self.degree >= -1 and other.degree >= -1 and self.dim != other.dim:
            raise SpaceMismatch(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other: "MultilinearOp") -> "MultilinearOp":
        self._compatible(other)
        if self.degree != other.degree:
            raise DegreeError("cannot add operators of different degrees")
        return MultilinearOp(self.tensor + other.tensor, self.degree)

    def __sub__(self, other: "MultilinearOp") -> "MultilinearOp":
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, c) -> "MultilinearOp":
        return MultilinearOp(self.tensor * Fraction(c), self.degree)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not np.any(self.tensor != 0)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, MultilinearOp):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        return self.tensor.shape == other.tensor.shape and bool(np.all(self.tensor == other.tensor))

    __hash__ = None

    def permute_inputs(self, order: Sequence[int]) -> "MultilinearOp":
        """``B(x_0, .., x_p) = A(x_order[0], .., x_order[p])``."""
        axes = [0] + [0] * self.arity
        for j, pos in enumerate(order):
            axes[1 + pos] = 1 + j
        return MultilinearOp(np.transpose(self.tensor, axes), self.degree)

    def is_skew(self) -> bool:
        return self.degree < 1 or skew_projector(self) == self

    def nonzero_entries(self):
        for idx in zip(*np.nonzero(self.tensor != 0)):
            yield tuple(int(i) for i in idx), self.tensor[idx]

    def __repr__(self):
        entries = ", ".join(f"{i}: {c}" for i, c in self.nonzero_entries())
        return f"MultilinearOp(degree={self.degree}, dim={self.dim}, {{{entries}}})"


def _check_pair(A: MultilinearOp, B: MultilinearOp):
    A._compatible(B)


def g_insertion(A: MultilinearOp, B: MultilinearOp) -> MultilinearOp:
    """``i_B A(x_0..x_{a+b}) = sum_k (-1)^(bk) A(x_0..x_{k-1}, B(x_k..x_{k+b}), ..)``."""
    _check_pair(A, B)
    a, b = A.degree, B.degree
    if a < 0 or b < -1 or a + b < -1:
        return MultilinearOp.zero(A.dim or B.dim or 0, a + b)
    out = None
    for k in range(a + 1):
        t = np.tensordot(A.tensor, B.tensor, axes=([1 + k], [0]))
        # axes now: out, A-inputs without k, then b+1 B-inputs; move B block to slot k
        nb = b + 1
        if nb:
            src = list(range(t.ndim - nb, t.ndim))
            dst = list(range(1 + k, 1 + k + nb))
            t = np.moveaxis(t, src, dst)
        if (b * k) % 2:
            t = -t
        out = t if out is None else out + t
    return MultilinearOp(out, a + b)


def gerstenhaber_bracket(A: MultilinearOp, B: MultilinearOp) -> MultilinearOp:
    """``[A,B]^G = -i_A B + (-1)^(ab) i_B A``."""
    a, b = A.degree, B.degree
    left = g_insertion(B, A)
    right = g_insertion(A, B)
    return right * (1 if (a * b) % 2 == 0 else -1) - left


def skew_projector(A: MultilinearOp) -> MultilinearOp:
    n = A.arity
    if n <= 1:
        return A
    acc = None
    for perm in permutations(range(n)):
        t = A.permute_inputs(perm).tensor
        if perm_sign(perm) < 0:
            t = -t
        acc = t if acc is None else acc + t
    return MultilinearOp(acc * Fraction(1, factorial(n)), A.degree)


def _require_skew(*ops: MultilinearOp):
    for op in ops:
        if not op.is_skew():
            raise NotSkewError("Nijenhuis-Richardson bracket needs skew-symmetric operators")


def nr_insertion(A: MultilinearOp, B: MultilinearOp) -> MultilinearOp:
    """Unshuffle insertion ``i_B A = sum_sigma sign A(B(x_s0..x_sb), x_s(b+1)..)``."""
    _check_pair(A, B)
    a, b = A.degree, B.degree
    if a < 0 or b < -1 or a + b < -1:
        return MultilinearOp.zero(A.dim or B.dim or 0, a + b)
    t = np.tensordot(A.tensor, B.tensor, axes=([1], [0]))
    nb = b + 1
    if nb:
        src = list(range(t.ndim - nb, t.ndim))
        t = np.moveaxis(t, src, list(range(1, 1 + nb)))
    n = a + b + 1
    acc = None
    for sign, order in unshuffles(n, nb):
        axes = [0] * (n + 1)
        for j, pos in enumerate(order):
            axes[1 + pos] = 1 + j
        s = np.transpose(t, axes)
        if sign < 0:
            s = -s
        acc = s if acc is None else acc + s
    return MultilinearOp(acc, a + b)


def nr_bracket(A: MultilinearOp, B: MultilinearOp, check=True) -> MultilinearOp:
    """``[A,B]^NR = -i_A B + (-1)^(ab) i_B A`` with unshuffle insertions."""
    if check:
        _require_skew(A, B)
    a, b = A.degree, B.degree
    right = nr_insertion(A, B)
    left = nr_insertion(B, A)
    return right * (1 if (a * b) % 2 == 0 else -1) - left


def nr_bracket_skew(A: MultilinearOp, B: MultilinearOp) -> MultilinearOp:
    """Same bracket as the normalized antisymmetrization of ``[A,B]^G``."""
    _require_skew(A, B)
    a, b = A.degree, B.degree
    if a + b < -1:
        return MultilinearOp.zero(A.dim, a + b)
    factor = Fraction(factorial(a + b + 1), factorial(a + 1) * factorial(b + 1))
    return skew_projector(gerstenhaber_bracket(A, B)) * factor


class CommutativeAlgebra:
    """Associative commutative unital algebra on ``Q^dim`` via structure constants
    ``mult[k, i, j]`` (component ``k`` of ``e_i e_j``)."""

    def __init__(self, mult, unit):
        self.mult = MultilinearOp(mult, 1)
        self.unit = MultilinearOp.vector(unit)
        self.dim = self.mult.dim

    @classmethod
    def truncated_polynomials(cls, n: int) -> "CommutativeAlgebra":
        """``Q[x]/(x^n)`` in the basis ``1, x, .., x^(n-1)``."""
        t = _fractions((n, n, n))
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    t[i + j, i, j] = Fraction(1)
        return cls(t, [1] + [0] * (n - 1))

    def product(self, u, v):
        return self.mult(u, v)


def product_op(A: MultilinearOp, B: MultilinearOp, alg: CommutativeAlgebra) -> MultilinearOp:
    """``(A.B)(x_0..) = A(x_0..x_a) B(x_{a+1}..)`` using the algebra product."""
    _check_pair(A, B)
    t = np.tensordot(alg.mult.tensor, A.tensor, axes=([1], [0]))
    # axes: k, j, A-inputs
    t = np.tensordot(t, B.tensor, axes=([1], [0]))
    return MultilinearOp(t, A.degree + B.degree + 1)


def wedge_multilinear(A: MultilinearOp, B: MultilinearOp, alg: CommutativeAlgebra) -> MultilinearOp:
    """``A ^ B = (a+b+2)!/((a+1)!(b+1)!) skew(A.B)``."""
    _require_skew(A, B)
    a, b = A.degree, B.degree
    factor = Fraction(factorial(a + b + 2), factorial(a + 1) * factorial(b + 1))
    return skew_projector(product_op(A, B, alg)) * factor


def is_derivation(C: MultilinearOp, alg: CommutativeAlgebra) -> bool:
    """Derivation in the first slot (enough for skew operators)."""
    d = alg.dim
    if C.degree < 0:
        return False
    basis = np.eye(d, dtype=object) * Fraction(1)
    others = list(product(range(d), repeat=C.arity - 1))
    for i in range(d):
        for j in range(d):
            uv = alg.product(basis[i], basis[j])
            for rest in others:
                rv = [basis[k] for k in rest]
                lhs = C(uv, *rv)
                rhs = alg.product(C(basis[i], *rv), basis[j]) + alg.product(basis[i], C(basis[j], *rv))
                if np.any(lhs != rhs):
                    return False
    return True


# -- operators on functions --------------------------------------------------------


class FnMultilinearOp:
    """Multilinear operator on polynomial functions of a chart, given by an
    evaluator ``fn(*scalars) -> Scalar``. Lie degree ``arity - 1``; arity 0 is a
    plain function."""

    def __init__(self, chart: Chart, arity: int, evaluator: Callable, skew: bool = True):
        self.chart = chart
        self.arity = arity
        self.evaluator = evaluator
        self.skew = skew

    @property
    def degree(self) -> int:
        return self.arity - 1

    def __call__(self, *args: Scalar) -> Scalar:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        return self.evaluator(*args)

    @classmethod
    def constant(cls, f: Scalar) -> "FnMultilinearOp":
        return cls(f.chart, 0, lambda: f)

    @classmethod
    def identity(cls, chart: Chart) -> "FnMultilinearOp":
        return cls(chart, 1, lambda f: f)

    @classmethod
    def from_terms(cls, chart: Chart, arity: int, terms, skew: bool = True) -> "FnMultilinearOp":
        """Sum of ``c(x) * prod_j D_j(f_j)`` with ``D_j`` either ``None``
        (identity) or a coordinate name (partial derivative); antisymmetrized
        over the arguments when ``skew``."""
        terms = [(c, tuple(ds)) for c, ds in terms]
        perms = [(perm_sign(p), p) for p in permutations(range(arity))] if skew else [(1, tuple(range(arity)))]
        scale = Fraction(1, factorial(arity)) if skew else Fraction(1)

        def raw(args):
            out = chart.zero()
            for c, ds in terms:
                val = c
                for f, d in zip(args, ds):
                    val = val * (f if d is None else f.partial(d))
                    if not val:
                        break
                out = out + val
            return out

        def evaluate(*args):
            out = chart.zero()
            for sign, p in perms:
                v = raw([args[i] for i in p])
                out = out + v if sign > 0 else out - v
            return out * scale

        return cls(chart, arity, evaluate, skew)

    @classmethod
    def from_multivector(cls, x: GrassmannElement, algebroid) -> "FnMultilinearOp":
        """``(f_1..f_k) -> <X, df_1 ^ .. ^ df_k>`` for a homogeneous multisection."""
        k = x.tensor_degree or 0
        chart = x.chart

        def evaluate(*fs):
            if not fs:
                return x.scalar_part()
            return pairing(x, wedge(*[algebroid.d_function(f) for f in fs]))

        return cls(chart, k, evaluate)

    @classmethod
    def from_first_order(cls, first: GrassmannElement, second: GrassmannElement, algebroid,
                         arity: int | None = None) -> "FnMultilinearOp":
        """Operator ``A1 + I ^ A2``: ``A1`` on all arguments plus
        ``sum_j (-1)^j f_j A2(.. no f_j ..)``. Pass ``arity`` when both parts may be zero."""
        k1 = first.tensor_degree
        k2 = second.tensor_degree
        if k1 is None and k2 is None:
            if arity is None:
                raise DegreeError("cannot infer arity of the zero operator; pass arity")
            return cls.zero(first.chart, arity)
        if arity is None:
            arity = k1 if k1 is not None else k2 + 1
        if k1 is not None and k1 != arity:
            raise DegreeError("first component does not match the arity")
        if k2 is not None and k2 + 1 != arity:
            raise DegreeError("components have inconsistent degrees")
        op1 = cls.from_multivector(first, algebroid) if k1 is not None else None
        op2 = cls.from_multivector(second, algebroid) if k2 is not None else None

        def evaluate(*fs):
            out = op1(*fs) if op1 is not None else first.chart.zero()
            if op2 is not None:
                for j, f in enumerate(fs):
                    v = f * op2(*(fs[:j] + fs[j + 1:]))
                    out = out + v if j % 2 == 0 else out - v
            return out

        return cls(first.chart, arity, evaluate)

    @classmethod
    def zero(cls, chart: Chart, arity: int) -> "FnMultilinearOp":
        return cls(chart, arity, lambda *fs: chart.zero())

    def __add__(self, other: "FnMultilinearOp") -> "FnMultilinearOp":
        if self.arity != other.arity:
            raise DegreeError("cannot add operators of different arity")
        return FnMultilinearOp(self.chart, self.arity, lambda *fs: self(*fs) + other(*fs))

    def __sub__(self, other: "FnMultilinearOp") -> "FnMultilinearOp":
        if self.arity != other.arity:
            raise DegreeError("cannot subtract operators of different arity")
        return FnMultilinearOp(self.chart, self.arity, lambda *fs: self(*fs) - other(*fs))

    def __mul__(self, c) -> "FnMultilinearOp":
        return FnMultilinearOp(self.chart, self.arity, lambda *fs: self(*fs) * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1


def fn_insertion(A: FnMultilinearOp, B: FnMultilinearOp) -> FnMultilinearOp:
    """Unshuffle insertion of ``B`` into the first slot of ``A``."""
    a, b = A.degree, B.degree
    n = a + b + 1
    if a < 0 or n < 0:
        return FnMultilinearOp.zero(A.chart, max(n, 0))
    nb = b + 1
    shuffles = list(unshuffles(n, nb))

    def evaluate(*fs):
        out = A.chart.zero()
        for sign, order in shuffles:
            inner = B(*[fs[i] for i in order[:nb]])
            v = A(inner, *[fs[i] for i in order[nb:]])
            out = out + v if sign > 0 else out - v
        return out

    return FnMultilinearOp(A.chart, n, evaluate)


def fn_nr_bracket(A: FnMultilinearOp, B: FnMultilinearOp) -> FnMultilinearOp:
    a, b = A.degree, B.degree
    if a + b < -1:
        return FnMultilinearOp.zero(A.chart, 0)
    right = fn_insertion(A, B)
    left = fn_insertion(B, A)
    sign = 1 if (a * b) % 2 == 0 else -1
    return FnMultilinearOp(A.chart, a + b + 1, lambda *fs: right(*fs) * sign - left(*fs))


def fn_wedge(A: FnMultilinearOp, B: FnMultilinearOp) -> FnMultilinearOp:
    """Wedge of skew operators as a sum over unshuffles."""
    na, nb = A.arity, B.arity
    shuffles = list(unshuffles(na + nb, na))

    def evaluate(*fs):
        out = A.chart.zero()
        for sign, order in shuffles:
            v = A(*[fs[i] for i in order[:na]]) * B(*[fs[i] for i in order[na:]])
            out = out + v if sign > 0 else out - v
        return out

    return FnMultilinearOp(A.chart, na + nb, evaluate)


def fn_unit_insertion(A: FnMultilinearOp) -> FnMultilinearOp:
    """``i_1 A = A(1, ...)``."""
    if A.arity == 0:
        return FnMultilinearOp.zero(A.chart, 0)
    one = A.chart.one()
    return FnMultilinearOp(A.chart, A.arity - 1, lambda *fs: A(one, *fs))


def probe_functions(chart: Chart, coords=None) -> list[Scalar]:
    """``1``, the coordinates and their pairwise products."""
    coords = tuple(coords or chart.base)
    xs = [chart.var(c) for c in coords]
    out = [chart.one()] + xs
    out += [xs[i] * xs[j] for i in range(len(xs)) for j in range(i, len(xs))]
    return out


def fn_equal(A: FnMultilinearOp, B: FnMultilinearOp, probes: Sequence[Scalar], skew: bool = True):
    """Compare on probe tuples (sorted distinct tuples when both are skew).
    Returns ``None`` when equal, else the first differing argument tuple."""
    if A.arity != B.arity:
        raise DegreeError("operators have different arity")
    tuples = combinations(probes, A.arity) if skew else product(probes, repeat=A.arity)
    for args in tuples:
        if A(*args) != B(*args):
            return args
    return None


def first_order_defect(A: FnMultilinearOp, coords=None):
    """Search for ``A(uv, ..) - uA(v, ..) - vA(u, ..) + uvA(1, ..) != 0`` with
    ``u, v`` coordinates and remaining slots drawn from ``1`` and coordinates;
    also spot-checks additivity. Returns a witness tuple or ``None``."""
    chart = A.chart
    if A.arity == 0:
        return None
    xs = [chart.var(c) for c in (coords or chart.base)]
    one = chart.one()
    fillers = [one] + xs
    for rest in combinations(fillers, A.arity - 1) if A.skew else product(fillers, repeat=A.arity - 1):
        for i in range(len(xs)):
            for j in range(i, len(xs)):
                u, v = xs[i], xs[j]
                defect = A(u * v, *rest) - u * A(v, *rest) - v * A(u, *rest) + u * v * A(one, *rest)
                if defect:
                    return (u, v) + tuple(rest)
                if A(u + v, *rest) != A(u, *rest) + A(v, *rest):
                    return (u + v,) + tuple(rest)
    return None


def split_first_order(A: FnMultilinearOp, algebroid, check: bool = True):
    """Components ``(A1, A2)`` of ``A = A1 + I ^ A2`` as multivector fields on
    the chart, with ``A2 = A(1, ...)``. ``algebroid`` is the tangent algebroid
    of the chart."""
    if check:
        w = first_order_defect(A)
        if w is not None:
            raise NotFirstOrderError(f"operator is not first order; witness {tuple(map(str, w))}")
    space = algebroid.sections
    chart = A.chart
    coords = [chart.var(c) for c in chart.coords]
    n = len(coords)
    p = A.arity
    if p == 0:
        return space.scalar(A()), space.zero()
    one = chart.one()
    second = {}
    for I in combinations(range(n), p - 1):
        v = A(one, *[coords[i] for i in I])
        if v:
            second[I] = v
    a2 = GrassmannElement(space, second)
    first = {}
    for I in combinations(range(n), p):
        xs = [coords[i] for i in I]
        v = A(*xs)
        for j in range(p):
            rest = I[:j] + I[j + 1:]
            c = second.get(rest)
            if c is not None:
                v = v - xs[j] * c if j % 2 == 0 else v + xs[j] * c
        if v:
            first[I] = v
    return GrassmannElement(space, first), a2

"""Stored example structures: finite-dimensional algebras (and a few
non-examples), algebroids, Jacobi and Poisson structures, and dual pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebroid import AlgebroidSpec
from .bialgebroid import DualPair, triangular_construct
from .grassmann import GrassmannElement, wedge
from .jacobi import FirstOrderOp, JacobiAlgebroid, extension_algebroid
from .multilinear import MultilinearOp, gerstenhaber_bracket, nr_bracket
from .scalar import Chart

# -- finite-dimensional algebras ----------------------------------------------------


@dataclass(frozen=True)
class AlgebraExample:
    name: str
    kind: str  # "associative" or "lie"
    dim: int
    table: dict  # {(i, j): {k: c}} on basis vectors, 0-based
    expected: bool  # whether the axioms hold

    def op(self) -> MultilinearOp:
        return MultilinearOp.from_table(self.dim, 2, self.table)


def _matrix_units(n: int, keep=lambda i, j: True):
    units = [(i, j) for i in range(n) for j in range(n) if keep(i, j)]
    index = {u: k for k, u in enumerate(units)}
    table = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k and (i, l) in index:
                table[(a, b)] = {index[(i, l)]: 1}
    return len(units), table


def _truncated_polynomial_table(n: int):
    # basis 1, x, .., x^(n-1)
    return {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}


def _lie_from_brackets(dim: int, brackets: dict):
    table = {}
    for (i, j), out in brackets.items():
        table[(i, j)] = dict(out)
        table[(j, i)] = {k: -c for k, c in out.items()}
    return table


def _jordan_product_2x2():
    # a.b = (ab + ba)/2 on 2x2 matrices, basis E11, E12, E21, E22
    dim, table = _matrix_units(2)
    sym = {}
    for a, b in product(range(dim), repeat=2):
        for key in ((a, b), (b, a)):
            for k, c in table.get(key, {}).items():
                slot = sym.setdefault((a, b), {})
                slot[k] = slot.get(k, 0) + Fraction(c, 2)
    return dim, sym


def _algebra_examples():
    out = []
    out.append(AlgebraExample("rationals", "associative", 1, {(0, 0): {0: 1}}, True))
    out.append(AlgebraExample("diagonal-pair", "associative", 2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, True))
    out.append(AlgebraExample("dual-numbers", "associative", 2, _truncated_polynomial_table(2), True))
    out.append(AlgebraExample("truncated-polynomials-3", "associative", 3, _truncated_polynomial_table(3), True))
    dim, table = _matrix_units(2, lambda i, j: i <= j)
    out.append(AlgebraExample("upper-triangular-2x2", "associative", dim, table, True))
    dim, table = _matrix_units(2)
    out.append(AlgebraExample("matrices-2x2", "associative", dim, table, True))

    out.append(AlgebraExample("abelian-2", "lie", 2, {}, True))
    out.append(AlgebraExample("affine-line", "lie", 2, _lie_from_brackets(2, {(0, 1): {0: 1}}), True))
    out.append(AlgebraExample("cross-product", "lie", 3, _lie_from_brackets(3, {
        (0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}), True))
    out.append(AlgebraExample("heisenberg", "lie", 3, _lie_from_brackets(3, {(0, 1): {2: 1}}), True))
    # basis h, e, f
    out.append(AlgebraExample("sl2", "lie", 3, _lie_from_brackets(3, {
        (0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}), True))
    out.append(AlgebraExample("affine-plus-affine", "lie", 4, _lie_from_brackets(4, {
        (0, 1): {0: 1}, (2, 3): {2: 1}}), True))

    # non-examples
    out.append(AlgebraExample("cross-product-as-product", "associative", 3, _lie_from_brackets(3, {
        (0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}), False))
    out.append(AlgebraExample("twisted-square", "associative", 2, {(0, 0): {1: 1}, (1, 0): {0: 1}}, False))
    dim, table = _jordan_product_2x2()
    out.append(AlgebraExample("jordan-2x2", "associative", dim, table, False))
    out.append(AlgebraExample("broken-three", "lie", 3, _lie_from_brackets(3, {
        (0, 1): {2: 1}, (0, 2): {0: 1}}), False))
    out.append(AlgebraExample("broken-sl2", "lie", 3, _lie_from_brackets(3, {
        (0, 1): {1: 2}, (0, 2): {2: 2}, (1, 2): {0: 1}}), False))
    out.append(AlgebraExample("broken-four", "lie", 4, _lie_from_brackets(4, {
        (0, 1): {1: 1}, (1, 2): {3: 1}, (0, 3): {2: 1}}), False))
    return out


ALGEBRAS = _algebra_examples()


def algebra(name: str) -> AlgebraExample:
    for ex in ALGEBRAS:
        if ex.name == name:
            return ex
    raise KeyError(name)


def associativity_witness(op: MultilinearOp):
    """First basis triple with ``(xy)z != x(yz)``, as ``((i, j, k), defect)``."""
    d = op.dim
    basis = [[Fraction(int(a == b)) for a in range(d)] for b in range(d)]
    for i, j, k in product(range(d), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        left = op(list(op(x, y)), z)
        right = op(x, list(op(y, z)))
        diff = [a - b for a, b in zip(left, right)]
        if any(diff):
            return (i, j, k), diff
    return None


def jacobi_witness(op: MultilinearOp):
    """First basis triple with a nonzero Jacobiator (or failing skew symmetry)."""
    d = op.dim
    basis = [[Fraction(int(a == b)) for a in range(d)] for b in range(d)]
    for i, j in product(range(d), repeat=2):
        s = [a + b for a, b in zip(op(basis[i], basis[j]), op(basis[j], basis[i]))]
        if any(s):
            return (i, j), s
    for i, j, k in product(range(d), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        total = [Fraction(0)] * d
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = [t + v for t, v in zip(total, op(list(op(a, b)), c))]
        if any(total):
            return (i, j, k), total
    return None


def bracket_square(example: AlgebraExample) -> MultilinearOp:
    """``[A,A]`` for the Gerstenhaber (associative) or NR (Lie) bracket."""
    A = example.op()
    if example.kind == "associative":
        return gerstenhaber_bracket(A, A)
    return nr_bracket(A, A)


def axiom_witness(example: AlgebraExample):
    op = example.op()
    if example.kind == "associative":
        return associativity_witness(op)
    return jacobi_witness(op)


# -- algebroids ----------------------------------------------------------------------


def plane() -> Chart:
    return Chart(base=("x1", "x2"))


def space3() -> Chart:
    return Chart(base=("x1", "x2", "x3"))


def tangent_plane() -> AlgebroidSpec:
    return AlgebroidSpec.tangent(plane())


def tangent_space3() -> AlgebroidSpec:
    return AlgebroidSpec.tangent(space3())


def so3(chart: Chart | None = None) -> AlgebroidSpec:
    frame = ("e1", "e2", "e3")
    structure = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}
    return AlgebroidSpec(chart or Chart(), frame, None, structure, ("eps1", "eps2", "eps3"), "algebroid-section")


def scaling_plane() -> AlgebroidSpec:
    """Rank 2 over the plane: ``a(e1) = x1 d_x1``, ``a(e2) = x1 d_x2``, ``[e1,e2] = e2``."""
    c = plane()
    x1 = c.var("x1")
    return AlgebroidSpec(c, ("e1", "e2"), [[x1, 0], [0, x1]], {(0, 1, 1): 1},
                         ("eps1", "eps2"), "algebroid-section")


def affine_line_algebra() -> AlgebroidSpec:
    return AlgebroidSpec(Chart(), ("e1", "e2"), None, {(0, 1, 0): 1}, ("eps1", "eps2"), "algebroid-section")


def corrupted_tangent_plane() -> AlgebroidSpec:
    """Tangent algebroid of the plane with a stray ``[d_x1, d_x2] = x1 d_x1``:
    the anchor no longer preserves brackets."""
    A = tangent_plane()
    return A.replace(structure={(0, 1, 0): A.chart.var("x1")})


ALGEBROIDS = {
    "tangent-plane": tangent_plane,
    "tangent-space3": tangent_space3,
    "so3": so3,
    "scaling-plane": scaling_plane,
    "affine-line": affine_line_algebra,
}


# -- Jacobi and Poisson structures ---------------------------------------------------


@dataclass
class JacobiStructure:
    """Bivector and vector field on the tangent algebroid of a chart."""

    name: str
    algebroid: AlgebroidSpec
    lam: GrassmannElement
    gamma: GrassmannElement

    def first_order(self) -> FirstOrderOp:
        return FirstOrderOp(self.lam, self.gamma)

    def on_extension(self):
        """``(X, J)`` with ``X = Lambda + I ^ Gamma`` on ``TM + R``."""
        J = extension_algebroid(self.algebroid)
        return self.first_order().to_extension(J.algebroid), J


def contact_space3() -> JacobiStructure:
    """``Lambda = (d_q + p d_u) ^ d_p``, ``Gamma = d_u`` on coordinates ``(q, p, u)``."""
    A = AlgebroidSpec.tangent(Chart(base=("q", "p", "u")))
    S = A.sections
    p = A.chart.var("p")
    lam = wedge(S.gen(0) + S.gen(2) * p, S.gen(1))
    return JacobiStructure("contact-space3", A, lam, S.gen(2))


def symplectic_plane() -> JacobiStructure:
    A = tangent_plane()
    S = A.sections
    return JacobiStructure("symplectic-plane", A, wedge(S.gen(0), S.gen(1)), S.zero())


def weighted_plane() -> JacobiStructure:
    """``Lambda = x1 d_x1 ^ d_x2`` (Poisson, degenerate on ``x1 = 0``)."""
    A = tangent_plane()
    S = A.sections
    return JacobiStructure("weighted-plane", A, wedge(S.gen(0), S.gen(1)) * A.chart.var("x1"), S.zero())


def linear_so3_dual() -> JacobiStructure:
    """Linear Poisson structure ``x3 d1^d2 + x1 d2^d3 + x2 d3^d1`` on ``R^3``."""
    A = tangent_space3()
    S = A.sections
    x1, x2, x3 = A.chart.vars()
    g = S.gen
    lam = wedge(g(0), g(1)) * x3 + wedge(g(1), g(2)) * x1 + wedge(g(2), g(0)) * x2
    return JacobiStructure("linear-so3-dual", A, lam, S.zero())


JACOBI_STRUCTURES = {
    "contact-space3": contact_space3,
    "symplectic-plane": symplectic_plane,
    "weighted-plane": weighted_plane,
    "linear-so3-dual": linear_so3_dual,
}

POISSON_STRUCTURES = ("symplectic-plane", "weighted-plane", "linear-so3-dual")


# -- dual pairs ----------------------------------------------------------------------


def triangular_pairs() -> dict[str, DualPair]:
    out = {}
    for name in ("contact-space3", "symplectic-plane"):
        X, J = JACOBI_STRUCTURES[name]().on_extension()
        out[name] = triangular_construct(X, J)
    L = affine_line_algebra()
    J = JacobiAlgebroid(L, L.forms.gen(1))
    out["affine-line"] = triangular_construct(wedge(L.sections.gen(0), L.sections.gen(1)), J)
    X, J = contact_space3().on_extension()
    out["zero"] = triangular_construct(J.sections.zero(), J)
    return out


def perturbed_pairs() -> dict[str, DualPair]:
    """Dual pairs with both sides valid Jacobi algebroids but failing the
    derivation condition."""
    out = {}
    for name, build in (("contact-space3", lambda: contact_space3().on_extension()),
                        ("affine-line", _affine_line_element)):
        X, J = build()
        good = triangular_construct(X, J).J_star
        doubled = triangular_construct(X * 2, J).J_star
        out[f"{name}/cocycle-doubled"] = DualPair(J, JacobiAlgebroid(good.algebroid, good.cocycle * 2))
        out[f"{name}/cocycle-dropped"] = DualPair(J, JacobiAlgebroid(good.algebroid, None))
        out[f"{name}/bracket-doubled"] = DualPair(J, JacobiAlgebroid(doubled.algebroid, good.cocycle))
    return out


def _affine_line_element():
    L = affine_line_algebra()
    J = JacobiAlgebroid(L, L.forms.gen(1))
    return wedge(L.sections.gen(0), L.sections.gen(1)), J


def trivial_pair(A: AlgebroidSpec) -> DualPair:
    """``A`` paired with the zero structure on its dual."""
    dual = AlgebroidSpec(A.chart, A.coframe, None, {}, A.frame, "algebroid-section")
    return DualPair(JacobiAlgebroid(A), JacobiAlgebroid(dual))

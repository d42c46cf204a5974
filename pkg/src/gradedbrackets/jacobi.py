"""Jacobi algebroids: an algebroid with a closed 1-cocycle, its deformed
Schouten bracket and the matching d/Lie-derivative calculus, plus the
``L + R`` extension where first-order operators ``A1 + I ^ A2`` live.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebroid import AlgebroidSpec, exterior_d, sn_bracket
from .errors import DegreeError, SpaceMismatch, StructureError
from .grassmann import GrassmannElement, contract, pairing, wedge
from .scalar import Scalar


class JacobiAlgebroid:
    """Lie algebroid together with a closed 1-form ``phi`` (the cocycle)."""

    def __init__(self, algebroid: AlgebroidSpec, cocycle: GrassmannElement | None = None, check=True):
        self.algebroid = algebroid
        if cocycle is None:
            cocycle = algebroid.forms.zero()
        if cocycle.space != algebroid.forms:
            raise SpaceMismatch("cocycle must be a form of the algebroid")
        if cocycle.degrees() - {1}:
            raise DegreeError("cocycle must have tensor degree 1")
        self.cocycle = cocycle
        if check:
            defect = exterior_d(cocycle, algebroid)
            if defect:
                raise StructureError(f"cocycle is not closed: d(phi) = {defect}")

    @property
    def chart(self):
        return self.algebroid.chart

    @property
    def sections(self):
        return self.algebroid.sections

    @property
    def forms(self):
        return self.algebroid.forms

    def scaled(self, h) -> "JacobiAlgebroid":
        """Same algebroid with cocycle ``h * phi``."""
        return JacobiAlgebroid(self.algebroid, self.cocycle * Fraction(h), check=False)

    def phi_contract(self, x: GrassmannElement) -> GrassmannElement:
        """``i_phi X``: lowers the tensor degree of a multisection by one."""
        return contract(self.cocycle, x)

    def __eq__(self, other):
        if not isinstance(other, JacobiAlgebroid):
            return NotImplemented
        return self.algebroid == other.algebroid and self.cocycle == other.cocycle

    def __hash__(self):
        return hash((self.algebroid, self.cocycle))


def _parts(x: GrassmannElement):
    return sorted(x.homogeneous_parts().items())


def sj_bracket(x: GrassmannElement, y: GrassmannElement, J: JacobiAlgebroid) -> GrassmannElement:
    """Schouten-Jacobi bracket

        [X,Y] = [X,Y]_SN + x X ^ i_phi Y - (-1)^x y i_phi X ^ Y

    with ``x``, ``y`` the Lie degrees; inhomogeneous inputs are split into parts.
    """
    A = J.algebroid
    out = sn_bracket(x, y, A)
    phi_free = not J.cocycle
    if phi_free:
        return out
    for dx, xp in _parts(x):
        for dy, yp in _parts(y):
            a, b = dx - 1, dy - 1
            if a:
                out = out + wedge(xp, J.phi_contract(yp)) * a
            if b:
                term = wedge(J.phi_contract(xp), yp) * b
                out = out - term if a % 2 == 0 else out + term
    return out


def phi_part(x: GrassmannElement, y: GrassmannElement, J: JacobiAlgebroid) -> GrassmannElement:
    """The cocycle correction ``[X,Y]_0`` alone, so that ``[.,.]^{h phi} = SN + h [.,.]_0``."""
    out = J.sections.zero()
    for dx, xp in _parts(x):
        for dy, yp in _parts(y):
            a, b = dx - 1, dy - 1
            if a:
                out = out + wedge(xp, J.phi_contract(yp)) * a
            if b:
                term = wedge(J.phi_contract(xp), yp) * b
                out = out - term if a % 2 == 0 else out + term
    return out


def d_phi(mu: GrassmannElement, J: JacobiAlgebroid) -> GrassmannElement:
    """``d^phi mu = d mu + phi ^ mu``."""
    return exterior_d(mu, J.algebroid) + wedge(J.cocycle, mu)


def lie_phi(x: GrassmannElement, mu: GrassmannElement, J: JacobiAlgebroid) -> GrassmannElement:
    """``L^phi_X = i_X d^phi + d^phi i_X`` along a section ``X``."""
    if x.terms and x.tensor_degree != 1:
        raise DegreeError("Lie derivative is defined along sections (Lie degree 0)")
    return contract(x, d_phi(mu, J)) + d_phi(contract(x, mu), J)


# -- L + R -----------------------------------------------------------------------


def extension_algebroid(A: AlgebroidSpec, name: str = "I", dual_name: str = "dI") -> JacobiAlgebroid:
    """Jacobi algebroid on ``L + R`` whose cocycle reads off the ``R`` component."""
    ext = A.extension(name, dual_name)
    return JacobiAlgebroid(ext, ext.forms.gen(0))


@dataclass(frozen=True)
class FirstOrderOp:
    """``A = first + I ^ second`` with ``first`` of Lie degree ``a`` and
    ``second`` of Lie degree ``a - 1``, both multisections of one algebroid."""

    first: GrassmannElement
    second: GrassmannElement

    def __post_init__(self):
        if self.first.space != self.second.space:
            raise SpaceMismatch("both components must live over the same algebroid")

    @property
    def space(self):
        return self.first.space

    @classmethod
    def of(cls, first: GrassmannElement | None, second: GrassmannElement | None, space=None):
        space = space or (first.space if first is not None else second.space)
        return cls(first if first is not None else space.zero(), second if second is not None else space.zero())

    def degree_parts(self) -> dict[int, "FirstOrderOp"]:
        """Split into Lie-degree-homogeneous pieces."""
        out: dict[int, list] = {}
        for d, p in self.first.homogeneous_parts().items():
            out.setdefault(d - 1, [self.space.zero(), self.space.zero()])[0] = p
        for d, p in self.second.homogeneous_parts().items():
            out.setdefault(d, [self.space.zero(), self.space.zero()])[1] = p
        return {a: FirstOrderOp(f, s) for a, (f, s) in sorted(out.items())}

    @property
    def lie_degree(self) -> int | None:
        parts = self.degree_parts()
        if not parts:
            return None
        if len(parts) > 1:
            raise DegreeError(f"operator has Lie degrees {sorted(parts)}")
        return next(iter(parts))

    def __add__(self, other: "FirstOrderOp") -> "FirstOrderOp":
        return FirstOrderOp(self.first + other.first, self.second + other.second)

    def __sub__(self, other: "FirstOrderOp") -> "FirstOrderOp":
        return FirstOrderOp(self.first - other.first, self.second - other.second)

    def __neg__(self):
        return FirstOrderOp(-self.first, -self.second)

    def __mul__(self, c):
        return FirstOrderOp(self.first * c, self.second * c)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.first) or bool(self.second)

    def __str__(self):
        return f"({self.first}) + I^({self.second})"

    def to_extension(self, ext: AlgebroidSpec) -> GrassmannElement:
        """``first + I ^ second`` as a multisection of ``L + R`` (``I`` at index 0)."""
        shift = {i: i + 1 for i in range(self.space.rank)}
        first = self.first.embed(ext.sections, shift)
        second = self.second.embed(ext.sections, shift)
        return first + wedge(ext.sections.gen(0), second)

    @classmethod
    def from_extension(cls, x: GrassmannElement, base: AlgebroidSpec) -> "FirstOrderOp":
        if x.space.rank != base.rank + 1:
            raise SpaceMismatch("not a multisection of the extension of this algebroid")
        first, second = {}, {}
        for idx, c in x.terms.items():
            if idx and idx[0] == 0:
                second[tuple(i - 1 for i in idx[1:])] = c.to_chart(base.chart)
            else:
                first[tuple(i - 1 for i in idx)] = c.to_chart(base.chart)
        return cls(
            GrassmannElement(base.sections, first, _trusted=True),
            GrassmannElement(base.sections, second, _trusted=True),
        )


def nr_structural_bracket(A: FirstOrderOp, B: FirstOrderOp, L: AlgebroidSpec) -> FirstOrderOp:
    """Bracket of first-order operators written in components:

        first  = [A1,B1] + a A1^B2 - (-1)^a b A2^B1
        second = (-1)^a [A1,B2] + [A2,B1] + (a-b) A2^B2
    """
    if A.space != L.sections or B.space != L.sections:
        raise SpaceMismatch("operators must live over the given algebroid")
    first = L.sections.zero()
    second = L.sections.zero()
    for a, pa in A.degree_parts().items():
        sa = 1 if a % 2 == 0 else -1
        for b, pb in B.degree_parts().items():
            a1, a2, b1, b2 = pa.first, pa.second, pb.first, pb.second
            first = first + sn_bracket(a1, b1, L)
            if a:
                first = first + wedge(a1, b2) * a
            if b:
                first = first - wedge(a2, b1) * (sa * b)
            second = second + sn_bracket(a1, b2, L) * sa + sn_bracket(a2, b1, L)
            if a != b:
                second = second + wedge(a2, b2) * (a - b)
    return FirstOrderOp(first, second)


def h_z_map(A: FirstOrderOp, Z: GrassmannElement) -> GrassmannElement:
    """``H_Z(A1 + I ^ A2) = A1 + Z ^ A2``."""
    return A.first + wedge(Z, A.second)


def z_homogeneous_check(A: FirstOrderOp, Z: GrassmannElement, L: AlgebroidSpec) -> bool:
    """Whether ``[Z, A] = -a A`` in the bracket of first-order operators."""
    zop = FirstOrderOp(Z, L.sections.zero())
    for a, part in A.degree_parts().items():
        lhs = nr_structural_bracket(zop, part, L)
        if lhs.first != part.first * (-a) or lhs.second != part.second * (-a):
            return False
    return True


# -- Jacobi structures -------------------------------------------------------------


@dataclass
class JacobiReport:
    ok: bool
    gamma_lambda: GrassmannElement
    lambda_lambda: GrassmannElement
    bracket_failures: list = field(default_factory=list)

    def lines(self) -> list[str]:
        if self.ok:
            return ["PASS"]
        out = []
        if self.gamma_lambda:
            out.append(f"FAIL [Gamma,Lambda] = {self.gamma_lambda}")
        if self.lambda_lambda:
            out.append(f"FAIL [Lambda,Lambda] + 2 Lambda^Gamma = {self.lambda_lambda}")
        for f, g, h, defect in self.bracket_failures:
            out.append(f"FAIL bracket Jacobi ({f}, {g}, {h}): {defect}")
        return out


def function_bracket(lam: GrassmannElement, gamma: GrassmannElement, A: AlgebroidSpec):
    """``{f,g} = <Lambda, df ^ dg> + f Gamma(g) - g Gamma(f)`` as a closure."""

    def bracket(f: Scalar, g: Scalar) -> Scalar:
        df, dg = A.d_function(f), A.d_function(g)
        out = pairing(lam, wedge(df, dg))
        if gamma:
            out = out + f * A.act(gamma, g) - g * A.act(gamma, f)
        return out

    return bracket


def probe_monomials(chart, max_degree: int = 2, coords=None) -> list[Scalar]:
    coords = tuple(coords or chart.base)
    out = [chart.one()]
    layer = [((), chart.one())]
    for _ in range(max_degree):
        nxt = []
        for used, m in layer:
            start = used[-1] if used else 0
            for k in range(start, len(coords)):
                nxt.append((used + (k,), m * chart.var(coords[k])))
        out.extend(m for _, m in nxt)
        layer = nxt
    return out


def jacobi_structure_check(lam: GrassmannElement, gamma: GrassmannElement, A: AlgebroidSpec,
                           probe_degree: int = 2) -> JacobiReport:
    """``[Gamma,Lambda] = 0`` and ``[Lambda,Lambda] = -2 Lambda ^ Gamma``; when
    both hold, the Jacobi identity of the induced function bracket is also
    checked on probe monomials."""
    if lam.degrees() - {2}:
        raise DegreeError("Lambda must be a bivector")
    if gamma.degrees() - {1}:
        raise DegreeError("Gamma must be a section")
    gl = sn_bracket(gamma, lam, A)
    ll = sn_bracket(lam, lam, A) + wedge(lam, gamma) * 2
    report = JacobiReport(not gl and not ll, gl, ll)
    if not report.ok:
        return report
    bracket = function_bracket(lam, gamma, A)
    probes = probe_monomials(A.chart, probe_degree)
    pair = {}
    for i, f in enumerate(probes):
        for j, g in enumerate(probes):
            pair[i, j] = bracket(f, g)
    for i, j, k in combinations(range(len(probes)), 3):
        f, g, h = probes[i], probes[j], probes[k]
        defect = bracket(f, pair[j, k]) + bracket(g, pair[k, i]) + bracket(h, pair[i, j])
        if defect:
            report.bracket_failures.append((f, g, h, defect))
            report.ok = False
            break
    return report

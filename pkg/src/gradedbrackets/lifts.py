"""Lifts of multisections to multivector fields on the total space of the
bundle, Poissonization along an extra line factor, and brackets of dual
sections induced by homogeneous multivector fields.

The total space carries the base coordinates of the algebroid chart and one
linear fiber coordinate per frame element. Dual sections ``mu = mu_i eps^i``
become the fiberwise-linear functions ``iota_mu = mu_i y^i``.
"""

from __future__ import annotations

from .algebroid import AlgebroidSpec, lie_derivative, sn_bracket
from .errors import DegreeError, InhomogeneousError, SpaceMismatch, StructureError
from .grassmann import GrassmannElement, pairing, wedge
from .jacobi import FirstOrderOp, JacobiAlgebroid, h_z_map
from .scalar import Chart, Scalar


def _default_fiber_names(A: AlgebroidSpec) -> tuple[str, ...]:
    taken = set(A.chart.coords)
    out = []
    k = 0
    for name in A.frame:
        if name == "I" and "t" not in taken:
            out.append("t")
            continue
        k += 1
        cand = f"y{k}"
        while cand in taken:
            cand = "_" + cand
        out.append(cand)
    return tuple(out)


class TotalSpace:
    """Coordinates ``(x, y)`` on the total space of a trivialized algebroid."""

    def __init__(self, algebroid: AlgebroidSpec, fiber_names=None):
        self.algebroid = algebroid
        base = algebroid.chart
        self.fiber_names = tuple(fiber_names or _default_fiber_names(algebroid))
        if len(self.fiber_names) != algebroid.rank:
            raise ValueError("need one fiber coordinate per frame element")
        self.chart = Chart(base=base.base, fiber=self.fiber_names, aux=base.aux, exp_coord=base.exp_coord)
        self.tangent = AlgebroidSpec.tangent(self.chart, label="total-space-tangent")
        names = self.tangent.frame
        self._vertical_index = {i: names.index("d_" + y) for i, y in enumerate(self.fiber_names)}
        self._base_index = {mu: names.index("d_" + c) for mu, c in enumerate(base.coords)}
        self._section_lift_cache: dict[int, GrassmannElement] = {}

    @property
    def sections(self):
        return self.tangent.sections

    def fiber_vars(self) -> list[Scalar]:
        return [self.chart.var(y) for y in self.fiber_names]

    def pullback(self, f: Scalar) -> Scalar:
        return f.to_chart(self.chart)

    def iota(self, mu: GrassmannElement) -> Scalar:
        """Linear function of a dual section (a 1-form of the algebroid)."""
        if mu.space != self.algebroid.forms:
            raise SpaceMismatch("iota needs a form of the algebroid")
        if mu.degrees() - {1}:
            raise DegreeError("iota needs a 1-form")
        out = self.chart.zero()
        ys = self.fiber_vars()
        for (i,), c in mu.terms.items():
            out = out + self.pullback(c) * ys[i]
        return out

    def read_linear(self, f: Scalar) -> GrassmannElement:
        """Inverse of :meth:`iota`; raises if ``f`` is not fiberwise linear."""
        parts = f.split_by_degree(self.fiber_names)
        bad = [k for k in parts if sum(k) != 1]
        if bad:
            raise InhomogeneousError(
                f"function is not linear along the fibres (fiber degrees {sorted(set(map(sum, bad)))})"
            )
        A = self.algebroid
        terms = {}
        for exps, part in parts.items():
            terms[(exps.index(1),)] = part.to_chart(A.chart)
        return GrassmannElement(A.forms, terms)

    def read_basic(self, f: Scalar) -> Scalar:
        """A function constant along the fibres, as a function on the base."""
        if any(f.partial(y) for y in self.fiber_names):
            raise InhomogeneousError("function depends on the fibre coordinates")
        return f.to_chart(self.algebroid.chart)

    def liouville(self) -> GrassmannElement:
        """Euler field ``y^i d/dy^i`` along the fibres."""
        ys = self.fiber_vars()
        return GrassmannElement(self.sections, {(self._vertical_index[i],): y for i, y in enumerate(ys)})

    def vertical_generator(self, i: int) -> GrassmannElement:
        return self.sections.gen(self._vertical_index[i])


def vertical_lift(x: GrassmannElement, T: TotalSpace) -> GrassmannElement:
    """``e_i -> d/dy^i``, functions pulled back; multiplicative."""
    if x.space != T.algebroid.sections:
        raise SpaceMismatch("vertical_lift needs a multisection of the algebroid")
    return x.embed(T.sections, T._vertical_index)


def function_complete_lift(f: Scalar, T: TotalSpace) -> Scalar:
    """``f^c = iota_{df}``."""
    return T.iota(T.algebroid.d_function(f))


def _lift_frame_section(i: int, T: TotalSpace) -> GrassmannElement:
    hit = T._section_lift_cache.get(i)
    if hit is not None:
        return hit
    A = T.algebroid
    e = A.sections.gen(i)
    terms = {}
    for mu, a in enumerate(A.anchor[i]):
        if a:
            terms[(T._base_index[mu],)] = T.pullback(a)
    for k in range(A.rank):
        v = T.iota(lie_derivative(e, A.forms.gen(k), A))
        if v:
            terms[(T._vertical_index[k],)] = v
    out = GrassmannElement(T.sections, terms)
    T._section_lift_cache[i] = out
    return out


def complete_lift(x: GrassmannElement, T: TotalSpace, verify: bool = False) -> GrassmannElement:
    """Complete lift of a multisection.

    A section is first lifted on the coordinate functions: along the base its
    components are those of the anchor, along ``y^k`` they are
    ``iota(L_X eps^k)``. Products follow ``(X ^ Y)^c = X^c ^ Y^v + X^v ^ Y^c``
    and ``(f X)^c = f^c X^v + f X^c``. With ``verify`` the defining property
    ``X^c(iota_mu) = iota(L_X mu)`` is re-checked for frame sections on
    ``mu = x^nu eps^k``.
    """
    A = T.algebroid
    if x.space != A.sections:
        raise SpaceMismatch("complete_lift needs a multisection of the algebroid")
    out = T.sections.zero()
    for idx, f in x.terms.items():
        fc = function_complete_lift(f, T)
        if not idx:
            out = out + T.sections.scalar(fc)
            continue
        vert = [vertical_lift(A.sections.gen(i), T) for i in idx]
        if fc:
            out = out + wedge(*vert) * fc
        fp = T.pullback(f)
        for j, i in enumerate(idx):
            factors = vert[:j] + [_lift_frame_section(i, T)] + vert[j + 1:]
            out = out + wedge(*factors) * fp
    if verify:
        verify_section_lifts(T)
    return out


def verify_section_lifts(T: TotalSpace):
    """Check ``e_i^c(iota_mu) = iota(L_{e_i} mu)`` with ``mu = g eps^k`` for
    ``g`` in ``1`` and the base coordinates; raises on a defect."""
    A = T.algebroid
    probes = [A.chart.one()] + [A.chart.var(c) for c in A.chart.coords]
    for i in range(A.rank):
        xc = _lift_frame_section(i, T)
        for k in range(A.rank):
            for g in probes:
                mu = A.forms.gen(k) * g
                lhs = act_total(xc, T.iota(mu), T)
                rhs = T.iota(lie_derivative(A.sections.gen(i), mu, A))
                if lhs != rhs:
                    raise StructureError(
                        f"complete lift of {A.frame[i]} fails on {mu}: {lhs} != {rhs}"
                    )


def act_total(v: GrassmannElement, f: Scalar, T: TotalSpace) -> Scalar:
    """A vector field on the total space applied to a function."""
    return T.tangent.act(v, f)


def phi_linear(J: JacobiAlgebroid, T: TotalSpace) -> Scalar:
    return T.iota(J.cocycle)


def jacobi_lift(x: GrassmannElement, J: JacobiAlgebroid, T: TotalSpace) -> FirstOrderOp:
    """``X^c - x iota_phi X^v + I ^ (i_phi X)^v`` as a first-order operator on
    the total space."""
    if T.algebroid != J.algebroid:
        raise SpaceMismatch("total space belongs to another algebroid")
    iphi = phi_linear(J, T)
    first = T.sections.zero()
    for d, part in x.homogeneous_parts().items():
        first = first + complete_lift(part, T)
        deg = d - 1
        if deg and iphi:
            first = first - vertical_lift(part, T) * (iphi * deg)
    second = vertical_lift(J.phi_contract(x), T)
    return FirstOrderOp(first, second)


def poisson_lift(x: GrassmannElement, J: JacobiAlgebroid, T: TotalSpace) -> GrassmannElement:
    """``H_nabla`` of the Jacobi lift, ``nabla`` the Liouville field."""
    return h_z_map(jacobi_lift(x, J, T), T.liouville())


# -- Poissonization --------------------------------------------------------------


def poissonization_algebroid(A: AlgebroidSpec, name: str = "d_t") -> AlgebroidSpec:
    """``L x TR``: the frame of ``L`` plus ``d/dt`` along the exponential
    coordinate of the chart."""
    chart = A.chart
    if chart.exp_coord is None:
        raise StructureError("Poissonization needs a chart with an exponential coordinate")
    t = chart.index(chart.exp_coord)
    extra = [1 if mu == t else 0 for mu in range(chart.dim)]
    for row in A.anchor:
        if row[t]:
            raise StructureError("anchor of L must not move the exponential coordinate")
    anchor = [list(row) for row in A.anchor] + [extra]
    return AlgebroidSpec(chart, A.frame + (name,), anchor, A.structure, A.coframe + ("dt",), A.sections.label)


def poissonization_embed(x: GrassmannElement, J: JacobiAlgebroid, target: AlgebroidSpec | None = None) -> GrassmannElement:
    """``exp(-x t) (X + d_t ^ i_phi X)`` on each Lie-degree-``x`` part."""
    A = J.algebroid
    target = target or poissonization_algebroid(A)
    chart = A.chart
    shift = {i: i for i in range(A.rank)}
    dt = target.sections.gen(A.rank)
    out = target.sections.zero()
    for d, part in x.homogeneous_parts().items():
        deg = d - 1
        u = part.embed(target.sections, shift) + wedge(dt, J.phi_contract(part).embed(target.sections, shift))
        out = out + u * chart.exp(-deg)
    return out


# -- induced brackets ----------------------------------------------------------------


def induced_value(lam: GrassmannElement, mus, T: TotalSpace) -> Scalar:
    """``<Lambda, d iota_mu0 ^ ... ^ d iota_mu_l>`` with the plain differential."""
    if lam.space != T.sections:
        raise SpaceMismatch("expected a multivector field on the total space")
    d = lam.tensor_degree
    if d is not None and d != len(mus):
        raise DegreeError(f"{d}-vector needs {d} arguments, got {len(mus)}")
    if not mus:
        return lam.scalar_part()
    diffs = [T.tangent.d_function(T.iota(m)) for m in mus]
    return pairing(lam, wedge(*diffs))


def induced_bracket(lam: GrassmannElement, mus, T: TotalSpace) -> GrassmannElement:
    """Dual section read off from the fiberwise-linear contraction."""
    return T.read_linear(induced_value(lam, list(mus), T))


def hamiltonian_function(lam: GrassmannElement, mus, f: Scalar, T: TotalSpace) -> Scalar:
    """``Lambda_{mu_0..mu_{l-1}}(f) = <Lambda, d iota_mu0 ^ .. ^ d(f o tau)>``."""
    if lam.space != T.sections:
        raise SpaceMismatch("expected a multivector field on the total space")
    diffs = [T.tangent.d_function(T.iota(m)) for m in mus]
    diffs.append(T.tangent.d_function(T.pullback(f)))
    return T.read_basic(pairing(lam, wedge(*diffs)))


def is_linear_multivector(lam: GrassmannElement, T: TotalSpace) -> bool:
    """Contractions with all wedges of ``d iota`` of frame coforms are linear."""
    from itertools import combinations

    A = T.algebroid
    k = lam.tensor_degree
    if k is None:
        return True
    frame = [A.forms.gen(i) for i in range(A.rank)]
    if k == 0:
        return not lam
    for I in combinations(range(A.rank), k):
        try:
            T.read_linear(induced_value(lam, [frame[i] for i in I], T))
        except InhomogeneousError:
            return False
    return True


def homogeneity_defect(x: GrassmannElement, T: TotalSpace, weight: int) -> GrassmannElement:
    """``[nabla, X] + weight X`` on the total space (zero iff ``[nabla, X] = -weight X``)."""
    return sn_bracket(T.liouville(), x, T.tangent) + x * weight


__all__ = [
    "TotalSpace",
    "complete_lift",
    "function_complete_lift",
    "hamiltonian_function",
    "homogeneity_defect",
    "induced_bracket",
    "induced_value",
    "is_linear_multivector",
    "jacobi_lift",
    "poisson_lift",
    "poissonization_algebroid",
    "poissonization_embed",
    "vertical_lift",
    "verify_section_lifts",
]

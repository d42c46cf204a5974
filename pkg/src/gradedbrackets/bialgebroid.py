"""Dual pairs of Jacobi algebroids and the derivation condition

    d_*[X,Y] = [d_* X, Y] + (-1)^x [X, d_* Y]

for the differential ``d_*`` of the structure on ``L*`` acting on
multisections of ``L``. The frame of ``L*`` is the coframe of ``L``, so a
multisection of ``L`` is literally a form of ``L*``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .algebroid import AlgebroidSpec, algebroid_validate, exterior_d
from .errors import SpaceMismatch, StructureError
from .grassmann import GrassmannElement, contract, wedge
from .jacobi import JacobiAlgebroid, d_phi, sj_bracket
from .scalar import Scalar


class DualPair:
    """Jacobi algebroids on ``L`` and on its dual ``L*``."""

    def __init__(self, J: JacobiAlgebroid, J_star: JacobiAlgebroid):
        L, Ls = J.algebroid, J_star.algebroid
        if L.chart != Ls.chart or L.frame != Ls.coframe or L.coframe != Ls.frame:
            raise SpaceMismatch("L* must use the coframe of L as its frame")
        self.J = J
        self.J_star = J_star

    @property
    def chart(self):
        return self.J.chart

    @property
    def sections(self):
        return self.J.sections

    def validate(self) -> list[str]:
        """Problems with either side (empty when both are valid Jacobi algebroids)."""
        out = []
        for name, J in (("L", self.J), ("L*", self.J_star)):
            rep = algebroid_validate(J.algebroid)
            if not rep.ok:
                out.extend(f"{name}: {line}" for line in rep.lines())
            defect = exterior_d(J.cocycle, J.algebroid)
            if defect:
                out.append(f"{name}: cocycle not closed, d(phi) = {defect}")
        return out

    def swapped(self) -> "DualPair":
        return DualPair(self.J_star, self.J)

    def __eq__(self, other):
        if not isinstance(other, DualPair):
            return NotImplemented
        return self.J == other.J and self.J_star == other.J_star

    def __hash__(self):
        return hash((self.J, self.J_star))


def d_star(x: GrassmannElement, P: DualPair) -> GrassmannElement:
    """``d^{phi*}`` of ``L*`` applied to a multisection of ``L`` read as an ``L*``-form."""
    if x.space != P.sections:
        raise SpaceMismatch("d_star needs a multisection of L")
    Js = P.J_star
    return d_phi(x.reinterpret(Js.forms), Js).reinterpret(P.sections)


def derivation_defect(x: GrassmannElement, y: GrassmannElement, P: DualPair) -> GrassmannElement:
    """``d_*[X,Y] - [d_*X,Y] - (-1)^x [X,d_*Y]`` (bilinear over homogeneous parts)."""
    J = P.J
    out = P.sections.zero()
    for dx, xp in x.homogeneous_parts().items():
        sx = 1 if (dx - 1) % 2 == 0 else -1
        for _, yp in y.homogeneous_parts().items():
            out = out + (
                d_star(sj_bracket(xp, yp, J), P)
                - sj_bracket(d_star(xp, P), yp, J)
                - sj_bracket(xp, d_star(yp, P), J) * sx
            )
    return out


def unit_defect(x: GrassmannElement, P: DualPair) -> GrassmannElement:
    """``d_* D(X) - D(d_* X) - (-1)^x [X, X_0]`` with ``D(X) = [X, 1]`` and ``X_0 = d_* 1``."""
    J = P.J
    one = P.sections.one()
    x0 = d_star(one, P)
    out = P.sections.zero()
    for dx, xp in x.homogeneous_parts().items():
        sx = 1 if (dx - 1) % 2 == 0 else -1
        out = out + (
            d_star(sj_bracket(xp, one, J), P)
            - sj_bracket(d_star(xp, P), one, J)
            - sj_bracket(xp, x0, J) * sx
        )
    return out


def wedge_reduction_sides(x: GrassmannElement, y: GrassmannElement, z: GrassmannElement, P: DualPair):
    """Both sides of the identity expressing the derivation defect on ``Y ^ Z``
    through the defects on ``Y``, on ``Z`` and the unit defect of ``X``.
    ``x``, ``y`` must be homogeneous."""
    lhs = derivation_defect(x, wedge(y, z), P)
    xd = (x.tensor_degree or 0) - 1
    yd = (y.tensor_degree or 0) - 1
    s = 1 if ((xd + 1) * (yd + 1)) % 2 == 0 else -1
    rhs = (
        wedge(derivation_defect(x, y, P), z)
        + wedge(y, derivation_defect(x, z, P)) * s
        - wedge(unit_defect(x, P), y, z)
    )
    return lhs, rhs


# -- checking ---------------------------------------------------------------------


@dataclass
class BialgebroidReport:
    ok: bool
    stage1_ok: bool
    stage2_ok: bool | None
    coefficient_degree: int
    depth: int
    seed: int
    checked: int = 0
    failures: list = field(default_factory=list)
    invalid: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"stage1 {'PASS' if self.stage1_ok else 'FAIL'} (frame sections, coefficient degree <= {self.coefficient_degree})",
        ]
        if self.stage2_ok is None:
            out.append("stage2 SKIPPED")
        else:
            out.append(f"stage2 {'PASS' if self.stage2_ok else 'FAIL'} (random, Lie degree <= {self.depth}, seed {self.seed})")
        for msg in self.invalid:
            out.append(f"INVALID {msg}")
        for stage, where, defect in self.failures:
            out.append(f"FAIL stage{stage} {where}: {defect}")
        out.append(f"checked {self.checked} cases")
        out.append("PASS" if self.ok else "FAIL")
        return out


def _monomials(chart, degree: int) -> list[Scalar]:
    from .jacobi import probe_monomials

    return probe_monomials(chart, degree)


def bialgebroid_check(P: DualPair, depth: int = 2, seed: int = 0, coefficient_degree: int = 1,
                      cases: int = 8, stop_at_first: bool = True) -> BialgebroidReport:
    """Two-stage test of the derivation condition.

    Stage 1 covers pairs of sections ``m e_i, n e_j`` and the pairs
    ``(X, 1)`` with ``X`` a function or a section, coefficients ``m, n``
    running over monomials of degree ``<= coefficient_degree``. Stage 2 draws
    random multisections of Lie degree ``<= depth`` and also checks the wedge
    reduction identity on random triples.
    """
    report = BialgebroidReport(True, True, None, coefficient_degree, depth, seed)
    report.invalid = P.validate()
    S = P.sections
    chart = P.chart
    monos = _monomials(chart, coefficient_degree)
    frame = [S.gen(i) for i in range(S.rank)]
    one = S.one()

    def record(stage, where, defect):
        report.failures.append((stage, where, str(defect)))
        report.ok = False
        if stage == 1:
            report.stage1_ok = False
        else:
            report.stage2_ok = False

    names = S.names
    done = False
    for i, j in combinations(range(len(frame)), 2):
        for m in monos:
            for n in monos:
                report.checked += 1
                defect = derivation_defect(frame[i] * m, frame[j] * n, P)
                if defect:
                    record(1, f"X=({m}){names[i]}, Y=({n}){names[j]}", defect)
                    done = stop_at_first
                if done:
                    break
            if done:
                break
        if done:
            break
    if not done:
        candidates = [(f"({m})", S.scalar(m)) for m in monos]
        candidates += [(f"({m}){names[i]}", frame[i] * m) for i in range(len(frame)) for m in monos]
        for label, x in candidates:
            report.checked += 1
            defect = derivation_defect(x, one, P)
            if defect:
                record(1, f"X={label}, Y=1", defect)
                if stop_at_first:
                    break
    # same-frame pairs m e_i, n e_i are not covered by combinations above
    if report.stage1_ok:
        for i in range(len(frame)):
            for m in monos:
                for n in monos:
                    report.checked += 1
                    defect = derivation_defect(frame[i] * m, frame[i] * n, P)
                    if defect:
                        record(1, f"X=({m}){names[i]}, Y=({n}){names[i]}", defect)
                        break
                if not report.stage1_ok:
                    break
            if not report.stage1_ok:
                break
    if not report.stage1_ok:
        return report

    from .generators import random_element

    rng = random.Random(f"bialgebroid:{seed}")
    report.stage2_ok = True
    for case in range(cases):
        dx = rng.randint(-1, depth)
        dy = rng.randint(-1, depth)
        x = random_element(rng, S, dx, coefficient_degree + 1, 2)
        y = random_element(rng, S, dy, coefficient_degree + 1, 2)
        report.checked += 1
        defect = derivation_defect(x, y, P)
        if defect:
            record(2, f"case {case}: X={x}, Y={y}", defect)
            break
        z = random_element(rng, S, rng.randint(-1, 1), coefficient_degree + 1, 2)
        lhs, rhs = wedge_reduction_sides(x, y, z, P)
        if lhs != rhs:
            record(2, f"case {case}: wedge reduction X={x}, Y={y}, Z={z}", lhs - rhs)
            break
    return report


# -- triangular pairs --------------------------------------------------------------


def triangular_construct(x: GrassmannElement, J: JacobiAlgebroid, cocycle_sign: int = -1) -> DualPair:
    """Dual pair from a Jacobi element ``X`` (``[X,X] = 0``).

    On ``L*``: anchor ``a(i_mu X)``, bracket of dual frame elements
    ``L^phi_{X_mu} nu - L^phi_{X_nu} mu - d^phi <X, mu ^ nu>``, and cocycle
    ``-i_phi X`` read as a 1-form of ``L*``.
    """
    if x.degrees() - {2}:
        raise StructureError("Jacobi element must be a bisection")
    square = sj_bracket(x, x, J)
    if square:
        raise StructureError(f"not a Jacobi element: [X,X] = {square}")
    from .koszul import jacobi_form_bracket

    L = J.algebroid
    r = L.rank
    coframe = [L.forms.gen(i) for i in range(r)]
    anchor = [L.anchor_field(contract(e, x)) for e in coframe]
    structure = {}
    for i in range(r):
        for j in range(i + 1, r):
            for (k,), c in jacobi_form_bracket(coframe[i], coframe[j], x, J).terms.items():
                structure[(i, j, k)] = c
    Ls = AlgebroidSpec(L.chart, L.coframe, anchor, structure, L.frame, "algebroid-section")
    cocycle = (J.phi_contract(x) * cocycle_sign).reinterpret(Ls.forms)
    return DualPair(J, JacobiAlgebroid(Ls, cocycle))

"""Named identity suites and a deterministic runner.

Each suite draws its cases from ``random.Random(f"{seed}:{suite}:{instance}:{index}")``,
so a case depends only on its key and the report is byte-identical across
runs and independent of evaluation order. A failing case carries a
reproduction document (a :class:`~gradedbrackets.docs.StructureDoc` whose
``note`` names the identity that failed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import corpus
from .algebroid import AlgebroidSpec, exterior_d, lie_derivative, sn_bracket
from .bialgebroid import bialgebroid_check, wedge_reduction_sides
from .docs import StructureDoc, doc_from_dual_pair, doc_from_tensors, print_doc
from .errors import GradedBracketError
from .generators import (SuiteConfig, random_element, random_first_order_fn, random_form,
                         random_multilinear, random_scalar)
from .grassmann import GrassmannElement, contract, pairing, wedge
from .jacobi import (FirstOrderOp, JacobiAlgebroid, d_phi, extension_algebroid, function_bracket,
                     h_z_map, jacobi_structure_check, lie_phi, nr_structural_bracket, phi_part,
                     sj_bracket, z_homogeneous_check)
from .koszul import (generalized_bracket, generalized_bracket_formula, generated_bracket,
                     generating_operator, jacobi_form_bracket, jacobi_form_bracket_components,
                     jacobi_form_bracket_lifted, koszul_bracket, pack_extension_form)
from .lifts import (TotalSpace, complete_lift, jacobi_lift,
                    poisson_lift, poissonization_algebroid, poissonization_embed, vertical_lift)
from .multilinear import (FnMultilinearOp, fn_equal, fn_nr_bracket, fn_unit_insertion,
                          fn_wedge, gerstenhaber_bracket, nr_bracket, nr_bracket_skew, probe_functions,
                          split_first_order)
from .scalar import Chart, format_scalar, parse_scalar


def _sign(n: int) -> int:
    return 1 if n % 2 == 0 else -1


@dataclass
class CaseResult:
    index: int
    instance: str
    ok: bool
    detail: str = ""
    doc: StructureDoc | None = None

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"case {self.index:04d} [{self.instance}] {status}"
        return f"{text} {self.detail}" if self.detail else text


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def lines(self) -> list[str]:
        out = [f"suite {self.suite} seed {self.seed} cases {self.cases}"]
        out += [r.line() for r in self.results]
        n = len(self.results)
        bad = len(self.failures)
        out.append(f"{n - bad}/{n} passed")
        out.append("PASS" if self.ok else "FAIL")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def failure_docs(self) -> dict[str, str]:
        """``{file name: document text}`` for each failing case with a reproduction."""
        out = {}
        for r in self.failures:
            if r.doc is not None:
                name = f"{self.suite}-{r.instance.replace('/', '_')}-{r.index:04d}.doc"
                out[name] = print_doc(r.doc)
        return out


@dataclass
class Suite:
    name: str
    description: str
    instances: Callable  # config -> list[(label, obj)]
    case: Callable  # (config, obj, rng) -> (ok, detail, doc)
    fixed: bool = False  # one case per instance, ignoring config.cases


SUITES: dict[str, Suite] = {}


def suite(name: str, description: str, instances: Callable, fixed: bool = False):
    def register(fn):
        SUITES[name] = Suite(name, description, instances, fn, fixed)
        return fn

    return register


def run_suite(config: SuiteConfig) -> SuiteReport:
    if config.suite not in SUITES:
        raise KeyError(f"unknown suite {config.suite!r}; known: {', '.join(sorted(SUITES))}")
    s = SUITES[config.suite]
    report = SuiteReport(config.suite, config.seed, config.cases)
    wanted = config.options.get("instance")
    instances = s.instances(config)
    if wanted is not None:
        instances = [(label, obj) for label, obj in instances if label == wanted]
        if not instances:
            raise KeyError(f"suite {config.suite!r} has no instance {wanted!r}")
    count = 1 if s.fixed else config.cases
    index = 0
    for label, obj in instances:
        for _ in range(count):
            rng = random.Random(f"{config.seed}:{config.suite}:{label}:{index}")
            try:
                ok, detail, doc = s.case(config, obj, rng)
            except GradedBracketError as e:
                ok, detail, doc = False, f"error: {e}", None
            report.results.append(CaseResult(index, label, ok, detail, doc))
            index += 1
    return report


# -- instances -----------------------------------------------------------------------


def _doc_instance(config, kind):
    doc = config.options.get("doc")
    if doc is None:
        return None
    label = config.options.get("doc_label", "doc")
    if kind == "algebroid":
        return [(label, doc.algebroid())]
    return [(label, doc.jacobi_algebroid())]


def algebroid_instances(config):
    """Tangent algebroids of the plane and of 3-space, and so(3) over a point."""
    from_doc = _doc_instance(config, "algebroid")
    if from_doc:
        return from_doc
    return [("plane", corpus.tangent_plane()), ("space3", corpus.tangent_space3()), ("so3", corpus.so3())]


def cartan_instances(config):
    from_doc = _doc_instance(config, "algebroid")
    if from_doc:
        return from_doc
    return algebroid_instances(config) + [("scaling-plane", corpus.scaling_plane())]


def jacobi_instances(config):
    """Jacobi algebroids with nonzero cocycles on the same three bases."""
    from_doc = _doc_instance(config, "jacobi")
    if from_doc:
        return from_doc
    plane = corpus.tangent_plane()
    space3 = corpus.tangent_space3()
    x1, x2, x3 = space3.chart.vars()
    closed = space3.d_function(x1 * x2 + x3)
    return [
        ("plane", JacobiAlgebroid(plane, plane.forms.gen(0))),
        ("space3", JacobiAlgebroid(space3, closed)),
        ("so3-extension", extension_algebroid(corpus.so3())),
    ]


def lift_instances(config):
    """Jacobi algebroids whose total spaces carry the lifts."""
    from_doc = _doc_instance(config, "jacobi")
    if from_doc:
        return from_doc
    plane = corpus.tangent_plane()
    return [
        ("plane", JacobiAlgebroid(plane, plane.forms.gen(0))),
        ("scaling-plane-extension", extension_algebroid(corpus.scaling_plane())),
    ]


def _dims(config):
    return [("dim2", 2), ("dim3", 3)]


def _plane_only(config):
    return [("plane", corpus.plane())]


def _jacobi_structures(config):
    return [(name, build()) for name, build in corpus.JACOBI_STRUCTURES.items()]


def _poisson_structures(config):
    return [(name, corpus.JACOBI_STRUCTURES[name]()) for name in corpus.POISSON_STRUCTURES]


# -- helpers ---------------------------------------------------------------------------


def _max_degree(config) -> int:
    return max(config.max_tensor_degree - 1, -1)


def _rand(rng, space, config, degree=None, coords=None):
    if degree is None:
        degree = rng.randint(-1, min(_max_degree(config), space.rank - 1))
    return random_element(rng, space, degree, config.max_coeff_degree, config.max_terms, coords)


def _lie(x: GrassmannElement) -> int:
    return (x.tensor_degree or 0) - 1


def _repro(A: AlgebroidSpec, note: str, tensors: dict, cocycle=None) -> StructureDoc:
    doc = doc_from_tensors(A, tensors, "tensor", cocycle)
    doc.note = note
    return doc


def _result(defect, note, A, tensors, cocycle=None):
    if not defect:
        return True, "", None
    return False, f"defect {defect}", _repro(A, note, tensors, cocycle)


def _antisymmetry_defect(br, x, y):
    return br(x, y) + br(y, x) * _sign(_lie(x) * _lie(y))


def _jacobi_defect(br, x, y, z):
    return br(x, br(y, z)) - br(br(x, y), z) - br(y, br(x, z)) * _sign(_lie(x) * _lie(y))


# -- scalar ring ----------------------------------------------------------------------


@suite("scalar-leibniz", "partial derivatives obey the Leibniz rule on random polynomials", _dims)
def _scalar_leibniz(config, dim, rng):
    chart = corpus.space3() if dim == 3 else corpus.plane()
    a = random_scalar(rng, chart, 3, config.max_terms)
    b = random_scalar(rng, chart, 3, config.max_terms)
    for c in chart.coords:
        d = (a * b).partial(c) - a.partial(c) * b - a * b.partial(c)
        if d:
            return False, f"d/d{c}: {d}", None
    return True, "", None


@suite("scalar-roundtrip", "printing and parsing a random scalar gives it back", _dims)
def _scalar_roundtrip(config, dim, rng):
    chart = Chart(base=("x1", "x2", "x3")[:dim], aux=("t",), exp_coord="t")
    a = random_scalar(rng, chart, 3, config.max_terms) * chart.exp(rng.randint(-2, 2))
    a = a + random_scalar(rng, chart, 2, 2)
    b = parse_scalar(format_scalar(a), chart)
    return (a == b), "" if a == b else f"{a} reparsed as {b}", None


# -- multilinear core -------------------------------------------------------------------


def _op_doc(note, **ops) -> StructureDoc:
    doc = StructureDoc("tensor", Chart(), note=note)
    for name, op in ops.items():
        doc.with_operator(name, op)
    return doc


def _rand_op(rng, dim, config, skew):
    degree = rng.randint(-1, _max_degree(config))
    return random_multilinear(rng, dim, degree, skew)


def _op_antisymmetry(br, skew):
    def case(config, dim, rng):
        a, b = _rand_op(rng, dim, config, skew), _rand_op(rng, dim, config, skew)
        defect = br(a, b) + br(b, a) * _sign(a.degree * b.degree)
        if defect:
            return False, f"degrees {a.degree},{b.degree}", _op_doc("graded antisymmetry", A=a, B=b)
        return True, "", None

    return case


def _op_jacobi(br, skew):
    def case(config, dim, rng):
        a, b, c = (_rand_op(rng, dim, config, skew) for _ in range(3))
        s = _sign(a.degree * b.degree)
        defect = br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c)) * s
        if defect:
            return False, f"degrees {a.degree},{b.degree},{c.degree}", _op_doc("graded Jacobi identity", A=a, B=b, C=c)
        return True, "", None

    return case


suite("g-antisymmetry", "Gerstenhaber bracket is graded antisymmetric", _dims)(
    _op_antisymmetry(gerstenhaber_bracket, False))
suite("g-jacobi", "Gerstenhaber bracket satisfies the graded Jacobi identity", _dims)(
    _op_jacobi(gerstenhaber_bracket, False))
suite("nr-antisymmetry", "Nijenhuis-Richardson bracket is graded antisymmetric", _dims)(
    _op_antisymmetry(nr_bracket, True))
suite("nr-jacobi", "Nijenhuis-Richardson bracket satisfies the graded Jacobi identity", _dims)(
    _op_jacobi(nr_bracket, True))


@suite("nr-two-forms", "unshuffle and normalized-skew forms of the NR bracket agree", _dims)
def _nr_two_forms(config, dim, rng):
    a, b = _rand_op(rng, dim, config, True), _rand_op(rng, dim, config, True)
    if nr_bracket(a, b) != nr_bracket_skew(a, b):
        return False, f"degrees {a.degree},{b.degree}", _op_doc("unshuffle form = normalized skew form", A=a, B=b)
    return True, "", None


def _algebra_instances(config):
    return [(ex.name, ex) for ex in corpus.ALGEBRAS]


@suite("square-zero", "bracket square vanishes exactly for associative products and Lie brackets",
       _algebra_instances, fixed=True)
def _square_zero(config, ex, rng):
    square_zero = not corpus.bracket_square(ex)
    witness = corpus.axiom_witness(ex)
    axioms = witness is None
    ok = square_zero == axioms == ex.expected
    detail = "square zero" if square_zero else f"square nonzero, witness {witness[0]}"
    return ok, detail, None if ok else _op_doc("square zero iff axioms hold", A=ex.op())


def _first_order_arity(rng):
    return rng.randint(1, 3)


@suite("split-roundtrip", "first-order operators split into A1 + I^A2 and reassemble exactly", _plane_only)
def _split_roundtrip(config, chart, rng):
    T = AlgebroidSpec.tangent(chart)
    op = random_first_order_fn(rng, chart, _first_order_arity(rng), 1, config.max_terms)
    a1, a2 = split_first_order(op, T)
    back = FnMultilinearOp.from_first_order(a1, a2, T, op.arity)
    w = fn_equal(op, back, probe_functions(chart))
    if w is not None:
        return False, f"differs at {tuple(map(str, w))}", _repro(T, "A = A1 + I^A2", {"first": a1, "second": a2})
    return True, "", None


def _fn_op(rng, chart, config, arity=None):
    return random_first_order_fn(rng, chart, arity or rng.randint(1, 2), 1, 2)


@suite("gj-rule", "NR bracket of first-order operators obeys the Gerstenhaber-Jacobi rule", _plane_only)
def _gj_rule(config, chart, rng):
    probes = probe_functions(chart)
    a = _fn_op(rng, chart, config)
    b = _fn_op(rng, chart, config, 1)
    c = _fn_op(rng, chart, config, 1)
    lhs = fn_nr_bracket(a, fn_wedge(b, c))
    s = _sign(a.degree * (b.degree + 1))
    right1 = fn_wedge(fn_nr_bracket(a, b), c)
    right2 = fn_wedge(b, fn_nr_bracket(a, c))
    right3 = fn_wedge(fn_wedge(fn_unit_insertion(a), b), c)
    sa = _sign(a.degree)
    rhs = FnMultilinearOp(chart, lhs.arity, lambda *fs: right1(*fs) + right2(*fs) * s - right3(*fs) * sa)
    w = fn_equal(lhs, rhs, probes)
    if w is not None:
        return False, f"differs at {tuple(map(str, w))}", None
    return True, "", None


@suite("sn-nr-oracle", "SN bracket of multivector fields equals the pointwise NR bracket of their operators",
       _plane_only)
def _sn_nr_oracle(config, chart, rng):
    T = AlgebroidSpec.tangent(chart)
    x, y = _rand(rng, T.sections, config), _rand(rng, T.sections, config)
    lhs = fn_nr_bracket(FnMultilinearOp.from_multivector(x, T), FnMultilinearOp.from_multivector(y, T))
    s = sn_bracket(x, y, T)
    rhs = FnMultilinearOp.from_multivector(s, T) if s else FnMultilinearOp.zero(chart, lhs.arity)
    if lhs.arity != rhs.arity:
        rhs = FnMultilinearOp.zero(chart, lhs.arity)
    w = fn_equal(lhs, rhs, probe_functions(chart))
    if w is not None:
        return False, f"differs at {tuple(map(str, w))}", _repro(T, "SN = NR on derivations", {"X": x, "Y": y})
    return True, "", None


# -- algebroid calculus ------------------------------------------------------------------


@suite("sn-antisymmetry", "SN bracket is graded antisymmetric", algebroid_instances)
def _sn_antisymmetry(config, A, rng):
    x, y = _rand(rng, A.sections, config), _rand(rng, A.sections, config)
    return _result(_antisymmetry_defect(lambda p, q: sn_bracket(p, q, A), x, y),
                   "graded antisymmetry", A, {"X": x, "Y": y})


@suite("sn-jacobi", "SN bracket satisfies the graded Jacobi identity", algebroid_instances)
def _sn_jacobi(config, A, rng):
    x, y, z = (_rand(rng, A.sections, config) for _ in range(3))
    return _result(_jacobi_defect(lambda p, q: sn_bracket(p, q, A), x, y, z),
                   "graded Jacobi identity", A, {"X": x, "Y": y, "Z": z})


@suite("sn-leibniz", "SN bracket is a graded derivation of the wedge product", algebroid_instances)
def _sn_leibniz(config, A, rng):
    x, y, z = (_rand(rng, A.sections, config) for _ in range(3))
    br = lambda p, q: sn_bracket(p, q, A)
    defect = br(x, wedge(y, z)) - wedge(br(x, y), z) - wedge(y, br(x, z)) * _sign(_lie(x) * (_lie(y) + 1))
    return _result(defect, "[X,Y^Z] = [X,Y]^Z + (-1)^(x(y+1)) Y^[X,Z]", A, {"X": x, "Y": y, "Z": z})


def _cartan_defects(A, x, y, mu, nu, d, lie, extra_d=None, extra_l=None):
    """The five Cartan identities; ``extra_*`` add the cocycle corrections."""
    k = max(mu.degrees() or {0})
    out = {}
    out["dd"] = d(d(mu))
    b = d(wedge(mu, nu)) - wedge(d(mu), nu) - wedge(mu, d(nu)) * _sign(k)
    if extra_d:
        b = b + extra_d(mu, nu)
    out["d-wedge"] = b
    c = lie(x, wedge(mu, nu)) - wedge(lie(x, mu), nu) - wedge(mu, lie(x, nu))
    if extra_l:
        c = c + extra_l(x, mu, nu)
    out["lie-wedge"] = c
    br = sn_bracket(x, y, A)
    out["lie-bracket"] = lie(x, lie(y, mu)) - lie(y, lie(x, mu)) - lie(br, mu)
    out["lie-contract"] = lie(x, contract(y, mu)) - contract(y, lie(x, mu)) - contract(br, mu)
    return out


def _homogeneous_form(rng, A, config, degree=None):
    if degree is None:
        degree = rng.randint(0, min(config.max_tensor_degree, A.rank))
    return random_form(rng, A.forms, degree, config.max_coeff_degree, config.max_terms)


@suite("cartan", "Cartan calculus identities for d, i and the Lie derivative", cartan_instances)
def _cartan(config, A, rng):
    x = _rand(rng, A.sections, config, 0)
    y = _rand(rng, A.sections, config, 0)
    mu = _homogeneous_form(rng, A, config)
    nu = _homogeneous_form(rng, A, config)
    defects = _cartan_defects(A, x, y, mu, nu, lambda m: exterior_d(m, A), lambda s, m: lie_derivative(s, m, A))
    bad = [k for k, v in defects.items() if v]
    if bad:
        return False, f"({','.join(bad)}) defect {defects[bad[0]]}", _repro(
            A, f"Cartan identity ({bad[0]})", {"X": x, "Y": y, "mu": mu, "nu": nu})
    return True, "", None


@suite("cartan-phi", "Cartan identities for d^phi and L^phi with cocycle corrections", jacobi_instances)
def _cartan_phi(config, J, rng):
    A = J.algebroid
    phi = J.cocycle
    x = _rand(rng, A.sections, config, 0)
    y = _rand(rng, A.sections, config, 0)
    mu = _homogeneous_form(rng, A, config)
    nu = _homogeneous_form(rng, A, config)
    defects = _cartan_defects(
        A, x, y, mu, nu,
        lambda m: d_phi(m, J), lambda s, m: lie_phi(s, m, J),
        extra_d=lambda m, n: wedge(phi, m, n),
        extra_l=lambda s, m, n: wedge(m, n) * pairing(s, phi),
    )
    bad = [k for k, v in defects.items() if v]
    if bad:
        return False, f"({','.join(bad)}) defect {defects[bad[0]]}", _repro(
            A, f"Cartan identity ({bad[0]}) with cocycle", {"X": x, "Y": y, "mu": mu, "nu": nu}, phi)
    return True, "", None


# -- Schouten-Jacobi -------------------------------------------------------------------


@suite("sj-antisymmetry", "Schouten-Jacobi bracket is graded antisymmetric", jacobi_instances)
def _sj_antisymmetry(config, J, rng):
    x, y = _rand(rng, J.sections, config), _rand(rng, J.sections, config)
    return _result(_antisymmetry_defect(lambda p, q: sj_bracket(p, q, J), x, y),
                   "graded antisymmetry", J.algebroid, {"X": x, "Y": y}, J.cocycle)


@suite("sj-jacobi", "Schouten-Jacobi bracket satisfies the graded Jacobi identity", jacobi_instances)
def _sj_jacobi(config, J, rng):
    x, y, z = (_rand(rng, J.sections, config) for _ in range(3))
    return _result(_jacobi_defect(lambda p, q: sj_bracket(p, q, J), x, y, z),
                   "graded Jacobi identity", J.algebroid, {"X": x, "Y": y, "Z": z}, J.cocycle)


@suite("sj-gerstenhaber-jacobi", "Schouten-Jacobi bracket obeys the Gerstenhaber-Jacobi rule with D(X) = [X,1]",
       jacobi_instances)
def _sj_gj(config, J, rng):
    x, y, z = (_rand(rng, J.sections, config) for _ in range(3))
    br = lambda p, q: sj_bracket(p, q, J)
    dx = br(x, J.sections.one())
    expected = J.phi_contract(x) * _sign(_lie(x))
    defect = (br(x, wedge(y, z)) - wedge(br(x, y), z) - wedge(y, br(x, z)) * _sign(_lie(x) * (_lie(y) + 1))
              + wedge(dx, y, z))
    defect = defect + (dx - expected)
    return _result(defect, "[X,Y^Z] = [X,Y]^Z + (-1)^(x(y+1)) Y^[X,Z] - [X,1]^Y^Z",
                   J.algebroid, {"X": x, "Y": y, "Z": z}, J.cocycle)


def _h_values():
    return [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]


@suite("sj-pencil", "SN + h [.,.]_0 is a graded Lie bracket for h in {0, 1, -1, 2, 1/2}", jacobi_instances)
def _sj_pencil(config, J, rng):
    A = J.algebroid
    x, y, z = (_rand(rng, J.sections, config) for _ in range(3))
    for h in _h_values():
        br = lambda p, q: sn_bracket(p, q, A) + phi_part(p, q, J) * h
        defect = _jacobi_defect(br, x, y, z)
        if defect:
            return False, f"h={h} defect {defect}", _repro(A, f"Jacobi identity at h={h}", {"X": x, "Y": y, "Z": z},
                                                           J.cocycle)
    return True, "", None


def _extension_pairs(config):
    plane = corpus.tangent_plane()
    return [("plane", plane), ("scaling-plane", corpus.scaling_plane())]


def _rand_first_order(rng, A, config, degree=None):
    a = rng.randint(0, max(_max_degree(config), 0)) if degree is None else degree
    return FirstOrderOp(_rand(rng, A.sections, config, a), _rand(rng, A.sections, config, a - 1))


@suite("dif-extension", "component bracket of first-order operators equals the SJ bracket on L + R",
       _extension_pairs)
def _dif_extension(config, A, rng):
    J = extension_algebroid(A)
    a, b = _rand_first_order(rng, A, config), _rand_first_order(rng, A, config)
    lhs = nr_structural_bracket(a, b, A)
    rhs = FirstOrderOp.from_extension(sj_bracket(a.to_extension(J.algebroid), b.to_extension(J.algebroid), J), A)
    d = lhs - rhs
    if d:
        return False, f"defect {d}", _repro(A, "component bracket = SJ bracket on L + R",
                                            {"A1": a.first, "A2": a.second, "B1": b.first, "B2": b.second})
    return True, "", None


@suite("dif-oracle", "component bracket of first-order operators equals the pointwise NR bracket", _plane_only)
def _dif_oracle(config, chart, rng):
    T = AlgebroidSpec.tangent(chart)
    da, db = rng.randint(0, 1), rng.randint(0, 1)
    a, b = _rand_first_order(rng, T, config, da), _rand_first_order(rng, T, config, db)
    structural = nr_structural_bracket(a, b, T)
    pointwise = fn_nr_bracket(FnMultilinearOp.from_first_order(a.first, a.second, T, da + 1),
                              FnMultilinearOp.from_first_order(b.first, b.second, T, db + 1))
    s1, s2 = split_first_order(pointwise, T)
    ok = s1 == structural.first and s2 == structural.second
    if not ok:
        return False, f"structural {structural} vs pointwise ({s1}, {s2})", _repro(
            T, "component bracket = pointwise NR bracket",
            {"A1": a.first, "A2": a.second, "B1": b.first, "B2": b.second})
    return True, "", None


@suite("homogeneous-embedding", "H_Z maps Z-homogeneous first-order operators homomorphically into the SN bracket",
       lift_instances)
def _homogeneous_embedding(config, J, rng):
    T = TotalSpace(J.algebroid)
    x = _rand(rng, J.sections, config, rng.randint(-1, 1), coords=J.chart.base)
    y = _rand(rng, J.sections, config, rng.randint(-1, 1), coords=J.chart.base)
    a, b = jacobi_lift(x, J, T), jacobi_lift(y, J, T)
    Z = T.liouville()
    if not (z_homogeneous_check(a, Z, T.tangent) and z_homogeneous_check(b, Z, T.tangent)):
        return False, "lifts are not homogeneous", None
    lhs = sn_bracket(h_z_map(a, Z), h_z_map(b, Z), T.tangent)
    rhs = h_z_map(nr_structural_bracket(a, b, T.tangent), Z)
    return _result(lhs - rhs, "[H(A),H(B)] = H([A,B])", J.algebroid, {"X": x, "Y": y}, J.cocycle)


@suite("jacobi-structures", "stored Jacobi structures pass the structure check", _jacobi_structures, fixed=True)
def _jacobi_structures_suite(config, js, rng):
    rep = jacobi_structure_check(js.lam, js.gamma, js.algebroid)
    X, J = js.on_extension()
    square = sj_bracket(X, X, J)
    ok = rep.ok and not square
    return ok, "" if ok else "; ".join(rep.lines()), None


# -- Poissonization ----------------------------------------------------------------


def _poissonization_instances(config):
    chart = Chart(aux=("t",), exp_coord="t")
    so3 = corpus.so3(chart)
    plane = Chart(base=("x1", "x2"), aux=("t",), exp_coord="t")
    tp = AlgebroidSpec.tangent(plane)
    # tangent algebroid over x1, x2 only, expressed on a chart that also has t
    base = AlgebroidSpec(plane, ("d_x1", "d_x2"), [[1, 0, 0], [0, 1, 0]], {}, ("dx1", "dx2"), "base-tangent")
    del tp
    return [("so3-extension", extension_algebroid(so3)),
            ("plane", JacobiAlgebroid(base, base.forms.gen(0)))]


@suite("poissonization", "the exponential embedding carries the SJ bracket into the SN bracket",
       _poissonization_instances)
def _poissonization(config, J, rng):
    target = poissonization_algebroid(J.algebroid)
    coords = tuple(c for c in J.chart.coords if c != J.chart.exp_coord)
    x = _rand(rng, J.sections, config, coords=coords)
    y = _rand(rng, J.sections, config, coords=coords)
    lhs = sn_bracket(poissonization_embed(x, J, target), poissonization_embed(y, J, target), target)
    rhs = poissonization_embed(sj_bracket(x, y, J), J, target)
    return _result(lhs - rhs, "[U(X),U(Y)] = U([X,Y]^phi)", J.algebroid, {"X": x, "Y": y}, J.cocycle)


# -- lifts ---------------------------------------------------------------------------


def _lift_pair(rng, J, config):
    coords = J.chart.base
    x = _rand(rng, J.sections, config, rng.randint(-1, 1), coords=coords)
    y = _rand(rng, J.sections, config, rng.randint(-1, 1), coords=coords)
    return x, y


_TOTAL_SPACES: dict = {}


def _total(A):
    key = id(A)
    hit = _TOTAL_SPACES.get(key)
    if hit is None or hit[0] is not A:
        hit = (A, TotalSpace(A))
        _TOTAL_SPACES[key] = hit
    return hit[1]


@suite("lift-homomorphism", "complete lift preserves brackets and [X^c, Y^v] = [X,Y]^v", lift_instances)
def _lift_homomorphism(config, J, rng):
    L = J.algebroid
    T = _total(L)
    x, y = _lift_pair(rng, J, config)
    br = sn_bracket(x, y, L)
    d1 = complete_lift(br, T) - sn_bracket(complete_lift(x, T), complete_lift(y, T), T.tangent)
    d2 = vertical_lift(br, T) - sn_bracket(complete_lift(x, T), vertical_lift(y, T), T.tangent)
    if d1 or d2:
        return False, f"complete {d1} vertical {d2}", _repro(L, "lift homomorphism", {"X": x, "Y": y})
    return True, "", None


@suite("complete-lift-properties", "complete lift satisfies f^c = iota(df), X^c(iota mu) = iota(L_X mu) and the wedge rule",
       lift_instances)
def _complete_lift_properties(config, J, rng):
    L = J.algebroid
    T = _total(L)
    from .lifts import act_total

    f = random_scalar(rng, L.chart, config.max_coeff_degree, 2, L.chart.base)
    x = _rand(rng, L.sections, config, 0, coords=L.chart.base)
    y = _rand(rng, L.sections, config, rng.randint(-1, 1), coords=L.chart.base)
    mu = random_form(rng, L.forms, 1, config.max_coeff_degree, 2, L.chart.base)
    defects = {
        "function": complete_lift(L.sections.scalar(f), T) - T.tangent.sections.scalar(T.iota(L.d_function(f))),
        "forms": T.tangent.sections.scalar(act_total(complete_lift(x, T), T.iota(mu), T)
                                      - T.iota(lie_derivative(x, mu, L))),
        "wedge": complete_lift(wedge(x, y), T) - wedge(complete_lift(x, T), vertical_lift(y, T))
        - wedge(vertical_lift(x, T), complete_lift(y, T)),
    }
    bad = [k for k, v in defects.items() if v]
    if bad:
        return False, f"({','.join(bad)}) defect {defects[bad[0]]}", _repro(L, "complete lift property",
                                                                           {"X": x, "Y": y, "mu": mu})
    return True, "", None


@suite("jacobi-lift", "Jacobi lift: iota(d^phi f), X(iota mu) = iota(L^phi mu), wedge rule, bracket homomorphism",
       lift_instances)
def _jacobi_lift(config, J, rng):
    L = J.algebroid
    T = _total(L)
    x, y = _lift_pair(rng, J, config)
    lx, ly = jacobi_lift(x, J, T), jacobi_lift(y, J, T)
    d = nr_structural_bracket(lx, ly, T.tangent) - jacobi_lift(sj_bracket(x, y, J), J, T)
    f = random_scalar(rng, L.chart, config.max_coeff_degree, 2, L.chart.base)
    fa = jacobi_lift(L.sections.scalar(f), J, T)
    a = FirstOrderOp(fa.first - fa.first.space.scalar(T.iota(d_phi(L.forms.scalar(f), J))), fa.second)
    s = _rand(rng, L.sections, config, 0, coords=L.chart.base)
    mu = random_form(rng, L.forms, 1, config.max_coeff_degree, 2, L.chart.base)
    ls = jacobi_lift(s, J, T)
    from .lifts import act_total

    b = act_total(ls.first, T.iota(mu), T) + T.iota(mu) * ls.second.scalar_part() - T.iota(lie_phi(s, mu, J))
    pw = jacobi_lift(wedge(x, y), J, T)
    xv, yv = vertical_lift(x, T), vertical_lift(y, T)
    phi_iota = T.iota(J.cocycle)
    expected_first = wedge(lx.first, yv) + wedge(xv, ly.first) - wedge(xv, yv) * phi_iota
    # moving I past X^v costs the tensor degree of X
    expected_second = wedge(lx.second, yv) + wedge(xv, ly.second) * _sign(x.tensor_degree or 0)
    c = FirstOrderOp(pw.first - expected_first, pw.second - expected_second)
    defects = {"function": a, "forms": T.tangent.sections.scalar(b), "wedge": c, "bracket": d}
    bad = [k for k, v in defects.items() if v]
    if bad:
        return False, f"({','.join(bad)}) defect {defects[bad[0]]}", _repro(L, "Jacobi lift property",
                                                                           {"X": x, "Y": y}, J.cocycle)
    return True, "", None


@suite("poisson-lift", "Poisson lift: iota(d^phi f), X(iota mu) = iota(L^phi mu), wedge rule, bracket homomorphism",
       lift_instances)
def _poisson_lift(config, J, rng):
    L = J.algebroid
    T = _total(L)
    from .lifts import act_total

    x, y = _lift_pair(rng, J, config)
    px, py = poisson_lift(x, J, T), poisson_lift(y, J, T)
    d = sn_bracket(px, py, T.tangent) - poisson_lift(sj_bracket(x, y, J), J, T)
    f = random_scalar(rng, L.chart, config.max_coeff_degree, 2, L.chart.base)
    a = poisson_lift(L.sections.scalar(f), J, T) - T.tangent.sections.scalar(T.iota(d_phi(L.forms.scalar(f), J)))
    s = _rand(rng, L.sections, config, 0, coords=L.chart.base)
    mu = random_form(rng, L.forms, 1, config.max_coeff_degree, 2, L.chart.base)
    b = T.tangent.sections.scalar(act_total(poisson_lift(s, J, T), T.iota(mu), T) - T.iota(lie_phi(s, mu, J)))
    xv, yv = vertical_lift(x, T), vertical_lift(y, T)
    c = poisson_lift(wedge(x, y), J, T) - wedge(px, yv) - wedge(xv, py) + wedge(xv, yv) * T.iota(J.cocycle)
    defects = {"function": a, "forms": b, "wedge": c, "bracket": d}
    bad = [k for k, v in defects.items() if v]
    if bad:
        return False, f"({','.join(bad)}) defect {defects[bad[0]]}", _repro(L, "Poisson lift property",
                                                                           {"X": x, "Y": y}, J.cocycle)
    return True, "", None


@suite("phi-lift-identities", "[iota_phi, X^v] = -(i_phi X)^v and [iota_phi, X^c] = -(i_phi X)^c", lift_instances)
def _phi_lift_identities(config, J, rng):
    L = J.algebroid
    T = _total(L)
    x = _rand(rng, J.sections, config, rng.randint(-1, 2), coords=L.chart.base)
    iphi = T.tangent.sections.scalar(T.iota(J.cocycle))
    ix = J.phi_contract(x)
    dv = sn_bracket(iphi, vertical_lift(x, T), T.tangent) + vertical_lift(ix, T)
    dc = sn_bracket(iphi, complete_lift(x, T), T.tangent) + complete_lift(ix, T)
    if dv or dc:
        return False, f"vertical {dv} complete {dc}", _repro(L, "cocycle lift identities", {"X": x}, J.cocycle)
    return True, "", None


# -- Jacobi structures through lifts --------------------------------------------------


def _lift_displays(js):
    """Closed-form display of the Jacobi lift and the Poisson lift of
    ``Lambda + I ^ Gamma``, built from tangent lifts of ``Lambda`` and ``Gamma``."""
    X, J = js.on_extension()
    TE = TotalSpace(J.algebroid)
    TA = TotalSpace(js.algebroid)
    emb = lambda z: z.embed(TE.sections)
    lc, lv = emb(complete_lift(js.lam, TA)), emb(vertical_lift(js.lam, TA))
    gc, gv = emb(complete_lift(js.gamma, TA)), emb(vertical_lift(js.gamma, TA))
    dt = TE.sections.gen("d_t")
    t = TE.chart.var("t")
    jacobi_display = FirstOrderOp(lc + wedge(dt, gc) - (lv + wedge(dt, gv)) * t, gv)
    poisson_display = lc + wedge(dt, gc) - lv * t + wedge(emb(TA.liouville()), gv)
    return X, J, TE, jacobi_display, poisson_display


@suite("jacobi-lift-display", "Jacobi lift of a Jacobi structure matches the display and is a Jacobi structure",
       _jacobi_structures, fixed=True)
def _jacobi_lift_display(config, js, rng):
    X, J, TE, jacobi_display, _ = _lift_displays(js)
    jl = jacobi_lift(X, J, TE)
    diff = jl - jacobi_display
    if diff:
        return False, f"display mismatch {diff}", None
    rep = jacobi_structure_check(jl.first, jl.second, TE.tangent, probe_degree=1)
    homogeneous = z_homogeneous_check(jl, TE.liouville(), TE.tangent)
    ok = rep.ok and homogeneous
    return ok, "" if ok else f"structure check {rep.ok}, homogeneous {homogeneous}", None


@suite("poisson-lift-display", "Poisson lift of a Jacobi structure matches the display, squares to zero, is homogeneous",
       _jacobi_structures, fixed=True)
def _poisson_lift_display(config, js, rng):
    X, J, TE, _, poisson_display = _lift_displays(js)
    pl = poisson_lift(X, J, TE)
    if pl != poisson_display:
        return False, f"display mismatch {pl - poisson_display}", None
    square = sn_bracket(pl, pl, TE.tangent)
    from .lifts import homogeneity_defect

    homog = homogeneity_defect(pl, TE, 1)
    ok = not square and not homog
    return ok, "" if ok else f"square {square}, homogeneity {homog}", None


def _pack_random(rng, js, J, config):
    A = js.algebroid
    a = random_form(rng, A.forms, 1, config.max_coeff_degree, 2)
    f = random_scalar(rng, A.chart, config.max_coeff_degree, 2)
    return pack_extension_form(a, f, J.algebroid), (a, f)


@suite("form-brackets", "bracket induced by the Poisson lift = Cartan formula = component formula",
       _jacobi_structures)
def _form_brackets(config, js, rng):
    X, J = js.on_extension()
    T = _total(J.algebroid)
    mu, (a, f) = _pack_random(rng, js, J, config)
    nu, (b, g) = _pack_random(rng, js, J, config)
    lifted = jacobi_form_bracket_lifted(mu, nu, X, J, T)
    cartan = jacobi_form_bracket(mu, nu, X, J)
    form, fn = jacobi_form_bracket_components((a, f), (b, g), js.lam, js.gamma, js.algebroid)
    componentwise = pack_extension_form(form, fn, J.algebroid)
    if lifted != cartan or cartan != componentwise:
        return False, f"lifted {lifted} cartan {cartan} components {componentwise}", _repro(
            J.algebroid, "three bracket formulas agree", {"X": X, "mu": mu, "nu": nu}, J.cocycle)
    return True, "", None


@suite("exact-form-brackets", "[d^phi f, d^phi g] = d^phi <X, d^phi f ^ d^phi g> for coordinate functions", _jacobi_structures,
       fixed=True)
def _exact_form_brackets(config, js, rng):
    X, J = js.on_extension()
    T = _total(J.algebroid)
    coords = js.algebroid.chart.base
    funcs = [J.chart.one()] + [J.chart.var(c) for c in coords]
    for i, f in enumerate(funcs):
        for g in funcs[i + 1:]:
            df, dg = d_phi(J.forms.scalar(f), J), d_phi(J.forms.scalar(g), J)
            lhs = generalized_bracket([df, dg], X, J, T)
            rhs = d_phi(J.forms.scalar(pairing(X, wedge(df, dg))), J)
            if lhs != rhs:
                return False, f"f={f}, g={g}: {lhs} vs {rhs}", None
    return True, f"{len(funcs) * (len(funcs) - 1) // 2} pairs", None


@suite("lifted-multibracket", "multibracket induced by the Poisson lift matches the L^phi / d^phi formula", lift_instances)
def _lifted_multibracket(config, J, rng):
    T = _total(J.algebroid)
    L = J.algebroid
    deg = rng.randint(0, min(2, _max_degree(config)))
    x = _rand(rng, J.sections, config, deg)
    mus = [random_form(rng, L.forms, 1, 1, 2) for _ in range(deg + 1)]
    lhs = generalized_bracket(mus, x, J, T)
    rhs = generalized_bracket_formula(mus, x, J)
    tensors = {"X": x}
    tensors.update({f"mu{i}": m for i, m in enumerate(mus)})
    return _result(lhs - rhs, "induced multibracket = formula", L, tensors, J.cocycle)


@suite("jacobi-form-lie", "bracket of sections of T*M + R from a Jacobi structure satisfies the Jacobi identity",
       _jacobi_structures)
def _jacobi_form_lie(config, js, rng):
    X, J = js.on_extension()
    mus = [_pack_random(rng, js, J, config)[0] for _ in range(3)]
    br = lambda a, b: jacobi_form_bracket(a, b, X, J)
    a, b, c = mus
    defect = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
    return _result(defect, "Jacobi identity of the form bracket", J.algebroid,
                   {"X": X, "mu": a, "nu": b, "rho": c}, J.cocycle)


# -- Koszul -----------------------------------------------------------------------------


@suite("koszul", "Koszul bracket = generated bracket, generating operator squares to zero, d is a derivation",
       _poisson_structures)
def _koszul(config, js, rng):
    A = js.algebroid
    lam = js.lam
    F = A.forms
    mu = random_form(rng, F, 1, config.max_coeff_degree, 2)
    nu = random_form(rng, F, 1, config.max_coeff_degree, 2)
    defects = {}
    defects["koszul=generated"] = koszul_bracket(mu, nu, lam, A) - generated_bracket(mu, nu, lam, A)
    m2 = _homogeneous_form(rng, A, config)
    n2 = _homogeneous_form(rng, A, config)
    defects["square"] = generating_operator(generating_operator(m2, lam, A), lam, A)
    m = max(m2.degrees() or {0})
    defects["d-derivation"] = (exterior_d(generated_bracket(m2, n2, lam, A), A)
                      - generated_bracket(exterior_d(m2, A), n2, lam, A)
                      - generated_bracket(m2, exterior_d(n2, A), lam, A) * _sign(m - 1))
    f = random_scalar(rng, A.chart, config.max_coeff_degree, 2)
    g = random_scalar(rng, A.chart, config.max_coeff_degree, 2)
    df, dg = A.d_function(f), A.d_function(g)
    poisson = function_bracket(lam, A.sections.zero(), A)(f, g)
    defects["exact"] = koszul_bracket(df, dg, lam, A) - A.d_function(poisson)
    bad = [k for k, v in defects.items() if v]
    if bad:
        return False, f"({','.join(bad)}) defect {defects[bad[0]]}", _repro(
            A, f"Koszul identity {bad[0]}", {"Lambda": lam, "mu": mu, "nu": nu, "alpha": m2, "beta": n2})
    return True, "", None


# -- bialgebroids -------------------------------------------------------------------------


def _pair_instances(config):
    doc = config.options.get("doc")
    if doc is not None:
        return [(config.options.get("doc_label", "doc"), doc.dual_pair())]
    out = [(f"triangular/{k}", v) for k, v in corpus.triangular_pairs().items()]
    out += [(f"perturbed/{k}", v) for k, v in corpus.perturbed_pairs().items()]
    return out


@suite("wedge-reduction", "wedge reduction identity for the derivation defect holds for any dual pair",
       _pair_instances)
def _wedge_reduction_suite(config, P, rng):
    S = P.sections
    x = random_element(rng, S, rng.randint(-1, 1), 1, 2)
    y = random_element(rng, S, rng.randint(-1, 1), 1, 2)
    z = random_element(rng, S, rng.randint(-1, 1), 1, 2)
    lhs, rhs = wedge_reduction_sides(x, y, z, P)
    if lhs != rhs:
        doc = doc_from_dual_pair(P)
        doc.note = "wedge reduction identity"
        for name, t in (("X", x), ("Y", y), ("Z", z)):
            doc.with_tensor(name, t)
        return False, f"defect {lhs - rhs}", doc
    return True, "", None


def _expected_pair_instances(config):
    # corpus pairs declare their expected outcome in their label
    if config.options.get("doc") is not None:
        return [(label, (None, P)) for label, P in _pair_instances(config)]
    return [(label, (label.startswith("triangular/"), P)) for label, P in _pair_instances(config)]


@suite("bialgebroid-two-stage", "two-stage derivation check: triangular pairs pass, perturbed pairs fail",
       _expected_pair_instances, fixed=True)
def _bialgebroid_two_stage(config, item, rng):
    expected, P = item
    rep = bialgebroid_check(P, depth=2, seed=config.seed, coefficient_degree=1,
                            cases=config.options.get("stage2_cases", 4))
    detail = rep.lines()[-1]
    fails = [line for line in rep.lines() if line.startswith("FAIL stage")]
    if fails:
        detail = f"{detail} ({fails[0]})"
    if expected is None:
        return rep.ok, detail, None
    ok = rep.ok == expected
    detail = f"expected {'PASS' if expected else 'FAIL'}, got {detail}"
    return ok, detail, None if ok else doc_from_dual_pair(P)


SUITE_MANIFEST = (
    "scalar-leibniz",
    "scalar-roundtrip",
    "g-antisymmetry",
    "g-jacobi",
    "nr-antisymmetry",
    "nr-jacobi",
    "nr-two-forms",
    "square-zero",
    "split-roundtrip",
    "gj-rule",
    "sn-nr-oracle",
    "sn-antisymmetry",
    "sn-jacobi",
    "sn-leibniz",
    "cartan",
    "cartan-phi",
    "sj-antisymmetry",
    "sj-jacobi",
    "sj-gerstenhaber-jacobi",
    "sj-pencil",
    "dif-extension",
    "dif-oracle",
    "homogeneous-embedding",
    "jacobi-structures",
    "poissonization",
    "lift-homomorphism",
    "complete-lift-properties",
    "jacobi-lift",
    "poisson-lift",
    "phi-lift-identities",
    "jacobi-lift-display",
    "poisson-lift-display",
    "form-brackets",
    "exact-form-brackets",
    "lifted-multibracket",
    "jacobi-form-lie",
    "koszul",
    "wedge-reduction",
    "bialgebroid-two-stage",
)

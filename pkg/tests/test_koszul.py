import random

from gradedbrackets import corpus
from gradedbrackets.algebroid import algebroid_validate
from gradedbrackets.generators import random_scalar
from gradedbrackets.grassmann import contract, wedge
from gradedbrackets.jacobi import FirstOrderOp, extension_algebroid, function_bracket
from gradedbrackets.koszul import (generating_operator, jacobi_form_bracket, koszul_algebroid, koszul_bracket,
                                   pack_extension_form)
from gradedbrackets.algebroid import AlgebroidSpec
from gradedbrackets.scalar import Chart


def test_constant_poisson_structure():
    js = corpus.symplectic_plane()
    A, F = js.algebroid, js.algebroid.forms
    assert not koszul_bracket(F.gen(0), F.gen(1), js.lam, A)
    assert not generating_operator(wedge(F.gen(0), F.gen(1)), js.lam, A)


def test_exact_forms_bracket_to_exact_forms():
    rng = random.Random(16)
    for name in corpus.POISSON_STRUCTURES:
        js = corpus.JACOBI_STRUCTURES[name]()
        A = js.algebroid
        bracket = function_bracket(js.lam, A.sections.zero(), A)
        for _ in range(5):
            f, g = random_scalar(rng, A.chart), random_scalar(rng, A.chart)
            assert koszul_bracket(A.d_function(f), A.d_function(g), js.lam, A) == A.d_function(bracket(f, g))


def test_koszul_algebroid_is_valid():
    for name in corpus.POISSON_STRUCTURES:
        js = corpus.JACOBI_STRUCTURES[name]()
        assert algebroid_validate(koszul_algebroid(js.lam, js.algebroid)).ok, name


def test_pure_reeb_bracket_of_constants():
    line = Chart(base=("u",))
    A = AlgebroidSpec.tangent(line)
    J = extension_algebroid(A)
    X = FirstOrderOp(A.sections.zero(), A.sections.gen(0)).to_extension(J.algebroid)
    one = pack_extension_form(A.forms.zero(), line.one(), J.algebroid)
    assert not jacobi_form_bracket(one, one, X, J)


def test_hamiltonian_section_of_extension_form():
    js = corpus.contact_space3()
    A = js.algebroid
    X, J = js.on_extension()
    alpha = A.forms.gen(1) * A.chart.var("q")
    f = A.chart.var("u")
    mu = pack_extension_form(alpha, f, J.algebroid)
    got = FirstOrderOp.from_extension(contract(mu, X), A)
    assert got.first == contract(alpha, js.lam) + js.gamma * f
    assert got.second == -contract(alpha, js.gamma)

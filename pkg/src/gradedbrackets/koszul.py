"""Brackets of forms induced by Poisson and Jacobi structures.

* the Koszul bracket of 1-forms and its generating operator
  ``delta = i_Lambda d - d i_Lambda``;
* the bracket of sections of ``L* + R`` defined by a Jacobi element, computed
  from the Cartan calculus, componentwise for Jacobi structures on a base,
  and as the bracket induced by the Poisson lift on the total space;
* the multibracket induced by the Poisson lift of an arbitrary multisection.
"""

from __future__ import annotations

from .algebroid import AlgebroidSpec, exterior_d, lie_derivative, sn_bracket
from .errors import DegreeError, StructureError
from .grassmann import GrassmannElement, contract, pairing, wedge
from .jacobi import JacobiAlgebroid, d_phi, extension_algebroid, lie_phi
from .lifts import TotalSpace, induced_bracket, poisson_lift
from .scalar import Scalar


def hamiltonian_section(lam: GrassmannElement, mu: GrassmannElement) -> GrassmannElement:
    """``Lambda_mu = i_mu Lambda``."""
    return contract(mu, lam)


def require_poisson(lam: GrassmannElement, A: AlgebroidSpec):
    defect = sn_bracket(lam, lam, A)
    if defect:
        raise StructureError(f"bivector is not Poisson: [Lambda,Lambda] = {defect}")


def koszul_bracket(mu: GrassmannElement, nu: GrassmannElement, lam: GrassmannElement,
                   A: AlgebroidSpec) -> GrassmannElement:
    """``L_{Lambda_mu} nu - L_{Lambda_nu} mu - d <Lambda, mu ^ nu>`` on 1-forms."""
    for f in (mu, nu):
        if f.degrees() - {1}:
            raise DegreeError("the Koszul bracket formula takes 1-forms")
    lm = hamiltonian_section(lam, mu)
    ln = hamiltonian_section(lam, nu)
    value = A.forms.scalar(pairing(lam, wedge(mu, nu)))
    return lie_derivative(lm, nu, A) - lie_derivative(ln, mu, A) - exterior_d(value, A)


def generating_operator(mu: GrassmannElement, lam: GrassmannElement, A: AlgebroidSpec) -> GrassmannElement:
    """``delta_Lambda = i_Lambda o d - d o i_Lambda`` (degree -1 on forms)."""
    return contract(lam, exterior_d(mu, A)) - exterior_d(contract(lam, mu), A)


def generated_bracket(mu: GrassmannElement, nu: GrassmannElement, lam: GrassmannElement,
                      A: AlgebroidSpec) -> GrassmannElement:
    """Bracket of forms of any degree from the generating operator:
    ``(-1)^m (delta(mu ^ nu) - delta(mu) ^ nu - (-1)^m mu ^ delta(nu))``."""
    out = A.forms.zero()
    for m, mp in mu.homogeneous_parts().items():
        sm = 1 if m % 2 == 0 else -1
        for _, np_ in nu.homogeneous_parts().items():
            val = (
                generating_operator(wedge(mp, np_), lam, A)
                - wedge(generating_operator(mp, lam, A), np_)
                - wedge(mp, generating_operator(np_, lam, A)) * sm
            )
            out = out + val * sm
    return out


def koszul_algebroid(lam: GrassmannElement, A: AlgebroidSpec) -> AlgebroidSpec:
    """Algebroid on the dual bundle: anchor ``a(Lambda_mu)``, bracket of the
    dual frame by the Koszul formula."""
    require_poisson(lam, A)
    r = A.rank
    coframe = [A.forms.gen(i) for i in range(r)]
    anchor = [A.anchor_field(hamiltonian_section(lam, e)) for e in coframe]
    structure = {}
    for i in range(r):
        for j in range(i + 1, r):
            br = koszul_bracket(coframe[i], coframe[j], lam, A)
            for (k,), c in br.terms.items():
                structure[(i, j, k)] = c
    label = "algebroid-section"
    return AlgebroidSpec(A.chart, A.coframe, anchor, structure, A.frame, label)


# -- Jacobi elements and L* + R ----------------------------------------------------


def jacobi_form_bracket(mu: GrassmannElement, nu: GrassmannElement, x: GrassmannElement,
                        J: JacobiAlgebroid) -> GrassmannElement:
    """``L^phi_{X_mu} nu - L^phi_{X_nu} mu - d^phi <X, mu ^ nu>`` with ``X_mu = i_mu X``."""
    if x.degrees() - {2}:
        raise DegreeError("Jacobi element must be a bisection")
    xm = contract(mu, x)
    xn = contract(nu, x)
    value = J.forms.scalar(pairing(x, wedge(mu, nu)))
    return lie_phi(xm, nu, J) - lie_phi(xn, mu, J) - d_phi(value, J)


def jacobi_form_bracket_lifted(mu: GrassmannElement, nu: GrassmannElement, x: GrassmannElement,
                               J: JacobiAlgebroid, T: TotalSpace | None = None) -> GrassmannElement:
    """The same bracket read off from the Poisson lift of ``X``."""
    T = T or TotalSpace(J.algebroid)
    return induced_bracket(poisson_lift(x, J, T), [mu, nu], T)


def pack_extension_form(alpha: GrassmannElement, f: Scalar, ext: AlgebroidSpec) -> GrassmannElement:
    """``(alpha, f)`` as a 1-form of ``L + R`` (the ``R`` slot is index 0)."""
    shift = {i: i + 1 for i in range(alpha.space.rank)}
    return alpha.embed(ext.forms, shift) + ext.forms.gen(0) * f


def unpack_extension_form(mu: GrassmannElement, base: AlgebroidSpec):
    alpha = {}
    f = base.chart.zero()
    for (i,), c in mu.terms.items():
        if i == 0:
            f = c.to_chart(base.chart)
        else:
            alpha[(i - 1,)] = c.to_chart(base.chart)
    return GrassmannElement(base.forms, alpha), f


def jacobi_form_bracket_components(mu, nu, lam: GrassmannElement, gamma: GrassmannElement,
                                   A: AlgebroidSpec):
    """Componentwise bracket of ``(alpha, f)`` and ``(beta, g)`` for a Jacobi
    structure ``(Lambda, Gamma)`` on the base:

        form:     L_{Lambda_alpha} beta - L_{Lambda_beta} alpha - d<Lambda, alpha ^ beta>
                  + f L_Gamma beta - g L_Gamma alpha - i_Gamma(alpha ^ beta)
        function: <Lambda, beta ^ alpha> + Lambda_alpha(g) - Lambda_beta(f)
                  + f Gamma(g) - g Gamma(f)
    """
    (alpha, f), (beta, g) = mu, nu
    la = hamiltonian_section(lam, alpha)
    lb = hamiltonian_section(lam, beta)
    ab = wedge(alpha, beta)
    form = (
        lie_derivative(la, beta, A)
        - lie_derivative(lb, alpha, A)
        - exterior_d(A.forms.scalar(pairing(lam, ab)), A)
        + lie_derivative(gamma, beta, A) * f
        - lie_derivative(gamma, alpha, A) * g
        - contract(gamma, ab)
    )
    function = (
        pairing(lam, wedge(beta, alpha))
        + A.act(la, g)
        - A.act(lb, f)
        + f * A.act(gamma, g)
        - g * A.act(gamma, f)
    )
    return form, function


# -- multibrackets from Poisson lifts ------------------------------------------------


def generalized_bracket(mus, x: GrassmannElement, J: JacobiAlgebroid, T: TotalSpace | None = None) -> GrassmannElement:
    """Bracket of ``x + 1`` dual sections induced by the Poisson lift of a
    homogeneous ``X`` of Lie degree ``x``."""
    T = T or TotalSpace(J.algebroid)
    return induced_bracket(poisson_lift(x, J, T), list(mus), T)


def generalized_bracket_formula(mus, x: GrassmannElement, J: JacobiAlgebroid) -> GrassmannElement:
    """``sum_k (-1)^(x+k) L^phi_{X_k} mu_k - x d^phi <X, mu_0 ^ .. ^ mu_x>``
    with ``X_k = i_{mu_0 ^ .. (no mu_k) .. ^ mu_x} X``."""
    mus = list(mus)
    k = x.tensor_degree
    if k is None:
        return J.forms.zero()
    deg = k - 1
    if len(mus) != k:
        raise DegreeError(f"need {k} arguments for a {k}-vector")
    out = J.forms.zero()
    for j, mu in enumerate(mus):
        rest = mus[:j] + mus[j + 1:]
        xk = contract(wedge(*rest), x) if rest else x
        term = lie_phi(xk, mu, J)
        out = out + term if (deg + j) % 2 == 0 else out - term
    if deg:
        value = J.forms.scalar(pairing(x, wedge(*mus)))
        out = out - d_phi(value, J) * deg
    return out


__all__ = [
    "generated_bracket",
    "generalized_bracket",
    "generalized_bracket_formula",
    "generating_operator",
    "hamiltonian_section",
    "jacobi_form_bracket",
    "jacobi_form_bracket_components",
    "jacobi_form_bracket_lifted",
    "koszul_algebroid",
    "koszul_bracket",
    "pack_extension_form",
    "require_poisson",
    "unpack_extension_form",
    "extension_algebroid",
]

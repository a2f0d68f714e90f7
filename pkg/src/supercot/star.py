"""Moyal star product on Grassmann variables.

The product deforms the wedge product by single metric contractions:
left multiplication by a generator is xi^i * (-) = xi^i ^ (-)
- (1/2) eta^ij d_{xi^j} (-), extended associatively to wedge monomials.
Even variables (x, p) and the scalar ring act as central coefficients.
The generators then obey xi^i * xi^j + xi^j * xi^i = -eta^ij, i.e. the
star algebra is the Clifford algebra in the c-normalisation c^i = xi^i,
with the conventional gamma matrices gamma^i = sqrt2 * c^i.
"""

from __future__ import annotations

from fractions import Fraction

from .superpoly import Signature, SuperPolynomial


def star_left_generator(index: int, G: SuperPolynomial, sig: Signature) -> SuperPolynomial:
    """xi^index * G by one wedge plus one contraction."""
    wedge = SuperPolynomial.var_xi(G.n, index) * G
    contraction = G.derive("xi", index).scale(Fraction(-1, 2) * sig.eta(index))
    return wedge + contraction


def star_mul(F: SuperPolynomial, G: SuperPolynomial, sig: Signature) -> SuperPolynomial:
    """Star product F * G; even variables of F act as central factors."""
    if F.n != G.n or F.n != sig.n:
        raise ValueError("dimension mismatch")
    n = F.n
    result = SuperPolynomial.zero(n)
    for (xexp, pexp, xi), coeff in F.items():
        value = G
        for index in reversed(xi):
            value = star_left_generator(index, value, sig)
        if value.is_zero():
            continue
        even = SuperPolynomial.monomial(n, xexp=xexp, pexp=pexp, coeff=coeff)
        result = result + even * value
    return result


def star_power(F: SuperPolynomial, power: int, sig: Signature) -> SuperPolynomial:
    result = SuperPolynomial.one(F.n)
    for _ in range(power):
        result = star_mul(result, F, sig)
    return result


def graded_star_commutator(
    u: SuperPolynomial, v: SuperPolynomial, sig: Signature
) -> SuperPolynomial:
    """u * v - (-1)^{|u||v|} v * u for parity-homogeneous u and v."""
    sign = -1 if (u.parity() and v.parity()) else 1
    return star_mul(u, v, sig) - star_mul(v, u, sig).scale(sign)

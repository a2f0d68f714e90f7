"""Graded Poisson structure of the flat supercotangent chart.

The symplectic form in flat Darboux coordinates fixes the bracket
through the relations {p_i, x^j} = delta_i^j and
{xi^a, xi^b} = -eta^{ab}/h.  Conformal vector fields of the flat metric,
their Hamiltonian lifts and the even/odd comoment maps are provided with
the skew-symmetrisation convention d_[j X_i] = (d_j X_i - d_i X_j)/2,
which is the unique choice making pair_alpha(lift(X)) equal to the even
comoment identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import Scalar
from .diffop import SuperDiffOp
from .superpoly import Signature, SuperPolynomial


class NotConformalError(ValueError):
    """Raised when an operation requires a conformal vector field."""


@dataclass(frozen=True)
class VectorFieldOnM:
    """Vector field on the base: components X^i, polynomials in x only."""

    n: int
    components: tuple[SuperPolynomial, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ValueError("need one component per dimension")
        for comp in self.components:
            if comp.n != self.n:
                raise ValueError("component dimension mismatch")
            for (_x, pexp, xi) in (key for key, _ in comp.items()):
                if any(pexp) or xi:
                    raise ValueError("components must not contain p or xi")

    def component(self, i: int) -> SuperPolynomial:
        return self.components[i - 1]

    def __str__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return label + ", ".join(str(c) for c in self.components)


# -- bracket ---------------------------------------------------------------


def poisson(F: SuperPolynomial, G: SuperPolynomial, sig: Signature) -> SuperPolynomial:
    """Graded Poisson bracket {F, G}; F must be parity-homogeneous."""
    if F.n != G.n or F.n != sig.n:
        raise ValueError("dimension mismatch")
    sign = -1 if F.parity() else 1
    n = sig.n
    result = SuperPolynomial.zero(n)
    for i in range(1, n + 1):
        result = result + F.derive("p", i) * G.derive("x", i)
        result = result - F.derive("x", i) * G.derive("p", i)
    inv_h = Scalar.h(-1, sign)
    for a in range(1, n + 1):
        dF = F.derive("xi", a)
        if dF.is_zero():
            continue
        dG = G.derive("xi", a)
        if dG.is_zero():
            continue
        result = result + (dF * dG).scale(inv_h * sig.eta(a))
    return result


# -- pairings with the symplectic potentials --------------------------------


def _require_first_order(D: SuperDiffOp) -> None:
    if D.order() > 1:
        raise ValueError("operator must be first order")


def pair_alpha(D: SuperDiffOp, sig: Signature) -> SuperPolynomial:
    """<D, alpha> = sum p_i D(x^i) + (h/2) eta_ab xi^a D(xi^b)."""
    _require_first_order(D)
    n = sig.n
    result = SuperPolynomial.zero(n)
    half_h = Scalar.h(1, Fraction(1, 2))
    for i in range(1, n + 1):
        result = result + SuperPolynomial.var_p(n, i) * D.apply(SuperPolynomial.var_x(n, i))
        image = D.apply(SuperPolynomial.var_xi(n, i))
        if not image.is_zero():
            term = SuperPolynomial.var_xi(n, i) * image
            result = result + term.scale(half_h * sig.eta(i))
    return result


def pair_beta(D: SuperDiffOp, sig: Signature) -> SuperPolynomial:
    """<D, beta> = sum eta_ij xi^i D(x^j)."""
    _require_first_order(D)
    n = sig.n
    result = SuperPolynomial.zero(n)
    for i in range(1, n + 1):
        image = D.apply(SuperPolynomial.var_x(n, i))
        if not image.is_zero():
            result = result + (SuperPolynomial.var_xi(n, i) * image).scale(sig.eta(i))
    return result


# -- conformal vector fields --------------------------------------------------


def conformal_generators(sig: Signature) -> list[VectorFieldOnM]:
    """T1..Tn, R_ij (i<j), D and K1..Kn: a basis of conf for flat eta."""
    n = sig.n
    if n < 2:
        raise ValueError("conformal generators need dimension >= 2")
    zero = SuperPolynomial.zero(n)
    fields: list[VectorFieldOnM] = []

    def x_lower(i: int) -> SuperPolynomial:
        return SuperPolynomial.var_x(n, i).scale(sig.eta(i))

    for i in range(1, n + 1):
        comps = tuple(
            SuperPolynomial.one(n) if k == i else zero for k in range(1, n + 1)
        )
        fields.append(VectorFieldOnM(n, comps, name=f"T{i}"))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            comps = []
            for k in range(1, n + 1):
                comp = zero
                if k == j:
                    comp = comp + x_lower(i)
                if k == i:
                    comp = comp - x_lower(j)
                comps.append(comp)
            fields.append(VectorFieldOnM(n, tuple(comps), name=f"R{i}{j}"))
    fields.append(
        VectorFieldOnM(
            n,
            tuple(SuperPolynomial.var_x(n, k) for k in range(1, n + 1)),
            name="D",
        )
    )
    norm = zero
    for j in range(1, n + 1):
        xj = SuperPolynomial.var_x(n, j)
        norm = norm + (xj * xj).scale(sig.eta(j))
    for i in range(1, n + 1):
        comps = []
        for k in range(1, n + 1):
            comp = (x_lower(i) * SuperPolynomial.var_x(n, k)).scale(-2)
            if k == i:
                comp = comp + norm
            comps.append(comp)
        fields.append(VectorFieldOnM(n, tuple(comps), name=f"K{i}"))
    return fields


def generator_by_name(sig: Signature, name: str) -> VectorFieldOnM:
    for gen in conformal_generators(sig):
        if gen.name == name:
            return gen
    raise KeyError(f"unknown generator {name!r}")


def vf_bracket(X: VectorFieldOnM, Y: VectorFieldOnM) -> VectorFieldOnM:
    """Lie bracket [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i."""
    if X.n != Y.n:
        raise ValueError("dimension mismatch")
    n = X.n
    comps = []
    for i in range(1, n + 1):
        acc = SuperPolynomial.zero(n)
        for j in range(1, n + 1):
            acc = acc + X.component(j) * Y.component(i).derive("x", j)
            acc = acc - Y.component(j) * X.component(i).derive("x", j)
        comps.append(acc)
    name = ""
    if X.name and Y.name:
        name = f"[{X.name},{Y.name}]"
    return VectorFieldOnM(n, tuple(comps), name=name)


def divergence(X: VectorFieldOnM) -> SuperPolynomial:
    n = X.n
    acc = SuperPolynomial.zero(n)
    for i in range(1, n + 1):
        acc = acc + X.component(i).derive("x", i)
    return acc


def conformal_killing_factor(X: VectorFieldOnM, sig: Signature) -> SuperPolynomial | None:
    """The function lambda with L_X eta = lambda eta, or None if there is none."""
    if X.n != sig.n:
        raise ValueError("dimension mismatch")
    n = sig.n
    factor = divergence(X).scale(Fraction(2, n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lie = X.component(i).derive("x", j).scale(sig.eta(i))
            lie = lie + X.component(j).derive("x", i).scale(sig.eta(j))
            if i == j:
                lie = lie - factor.scale(sig.eta(i))
            if not lie.is_zero():
                return None
    return factor


def _skew_gradient(X: VectorFieldOnM, sig: Signature) -> dict[tuple[int, int], SuperPolynomial]:
    """d_[k X_j] = (d_k X_j - d_j X_k)/2 for all index pairs (k, j)."""
    n = X.n
    half = Fraction(1, 2)
    table: dict[tuple[int, int], SuperPolynomial] = {}
    for k in range(1, n + 1):
        for j in range(1, n + 1):
            dkxj = X.component(j).derive("x", k).scale(sig.eta(j))
            djxk = X.component(k).derive("x", j).scale(sig.eta(k))
            table[(k, j)] = (dkxj - djxk).scale(half)
    return table


def hamiltonian_lift(X: VectorFieldOnM, sig: Signature) -> SuperDiffOp:
    """Hamiltonian lift of a conformal vector field, in flat Darboux form."""
    if conformal_killing_factor(X, sig) is None:
        raise NotConformalError(f"{X.name or 'vector field'} is not conformal")
    n = sig.n
    skew = _skew_gradient(X, sig)
    op = SuperDiffOp.zero(n)
    for i in range(1, n + 1):
        comp = X.component(i)
        if not comp.is_zero():
            op = op + SuperDiffOp.term(
                comp, dx=tuple(1 if m == i - 1 else 0 for m in range(n))
            )
    # Grassmann rotation block: sum_{k,l} d_[l X_k] eta^kk xi^l dxi^k
    for k in range(1, n + 1):
        coeff = SuperPolynomial.zero(n)
        for l in range(1, n + 1):
            entry = skew[(l, k)]
            if not entry.is_zero():
                coeff = coeff + (entry * SuperPolynomial.var_xi(n, l)).scale(sig.eta(k))
        if not coeff.is_zero():
            op = op + SuperDiffOp.term(coeff, dxi=(k,))
    minus_half_h = Scalar.h(1, Fraction(-1, 2))
    for i in range(1, n + 1):
        coeff = SuperPolynomial.zero(n)
        for j in range(1, n + 1):
            dx_i = X.component(j).derive("x", i)
            if not dx_i.is_zero():
                coeff = coeff - SuperPolynomial.var_p(n, j) * dx_i
        hot = SuperPolynomial.zero(n)
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j == k:
                    continue
                second = X.component(j).derive("x", i).derive("x", k)
                if second.is_zero():
                    continue
                hot = hot + (second * SuperPolynomial.monomial(n, xi=(j, k))).scale(sig.eta(j))
        coeff = coeff + hot.scale(minus_half_h)
        if not coeff.is_zero():
            op = op + SuperDiffOp.term(coeff, dp=tuple(1 if m == i - 1 else 0 for m in range(n)))
    return op


def comoment_even(X: VectorFieldOnM, sig: Signature) -> SuperPolynomial:
    """J^alpha_X = p_i X^i + (h/2) xi^j xi^k d_[k X_j]."""
    if conformal_killing_factor(X, sig) is None:
        raise NotConformalError(f"{X.name or 'vector field'} is not conformal")
    n = sig.n
    skew = _skew_gradient(X, sig)
    result = SuperPolynomial.zero(n)
    for i in range(1, n + 1):
        result = result + SuperPolynomial.var_p(n, i) * X.component(i)
    half_h = Scalar.h(1, Fraction(1, 2))
    spin = SuperPolynomial.zero(n)
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if j == k:
                continue
            entry = skew[(k, j)]
            if not entry.is_zero():
                spin = spin + entry * SuperPolynomial.monomial(n, xi=(j, k))
    return result + spin.scale(half_h)


def comoment_odd(X: VectorFieldOnM, sig: Signature) -> SuperPolynomial:
    """J^beta_X = xi_i X^i (flat chart: the density factor is 1)."""
    if conformal_killing_factor(X, sig) is None:
        raise NotConformalError(f"{X.name or 'vector field'} is not conformal")
    n = sig.n
    result = SuperPolynomial.zero(n)
    for i in range(1, n + 1):
        comp = X.component(i)
        if not comp.is_zero():
            result = result + (SuperPolynomial.var_xi(n, i) * comp).scale(sig.eta(i))
    return result

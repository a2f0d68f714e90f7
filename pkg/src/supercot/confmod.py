"""The three conformal module actions and normal ordering.

Symbols carry three actions of the conformal algebra: the tensorial one
(defined for every vector field), the Hamiltonian one (the lift plus a
density term, conformal fields only), and the spinor-operator one,
realised both directly as a commutator with the spinor Lie derivative
and, after conjugation by normal ordering, as an explicit operator on
symbols.  The two realisations of the operator action must agree
exactly; that equality is the sharpest consistency check of the sign
conventions used throughout.

Each action is materialised once per (generator, weights) as a
SuperDiffOp and cached, so sweeping a large monomial ansatz stays cheap.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeff import Scalar
from .spinop import SpinorDiffOp
from .superpoly import Signature, SuperPolynomial
from .symplectic import (
    NotConformalError,
    VectorFieldOnM,
    conformal_killing_factor,
    divergence,
    hamiltonian_lift,
)


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i - 1 else 0 for k in range(n))


@lru_cache(maxsize=None)
def _cached_lift(X: VectorFieldOnM, sig: Signature):
    return hamiltonian_lift(X, sig)


@lru_cache(maxsize=None)
def tensorial_operator(X: VectorFieldOnM, delta: Fraction, sig: Signature):
    """X^i d_i - p_j (d_i X^j) dp_i + xi^i (d_i X^j) dxi_j + (delta - Sigma/n) div X."""
    from .diffop import SuperDiffOp

    n = sig.n
    op = SuperDiffOp.zero(n)
    for i in range(1, n + 1):
        comp = X.component(i)
        if not comp.is_zero():
            op = op + SuperDiffOp.term(comp, dx=_unit(n, i))
    for i in range(1, n + 1):
        coeff = SuperPolynomial.zero(n)
        for j in range(1, n + 1):
            grad = X.component(j).derive("x", i)
            if not grad.is_zero():
                coeff = coeff - SuperPolynomial.var_p(n, j) * grad
        if not coeff.is_zero():
            op = op + SuperDiffOp.term(coeff, dp=_unit(n, i))
    for j in range(1, n + 1):
        coeff = SuperPolynomial.zero(n)
        for i in range(1, n + 1):
            grad = X.component(j).derive("x", i)
            if not grad.is_zero():
                coeff = coeff + SuperPolynomial.var_xi(n, i) * grad
        if not coeff.is_zero():
            op = op + SuperDiffOp.term(coeff, dxi=(j,))
    div = divergence(X)
    if not div.is_zero():
        if delta:
            op = op + SuperDiffOp.term(div.scale(delta))
        for i in range(1, n + 1):
            op = op + SuperDiffOp.term(
                (div * SuperPolynomial.var_xi(n, i)).scale(Fraction(-1, n)), dxi=(i,)
            )
    return op


@lru_cache(maxsize=None)
def hamiltonian_operator(X: VectorFieldOnM, delta: Fraction, sig: Signature):
    """lift(X) + delta (div X); requires a conformal field."""
    from .diffop import SuperDiffOp

    op = _cached_lift(X, sig)
    div = divergence(X)
    if delta and not div.is_zero():
        op = op + SuperDiffOp.term(div.scale(delta))
    return op


@lru_cache(maxsize=None)
def operator_symbol_action(
    X: VectorFieldOnM, lam: Fraction, mu: Fraction, sig: Signature
):
    """The operator-module action conjugated to symbols by normal ordering.

    Equals the Hamiltonian action at weight mu - lam plus
    (h/2)(d_j d_k X^i)(-p_i dp_j + chi^j_i / 2) dp_k - h lam d_j(div X) dp_j,
    with chi^j_i = xi^j dxi_i - xi_i dxi_j + (1/2) dxi_j dxi^i.
    """
    from .diffop import SuperDiffOp

    n = sig.n
    op = hamiltonian_operator(X, mu - lam, sig)
    half_h = Scalar.h(1, Fraction(1, 2))
    quarter_h = Scalar.h(1, Fraction(1, 4))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                hess = X.component(i).derive("x", j).derive("x", k)
                if hess.is_zero():
                    continue
                dp_jk = tuple(
                    (1 if m == j - 1 else 0) + (1 if m == k - 1 else 0) for m in range(n)
                )
                op = op + SuperDiffOp.term(
                    (hess * SuperPolynomial.var_p(n, i)).scale(-half_h),
                    dp=dp_jk,
                )
                # chi^j_i dp_k, scaled by (h/2) * (1/2) * hess
                chi_coeff = hess.scale(quarter_h)
                op = op + SuperDiffOp.term(
                    chi_coeff * SuperPolynomial.var_xi(n, j), dxi=(i,), dp=_unit(n, k)
                )
                op = op - SuperDiffOp.term(
                    (chi_coeff * SuperPolynomial.var_xi(n, i)).scale(
                        sig.eta(i) * sig.eta(j)
                    ),
                    dxi=(j,),
                    dp=_unit(n, k),
                )
                if i != j:
                    op = op + SuperDiffOp.term(
                        chi_coeff.scale(Fraction(1, 2) * sig.eta(j)),
                        dxi=(j, i),
                        dp=_unit(n, k),
                    )
    if lam:
        div = divergence(X)
        minus_h_lam = Scalar.h(1, -lam)
        for j in range(1, n + 1):
            grad = div.derive("x", j)
            if not grad.is_zero():
                op = op + SuperDiffOp.term(grad.scale(minus_h_lam), dp=_unit(n, j))
    return op


# -- the public actions ------------------------------------------------------


def act_T(
    X: VectorFieldOnM, delta: Fraction | int, F: SuperPolynomial, sig: Signature
) -> SuperPolynomial:
    """Tensorial action; an action of all vector fields."""
    if X.n != F.n or F.n != sig.n:
        raise ValueError("dimension mismatch")
    return tensorial_operator(X, Fraction(delta), sig).apply(F)


def act_S(
    X: VectorFieldOnM, delta: Fraction | int, F: SuperPolynomial, sig: Signature
) -> SuperPolynomial:
    """Hamiltonian action: lift(X) F + delta (div X) F, conformal X only."""
    if X.n != F.n or F.n != sig.n:
        raise ValueError("dimension mismatch")
    return hamiltonian_operator(X, Fraction(delta), sig).apply(F)


def act_D_symbolside(
    X: VectorFieldOnM,
    lam: Fraction | int,
    mu: Fraction | int,
    F: SuperPolynomial,
    sig: Signature,
) -> SuperPolynomial:
    """Operator-module action seen through normal ordering."""
    if X.n != F.n or F.n != sig.n:
        raise ValueError("dimension mismatch")
    return operator_symbol_action(X, Fraction(lam), Fraction(mu), sig).apply(F)


# -- normal ordering -----------------------------------------------------------


def normal_order(F: SuperPolynomial, sig: Signature) -> SpinorDiffOp:
    """xi-monomials to c-monomials, p-monomials of degree k to h^k dx^k."""
    if F.n != sig.n:
        raise ValueError("dimension mismatch")
    n = sig.n
    op = SpinorDiffOp.zero(sig)
    for (xexp, pexp, word), coeff in F.items():
        xcoeff = SuperPolynomial.monomial(
            n, xexp=xexp, coeff=coeff.mul_hpow(sum(pexp))
        )
        op = op + SpinorDiffOp.term(sig, xcoeff, cliff=word, dx=pexp)
    return op


def normal_order_inverse(A: SpinorDiffOp) -> SuperPolynomial:
    """Inverse bijection; divides out the h-power carried by derivatives."""
    n = A.n
    result = SuperPolynomial.zero(n)
    for (cliff, dx), xcoeff in A.items():
        order = sum(dx)
        for (xexp, _p, _xi), coeff in xcoeff.items():
            result = result + SuperPolynomial.monomial(
                n, xexp=xexp, pexp=dx, xi=cliff, coeff=coeff.mul_hpow(-order)
            )
    return result


def spinor_compose(A: SpinorDiffOp, B: SpinorDiffOp) -> SpinorDiffOp:
    return A.compose(B)


@lru_cache(maxsize=None)
def _cached_kosmann(X: VectorFieldOnM, sig: Signature, weight: Fraction):
    from .clifford import kosmann_lie

    return kosmann_lie(X, sig, weight)


def act_D_direct(
    X: VectorFieldOnM,
    lam: Fraction | int,
    mu: Fraction | int,
    A: SpinorDiffOp,
    sig: Signature,
) -> SpinorDiffOp:
    """Adjoint action sL^mu_X A - A sL^lam_X of the spinor Lie derivative."""
    if conformal_killing_factor(X, sig) is None:
        raise NotConformalError(f"{X.name or 'vector field'} is not conformal")
    left = _cached_kosmann(X, sig, Fraction(mu))
    right = _cached_kosmann(X, sig, Fraction(lam))
    return left.compose(A) - A.compose(right)


def hamiltonian_principal_symbol(A: SpinorDiffOp, degree: int) -> SuperPolynomial:
    """Hamiltonian-degree-``degree`` component of the inverse normal ordering."""
    F = normal_order_inverse(A)
    components = F.hamiltonian_components()
    top = max(components, default=0)
    if top > degree:
        raise ValueError(f"operator has Hamiltonian degree {top} > {degree}")
    return components.get(degree, SuperPolynomial.zero(A.n))

"""Clifford algebra from the Grassmann star product and its spin modules.

The star product of star.py realises the Clifford algebra on Grassmann
polynomials (the c-normalisation c^i = xi^i, gamma^i = sqrt2 c^i).  This
module adds the Lie-algebra bracket check for quadratic elements, the
polarised spinor matrix representation for even dimension and any
signature with p >= q, the prequantisation operator on the full exterior
algebra, and the spinor Lie derivative along conformal vector fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import Scalar
from .matutil import (
    Matrix,
    identity,
    mat_add,
    mat_eq,
    mat_mul,
    mat_scale,
    mat_sub,
    rank_over_field,
    zeros,
)
from .spinop import SpinorDiffOp
from .star import star_mul
from .superpoly import Signature, SuperPolynomial
from .symplectic import (
    NotConformalError,
    VectorFieldOnM,
    _skew_gradient,
    conformal_killing_factor,
    divergence,
    poisson,
)


def weyl_bracket_check(
    u: SuperPolynomial, v: SuperPolynomial, sig: Signature
) -> tuple[bool, SuperPolynomial, SuperPolynomial]:
    """Verify h*{u, v} = u*v -+ v*u for u of Grassmann degree <= 2.

    Returns (equal, lhs, rhs).  Degree-three-or-higher u is rejected: the
    correspondence between the bracket and the star commutator only holds
    on scalars, vectors and bivectors.
    """
    if not u.is_even_free() or not v.is_even_free():
        raise ValueError("inputs must be polynomials in xi only")
    if any(kappa > 2 for (_k, kappa) in u.bidegrees()):
        raise ValueError("left argument must have Grassmann degree <= 2")
    lhs = poisson(u, v, sig).scale(Scalar.h())
    sign_u = -1 if u.parity() else 1
    rhs = SuperPolynomial.zero(u.n)
    for kappa in {kappa for (_k, kappa) in v.bidegrees()}:
        component = v.bidegree_component(0, kappa)
        sign = sign_u if kappa % 2 else 1
        rhs = rhs + star_mul(u, component, sig) - star_mul(component, u, sig).scale(sign)
    return lhs == rhs, lhs, rhs


# -- spinor representation ----------------------------------------------------


def _subset_bases(count: int) -> list[tuple[int, ...]]:
    return [
        tuple(a + 1 for a in range(count) if code >> a & 1)
        for code in range(1 << count)
    ]


def _wedge_matrix(basis: list[tuple[int, ...]], index: int) -> Matrix:
    """Exterior multiplication by generator `index` on a subset basis."""
    position = {subset: k for k, subset in enumerate(basis)}
    mat = zeros(len(basis), len(basis))
    for col, subset in enumerate(basis):
        if index in subset:
            continue
        below = sum(1 for s in subset if s < index)
        target = tuple(sorted(subset + (index,)))
        mat[position[target]][col] = Scalar.rational(-1 if below % 2 else 1)
    return mat


def _contraction_matrix(basis: list[tuple[int, ...]], index: int) -> Matrix:
    """Left derivative with respect to generator `index` on a subset basis."""
    position = {subset: k for k, subset in enumerate(basis)}
    mat = zeros(len(basis), len(basis))
    for col, subset in enumerate(basis):
        if index not in subset:
            continue
        slot = subset.index(index)
        target = subset[:slot] + subset[slot + 1 :]
        mat[position[target]][col] = Scalar.rational(-1 if slot % 2 else 1)
    return mat


@dataclass(frozen=True)
class SpinorRep:
    """Matrices of the c-generators on the polarised spin module."""

    sig: Signature
    basis: tuple[tuple[int, ...], ...]
    matrices: tuple[Matrix, ...]  # entry i-1 represents c^i

    @property
    def size(self) -> int:
        return len(self.basis)

    def c_matrix(self, i: int) -> Matrix:
        return self.matrices[i - 1]

    def gamma_matrix(self, i: int) -> Matrix:
        return mat_scale(self.matrices[i - 1], Scalar.sqrt2())

    def monomial_matrix(self, indices: tuple[int, ...]) -> Matrix:
        mat = identity(self.size)
        for i in indices:
            mat = mat_mul(mat, self.c_matrix(i))
        return mat

    def rho(self, poly: SuperPolynomial) -> Matrix:
        """Algebra morphism on Grassmann polynomials with scalar coefficients."""
        if not poly.is_even_free():
            raise ValueError("rho is defined on polynomials in xi only")
        mat = zeros(self.size, self.size)
        for (_x, _p, word), coeff in poly.items():
            mat = mat_add(mat, mat_scale(self.monomial_matrix(word), coeff))
        return mat

    def verify_clifford_relations(self) -> bool:
        for i in range(1, self.sig.n + 1):
            for j in range(i, self.sig.n + 1):
                anti = mat_add(
                    mat_mul(self.c_matrix(i), self.c_matrix(j)),
                    mat_mul(self.c_matrix(j), self.c_matrix(i)),
                )
                expected = identity(self.size, Scalar.rational(-sig_eta(self.sig, i, j)))
                if not mat_eq(anti, expected):
                    return False
        return True

    def monomial_rank(self) -> int:
        """Rank of the 2^n ordered c-monomial images over Q(i, sqrt2)."""
        rows = []
        for subset in _subset_bases(self.sig.n):
            mat = self.monomial_matrix(subset)
            rows.append([entry for row in mat for entry in row])
        return rank_over_field(rows)


def sig_eta(sig: Signature, i: int, j: int) -> int:
    return sig.eta(i) if i == j else 0


def build_spin_rep(sig: Signature) -> SpinorRep:
    """Spinor representation from a polarisation, for even n and p >= q.

    On the Grassmann algebra of the polarisation (generators zeta^1..zeta^m,
    m = n/2), zeta-multiplication Z_a and minus-left-derivative W_a represent
    the images of the complex frame; the real generators are recovered by
      c^i = (Z_i + W_i)/sqrt2                    for i <= m,
      c^i = i (Z_{i-m} - W_{i-m})/sqrt2          for m < i <= p,
      c^i = (Z_{i-m} - W_{i-m})/sqrt2            for p < i <= n.
    """
    n = sig.n
    if n % 2:
        raise ValueError("spin representation requires even dimension")
    if sig.p < sig.q:
        raise ValueError("requires signature with p >= q")
    m = n // 2
    basis = _subset_bases(m)
    half_sqrt2 = Scalar.sqrt2() * Fraction(1, 2)  # 1/sqrt2
    matrices = []
    for i in range(1, n + 1):
        a = i if i <= m else i - m
        Z = _wedge_matrix(basis, a)
        W = mat_scale(_contraction_matrix(basis, a), -1)
        if i <= m:
            mat = mat_scale(mat_add(Z, W), half_sqrt2)
        elif i <= sig.p:
            mat = mat_scale(mat_sub(Z, W), half_sqrt2 * Scalar.i())
        else:
            mat = mat_scale(mat_sub(Z, W), half_sqrt2)
        matrices.append(mat)
    return SpinorRep(sig, tuple(basis), tuple(matrices))


# -- prequantisation ------------------------------------------------------------


def prequant_op(v: SuperPolynomial, sig: Signature, variant: str = "standard") -> Matrix:
    """Prequantisation of a Grassmann 1-vector on the full exterior algebra.

    "standard" gives (1/sqrt2)(eps(v) - 2 iota(v)), whose images satisfy
    c(v)c(w) + c(w)c(v) = -2 g(v, w); "canonical" gives the sqrt2-free
    variant eps(v) - iota(v) with the same anticommutation relations.
    """
    if not v.is_even_free():
        raise ValueError("argument must be a polynomial in xi only")
    if v.bidegrees() not in ({(0, 1)}, set()):
        raise ValueError("argument must be homogeneous of Grassmann degree 1")
    n = sig.n
    basis = _subset_bases(n)
    size = len(basis)
    eps = zeros(size, size)
    iota = zeros(size, size)
    for (_x, _p, word), coeff in v.items():
        (index,) = word
        eps = mat_add(eps, mat_scale(_wedge_matrix(basis, index), coeff))
        iota = mat_add(
            iota,
            mat_scale(_contraction_matrix(basis, index), coeff * sig.eta(index)),
        )
    if variant == "standard":
        half_sqrt2 = Scalar.sqrt2() * Fraction(1, 2)
        return mat_sub(mat_scale(eps, half_sqrt2), mat_scale(iota, Scalar.sqrt2()))
    if variant == "canonical":
        return mat_sub(eps, iota)
    raise ValueError(f"unknown prequantisation variant {variant!r}")


# -- spinor Lie derivative ----------------------------------------------------------


def kosmann_lie(
    X: VectorFieldOnM, sig: Signature, weight: Fraction | int = 0
) -> SpinorDiffOp:
    """Spinor Lie derivative X^i d_i + (1/4) d_[k X_j] gamma^j gamma^k + weight div X.

    Built in the c-normalisation: the quadratic spin term is
    (1/2) d_[k X_j] c^j c^k with the same skew-symmetrisation convention
    as the even comoment, so that normal ordering of the comoment equals
    h times this operator.
    """
    if sig.n % 2:
        raise ValueError("spinor Lie derivative requires even dimension")
    if conformal_killing_factor(X, sig) is None:
        raise NotConformalError(f"{X.name or 'vector field'} is not conformal")
    n = sig.n
    skew = _skew_gradient(X, sig)
    op = SpinorDiffOp.zero(sig)
    for i in range(1, n + 1):
        comp = X.component(i)
        if not comp.is_zero():
            op = op + SpinorDiffOp.term(
                sig, comp, dx=tuple(1 if k == i - 1 else 0 for k in range(n))
            )
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            entry = skew[(k, j)]
            if not entry.is_zero():
                op = op + SpinorDiffOp.term(sig, entry, cliff=(j, k))
    weight = Fraction(weight)
    if weight:
        div = divergence(X)
        if not div.is_zero():
            op = op + SpinorDiffOp.term(sig, div.scale(weight))
    return op

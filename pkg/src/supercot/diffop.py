"""Differential operators with SuperPolynomial coefficients.

A SuperDiffOp is a finite sum of terms ``coeff * dxi^I dx^a dp^b`` acting
on SuperPolynomial from the left.  The Grassmann derivative block I is
stored as a strictly increasing tuple whose reordering sign is absorbed
into the coefficient; ``dxi^(i1,..,ik)`` denotes the composition
d_{xi^i1} o ... o d_{xi^ik}, the rightmost factor acting first.
Composition is exact and uses the graded Leibniz rule to move derivative
blocks past coefficients, so associativity holds on the nose.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping

from .coeff import Scalar
from .superpoly import SuperPolynomial, sort_xi_word, term_sort_key

OpKey = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]  # (dxi, dx, dp)


def _parity_involution(poly: SuperPolynomial) -> SuperPolynomial:
    """Multiply each term by (-1)^parity; splits graded Leibniz signs."""
    terms = {}
    for key, coeff in poly.items():
        terms[key] = coeff * (-1 if len(key[2]) % 2 else 1)
    return SuperPolynomial(poly.n, terms)


def _derive_multi(poly: SuperPolynomial, kind: str, exps: tuple[int, ...]) -> SuperPolynomial:
    for index, count in enumerate(exps, start=1):
        for _ in range(count):
            poly = poly.derive(kind, index)
    return poly


def _sub_multi_indices(alpha: tuple[int, ...]):
    """All gamma <= alpha with the multinomial factor prod C(alpha_i, gamma_i)."""
    ranges = [range(a + 1) for a in alpha]
    for gamma in product(*ranges):
        factor = 1
        for a, g in zip(alpha, gamma):
            factor *= comb(a, g)
        yield gamma, factor


class SuperDiffOp:
    """Finite-order differential operator on the supercotangent chart."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[OpKey, SuperPolynomial] | None = None):
        self.n = n
        cleaned: dict[OpKey, SuperPolynomial] = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero():
                    if coeff.n != n:
                        raise ValueError("coefficient dimension mismatch")
                    cleaned[key] = coeff
        self._terms = cleaned

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(n: int) -> "SuperDiffOp":
        return SuperDiffOp(n)

    @staticmethod
    def identity(n: int) -> "SuperDiffOp":
        return SuperDiffOp.term(SuperPolynomial.one(n))

    @staticmethod
    def term(
        coeff: SuperPolynomial,
        dxi: Iterable[int] = (),
        dx: Iterable[int] = (),
        dp: Iterable[int] = (),
    ) -> "SuperDiffOp":
        n = coeff.n
        dx = tuple(dx) or (0,) * n
        dp = tuple(dp) or (0,) * n
        if len(dx) != n or len(dp) != n:
            raise ValueError("derivative multi-indices must have length n")
        sorted_word = sort_xi_word(dxi)
        if sorted_word is None:
            return SuperDiffOp.zero(n)
        sign, word = sorted_word
        return SuperDiffOp(n, {(word, dx, dp): coeff * sign})

    @staticmethod
    def partial(n: int, kind: str, index: int) -> "SuperDiffOp":
        one = SuperPolynomial.one(n)
        unit = tuple(1 if k == index - 1 else 0 for k in range(n))
        if kind == "x":
            return SuperDiffOp.term(one, dx=unit)
        if kind == "p":
            return SuperDiffOp.term(one, dp=unit)
        if kind == "xi":
            return SuperDiffOp.term(one, dxi=(index,))
        raise ValueError(f"unknown variable kind {kind!r}")

    # -- linear structure --------------------------------------------------

    def _binop(self, other: "SuperDiffOp", negate: bool) -> "SuperDiffOp":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            acc = terms.get(key, SuperPolynomial.zero(self.n)) + (-coeff if negate else coeff)
            if acc.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = acc
        return SuperDiffOp(self.n, terms)

    def __add__(self, other: "SuperDiffOp") -> "SuperDiffOp":
        return self._binop(other, negate=False)

    def __sub__(self, other: "SuperDiffOp") -> "SuperDiffOp":
        return self._binop(other, negate=True)

    def __neg__(self) -> "SuperDiffOp":
        return SuperDiffOp(self.n, {k: -c for k, c in self._terms.items()})

    def scale(self, factor: Scalar | int | Fraction) -> "SuperDiffOp":
        factor = Scalar.coerce(factor)
        return SuperDiffOp(self.n, {k: c.scale(factor) for k, c in self._terms.items()})

    # -- action and composition ----------------------------------------------

    def apply(self, poly: SuperPolynomial) -> SuperPolynomial:
        if poly.n != self.n:
            raise ValueError("dimension mismatch")
        result = SuperPolynomial.zero(self.n)
        for (dxi, dx, dp), coeff in self._terms.items():
            value = _derive_multi(poly, "x", dx)
            value = _derive_multi(value, "p", dp)
            for index in reversed(dxi):
                value = value.derive("xi", index)
            if value.is_zero():
                continue
            result = result + coeff * value
        return result

    def compose(self, other: "SuperDiffOp") -> "SuperDiffOp":
        """Operator product self o other in canonical form."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        result: dict[OpKey, SuperPolynomial] = {}
        for (dxiA, dxA, dpA), cA in self._terms.items():
            for (dxiB, dxB, dpB), cB in other._terms.items():
                # move dp^dpA, dx^dxA, dxi^dxiA past the coefficient cB
                moved: list[tuple[SuperPolynomial, tuple, tuple, tuple]] = []
                for delta, fac_p in _sub_multi_indices(dpA):
                    rest_p = tuple(a - d for a, d in zip(dpA, delta))
                    poly_p = _derive_multi(cB, "p", rest_p)
                    if poly_p.is_zero():
                        continue
                    for gamma, fac_x in _sub_multi_indices(dxA):
                        rest_x = tuple(a - g for a, g in zip(dxA, gamma))
                        poly_x = _derive_multi(poly_p, "x", rest_x)
                        if poly_x.is_zero():
                            continue
                        moved.append((poly_x.scale(fac_p * fac_x), gamma, delta, ()))
                # graded Leibniz for the Grassmann block, rightmost factor first
                for index in reversed(dxiA):
                    next_moved = []
                    for poly, gamma, delta, word in moved:
                        derived = poly.derive("xi", index)
                        if not derived.is_zero():
                            next_moved.append((derived, gamma, delta, word))
                        flipped = _parity_involution(poly)
                        next_moved.append((flipped, gamma, delta, (index,) + word))
                    moved = next_moved
                for poly, gamma, delta, word in moved:
                    sorted_word = sort_xi_word(word + dxiB)
                    if sorted_word is None:
                        continue
                    sign, merged = sorted_word
                    key = (
                        merged,
                        tuple(a + b for a, b in zip(gamma, dxB)),
                        tuple(a + b for a, b in zip(delta, dpB)),
                    )
                    contribution = (cA * poly).scale(sign)
                    if contribution.is_zero():
                        continue
                    acc = result.get(key)
                    acc = contribution if acc is None else acc + contribution
                    if acc.is_zero():
                        result.pop(key, None)
                    else:
                        result[key] = acc
        return SuperDiffOp(n, result)

    def commutator(self, other: "SuperDiffOp") -> "SuperDiffOp":
        return self.compose(other) - other.compose(self)

    # -- inspection ---------------------------------------------------------

    def order(self) -> int:
        return max(
            (sum(dx) + sum(dp) + len(dxi) for (dxi, dx, dp) in self._terms),
            default=0,
        )

    def items(self):
        return iter(
            sorted(
                self._terms.items(),
                key=lambda kv: (kv[0][0], term_sort_key((kv[0][1], kv[0][2], ()))),
            )
        )

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperDiffOp):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for (dxi, dx, dp), coeff in self.items():
            ops = []
            ops.extend(f"dxi{i}" for i in dxi)
            for pos, e in enumerate(dx):
                if e:
                    ops.append(f"dx{pos + 1}" + (f"^{e}" if e > 1 else ""))
            for pos, e in enumerate(dp):
                if e:
                    ops.append(f"dp{pos + 1}" + (f"^{e}" if e > 1 else ""))
            body = f"({coeff})"
            if ops:
                body += " " + " ".join(ops)
            chunks.append(body)
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"SuperDiffOp(n={self.n}, {self})"

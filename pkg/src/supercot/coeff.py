"""Exact scalar arithmetic in the ring Q(i, sqrt2)[h, h^-1].

A Scalar is a Laurent polynomial in the formal central parameter ``h``
whose coefficients live in the commutative ring Q[i, s]/(i^2 + 1, s^2 - 2),
i.e. rational combinations of 1, i, s and i*s with i^2 = -1 and s^2 = 2.
Negative powers of h are allowed because the odd part of the graded
Poisson bracket divides by h.

Values are immutable and canonical: the defining relations are always
reduced away, rational coefficients are kept in lowest terms with a
positive denominator (guaranteed by fractions.Fraction), and zero terms
are never stored.  Equality and hashing are structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction]

# Basis parts of Q(i, s) over Q, indexed 0..3.
PART_ONE, PART_I, PART_S, PART_IS = 0, 1, 2, 3
PART_NAMES = ("1", "i", "s", "is")
_PART_BY_NAME = {name: k for k, name in enumerate(PART_NAMES)}

# _PART_MUL[p][q] = (rational factor, resulting part) for part_p * part_q.
_PART_MUL = (
    ((1, PART_ONE), (1, PART_I), (1, PART_S), (1, PART_IS)),
    ((1, PART_I), (-1, PART_ONE), (1, PART_IS), (-1, PART_S)),
    ((1, PART_S), (1, PART_IS), (2, PART_ONE), (2, PART_I)),
    ((1, PART_IS), (-1, PART_S), (2, PART_I), (-2, PART_ONE)),
)


def _coerce_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Scalar:
    """Element of Q(i, sqrt2)[h, h^-1] in canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], RationalLike] | None = None):
        cleaned: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (hpow, part), coeff in terms.items():
                frac = _coerce_fraction(coeff)
                if frac:
                    cleaned[(int(hpow), int(part))] = frac
        self._terms = cleaned

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def one() -> "Scalar":
        return Scalar({(0, PART_ONE): 1})

    @staticmethod
    def rational(value: RationalLike) -> "Scalar":
        return Scalar({(0, PART_ONE): _coerce_fraction(value)})

    @staticmethod
    def i() -> "Scalar":
        return Scalar({(0, PART_I): 1})

    @staticmethod
    def sqrt2() -> "Scalar":
        return Scalar({(0, PART_S): 1})

    @staticmethod
    def h(power: int = 1, coeff: RationalLike = 1) -> "Scalar":
        return Scalar({(power, PART_ONE): _coerce_fraction(coeff)})

    @staticmethod
    def coerce(value: "Scalar | RationalLike") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar.rational(value)

    # -- ring structure ----------------------------------------------

    def __add__(self, other: "Scalar | RationalLike") -> "Scalar":
        other = Scalar.coerce(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            acc = terms.get(key, Fraction(0)) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        out = Scalar.__new__(Scalar)
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        out = Scalar.__new__(Scalar)
        out._terms = {key: -coeff for key, coeff in self._terms.items()}
        return out

    def __sub__(self, other: "Scalar | RationalLike") -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: "Scalar | RationalLike") -> "Scalar":
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other: "Scalar | RationalLike") -> "Scalar":
        other = Scalar.coerce(other)
        terms: dict[tuple[int, int], Fraction] = {}
        for (hp1, p1), c1 in self._terms.items():
            for (hp2, p2), c2 in other._terms.items():
                factor, part = _PART_MUL[p1][p2]
                key = (hp1 + hp2, part)
                acc = terms.get(key, Fraction(0)) + c1 * c2 * factor
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
        out = Scalar.__new__(Scalar)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __truediv__(self, other: "Scalar | RationalLike") -> "Scalar":
        return self * Scalar.coerce(other).inv()

    # -- comparisons and hashing --------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- involutions and evaluation ------------------------------------

    def conj(self) -> "Scalar":
        """Conjugation i -> -i, h -> -h, s -> s (h = hbar/i with hbar real)."""
        terms = {}
        for (hpow, part), coeff in self._terms.items():
            sign = -1 if (hpow + (part in (PART_I, PART_IS))) % 2 else 1
            terms[(hpow, part)] = coeff * sign
        out = Scalar.__new__(Scalar)
        out._terms = terms
        return out

    def _galois(self, flip_i: bool, flip_s: bool) -> "Scalar":
        """Field automorphism of Q(i, s) fixing h."""
        terms = {}
        for (hpow, part), coeff in self._terms.items():
            sign = 1
            if flip_i and part in (PART_I, PART_IS):
                sign = -sign
            if flip_s and part in (PART_S, PART_IS):
                sign = -sign
            terms[(hpow, part)] = coeff * sign
        out = Scalar.__new__(Scalar)
        out._terms = terms
        return out

    def specialize_h(self, value: RationalLike) -> "Scalar":
        """Substitute a rational number for h; i and s are untouched."""
        value = _coerce_fraction(value)
        terms: dict[tuple[int, int], Fraction] = {}
        for (hpow, part), coeff in self._terms.items():
            if hpow < 0 and value == 0:
                raise ZeroDivisionError("cannot specialize h := 0 on a pole in h")
            scaled = coeff * value**hpow
            key = (0, part)
            acc = terms.get(key, Fraction(0)) + scaled
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        out = Scalar.__new__(Scalar)
        out._terms = terms
        return out

    def inv(self) -> "Scalar":
        """Multiplicative inverse of h^k * w with w a nonzero element of Q(i, s).

        General Laurent polynomials in h are not invertible in the ring;
        those raise ValueError.
        """
        if not self._terms:
            raise ZeroDivisionError("scalar division by zero")
        hpows = {hpow for (hpow, _part) in self._terms}
        if len(hpows) != 1:
            raise ValueError("scalar is not invertible: mixed powers of h")
        (hpow,) = hpows
        base = self.mul_hpow(-hpow)
        conj_prod = Scalar.one()
        for flip_i, flip_s in ((True, False), (False, True), (True, True)):
            conj_prod = conj_prod * base._galois(flip_i, flip_s)
        norm = base * conj_prod
        norm_terms = norm._terms
        if set(norm_terms) != {(0, PART_ONE)}:
            raise AssertionError("norm of a Q(i,s) element must be rational")
        return conj_prod * Scalar.h(power=-hpow, coeff=1 / norm_terms[(0, PART_ONE)])

    # -- inspection -----------------------------------------------------

    def mul_hpow(self, shift: int) -> "Scalar":
        out = Scalar.__new__(Scalar)
        out._terms = {(hpow + shift, part): c for (hpow, part), c in self._terms.items()}
        return out

    def h_degrees(self) -> tuple[int, int] | None:
        """(min, max) power of h present, or None for the zero scalar."""
        if not self._terms:
            return None
        hpows = [hpow for (hpow, _part) in self._terms]
        return min(hpows), max(hpows)

    def rational_value(self) -> Fraction:
        """The value of a purely rational scalar; raises otherwise."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {(0, PART_ONE)}:
            return self._terms[(0, PART_ONE)]
        raise ValueError(f"scalar {self} is not a plain rational")

    def components(self) -> dict[tuple[int, int], Fraction]:
        """Copy of the canonical (hpow, part) -> rational table."""
        return dict(self._terms)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[dict]:
        records = []
        for (hpow, part), coeff in sorted(self._terms.items()):
            records.append(
                {
                    "hpow": hpow,
                    "part": PART_NAMES[part],
                    "num": coeff.numerator,
                    "den": coeff.denominator,
                }
            )
        return records

    @staticmethod
    def from_json(records: Iterable[Mapping]) -> "Scalar":
        terms: dict[tuple[int, int], Fraction] = {}
        for record in records:
            key = (int(record["hpow"]), _PART_BY_NAME[record["part"]])
            coeff = Fraction(int(record["num"]), int(record["den"]))
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return Scalar(terms)

    # -- printing -------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for (hpow, part), coeff in sorted(self._terms.items()):
            factors = []
            if hpow == 1:
                factors.append("h")
            elif hpow:
                factors.append(f"h^{hpow}")
            if part == PART_I:
                factors.append("i")
            elif part == PART_S:
                factors.append("s")
            elif part == PART_IS:
                factors.extend(("i", "s"))
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar.zero()
ONE = Scalar.one()
HALF = Scalar.rational(Fraction(1, 2))

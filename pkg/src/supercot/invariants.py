"""Canonical invariant symbols, invariance checking and exact kernel search.

The search works in a fixed bidegree (k in p, kappa in xi) with
constant coefficients: translation invariance forces x-independence, so
the ansatz is the span of the monomials p^alpha xi^I with |alpha| = k and
|I| = kappa.  Every generator action is expanded over the monomial times
(h-power times scalar-part) basis, giving an exact rational linear
system whose kernel is computed by Gaussian elimination over Q.
Optional flags enlarge the ansatz with bounded x-degree or h-degree as a
sanity check; both default to off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .coeff import Scalar
from .confmod import act_D_symbolside, act_S, act_T, normal_order, normal_order_inverse
from .spinop import SpinorDiffOp
from .star import star_mul
from .superpoly import Signature, SuperPolynomial
from .symplectic import conformal_generators

MODULE_TAGS = ("T", "S", "D")


@dataclass(frozen=True)
class Weights:
    """Symbol weight delta and operator weights (lambda, mu); delta = mu - lambda."""

    delta: Fraction | None = None
    lam: Fraction | None = None
    mu: Fraction | None = None

    def __post_init__(self):
        if self.lam is not None and self.mu is not None:
            delta = self.mu - self.lam
            if self.delta is not None and self.delta != delta:
                raise ValueError("inconsistent weights: delta must equal mu - lambda")
            object.__setattr__(self, "delta", delta)
        if self.delta is None:
            raise ValueError("weights must determine delta")

    @staticmethod
    def symbol(delta) -> "Weights":
        return Weights(delta=Fraction(delta))

    @staticmethod
    def operator(lam, mu) -> "Weights":
        return Weights(lam=Fraction(lam), mu=Fraction(mu))

    def to_json(self) -> dict:
        out = {"delta": str(self.delta)}
        if self.lam is not None:
            out["lambda"] = str(self.lam)
            out["mu"] = str(self.mu)
        return out


@dataclass(frozen=True)
class CanonicalSymbol:
    name: str
    poly: SuperPolynomial
    delta: Fraction


def canonical_symbol(name: str, sig: Signature) -> CanonicalSymbol:
    """chi, Delta, DeltaStarChi or R in the flat chart.

    chi is the epsilon-contracted volume symbol stored without dividing
    by n! (for n = 2 the stored value is 2 xi1 xi2); DeltaStarChi is
    literally star(Delta, chi), which carries the same normalisation.
    Invariance statements are insensitive to these overall constants.
    """
    n = sig.n
    if name == "chi":
        poly = SuperPolynomial.monomial(n, xi=tuple(range(1, n + 1)), coeff=factorial(n))
        return CanonicalSymbol(name, poly, Fraction(0))
    if name == "Delta":
        poly = SuperPolynomial.zero(n)
        for i in range(1, n + 1):
            poly = poly + SuperPolynomial.monomial(
                n, pexp=tuple(1 if k == i - 1 else 0 for k in range(n)), xi=(i,)
            )
        return CanonicalSymbol(name, poly, Fraction(1, n))
    if name == "DeltaStarChi":
        delta = canonical_symbol("Delta", sig).poly
        chi = canonical_symbol("chi", sig).poly
        return CanonicalSymbol(name, star_mul(delta, chi, sig), Fraction(1, n))
    if name == "R":
        poly = SuperPolynomial.zero(n)
        for i in range(1, n + 1):
            pexp = tuple(2 if k == i - 1 else 0 for k in range(n))
            poly = poly + SuperPolynomial.monomial(n, pexp=pexp, coeff=sig.eta(i))
        return CanonicalSymbol(name, poly, Fraction(2, n))
    raise KeyError(f"unknown canonical symbol {name!r}")


# -- invariance checking -------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    candidate: SuperPolynomial
    module_tag: str
    weights: Weights
    residuals: tuple[tuple[str, SuperPolynomial], ...]

    @property
    def invariant(self) -> bool:
        return all(res.is_zero() for _name, res in self.residuals)

    def nonzero(self) -> list[tuple[str, SuperPolynomial]]:
        return [(name, res) for name, res in self.residuals if not res.is_zero()]


def _apply_action(
    tag: str,
    gen,
    weights: Weights,
    F: SuperPolynomial,
    sig: Signature,
) -> SuperPolynomial:
    if tag == "T":
        return act_T(gen, weights.delta, F, sig)
    if tag == "S":
        return act_S(gen, weights.delta, F, sig)
    if tag == "D":
        if weights.lam is None:
            raise ValueError("module D needs operator weights (lambda, mu)")
        return act_D_symbolside(gen, weights.lam, weights.mu, F, sig)
    raise ValueError(f"unknown module tag {tag!r}")


def check_invariance(
    candidate: SuperPolynomial | SpinorDiffOp,
    module_tag: str,
    weights: Weights,
    sig: Signature,
) -> InvariantReport:
    """Apply every conformal generator and report the exact residuals.

    A SpinorDiffOp candidate is converted to its symbol first; by the
    normal-ordering route equality this is equivalent to the direct
    adjoint action on the operator.
    """
    if module_tag not in MODULE_TAGS:
        raise ValueError(f"unknown module tag {module_tag!r}")
    if isinstance(candidate, SpinorDiffOp):
        candidate = normal_order_inverse(candidate)
    residuals = []
    for gen in conformal_generators(sig):
        residuals.append((gen.name, _apply_action(module_tag, gen, weights, candidate, sig)))
    return InvariantReport(candidate, module_tag, weights, tuple(residuals))


# -- exact linear algebra ------------------------------------------------------


def exact_kernel(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Kernel basis of a rational matrix, in reduced echelon form.

    Pivots are chosen deterministically: leftmost column first, then the
    smallest row index.  Each kernel vector has a leading 1 in its own
    free column and zeros in the other free columns.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    work = [[Fraction(entry) for entry in row] for row in rows]
    pivot_cols: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [entry * inv for entry in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        pivot_cols.append(col)
        rank += 1
        if rank == len(work):
            break
    return _kernel_from_rref(work[: len(pivot_cols)], pivot_cols, ncols)


def _kernel_from_rref(
    rref_rows: list[list[Fraction]], pivot_cols: list[int], ncols: int
) -> list[list[Fraction]]:
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -rref_rows[r][free]
        basis.append(vec)
    return basis


def _streaming_kernel(rows, ncols: int) -> list[list[Fraction]]:
    """Kernel via incremental row reduction; canonical (same RREF) result.

    Stops consuming rows once the rank saturates, which is the common
    case for invariant searches with trivial kernels.
    """
    from bisect import insort

    pivots: dict[int, list[Fraction]] = {}
    ordered_cols: list[int] = []
    for row in rows:
        vec = list(row)
        for col in ordered_cols:
            if vec[col]:
                factor = vec[col]
                pivot_row = pivots[col]
                vec = [a - factor * b for a, b in zip(vec, pivot_row)]
        lead = next((c for c, v in enumerate(vec) if v), None)
        if lead is None:
            continue
        inv = 1 / vec[lead]
        pivots[lead] = [v * inv for v in vec]
        insort(ordered_cols, lead)
        if len(pivots) == ncols:
            return []
    pivot_cols = ordered_cols
    # back-substitute to reduced echelon form
    for idx, col in enumerate(pivot_cols):
        for other in pivot_cols[idx + 1 :]:
            row = pivots[col]
            if row[other]:
                factor = row[other]
                pivots[col] = [a - factor * b for a, b in zip(row, pivots[other])]
    rref_rows = [pivots[c] for c in pivot_cols]
    return _kernel_from_rref(rref_rows, pivot_cols, ncols)


# -- exhaustive search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    signature: Signature
    bidegree: tuple[int, int]
    module_tag: str
    weights: Weights
    basis: tuple[SuperPolynomial, ...]
    ansatz_size: int = field(compare=False, default=0)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "signature": [self.signature.p, self.signature.q],
            "bidegree": list(self.bidegree),
            "module": self.module_tag,
            "weights": self.weights.to_json(),
            "dimension": self.dimension,
            "basis": [poly.to_json() for poly in self.basis],
        }


def _compositions(total: int, slots: int):
    """Weak compositions of `total` into `slots` parts, lexicographic."""
    if slots == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, slots - 1):
            yield (head,) + rest


def _ansatz_monomials(
    sig: Signature, k: int, kappa: int, x_degree: int, h_degree: int
) -> list[SuperPolynomial]:
    n = sig.n
    xi_sets = list(combinations(range(1, n + 1), kappa))
    p_exps = list(_compositions(k, n))
    x_exps: list[tuple[int, ...]] = [(0,) * n]
    for deg in range(1, x_degree + 1):
        x_exps.extend(_compositions(deg, n))
    monomials = []
    for xexp in x_exps:
        for pexp in p_exps:
            for xi in xi_sets:
                for hpow in range(h_degree + 1):
                    monomials.append(
                        SuperPolynomial.monomial(
                            n, xexp=xexp, pexp=pexp, xi=xi, coeff=Scalar.h(hpow)
                        )
                    )
    return monomials


def search_invariants(
    sig: Signature,
    k: int,
    kappa: int,
    module_tag: str,
    weights: Weights,
    x_degree: int = 0,
    h_degree: int = 0,
) -> SearchResult:
    """Exact kernel of all generator actions on the fixed-bidegree ansatz."""
    if k < 0 or not 0 <= kappa <= sig.n:
        raise ValueError("bidegree out of range")
    if module_tag not in MODULE_TAGS:
        raise ValueError(f"unknown module tag {module_tag!r}")
    monomials = _ansatz_monomials(sig, k, kappa, x_degree, h_degree)
    generators = conformal_generators(sig)
    row_index: dict[tuple, int] = {}
    columns: list[dict[int, Fraction]] = []
    for mono in monomials:
        column: dict[int, Fraction] = {}
        for gen in generators:
            residual = _apply_action(module_tag, gen, weights, mono, sig)
            for key, scalar in residual.items():
                for (hpow, part), value in scalar.components().items():
                    row_key = (gen.name, key, hpow, part)
                    row = row_index.setdefault(row_key, len(row_index))
                    column[row] = column.get(row, Fraction(0)) + value
        columns.append(column)

    def rows():
        seen = set()
        for row in range(len(row_index)):
            vec = tuple(columns[col].get(row, Fraction(0)) for col in range(len(monomials)))
            if any(vec) and vec not in seen:
                seen.add(vec)
                yield vec

    kernel = _streaming_kernel(rows(), len(monomials))
    basis = []
    for vec in kernel:
        poly = SuperPolynomial.zero(sig.n)
        for coeff, mono in zip(vec, monomials):
            if coeff:
                poly = poly + mono.scale(coeff)
        basis.append(poly)
    return SearchResult(sig, (k, kappa), module_tag, weights, tuple(basis), len(monomials))


# -- conformal Dirac powers -------------------------------------------------------


@dataclass(frozen=True)
class DiracPower:
    power: int
    operator: SpinorDiffOp
    symbol: SuperPolynomial
    weights: Weights


def dirac_power(s: int, sig: Signature) -> DiracPower:
    """Normal ordering of Delta R^s at the resonant weights.

    The weight pair is ((n-2s-1)/2n, (n+2s+1)/2n); s = 0 is the Dirac
    operator itself, up to one factor of h carried by normal ordering.
    """
    if sig.n % 2:
        raise ValueError("Dirac powers require even dimension")
    if s < 0:
        raise ValueError("power must be non-negative")
    n = sig.n
    delta_poly = canonical_symbol("Delta", sig).poly
    r_poly = canonical_symbol("R", sig).poly
    symbol = delta_poly
    for _ in range(s):
        symbol = symbol * r_poly
    weights = Weights.operator(
        Fraction(n - 2 * s - 1, 2 * n), Fraction(n + 2 * s + 1, 2 * n)
    )
    return DiracPower(s, normal_order(symbol, sig), symbol, weights)


# -- predicted dimensions from the classification ----------------------------------


def predicted_dimension(
    sig: Signature, k: int, kappa: int, module_tag: str, weights: Weights
) -> int:
    """Invariant-space dimension predicted by the classification theorems.

    Families Delta^a * chi^b R^s (a, b in {0,1}, s >= 0) give, in fixed
    bidegree (k, kappa) with a = k mod 2 and s = (k - a)/2:
      T at delta = k/n: kappa = a and kappa = n - a both count;
      S at delta = k/n: as T except a = b = 0 needs s = 0 (the constant);
      D at mu - lam = k/n: the constant and chi (k = 0, any lam = mu);
        Delta R^s (kappa = 1) and its chirality twist Delta*chi R^s
        (kappa = n-1), both only at lam = (n-k)/2n; nothing of even
        order.  The twist N(Delta*chi R^s) equals -N(chi) o N(Delta R^s),
        a composition of invariants, hence invariant for every s.
    """
    n = sig.n
    if weights.delta != Fraction(k, n):
        return 0
    a = k % 2
    dim = 0
    if module_tag == "T":
        dim += 1 if kappa == a else 0
        dim += 1 if kappa == n - a else 0
        return dim
    if module_tag == "S":
        if a == 1:
            dim += 1 if kappa == 1 else 0
            dim += 1 if kappa == n - 1 else 0
        else:
            dim += 1 if kappa == n else 0
            dim += 1 if k == 0 and kappa == 0 else 0
        return dim
    if module_tag == "D":
        if weights.lam is None:
            raise ValueError("module D needs operator weights")
        if k == 0:
            dim += 1 if kappa == 0 else 0
            dim += 1 if kappa == n else 0
            return dim
        if a == 0:
            return 0
        if weights.lam == Fraction(n - k, 2 * n):
            dim += 1 if kappa == 1 else 0
            dim += 1 if kappa == n - 1 else 0
        return dim
    raise ValueError(f"unknown module tag {module_tag!r}")

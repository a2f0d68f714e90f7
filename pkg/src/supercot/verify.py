"""Named property suites driving the structural identities of the engine.

Each suite returns a list of CheckRow, one per identity; a row fails
only when an identity does not hold exactly in the scalar ring.  The
randomised suites draw from a seeded generator so reruns are
reproducible and byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import Scalar
from .clifford import build_spin_rep, kosmann_lie, prequant_op, weyl_bracket_check
from .confmod import (
    act_D_direct,
    act_D_symbolside,
    act_S,
    act_T,
    normal_order,
    normal_order_inverse,
)
from .matutil import anticommutator, identity, is_zero, mat_eq, mat_mul
from .randgen import (
    random_bidegree,
    random_parity_homogeneous,
    random_superpoly,
    random_xi_homogeneous,
    random_xi_poly,
)
from .star import star_mul
from .superpoly import Signature, SuperPolynomial
from .symplectic import (
    comoment_even,
    comoment_odd,
    conformal_generators,
    hamiltonian_lift,
    pair_alpha,
    pair_beta,
    poisson,
    vf_bracket,
)


@dataclass
class CheckRow:
    name: str
    ok: bool
    cases: int
    detail: str = field(default="")

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "cases": self.cases}
        if self.detail:
            out["detail"] = self.detail
        return out


def _row(name: str, cases: int, failures: list[str]) -> CheckRow:
    return CheckRow(name, not failures, cases, failures[0] if failures else "")


# -- poisson ------------------------------------------------------------------


def suite_poisson(sig: Signature, seed: int) -> list[CheckRow]:
    rng = random.Random(seed)
    n = sig.n
    rows = []

    failures = []
    cases = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cases += 3
            got = poisson(SuperPolynomial.var_p(n, i), SuperPolynomial.var_x(n, j), sig)
            want = SuperPolynomial.one(n) if i == j else SuperPolynomial.zero(n)
            if got != want:
                failures.append(f"{{p{i},x{j}}} = {got}")
            got = poisson(SuperPolynomial.var_xi(n, i), SuperPolynomial.var_xi(n, j), sig)
            want = (
                SuperPolynomial.constant(n, Scalar.h(-1, -sig.eta(i)))
                if i == j
                else SuperPolynomial.zero(n)
            )
            if got != want:
                failures.append(f"{{xi{i},xi{j}}} = {got}")
            if not poisson(SuperPolynomial.var_x(n, i), SuperPolynomial.var_x(n, j), sig).is_zero():
                failures.append(f"{{x{i},x{j}}} nonzero")
    rows.append(_row("poisson.canonical-relations", cases, failures))

    failures = []
    count = 200
    for _ in range(count):
        F = random_parity_homogeneous(rng, n, rng.randint(0, 1))
        G = random_parity_homogeneous(rng, n, rng.randint(0, 1))
        sign = -1 if (F.parity() and G.parity()) else 1
        lhs = poisson(F, G, sig)
        rhs = poisson(G, F, sig).scale(-sign)
        if lhs != rhs:
            failures.append(f"antisymmetry fails: F={F}, G={G}")
    rows.append(_row("poisson.graded-antisymmetry", count, failures))

    failures = []
    for _ in range(count):
        F = random_parity_homogeneous(rng, n, rng.randint(0, 1), terms=3)
        G = random_parity_homogeneous(rng, n, rng.randint(0, 1), terms=3)
        H = random_superpoly(rng, n, terms=3)
        lhs = poisson(F, G * H, sig)
        sign = -1 if (F.parity() and G.parity()) else 1
        rhs = poisson(F, G, sig) * H + (G * poisson(F, H, sig)).scale(sign)
        if lhs != rhs:
            failures.append(f"Leibniz fails: F={F}, G={G}, H={H}")
    rows.append(_row("poisson.graded-leibniz", count, failures))

    failures = []
    for _ in range(count):
        F = random_parity_homogeneous(rng, n, rng.randint(0, 1), terms=3)
        G = random_parity_homogeneous(rng, n, rng.randint(0, 1), terms=3)
        H = random_parity_homogeneous(rng, n, rng.randint(0, 1), terms=3)
        sign = -1 if (F.parity() and G.parity()) else 1
        lhs = poisson(F, poisson(G, H, sig), sig)
        rhs = poisson(poisson(F, G, sig), H, sig) + poisson(G, poisson(F, H, sig), sig).scale(sign)
        if lhs != rhs:
            failures.append(f"Jacobi fails: F={F}, G={G}, H={H}")
    rows.append(_row("poisson.graded-jacobi", count, failures))
    return rows


# -- star -----------------------------------------------------------------------


def suite_star(sig: Signature, seed: int) -> list[CheckRow]:
    rng = random.Random(seed)
    n = sig.n
    rows = []

    failures = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            xi_i, xi_j = SuperPolynomial.var_xi(n, i), SuperPolynomial.var_xi(n, j)
            acc = star_mul(xi_i, xi_j, sig) + star_mul(xi_j, xi_i, sig)
            want = SuperPolynomial.constant(n, -sig.eta(i)) if i == j else SuperPolynomial.zero(n)
            if acc != want:
                failures.append(f"xi{i}*xi{j}+xi{j}*xi{i} = {acc}")
    rows.append(_row("star.clifford-relations", n * n, failures))

    failures = []
    count = 200
    for _ in range(count):
        F, G, H = (random_xi_poly(rng, n) for _ in range(3))
        if star_mul(star_mul(F, G, sig), H, sig) != star_mul(F, star_mul(G, H, sig), sig):
            failures.append(f"associativity fails: F={F}, G={G}, H={H}")
    rows.append(_row("star.associativity", count, failures))

    failures = []
    count = 100
    for _ in range(count):
        k, l = rng.randint(0, n), rng.randint(0, n)
        F = random_xi_homogeneous(rng, n, k)
        G = random_xi_homogeneous(rng, n, l)
        prod = star_mul(F, G, sig)
        if prod.bidegree_component(0, k + l) != (F * G).bidegree_component(0, k + l):
            failures.append(f"top component differs: F={F}, G={G}")
        for (_kk, kappa) in prod.bidegrees():
            if kappa > k + l or (k + l - kappa) % 2:
                failures.append(f"degree {kappa} outside filtration for ({k},{l})")
    rows.append(_row("star.filtration", count, failures))

    failures = []
    count = 50
    for _ in range(count):
        u = random_xi_homogeneous(rng, n, rng.randint(0, min(2, n)))
        v = random_xi_poly(rng, n)
        ok, lhs, rhs = weyl_bracket_check(u, v, sig)
        if not ok:
            failures.append(f"bracket mismatch: u={u}, v={v}, lhs={lhs}, rhs={rhs}")
    rows.append(_row("star.weyl-bracket-degree2", count, failures))
    return rows


# -- lift and comoment ------------------------------------------------------------


def suite_lift(sig: Signature, seed: int) -> list[CheckRow]:
    rng = random.Random(seed)
    n = sig.n
    gens = conformal_generators(sig)
    rows = []

    failures = []
    lifts = {g.name: hamiltonian_lift(g, sig) for g in gens}
    for X in gens:
        for Y in gens:
            lhs = lifts[X.name].compose(lifts[Y.name]) - lifts[Y.name].compose(lifts[X.name])
            if lhs != hamiltonian_lift(vf_bracket(X, Y), sig):
                failures.append(f"[lift {X.name}, lift {Y.name}] differs from lift of bracket")
    rows.append(_row("lift.lie-algebra-morphism", len(gens) ** 2, failures))

    failures = []
    cases = 0
    for X in gens:
        J = comoment_even(X, sig)
        for _ in range(3):
            cases += 1
            f = random_superpoly(rng, n, terms=4)
            if lifts[X.name].apply(f) != poisson(J, f, sig):
                failures.append(f"{X.name}: lift(f) != {{J, f}}")
    rows.append(_row("lift.hamiltonian-consistency", cases, failures))

    failures = []
    for X in gens:
        if pair_alpha(lifts[X.name], sig) != comoment_even(X, sig):
            failures.append(f"{X.name}: <lift, alpha> != even comoment")
        if pair_beta(lifts[X.name], sig) != comoment_odd(X, sig):
            failures.append(f"{X.name}: <lift, beta> != odd comoment")
    rows.append(_row("lift.pairings-give-comoments", 2 * len(gens), failures))
    return rows


def suite_comoment(sig: Signature, seed: int) -> list[CheckRow]:
    gens = conformal_generators(sig)
    failures = []
    for X in gens:
        JX = comoment_even(X, sig)
        for Y in gens:
            JY = comoment_even(Y, sig)
            if poisson(JX, JY, sig) != comoment_even(vf_bracket(X, Y), sig):
                failures.append(f"{{J_{X.name}, J_{Y.name}}} != J_[X,Y]")
    return [_row("comoment.lie-algebra-morphism", len(gens) ** 2, failures)]


# -- spin representation -------------------------------------------------------------


def suite_spinrep(sig: Signature, seed: int) -> list[CheckRow]:
    rng = random.Random(seed)
    n = sig.n
    rows = []
    rep = build_spin_rep(sig)

    rows.append(
        _row(
            "spinrep.clifford-relations",
            n * n,
            [] if rep.verify_clifford_relations() else ["anticommutators differ from -eta"],
        )
    )
    rank = rep.monomial_rank()
    rows.append(
        _row(
            "spinrep.monomial-rank",
            1,
            [] if rank == 2**n else [f"rank {rank} != {2**n}"],
        )
    )

    failures = []
    count = 20
    for _ in range(count):
        F, G = random_xi_poly(rng, n), random_xi_poly(rng, n)
        if not mat_eq(rep.rho(star_mul(F, G, sig)), mat_mul(rep.rho(F), rep.rho(G))):
            failures.append(f"rho not multiplicative on F={F}, G={G}")
    rows.append(_row("spinrep.rho-algebra-morphism", count, failures))

    failures = []
    cases = 0
    for variant in ("standard", "canonical"):
        mats = [prequant_op(SuperPolynomial.var_xi(n, i), sig, variant) for i in range(1, n + 1)]
        for i in range(n):
            for j in range(n):
                cases += 1
                anti = anticommutator(mats[i], mats[j])
                want = identity(2**n, Scalar.rational(-2 * sig.eta(i + 1))) if i == j else None
                if i == j:
                    if not mat_eq(anti, want):
                        failures.append(f"{variant}: c(xi{i+1})^2 wrong")
                elif not is_zero(anti):
                    failures.append(f"{variant}: c(xi{i+1}) and c(xi{j+1}) do not anticommute")
    rows.append(_row("spinrep.prequantisation-relations", cases, failures))
    return rows


# -- kosmann ---------------------------------------------------------------------------


def suite_kosmann(sig: Signature, seed: int) -> list[CheckRow]:
    gens = conformal_generators(sig)
    rows = []

    failures = []
    for X in gens:
        lhs = normal_order(comoment_even(X, sig), sig)
        rhs = kosmann_lie(X, sig).scale(Scalar.h())
        if lhs != rhs:
            failures.append(f"{X.name}: N(J) != h sL")
    rows.append(_row("kosmann.quantised-comoment", len(gens), failures))

    failures = []
    ders = {g.name: kosmann_lie(g, sig) for g in gens}
    for X in gens:
        for Y in gens:
            lhs = ders[X.name].commutator(ders[Y.name])
            if lhs != kosmann_lie(vf_bracket(X, Y), sig):
                failures.append(f"[sL_{X.name}, sL_{Y.name}] != sL_[X,Y]")
    rows.append(_row("kosmann.lie-algebra-morphism", len(gens) ** 2, failures))
    return rows


# -- module actions ----------------------------------------------------------------------


def suite_modules(sig: Signature, seed: int) -> list[CheckRow]:
    rng = random.Random(seed)
    n = sig.n
    gens = conformal_generators(sig)
    rows = []
    delta = Fraction(1, 3)
    lam = Fraction(1, 5)
    mu = lam + delta

    def actions():
        yield "tensorial", lambda X, F: act_T(X, delta, F, sig)
        yield "hamiltonian", lambda X, F: act_S(X, delta, F, sig)
        yield "operator", lambda X, F: act_D_symbolside(X, lam, mu, F, sig)

    for label, action in actions():
        failures = []
        cases = 0
        for X in gens:
            for Y in gens:
                B = vf_bracket(X, Y)
                for _ in range(2):
                    cases += 1
                    F = random_superpoly(rng, n, terms=3)
                    lhs = action(X, action(Y, F)) - action(Y, action(X, F))
                    if lhs != action(B, F):
                        failures.append(f"[{label} {X.name}, {label} {Y.name}] fails")
        rows.append(_row(f"modules.{label}-morphism", cases, failures))

    failures = []
    cases = 0
    for X in gens:
        for _ in range(3):
            cases += 1
            F = random_superpoly(rng, n, terms=4)
            diff = act_S(X, delta, F, sig) - act_T(X, delta, F, sig)
            corr = SuperPolynomial.zero(n)
            for i in range(1, n + 1):
                dpF = F.derive("p", i)
                if dpF.is_zero():
                    continue
                acc = SuperPolynomial.zero(n)
                for k in range(1, n + 1):
                    for j in range(1, n + 1):
                        if k == j:
                            continue
                        hess = X.component(k).derive("x", i).derive("x", j)
                        if not hess.is_zero():
                            acc = acc + (hess * SuperPolynomial.monomial(n, xi=(k, j))).scale(sig.eta(k))
                corr = corr + acc * dpF
            corr = corr.scale(Scalar.h(1, Fraction(-1, 2)))
            if diff != corr:
                failures.append(f"{X.name}: hamiltonian minus tensorial differs from xi xi d2X dp term")
    rows.append(_row("modules.hamiltonian-vs-tensorial-difference", cases, failures))

    failures = []
    cases = 0
    similitudes = [g for g in gens if not g.name.startswith("K")]
    for X in similitudes:
        for _ in range(2):
            cases += 1
            F = random_superpoly(rng, n, terms=4)
            a = act_T(X, delta, F, sig)
            b = act_S(X, delta, F, sig)
            c = act_D_symbolside(X, lam, mu, F, sig)
            if a != b or b != c:
                failures.append(f"{X.name}: three actions disagree on a similitude")
    rows.append(_row("modules.similitude-agreement", cases, failures))

    failures = []
    count = 100
    for t in range(count):
        X = gens[t % len(gens)]
        F = random_bidegree(rng, n, rng.randint(0, 2), rng.randint(0, min(2, n)), terms=3)
        lhs = normal_order(act_D_symbolside(X, lam, mu, F, sig), sig)
        rhs = act_D_direct(X, lam, mu, normal_order(F, sig), sig)
        if lhs != rhs:
            failures.append(f"{X.name}: symbol-side and direct routes disagree on {F}")
    rows.append(_row("modules.operator-route-equality", count, failures))
    return rows


# -- graded Poisson correspondence ----------------------------------------------------------


def suite_graded_poisson(sig: Signature, seed: int) -> list[CheckRow]:
    rng = random.Random(seed)
    n = sig.n
    rows = []

    failures = []
    count = 100
    inv_h = Scalar.h(-1)
    for _ in range(count):
        k1, kap1 = rng.randint(0, 2), rng.randint(0, min(2, n))
        k2, kap2 = rng.randint(0, 2), rng.randint(0, min(2, n))
        F = random_bidegree(rng, n, k1, kap1, terms=3)
        G = random_bidegree(rng, n, k2, kap2, terms=3)
        d1, d2 = 2 * k1 + kap1, 2 * k2 + kap2
        target = d1 + d2 - 2
        bracket_ops = normal_order(F, sig).graded_commutator(normal_order(G, sig))
        lhs_poly = normal_order_inverse(bracket_ops).scale(inv_h)
        lhs = lhs_poly.hamiltonian_components().get(target, SuperPolynomial.zero(n))
        rhs = poisson(F, G, sig).hamiltonian_components().get(target, SuperPolynomial.zero(n))
        if lhs != rhs:
            failures.append(f"top-symbol mismatch for F={F}, G={G}")
        if not lhs_poly.is_zero() and max(lhs_poly.hamiltonian_components()) > target:
            failures.append(f"commutator exceeds filtration degree for F={F}, G={G}")
    rows.append(_row("graded-poisson.bracket-correspondence", count, failures))
    return rows


SUITES = {
    "poisson": (suite_poisson, False),
    "star": (suite_star, False),
    "lift": (suite_lift, False),
    "comoment": (suite_comoment, False),
    "spinrep": (suite_spinrep, True),
    "kosmann": (suite_kosmann, True),
    "modules": (suite_modules, True),
    "graded-poisson": (suite_graded_poisson, False),
}


def run_suite(name: str, sig: Signature, seed: int) -> list[CheckRow]:
    func, needs_even = SUITES[name]
    if needs_even and sig.n % 2:
        raise ValueError(f"suite {name!r} requires an even dimension")
    return func(sig, seed)

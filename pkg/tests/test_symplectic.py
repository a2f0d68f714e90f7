import random
from fractions import Fraction

import pytest

from supercot.coeff import Scalar
from supercot.diffop import SuperDiffOp
from supercot.parse import sp_parse
from supercot.randgen import random_parity_homogeneous, random_superpoly
from supercot.superpoly import Signature, SuperPolynomial
from supercot.symplectic import (
    NotConformalError,
    VectorFieldOnM,
    comoment_even,
    comoment_odd,
    conformal_generators,
    conformal_killing_factor,
    generator_by_name,
    hamiltonian_lift,
    pair_alpha,
    pair_beta,
    poisson,
    vf_bracket,
)

E2 = Signature(2, 0)
P2 = lambda text: sp_parse(text, 2)


def test_bracket_canonical_relations():
    assert poisson(P2("p1"), P2("x1"), E2) == P2("1")
    assert poisson(P2("p1"), P2("x2"), E2).is_zero()
    assert poisson(P2("xi1"), P2("xi1"), E2) == P2("-h^-1")
    assert poisson(P2("x1"), P2("x2"), E2).is_zero()
    lor = Signature(1, 1)
    assert poisson(sp_parse("xi2", 2), sp_parse("xi2", 2), lor) == P2("h^-1")


def test_bracket_requires_homogeneous_left():
    with pytest.raises(ValueError):
        poisson(P2("xi1 + xi1*xi2"), P2("x1"), E2)


def test_bracket_axioms_randomised():
    rng = random.Random(10)
    for sig in (E2, Signature(1, 1)):
        for _ in range(60):
            F = random_parity_homogeneous(rng, 2, rng.randint(0, 1), terms=3)
            G = random_parity_homogeneous(rng, 2, rng.randint(0, 1), terms=3)
            H = random_parity_homogeneous(rng, 2, rng.randint(0, 1), terms=3)
            sign = -1 if (F.parity() and G.parity()) else 1
            assert poisson(F, G, sig) == poisson(G, F, sig).scale(-sign)
            assert poisson(F, G * H, sig) == poisson(F, G, sig) * H + (
                G * poisson(F, H, sig)
            ).scale(sign)
            lhs = poisson(F, poisson(G, H, sig), sig)
            rhs = poisson(poisson(F, G, sig), H, sig) + poisson(
                G, poisson(F, H, sig), sig
            ).scale(sign)
            assert lhs == rhs


def test_generator_inventory():
    gens = conformal_generators(E2)
    assert [g.name for g in gens] == ["T1", "T2", "R12", "D", "K1", "K2"]
    sig4 = Signature(3, 1)
    assert len(conformal_generators(sig4)) == 15
    with pytest.raises(ValueError):
        conformal_generators(Signature(1, 0))


def test_inversion_components():
    K1 = generator_by_name(E2, "K1")
    assert K1.component(1) == P2("x2^2 - x1^2")
    assert K1.component(2) == P2("-2*x1*x2")
    D = generator_by_name(E2, "D")
    assert [str(c) for c in D.components] == ["x1", "x2"]


def test_vf_bracket():
    T1 = generator_by_name(E2, "T1")
    T2 = generator_by_name(E2, "T2")
    D = generator_by_name(E2, "D")
    K1 = generator_by_name(E2, "K1")
    assert vf_bracket(T1, D).components == T1.components
    assert all(c.is_zero() for c in vf_bracket(T1, T2).components)
    assert vf_bracket(D, K1).components == K1.components


def test_conformal_killing_factor():
    assert conformal_killing_factor(generator_by_name(E2, "D"), E2) == P2("2")
    assert conformal_killing_factor(generator_by_name(E2, "R12"), E2).is_zero()
    bad = VectorFieldOnM(2, (P2("x1"), P2("0")))
    assert conformal_killing_factor(bad, E2) is None
    with pytest.raises(NotConformalError):
        hamiltonian_lift(bad, E2)
    with pytest.raises(NotConformalError):
        comoment_even(bad, E2)


def test_lift_of_translation_and_homothety():
    T1 = generator_by_name(E2, "T1")
    assert hamiltonian_lift(T1, E2) == SuperDiffOp.partial(2, "x", 1)
    D = generator_by_name(E2, "D")
    expect = (
        SuperDiffOp.term(P2("x1"), dx=(1, 0))
        + SuperDiffOp.term(P2("x2"), dx=(0, 1))
        + SuperDiffOp.term(P2("-p1"), dp=(1, 0))
        + SuperDiffOp.term(P2("-p2"), dp=(0, 1))
    )
    assert hamiltonian_lift(D, E2) == expect


def test_comoment_values():
    assert comoment_even(generator_by_name(E2, "T1"), E2) == P2("p1")
    # rotation: orbital momentum plus the spin term -h xi1 xi2 (the sign is
    # forced by pair_alpha(lift) = comoment and the bracket normalisation)
    assert comoment_even(generator_by_name(E2, "R12"), E2) == P2("x1*p2 - x2*p1 - h*xi1*xi2")
    assert comoment_odd(generator_by_name(E2, "T1"), E2) == P2("xi1")
    assert comoment_odd(generator_by_name(E2, "D"), E2) == P2("x1*xi1 + x2*xi2")


def test_pairings():
    assert pair_alpha(SuperDiffOp.partial(2, "x", 1), E2) == P2("p1")
    assert pair_beta(SuperDiffOp.partial(2, "x", 1), E2) == P2("xi1")
    assert pair_alpha(SuperDiffOp.partial(2, "p", 1), E2).is_zero()
    with pytest.raises(ValueError):
        pair_alpha(SuperDiffOp.term(SuperPolynomial.one(2), dx=(2, 0)), E2)


def test_defining_identities_all_generators():
    for sig in (E2, Signature(1, 1), Signature(2, 1)):
        for gen in conformal_generators(sig):
            lift = hamiltonian_lift(gen, sig)
            assert pair_alpha(lift, sig) == comoment_even(gen, sig)
            assert pair_beta(lift, sig) == comoment_odd(gen, sig)


def test_hamiltonian_consistency():
    rng = random.Random(11)
    for sig in (E2, Signature(1, 1)):
        for gen in conformal_generators(sig):
            J = comoment_even(gen, sig)
            lift = hamiltonian_lift(gen, sig)
            for _ in range(3):
                f = random_superpoly(rng, 2, terms=4)
                assert lift.apply(f) == poisson(J, f, sig)


def test_morphisms_n2():
    for sig in (E2, Signature(1, 1)):
        gens = conformal_generators(sig)
        lifts = {g.name: hamiltonian_lift(g, sig) for g in gens}
        for X in gens:
            JX = comoment_even(X, sig)
            for Y in gens:
                B = vf_bracket(X, Y)
                assert poisson(JX, comoment_even(Y, sig), sig) == comoment_even(B, sig)
                got = lifts[X.name].compose(lifts[Y.name]) - lifts[Y.name].compose(lifts[X.name])
                assert got == hamiltonian_lift(B, sig)


def test_diffop_compose_matches_apply():
    rng = random.Random(12)
    for _ in range(40):
        A = SuperDiffOp.term(
            random_superpoly(rng, 2, terms=2),
            dxi=tuple(sorted(rng.sample((1, 2), rng.randint(0, 2)))),
            dx=(rng.randint(0, 1), rng.randint(0, 1)),
            dp=(rng.randint(0, 1), rng.randint(0, 1)),
        )
        B = SuperDiffOp.term(
            random_superpoly(rng, 2, terms=2),
            dxi=tuple(sorted(rng.sample((1, 2), rng.randint(0, 2)))),
            dp=(rng.randint(0, 1), rng.randint(0, 1)),
        )
        F = random_superpoly(rng, 2, terms=3)
        assert A.compose(B).apply(F) == A.apply(B.apply(F))

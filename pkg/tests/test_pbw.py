import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _reps import cyc_to_complex, element_matrix, monomial_matrix, power_rep, with_root_vectors
from qcenter.pbw import (
    GENERATOR_WEIGHTS,
    AlgebraKind,
    PBWAlgebra,
    check_serre,
    enumerate_congruent_weight_space,
    enumerate_weight_space,
    weight,
    weight_census,
)

SL3 = AlgebraKind("sl3", 5)
SL2 = AlgebraKind("sl2", 5)
ALG = PBWAlgebra(SL3)
Q = ALG.q
C = (Q(1) - Q(-1)).inverse()

REP = with_root_vectors(power_rep("sl3", 5, 4), 5)


def random_monomial(rng, kind=SL3, max_exp=None):
    top = kind.l - 1 if max_exp is None else max_exp
    return tuple(rng.randint(0, top) for _ in kind.letters)


monomials = st.lists(st.integers(0, 4), min_size=8, max_size=8).map(tuple)


# -- basic examples -----------------------------------------------------------

def test_weight_examples():
    assert weight(SL3, (0,) * 8) == (0, 0)
    assert weight(SL3, ALG.monomial({"E3": 1}).terms.popitem()[0]) == (1, 1)
    assert weight(SL3, (1, 0, 0, 0, 0, 0, 0, 1)) == (0, 0)
    assert weight(SL2, (1, 3, 2)) == (2,)


def test_e1_times_f1():
    got = ALG.mul_generator("E1", ALG.monomial({"F1": 1}))
    expected = ALG.monomial({"F1": 1, "E1": 1}) + C * ALG.monomial({"K1": 1}) - C * ALG.monomial({"K1": 4})
    assert got == expected


def test_k1_times_e1():
    e1 = ALG.monomial({"E1": 1})
    assert ALG.mul_generator("K1", e1) == ALG.monomial({"K1": 1, "E1": 1})
    # E1 K1 = q^-2 K1 E1, i.e. K1 E1 = q^2 E1 K1
    assert ALG.mul_generator("K1", e1, "right") == Q(-2) * ALG.monomial({"K1": 1, "E1": 1})


def test_e1_nilpotent():
    assert not ALG.mul_generator("E1", ALG.monomial({"E1": 4}))
    assert not ALG.mul_generator("F2", ALG.monomial({"F2": 4}), "right")


def test_e1_times_e2():
    got = ALG.mul_generator("E1", ALG.monomial({"E2": 1}))
    assert got == Q(1) * ALG.monomial({"E2": 1, "E1": 1}) + Q(1) * ALG.monomial({"E3": 1})


def test_commutator_examples():
    assert not ALG.commutator("E1", ALG.one())
    got = ALG.commutator("E1", ALG.monomial({"F1": 1}))
    assert got == C * ALG.monomial({"K1": 1}) - C * ALG.monomial({"K1": 4})
    rng = random.Random(1)
    zero_weight = enumerate_weight_space(SL3, (0, 0))
    for mono in rng.sample(zero_weight, 50):
        x = ALG.monomial(mono)
        assert not ALG.commutator("K1", x) and not ALG.commutator("K2", x)


def test_k_inverse_is_power():
    assert ALG.word("K1", "K1inv") == ALG.one()
    assert ALG.word("K2inv") == ALG.monomial({"K2": 4})


def test_render():
    assert ALG.one().render() == "(1) * 1"
    assert "F1^1 E1^1" in ALG.word("E1", "F1").render()


def test_monomial_validation():
    with pytest.raises(ValueError):
        ALG.monomial((5, 0, 0, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        ALG.monomial((0,) * 3)


def test_invalid_kinds():
    with pytest.raises(ValueError):
        AlgebraKind("sl3", 9)
    with pytest.raises(ValueError):
        AlgebraKind("sl4", 5)
    with pytest.raises(ValueError):
        AlgebraKind("sl2", 4)
    assert AlgebraKind("sl2", 3).l == 3


# -- weight spaces ----------------------------------------------------------------

def test_weight_space_sizes():
    assert len(enumerate_weight_space(SL3, (0, 0))) == 8125
    for g in ("E1", "E2", "F1", "F2"):
        assert len(enumerate_weight_space(SL3, GENERATOR_WEIGHTS[g])) == 7500
    assert len(enumerate_weight_space(SL2, (0,))) == 25
    assert len(enumerate_weight_space(SL2, (2,))) == 20


def test_weight_zero_patterns_brute_force():
    patterns = {m[:3] + m[5:] for m in enumerate_weight_space(SL3, (0, 0))}
    assert len(patterns) == 325
    count = 0
    for n1, n3, n2, m2, m3, m1 in itertools.product(range(5), repeat=6):
        if m1 + m3 == n1 + n3 and m2 + m3 == n2 + n3:
            count += 1
    assert count == 325


def test_weight_space_sorted_and_exact():
    space = enumerate_weight_space(SL3, (1, 1))
    assert space == sorted(space)
    assert all(weight(SL3, m) == (1, 1) for m in space)


@pytest.mark.parametrize("kind", [AlgebraKind("sl3", 5), AlgebraKind("sl3", 7), AlgebraKind("sl2", 5), AlgebraKind("sl2", 7)])
def test_basis_census(kind):
    census = weight_census(kind)
    total = sum(len(enumerate_weight_space(kind, wt)) for wt in census)
    assert total == kind.l ** len(kind.letters)
    assert total == PBWAlgebra(kind).basis_size()


def test_census_matches_enumeration_l5():
    census = weight_census(SL3)
    assert all(census[wt] == len(enumerate_weight_space(SL3, wt)) for wt in census)


def test_k_invariant_domain():
    wide = enumerate_congruent_weight_space(SL3, (0, 0))
    assert len(wide) > 8125
    assert all(w % 5 == 0 for m in wide for w in weight(SL3, m))
    # pattern (n1, n3, n2 | m2, m3, m1) with differences (4, -1, 1) in (E1, E2, E3)
    assert (0, 0, 1, 0, 0, 0, 1, 4) in set(wide)
    assert set(enumerate_weight_space(SL3, (0, 0))) < set(wide)
    sl2 = AlgebraKind("sl2", 7)
    assert enumerate_congruent_weight_space(sl2, (0,)) == enumerate_weight_space(sl2, (0,))


# -- rewriting system ---------------------------------------------------------------

def test_rule_termination_measure():
    """Every rule word, read as a left product, ends in one letter applied to
    the shorter remainder and otherwise contains only K-letters or letters
    strictly before the one being moved; symmetrically for right products."""
    for (a, b), terms in ALG.rules.items():
        assert a > b
        for _, word in terms:
            assert 1 <= len(word) <= 2
            for letter, _ in word[:-1]:
                assert letter in ALG.k_letters or letter < a
            for letter, _ in word[1:]:
                assert letter in ALG.k_letters or letter > b


def test_serre():
    assert check_serre(SL3)
    assert check_serre(AlgebraKind("sl3", 7))
    assert not check_serre(SL3, Q(1) - Q(-1))


def test_paired_relations():
    # E1 E2 = q E2 E1 + q E3 and E2 E1 = q^-1 E1 E2 - E3
    assert ALG.word("E2", "E1") == Q(-1) * ALG.word("E1", "E2") - ALG.word("E3")
    assert ALG.word("E1", "E2") == Q(1) * ALG.word("E2", "E1") + Q(1) * ALG.word("E3")
    # F2 F1 = q^-1 F1 F2 + q^-1 F3 and F1 F2 = q F2 F1 - F3
    assert ALG.word("F2", "F1") == Q(-1) * ALG.word("F1", "F2") + Q(-1) * ALG.word("F3")
    assert ALG.word("F1", "F2") == Q(1) * ALG.word("F2", "F1") - ALG.word("F3")


def test_composite_root_vectors():
    assert ALG.word("E3") == Q(-1) * ALG.word("E1", "E2") - ALG.word("E2", "E1")
    assert ALG.word("F3") == Q(1) * ALG.word("F2", "F1") - ALG.word("F1", "F2")


def test_e3_f3_commutator():
    got = ALG.word("E3", "F3") - ALG.word("F3", "E3")
    assert got == C * (ALG.word("K1", "K2") - ALG.word("K1inv", "K2inv"))


def _defining_relations():
    """Defining relations as elements that must vanish."""
    rels = []
    for i in ("1", "2"):
        for j in ("1", "2"):
            a = 2 if i == j else -1
            rels.append(ALG.word("K" + i, "E" + j) - Q(a) * ALG.word("E" + j, "K" + i))
            rels.append(ALG.word("K" + i, "F" + j) - Q(-a) * ALG.word("F" + j, "K" + i))
            comm = ALG.word("E" + i, "F" + j) - ALG.word("F" + j, "E" + i)
            if i == j:
                comm = comm - C * (ALG.word("K" + i) - ALG.word("K" + i + "inv"))
            rels.append(comm)
    rels.append(ALG.word("K1", "K2") - ALG.word("K2", "K1"))
    for g in ("E1", "E2", "F1", "F2"):
        rels.append(ALG.word(*[g] * 5))
    rels.append(ALG.word(*["K1"] * 5) - ALG.one())
    rels.append(ALG.word("E3") - (Q(-1) * ALG.word("E1", "E2") - ALG.word("E2", "E1")))
    rels.append(ALG.word("F3") - (Q(1) * ALG.word("F2", "F1") - ALG.word("F1", "F2")))
    return rels


def test_relations_vanish_on_unit():
    for r in _defining_relations():
        assert not r


def test_relations_hold_as_operators():
    """Left multiplication by each defining relation kills random monomials,
    so the PBW span is a module for the algebra with these relations."""
    rng = random.Random(7)
    for _ in range(60):
        x = ALG.monomial(random_monomial(rng))
        for i in ("1", "2"):
            for j in ("1", "2"):
                lhs = ALG.mul_generator("E" + i, ALG.mul_generator("F" + j, x))
                rhs = ALG.mul_generator("F" + j, ALG.mul_generator("E" + i, x))
                diff = lhs - rhs
                if i == j:
                    diff = diff - C * (ALG.mul_generator("K" + i, x) - ALG.mul_generator("K" + i + "inv", x))
                assert not diff
        e1e2 = ALG.mul_generator("E1", ALG.mul_generator("E2", x))
        e2e1 = ALG.mul_generator("E2", ALG.mul_generator("E1", x))
        assert ALG.mul_generator("E3", x) == Q(-1) * e1e2 - e2e1
        f2f1 = ALG.mul_generator("F2", ALG.mul_generator("F1", x))
        f1f2 = ALG.mul_generator("F1", ALG.mul_generator("F2", x))
        assert ALG.mul_generator("F3", x) == Q(1) * f2f1 - f1f2


def test_left_and_right_commute():
    rng = random.Random(3)
    gens = ["E1", "E2", "E3", "F1", "F2", "F3", "K1", "K2"]
    for _ in range(200):
        x = ALG.monomial(random_monomial(rng))
        a, b = rng.choice(gens), rng.choice(gens)
        one = ALG.mul_generator(b, ALG.mul_generator(a, x), "right")
        two = ALG.mul_generator(a, ALG.mul_generator(b, x, "right"))
        assert one == two


def test_associativity_triples():
    rng = random.Random(11)
    gens = ["E1", "E2", "F1", "F2", "K1", "K2", "E3", "F3"]
    for _ in range(500):
        g1, g2, g3 = (rng.choice(gens) for _ in range(3))
        x = ALG.monomial(random_monomial(rng, max_exp=2))
        inner = ALG.mul_generator(g2, x)
        one = ALG.mul_generator(g3, ALG.mul_generator(g1, inner), "right")
        two = ALG.mul_generator(g1, ALG.mul_generator(g3, inner, "right"))
        assert one == two


def test_multiply_is_associative_on_elements():
    rng = random.Random(5)
    for _ in range(20):
        x, y, z = (ALG.monomial(random_monomial(rng, max_exp=1)) for _ in range(3))
        assert (x * y) * z == x * (y * z)


@settings(max_examples=100, deadline=None)
@given(monomials, st.sampled_from(["E1", "E2", "F1", "F2", "E3", "F3", "K1", "K2"]), st.sampled_from(["left", "right"]))
def test_weight_additivity(mono, g, side):
    res = ALG.mul_generator(g, ALG.monomial(mono), side)
    shift = GENERATOR_WEIGHTS.get(g, (0, 0))
    expected = tuple(a + b for a, b in zip(weight(SL3, mono), shift))
    assert all(weight(SL3, m) == expected for m in res.terms)


# -- numeric representation oracle -----------------------------------------------------

@pytest.mark.parametrize("pair", sorted(ALG.rules))
def test_each_rule_in_representation(pair):
    a, b = (ALG.letters[i] for i in pair)
    lhs = REP[a] @ REP[b]
    rhs = np.zeros_like(lhs)
    for coef, word in ALG.rules[pair]:
        m = np.eye(len(lhs), dtype=complex)
        for letter, power in word:
            m = m @ np.linalg.matrix_power(REP[ALG.letters[letter]], power)
        rhs += cyc_to_complex(coef, 5) * m
    assert np.allclose(lhs, rhs)


def test_products_match_representation():
    rng = random.Random(19)
    letters = SL3.letters
    for _ in range(150):
        mono = random_monomial(rng, max_exp=3)
        g = rng.choice(["E1", "E2", "E3", "F1", "F2", "F3", "K1", "K2"])
        side = rng.choice(["left", "right"])
        res = ALG.mul_generator(g, ALG.monomial(mono), side)
        m = monomial_matrix(REP, letters, mono)
        expected = REP[g] @ m if side == "left" else m @ REP[g]
        assert np.allclose(element_matrix(REP, letters, res, 5), expected)


def test_sl2_products_match_representation():
    kind = AlgebraKind("sl2", 7)
    alg = PBWAlgebra(kind)
    rep = power_rep("sl2", 7, 6)
    rng = random.Random(2)
    for _ in range(100):
        mono = random_monomial(rng, kind)
        g = rng.choice(["E", "F", "K"])
        res = alg.mul_generator(g, alg.monomial(mono))
        expected = rep[g] @ monomial_matrix(rep, kind.letters, mono)
        assert np.allclose(element_matrix(rep, kind.letters, res, 7), expected)

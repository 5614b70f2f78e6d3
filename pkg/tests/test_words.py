from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from orbisymp.orbifold.models import OrbifoldSignature
from orbisymp.verify.checks.fox import SIGNATURES, random_word
from orbisymp.words import (
    BarTwoChain,
    Generator,
    GroupRingElement,
    Word,
    augmentation,
    bar_involution,
    canonical_relator,
    fox_derivative,
    fundamental_two_chain,
    inverse,
    mean_value_defect,
    multiply,
    product_rule_defect,
    torsion_relators,
)

x1, y1, x2 = Generator("x", 1), Generator("y", 1), Generator("x", 2)
s1, s3, z1, z2, z3 = Generator("s", 1), Generator("s", 3), Generator("z", 1), Generator("z", 2), Generator("z", 3)


def w(text: str) -> Word:
    return Word.parse(text)


def test_multiply_reduces_freely() -> None:
    assert multiply(w("x1"), w("x1^-1")).is_identity()
    assert multiply(w("x1 y1"), w("y1^-1 x1^-1 s1")) == w("s1")


def test_inverse_reverses_letters() -> None:
    assert inverse(w("x1 y1")) == w("y1^-1 x1^-1")
    assert str(inverse(w("x1 y1"))) == "y1^-1 x1^-1"


def test_parse_rejects_bad_letters() -> None:
    with pytest.raises(ValueError):
        Word.parse("q1")
    with pytest.raises(ValueError):
        Word.parse("x1^2")


def test_augmentation_sums_coefficients() -> None:
    element = GroupRingElement({w("x1"): 2, w("y1"): -3})
    assert augmentation(element) == Fraction(-1)


def test_group_ring_drops_zero_terms() -> None:
    element = GroupRingElement.from_word(w("x1")) - GroupRingElement.from_word(w("x1"))
    assert element.is_zero()


def test_bar_involution_inverts_words() -> None:
    element = GroupRingElement({w("x1"): 2, w("y1 s1"): -3})
    barred = bar_involution(element)
    assert barred.coefficient(w("x1^-1")) == 2
    assert barred.coefficient(w("s1^-1 y1^-1")) == -3
    assert bar_involution(barred) == element
    assert augmentation(barred) == augmentation(element)


def test_fox_derivative_of_torsion_power() -> None:
    derivative = fox_derivative(Word.of(s3).power(3), s3)
    assert derivative == GroupRingElement({Word.identity(): 1, w("s3"): 1, w("s3 s3"): 1})


def test_fox_derivative_of_commutator() -> None:
    derivative = fox_derivative(w("x1 y1 x1^-1 y1^-1"), y1)
    assert derivative == GroupRingElement({w("x1"): 1, w("x1 y1 x1^-1 y1^-1"): -1})


def test_fox_derivative_of_relator_in_first_handle() -> None:
    relator = canonical_relator(OrbifoldSignature(genus=2))
    assert fox_derivative(relator, x1) == GroupRingElement({Word.identity(): 1, w("x1 y1 x1^-1"): -1})


def test_fox_derivative_of_inverse_letter() -> None:
    assert fox_derivative(w("x1^-1"), x1) == GroupRingElement({w("x1^-1"): -1})
    assert fox_derivative(w("x1"), x2).is_zero()


def test_mean_value_and_product_rule_on_random_words() -> None:
    rng = np.random.default_rng(7)
    for index in range(200):
        sig = SIGNATURES[index % len(SIGNATURES)]
        generators = sig.generators()
        word = random_word(rng, generators)
        assert mean_value_defect(word, generators).is_zero()
        left, right = random_word(rng, generators), random_word(rng, generators)
        for generator in generators:
            assert product_rule_defect(left, right, generator).is_zero()


def test_canonical_relators() -> None:
    assert canonical_relator(OrbifoldSignature(boundary=3)) == w("z1 z2 z3")
    assert canonical_relator(OrbifoldSignature(genus=1, cone_orders=(3,))) == w("x1 y1 x1^-1 y1^-1 s1")
    sphere = OrbifoldSignature(cone_orders=(2, 2, 3, 3))
    assert canonical_relator(sphere) == w("s1 s2 s3 s4")
    assert torsion_relators(sphere)[2] == w("s3 s3 s3")


def test_bar_chain_drops_degenerate_symbols() -> None:
    chain = BarTwoChain({(Word.identity(), w("z1")): 1, (w("z1"), w("z2")): 1, (w("z1"), Word.identity()): 5})
    assert len(chain) == 1


def test_pants_fundamental_chain() -> None:
    chain = fundamental_two_chain(OrbifoldSignature(boundary=3))
    assert chain.terms == {(w("z1"), w("z2")): Fraction(1), (w("z1 z2"), w("z3")): Fraction(1)}


def test_cone_sphere_chain_carries_torsion_weights() -> None:
    chain = fundamental_two_chain(OrbifoldSignature(cone_orders=(2, 2, 3, 3)))
    assert chain.terms[(w("s3"), w("s3"))] == Fraction(-1, 3)
    assert chain.terms[(w("s3 s3"), w("s3"))] == Fraction(-1, 3)
    assert chain.terms[(w("s1"), w("s1"))] == Fraction(-1, 2)
    assert chain.terms[(w("s1 s2"), w("s3"))] == Fraction(1)


def test_genus2_chain_mass() -> None:
    chain = fundamental_two_chain(OrbifoldSignature(genus=2))
    assert chain.mass() == 7
    assert all(symbol[1].generators() <= {x1, y1, x2, Generator("y", 2)} for symbol, _ in chain.items())

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable

from .models import Generator, GroupRingElement, Word, augmentation


@lru_cache(maxsize=4096)
def fox_derivative(word: Word, generator: Generator) -> GroupRingElement:
    """
    Fox derivative of ``word`` with respect to ``generator``.

    Letter-wise recursion: d(p v)/dv contributes p, d(p v^-1)/dv contributes -p v^-1.
    """

    terms: Dict[Word, Fraction] = {}
    prefix = Word.identity()
    for letter_generator, exponent in word.letters:
        if letter_generator == generator:
            if exponent == 1:
                key = prefix
                terms[key] = terms.get(key, Fraction(0)) + 1
            else:
                key = prefix * Word.of(letter_generator, -1)
                terms[key] = terms.get(key, Fraction(0)) - 1
        prefix = prefix * Word.of(letter_generator, exponent)
    return GroupRingElement(terms)


def mean_value_defect(word: Word, generators: Iterable[Generator]) -> GroupRingElement:
    """Return w - eps(w) 1 - sum_v (dw/dv)(v - 1); zero exactly when the mean value property holds."""

    total = GroupRingElement.from_word(word) - GroupRingElement.one().scale(
        augmentation(GroupRingElement.from_word(word))
    )
    for generator in generators:
        shift = GroupRingElement.from_word(Word.of(generator)) - GroupRingElement.one()
        total = total - fox_derivative(word, generator) * shift
    return total


def product_rule_defect(left: Word, right: Word, generator: Generator) -> GroupRingElement:
    """Return d(xy)/dv - (dx/dv) eps(y) - x dy/dv."""

    expected = fox_derivative(left, generator).scale(
        augmentation(GroupRingElement.from_word(right))
    ) + fox_derivative(right, generator).left_multiply(left)
    return fox_derivative(left * right, generator) - expected

from __future__ import annotations

from typing import List

import numpy as np

from orbisymp.orbifold.models import OrbifoldSignature
from orbisymp.verify.models import Check, CheckContext
from orbisymp.words import Generator, Word, mean_value_defect, product, product_rule_defect

MAX_LENGTH = 20

SIGNATURES = (
    OrbifoldSignature(genus=2),
    OrbifoldSignature(cone_orders=(2, 2, 3, 3)),
    OrbifoldSignature(cone_orders=(2, 3, 7)),
    OrbifoldSignature(boundary=3),
    OrbifoldSignature(genus=1, boundary=1, cone_orders=(3,)),
)


def random_word(rng: np.random.Generator, generators: List[Generator], max_length: int = MAX_LENGTH) -> Word:
    length = int(rng.integers(0, max_length + 1))
    picks = rng.integers(0, len(generators), size=length)
    signs = rng.choice((-1, 1), size=length)
    return product(Word.of(generators[int(k)], int(e)) for k, e in zip(picks, signs))


def _failures(ctx: CheckContext, per_word) -> float:
    rng = ctx.rng()
    total = ctx.count(1000)
    failures = 0
    for index in range(total):
        sig = SIGNATURES[index % len(SIGNATURES)]
        if not per_word(rng, sig.generators()):
            failures += 1
    return float(failures)


def check_mean_value(ctx: CheckContext) -> float:
    def holds(rng: np.random.Generator, generators: List[Generator]) -> bool:
        return mean_value_defect(random_word(rng, generators), generators).is_zero()

    return _failures(ctx, holds)


def check_product_rule(ctx: CheckContext) -> float:
    def holds(rng: np.random.Generator, generators: List[Generator]) -> bool:
        left, right = random_word(rng, generators), random_word(rng, generators)
        return all(product_rule_defect(left, right, g).is_zero() for g in generators)

    return _failures(ctx, holds)


CHECKS = [
    Check("fox.mean_value", "fox", 0.0, check_mean_value, "words failing the mean value identity"),
    Check("fox.product_rule", "fox", 0.0, check_product_rule, "word pairs failing the product rule"),
]

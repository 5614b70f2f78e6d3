from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, List

from .fox import fox_derivative
from .models import BarTwoChain, Generator, Word, commutator, product

if TYPE_CHECKING:
    from orbisymp.orbifold.models import OrbifoldSignature


def signature_generators(sig: "OrbifoldSignature") -> List[Generator]:
    """Generators in presentation order: x1, y1, ..., xg, yg, z1, ..., zb, s1, ..., sc."""

    generators: List[Generator] = []
    for index in range(1, sig.genus + 1):
        generators.append(Generator("x", index))
        generators.append(Generator("y", index))
    generators.extend(Generator("z", index) for index in range(1, sig.boundary + 1))
    generators.extend(Generator("s", index) for index in range(1, len(sig.cone_orders) + 1))
    return generators


def handle_word(index: int) -> Word:
    return commutator(Word.of(Generator("x", index)), Word.of(Generator("y", index)))


def canonical_relator(sig: "OrbifoldSignature") -> Word:
    """prod [x_i, y_i] * prod z_j * prod s_k."""

    handles = [handle_word(index) for index in range(1, sig.genus + 1)]
    boundaries = [Word.of(Generator("z", index)) for index in range(1, sig.boundary + 1)]
    cones = [Word.of(Generator("s", index)) for index in range(1, len(sig.cone_orders) + 1)]
    return product(handles + boundaries + cones)


def torsion_relators(sig: "OrbifoldSignature") -> List[Word]:
    return [
        Word.of(Generator("s", index)).power(order)
        for index, order in enumerate(sig.cone_orders, start=1)
    ]


@lru_cache(maxsize=64)
def fundamental_two_chain(sig: "OrbifoldSignature") -> BarTwoChain:
    """
    Relative fundamental 2-chain

        sum_v [dr/dv | v] - sum_i (1/r_i) [d(s_i^r_i)/ds_i | s_i],

    expanded linearly; symbols with an identity slot are dropped by BarTwoChain.
    """

    relator = canonical_relator(sig)
    chain = BarTwoChain.zero()
    for generator in signature_generators(sig):
        chain = chain + BarTwoChain.from_ring(fox_derivative(relator, generator), Word.of(generator))
    for index, (torsion, order) in enumerate(zip(torsion_relators(sig), sig.cone_orders), start=1):
        cone = Generator("s", index)
        correction = BarTwoChain.from_ring(fox_derivative(torsion, cone), Word.of(cone))
        chain = chain + correction.scale(Fraction(-1, order))
    return chain

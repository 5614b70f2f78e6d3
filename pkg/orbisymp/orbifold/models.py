from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from orbisymp.words import Generator, Word, signature_generators


class OrbifoldSignature(BaseModel):
    """Genus, number of boundary components and cone orders of a compact orientable cone 2-orbifold."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    genus: int = Field(0, ge=0, description="Genus of the underlying surface.")
    boundary: int = Field(0, ge=0, description="Number of boundary components.")
    cone_orders: Tuple[int, ...] = Field(default=(), description="Orders r_i of the cone points.")

    @property
    def cone_count(self) -> int:
        return len(self.cone_orders)

    @property
    def order_two_count(self) -> int:
        return sum(1 for order in self.cone_orders if order == 2)

    @property
    def hole_count(self) -> int:
        """Boundary components plus cone points."""

        return self.boundary + len(self.cone_orders)

    def generators(self) -> List[Generator]:
        return signature_generators(self)

    def euler_characteristic(self) -> Fraction:
        chi = Fraction(2 - 2 * self.genus - self.boundary)
        for order in self.cone_orders:
            chi -= 1 - Fraction(1, order)
        return chi

    def label(self) -> str:
        orders = ",".join(str(order) for order in self.cone_orders)
        if self.genus == 0 and self.boundary == 0:
            return f"S2({orders})"
        suffix = f";{orders}" if orders else ""
        return f"g{self.genus}b{self.boundary}{suffix}"


class SeparatingCurve(BaseModel):
    """Separating simple closed curve cutting the relator blocks after position ``cut``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    type: Literal["scc-separating"] = "scc-separating"
    piece: int = Field(0, ge=0, description="Index of the current piece being cut.")
    cut: int = Field(..., ge=1, description="Number of leading blocks (handles, boundaries, cones) kept left.")


class NonSeparatingCurve(BaseModel):
    """Non-separating curve y_h of a handle; the piece loses that handle and gains two boundaries."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    type: Literal["scc-nonseparating"] = "scc-nonseparating"
    piece: int = Field(0, ge=0, description="Index of the current piece being cut.")
    handle: Optional[int] = Field(None, ge=1, description="Handle index; defaults to the last handle.")


class FullSuborbifoldCurve(BaseModel):
    """Segment joining two order-two cone points, replaced by one boundary component."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    type: Literal["full-suborbifold"] = "full-suborbifold"
    piece: int = Field(0, ge=0, description="Index of the current piece being cut.")
    cones: Tuple[int, int] = Field(..., description="1-based cone indices (i, j) within the piece.")


CurveSpec = Annotated[
    Union[SeparatingCurve, NonSeparatingCurve, FullSuborbifoldCurve],
    Field(discriminator="type"),
]


class SplittingFile(BaseModel):
    """On-disk splitting request: explicit curve records applied in order, or a pants decomposition."""

    model_config = ConfigDict(extra="forbid")

    curves: List[CurveSpec] = Field(default_factory=list)
    pants: bool = Field(False, description="Ignore curves and use the canonical pants decomposition.")


@dataclass(frozen=True)
class InclusionMap:
    """Set map from piece generators to words in the ambient generators."""

    table: Mapping[Generator, Word]

    @classmethod
    def identity(cls, generators: List[Generator]) -> "InclusionMap":
        return cls({generator: Word.of(generator) for generator in generators})

    def image(self, generator: Generator) -> Word:
        try:
            return self.table[generator]
        except KeyError as exc:
            raise KeyError(f"generator {generator} is not in the inclusion table") from exc

    def apply(self, word: Word) -> Word:
        letters: list = []
        for generator, exponent in word.letters:
            image = self.image(generator)
            letters.extend((image if exponent == 1 else image.inverse()).letters)
        return Word(tuple(letters))

    def compose(self, outer: "InclusionMap") -> "InclusionMap":
        """Return outer o self, for self: piece -> parent and outer: parent -> ambient."""

        return InclusionMap({generator: outer.apply(word) for generator, word in self.table.items()})

    def as_strings(self) -> Dict[str, str]:
        ordered = sorted(self.table.items(), key=lambda item: item[0].sort_key())
        return {str(generator): str(word) for generator, word in ordered}


@dataclass(frozen=True)
class Piece:
    signature: OrbifoldSignature
    inclusion: InclusionMap


@dataclass(frozen=True)
class BoundaryRef:
    """A boundary generator of a piece."""

    piece: int
    generator: Generator


@dataclass(frozen=True)
class GraphLetter:
    """
    Building block of ambient generators in a splitting.

    ``gen``: a generator of a piece; ``stable``: the stable letter of a non-separating curve;
    ``factor``: one of the two order-two factors of a full 1-suborbifold.
    """

    kind: Literal["gen", "stable", "factor"]
    piece: int = -1
    generator: Optional[Generator] = None
    curve: int = -1
    slot: int = 0


LetterWord = Tuple[Tuple[GraphLetter, int], ...]


def invert_letters(letters: LetterWord) -> LetterWord:
    return tuple((letter, -exponent) for letter, exponent in reversed(letters))


CurveKind = Literal["separating", "nonseparating", "full"]


@dataclass(frozen=True)
class CurveRecord:
    """
    A splitting curve with its ambient data.

    separating: ``refs = (left, right)`` and the images of the two boundary generators are
    mutually inverse in the ambient group. nonseparating: ``refs = (plus, minus)`` with
    e+ = image(plus), e- = image(minus)^-1 and ``stable`` the ambient word of e-perp.
    full: ``refs = (boundary,)`` and ``factors`` the two order-two elements whose product is
    the image of the boundary generator.
    """

    request: Union[SeparatingCurve, NonSeparatingCurve, FullSuborbifoldCurve]
    kind: CurveKind
    word: Word
    refs: Tuple[BoundaryRef, ...]
    stable: Optional[Word] = None
    factors: Optional[Tuple[Word, Word]] = None

    @property
    def is_scc(self) -> bool:
        return self.kind != "full"


@dataclass(frozen=True)
class SplittingSpec:
    """Curves, pieces with inclusion maps, and the graph-letter expression of ambient generators."""

    signature: OrbifoldSignature
    pieces: Tuple[Piece, ...]
    curves: Tuple[CurveRecord, ...] = ()
    letters: Mapping[Generator, LetterWord] = field(default_factory=dict)

    @property
    def scc_count(self) -> int:
        return sum(1 for curve in self.curves if curve.is_scc)

    @property
    def full_count(self) -> int:
        return sum(1 for curve in self.curves if not curve.is_scc)

    def curve_words(self) -> List[Word]:
        return [curve.word for curve in self.curves]

    def parabolic_words(self) -> List[Word]:
        """Ambient boundary generators followed by every splitting-curve word."""

        boundaries = [Word.of(Generator("z", index)) for index in range(1, self.signature.boundary + 1)]
        return boundaries + self.curve_words()

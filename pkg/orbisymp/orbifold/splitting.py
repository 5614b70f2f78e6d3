from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

from orbisymp.errors import EulerObstruction, InvalidSignature, InvalidSplitting, NotOrderTwo
from orbisymp.utils.logging import get_logger
from orbisymp.words import Generator, Word, handle_word, product

from .models import (
    BoundaryRef,
    CurveKind,
    CurveRecord,
    FullSuborbifoldCurve,
    GraphLetter,
    InclusionMap,
    LetterWord,
    NonSeparatingCurve,
    OrbifoldSignature,
    Piece,
    SeparatingCurve,
    SplittingFile,
    SplittingSpec,
    invert_letters,
)
from .signature import validate

LOGGER = get_logger(__name__)

CurveRequest = Union[SeparatingCurve, NonSeparatingCurve, FullSuborbifoldCurve]
Block = Tuple[str, int]

NEW_CURVE = -1


def _word(kind: str, index: int) -> Word:
    return Word.of(Generator(kind, index))


def _blocks(sig: OrbifoldSignature) -> List[Block]:
    blocks: List[Block] = [("h", index) for index in range(1, sig.genus + 1)]
    blocks.extend(("z", index) for index in range(1, sig.boundary + 1))
    blocks.extend(("s", index) for index in range(1, sig.cone_count + 1))
    return blocks


def _letters(piece: int, word: Word) -> LetterWord:
    return tuple(
        (GraphLetter("gen", piece=piece, generator=generator), exponent) for generator, exponent in word.letters
    )


def _single(piece: int, generator: Generator, exponent: int = 1) -> LetterWord:
    return ((GraphLetter("gen", piece=piece, generator=generator), exponent),)


def _conjugated(outer: LetterWord, inner: LetterWord) -> LetterWord:
    """outer^-1 inner outer"""

    return invert_letters(outer) + inner + outer


def reduce_letters(letters: LetterWord) -> LetterWord:
    stack: List[Tuple[GraphLetter, int]] = []
    for letter, exponent in letters:
        if stack and stack[-1][0] == letter and stack[-1][1] == -exponent:
            stack.pop()
        else:
            stack.append((letter, exponent))
    return tuple(stack)


def _check_euler(sig: OrbifoldSignature) -> None:
    chi = sig.euler_characteristic()
    if chi >= 0:
        raise EulerObstruction(f"piece {sig.label()} would have Euler characteristic {chi}")


@dataclass(frozen=True)
class _LocalSplit:
    """One cut of one piece, expressed in the generators of that piece (the parent)."""

    kind: CurveKind
    signatures: Tuple[OrbifoldSignature, ...]
    tables: Tuple[Dict[Generator, Word], ...]
    ownership: Dict[Generator, LetterWord]
    refs: Tuple[BoundaryRef, ...]
    word: Word
    stable: Optional[Word] = None
    factors: Optional[Tuple[Word, Word]] = None


def _split_separating(sig: OrbifoldSignature, cut: int) -> _LocalSplit:
    blocks = _blocks(sig)
    if not 1 <= cut <= len(blocks) - 1:
        raise InvalidSplitting(f"separating cut {cut} must lie strictly inside the {len(blocks)} relator blocks")
    left_blocks, right_blocks = blocks[:cut], blocks[cut:]
    g_left = sum(1 for kind, _ in left_blocks if kind == "h")
    b_left = sum(1 for kind, _ in left_blocks if kind == "z")
    c_left = sum(1 for kind, _ in left_blocks if kind == "s")
    g_right, b_right, c_right = sig.genus - g_left, sig.boundary - b_left, sig.cone_count - c_left

    left = OrbifoldSignature(genus=g_left, boundary=b_left + 1, cone_orders=sig.cone_orders[:c_left])
    right = OrbifoldSignature(genus=g_right, boundary=b_right + 1, cone_orders=sig.cone_orders[c_left:])
    _check_euler(left)
    _check_euler(right)

    handles_left = product(handle_word(i) for i in range(1, g_left + 1))
    bounds_left = product(_word("z", j) for j in range(1, b_left + 1))
    cones_left = product(_word("s", k) for k in range(1, c_left + 1))
    w_left = handles_left * bounds_left
    p_left = w_left * cones_left

    handles_right = product(handle_word(i) for i in range(g_left + 1, sig.genus + 1))
    bounds_right = product(_word("z", j) for j in range(b_left + 1, sig.boundary + 1))
    cones_right = product(_word("s", k) for k in range(c_left + 1, sig.cone_count + 1))
    v_right = bounds_right * cones_right
    q_right = handles_right * v_right

    left_table: Dict[Generator, Word] = {}
    for i in range(1, g_left + 1):
        left_table[Generator("x", i)] = _word("x", i)
        left_table[Generator("y", i)] = _word("y", i)
    for j in range(1, b_left + 1):
        left_table[Generator("z", j)] = _word("z", j)
    left_table[Generator("z", b_left + 1)] = p_left.inverse()
    for k in range(1, c_left + 1):
        left_table[Generator("s", k)] = w_left * _word("s", k) * w_left.inverse()

    right_table: Dict[Generator, Word] = {}
    for i in range(1, g_right + 1):
        for kind in ("x", "y"):
            right_table[Generator(kind, i)] = v_right.inverse() * _word(kind, g_left + i) * v_right
    right_table[Generator("z", 1)] = q_right.inverse()
    for j in range(1, b_right + 1):
        right_table[Generator("z", 1 + j)] = _word("z", b_left + j)
    for k in range(1, c_right + 1):
        right_table[Generator("s", k)] = _word("s", c_left + k)

    # piece-side words of W and V
    w_piece = _letters(
        0,
        product(handle_word(i) for i in range(1, g_left + 1)) * product(_word("z", j) for j in range(1, b_left + 1)),
    )
    v_piece = _letters(
        1,
        product(_word("z", 1 + j) for j in range(1, b_right + 1))
        * product(_word("s", k) for k in range(1, c_right + 1)),
    )

    ownership: Dict[Generator, LetterWord] = {}
    for i in range(1, g_left + 1):
        ownership[Generator("x", i)] = _single(0, Generator("x", i))
        ownership[Generator("y", i)] = _single(0, Generator("y", i))
    for j in range(1, b_left + 1):
        ownership[Generator("z", j)] = _single(0, Generator("z", j))
    for k in range(1, c_left + 1):
        ownership[Generator("s", k)] = _conjugated(w_piece, _single(0, Generator("s", k)))
    for i in range(1, g_right + 1):
        for kind in ("x", "y"):
            ownership[Generator(kind, g_left + i)] = _conjugated(
                invert_letters(v_piece), _single(1, Generator(kind, i))
            )
    for j in range(1, b_right + 1):
        ownership[Generator("z", b_left + j)] = _single(1, Generator("z", 1 + j))
    for k in range(1, c_right + 1):
        ownership[Generator("s", c_left + k)] = _single(1, Generator("s", k))

    return _LocalSplit(
        kind="separating",
        signatures=(left, right),
        tables=(left_table, right_table),
        ownership=ownership,
        refs=(BoundaryRef(0, Generator("z", b_left + 1)), BoundaryRef(1, Generator("z", 1))),
        word=p_left.inverse(),
    )


def _split_nonseparating(sig: OrbifoldSignature, handle: Optional[int]) -> _LocalSplit:
    if sig.genus == 0:
        raise InvalidSplitting(f"piece {sig.label()} has no handle to cut")
    h = sig.genus if handle is None else handle
    if not 1 <= h <= sig.genus:
        raise InvalidSplitting(f"handle {h} is out of range 1..{sig.genus}")

    piece = OrbifoldSignature(genus=sig.genus - 1, boundary=sig.boundary + 2, cone_orders=sig.cone_orders)
    _check_euler(piece)

    x_h, y_h = _word("x", h), _word("y", h)
    commutator_h = handle_word(h)

    table: Dict[Generator, Word] = {}
    ownership: Dict[Generator, LetterWord] = {}
    z_plus, z_minus = Generator("z", 1), Generator("z", 2)
    # [x_h, y_h] = iota(z'_1 z'_2)
    both = _single(0, z_plus) + _single(0, z_minus)
    for i in range(1, sig.genus + 1):
        if i == h:
            continue
        target = i if i < h else i - 1
        for kind in ("x", "y"):
            if i < h:
                table[Generator(kind, target)] = _word(kind, i)
                ownership[Generator(kind, i)] = _single(0, Generator(kind, target))
            else:
                table[Generator(kind, target)] = commutator_h * _word(kind, i) * commutator_h.inverse()
                ownership[Generator(kind, i)] = _conjugated(both, _single(0, Generator(kind, target)))
    table[z_plus] = x_h * y_h * x_h.inverse()
    table[z_minus] = y_h.inverse()
    for j in range(1, sig.boundary + 1):
        table[Generator("z", j + 2)] = _word("z", j)
        ownership[Generator("z", j)] = _single(0, Generator("z", j + 2))
    for k in range(1, sig.cone_count + 1):
        table[Generator("s", k)] = _word("s", k)
        ownership[Generator("s", k)] = _single(0, Generator("s", k))
    ownership[Generator("x", h)] = ((GraphLetter("stable", curve=NEW_CURVE), -1),)
    ownership[Generator("y", h)] = _single(0, z_minus, -1)

    return _LocalSplit(
        kind="nonseparating",
        signatures=(piece,),
        tables=(table,),
        ownership=ownership,
        refs=(BoundaryRef(0, z_plus), BoundaryRef(0, z_minus)),
        word=table[z_plus],
        stable=x_h.inverse(),
    )


def _split_full(sig: OrbifoldSignature, cones: Tuple[int, int]) -> _LocalSplit:
    i, j = sorted(cones)
    if i == j:
        raise InvalidSplitting(f"full 1-suborbifold needs two distinct cone points, got {cones}")
    if not (1 <= i and j <= sig.cone_count):
        raise InvalidSplitting(f"cone indices {cones} out of range 1..{sig.cone_count}")
    if sig.cone_orders[i - 1] != 2 or sig.cone_orders[j - 1] != 2:
        raise NotOrderTwo(
            f"cone points {i} and {j} have orders {sig.cone_orders[i - 1]} and {sig.cone_orders[j - 1]}"
        )

    remaining = [k for k in range(1, sig.cone_count + 1) if k not in (i, j)]
    piece = OrbifoldSignature(
        genus=sig.genus,
        boundary=sig.boundary + 1,
        cone_orders=tuple(sig.cone_orders[k - 1] for k in remaining),
    )
    _check_euler(piece)

    before = product(_word("s", k) for k in range(1, i))
    between = product(_word("s", k) for k in range(i + 1, j))
    new_boundary = Generator("z", sig.boundary + 1)

    table: Dict[Generator, Word] = {}
    ownership: Dict[Generator, LetterWord] = {}
    for index in range(1, sig.genus + 1):
        for kind in ("x", "y"):
            table[Generator(kind, index)] = _word(kind, index)
            ownership[Generator(kind, index)] = _single(0, Generator(kind, index))
    for index in range(1, sig.boundary + 1):
        table[Generator("z", index)] = _word("z", index)
        ownership[Generator("z", index)] = _single(0, Generator("z", index))
    table[new_boundary] = before * _word("s", i) * between * _word("s", j) * between.inverse() * before.inverse()
    for new_index, old_index in enumerate(remaining, start=1):
        table[Generator("s", new_index)] = _word("s", old_index)
        ownership[Generator("s", old_index)] = _single(0, Generator("s", new_index))

    # cones before i keep their index; cones strictly between i and j shift down by one
    before_piece = _letters(0, product(_word("s", k) for k in range(1, i)))
    between_piece = _letters(0, product(_word("s", k - 1) for k in range(i + 1, j)))
    ownership[Generator("s", i)] = _conjugated(before_piece, ((GraphLetter("factor", curve=NEW_CURVE, slot=0), 1),))
    ownership[Generator("s", j)] = _conjugated(
        before_piece + between_piece, ((GraphLetter("factor", curve=NEW_CURVE, slot=1), 1),)
    )

    factor_a = before * _word("s", i) * before.inverse()
    factor_b = before * between * _word("s", j) * between.inverse() * before.inverse()
    return _LocalSplit(
        kind="full",
        signatures=(piece,),
        tables=(table,),
        ownership=ownership,
        refs=(BoundaryRef(0, new_boundary),),
        word=table[new_boundary],
        factors=(factor_a, factor_b),
    )


class _SplittingBuilder:
    """Applies curve records one after another, composing inclusions and ownership words."""

    def __init__(self, sig: OrbifoldSignature) -> None:
        self.signature = sig
        generators = sig.generators()
        self.pieces: List[Piece] = [Piece(sig, InclusionMap.identity(generators))]
        self.curves: List[CurveRecord] = []
        self.letters: Dict[Generator, LetterWord] = {g: _single(0, g) for g in generators}

    def apply(self, request: CurveRequest) -> None:
        p = request.piece
        if p >= len(self.pieces):
            raise InvalidSplitting(f"curve refers to piece {p} but only {len(self.pieces)} pieces exist")
        parent = self.pieces[p]
        if isinstance(request, SeparatingCurve):
            local = _split_separating(parent.signature, request.cut)
        elif isinstance(request, NonSeparatingCurve):
            local = _split_nonseparating(parent.signature, request.handle)
        elif isinstance(request, FullSuborbifoldCurve):
            local = _split_full(parent.signature, request.cones)
        else:
            raise InvalidSplitting(f"unknown curve record {request!r}")

        piece_ids = [p] + [len(self.pieces) + offset for offset in range(len(local.signatures) - 1)]
        curve_id = len(self.curves)

        def globalize(letters: LetterWord) -> LetterWord:
            converted = []
            for letter, exponent in letters:
                if letter.kind == "gen":
                    converted.append((replace(letter, piece=piece_ids[letter.piece]), exponent))
                else:
                    converted.append((replace(letter, curve=curve_id), exponent))
            return tuple(converted)

        ownership = {generator: globalize(letters) for generator, letters in local.ownership.items()}

        def remap(ref: BoundaryRef) -> BoundaryRef:
            if ref.piece != p:
                return ref
            owned = ownership[ref.generator]
            if len(owned) != 1 or owned[0][1] != 1 or owned[0][0].kind != "gen":
                raise InvalidSplitting(f"boundary {ref.generator} of piece {p} does not survive the cut")
            return BoundaryRef(owned[0][0].piece, owned[0][0].generator)

        self.curves = [replace(curve, refs=tuple(remap(ref) for ref in curve.refs)) for curve in self.curves]

        for generator, letters in self.letters.items():
            substituted: List[Tuple[GraphLetter, int]] = []
            for letter, exponent in letters:
                if letter.kind == "gen" and letter.piece == p:
                    owned = ownership[letter.generator]
                    substituted.extend(owned if exponent == 1 else invert_letters(owned))
                else:
                    substituted.append((letter, exponent))
            self.letters[generator] = reduce_letters(tuple(substituted))

        new_pieces = [
            Piece(signature, InclusionMap(table).compose(parent.inclusion))
            for signature, table in zip(local.signatures, local.tables)
        ]
        self.pieces[p] = new_pieces[0]
        self.pieces.extend(new_pieces[1:])

        ambient = parent.inclusion
        self.curves.append(
            CurveRecord(
                request=request,
                kind=local.kind,
                word=ambient.apply(local.word),
                refs=tuple(BoundaryRef(piece_ids[ref.piece], ref.generator) for ref in local.refs),
                stable=ambient.apply(local.stable) if local.stable is not None else None,
                factors=(
                    (ambient.apply(local.factors[0]), ambient.apply(local.factors[1]))
                    if local.factors is not None
                    else None
                ),
            )
        )
        LOGGER.debug(
            "Applied splitting curve",
            extra={
                "curve": curve_id,
                "kind": local.kind,
                "piece": p,
                "pieces": [piece.signature.label() for piece in self.pieces],
            },
        )

    def freeze(self) -> SplittingSpec:
        return SplittingSpec(
            signature=self.signature,
            pieces=tuple(self.pieces),
            curves=tuple(self.curves),
            letters=dict(self.letters),
        )


def apply_splitting(sig: OrbifoldSignature, curves: Sequence[CurveRequest]) -> SplittingSpec:
    validate(sig)
    builder = _SplittingBuilder(sig)
    for curve in curves:
        builder.apply(curve)
    return builder.freeze()


def identity_splitting(sig: OrbifoldSignature) -> SplittingSpec:
    return apply_splitting(sig, [])


def split_full_suborbifold(sig: OrbifoldSignature, i: int, j: int) -> SplittingSpec:
    return apply_splitting(sig, [FullSuborbifoldCurve(cones=(i, j))])


def split_scc(sig: OrbifoldSignature, curve: Union[SeparatingCurve, NonSeparatingCurve]) -> SplittingSpec:
    if isinstance(curve, FullSuborbifoldCurve):
        raise InvalidSplitting("split_scc expects a simple closed curve record")
    return apply_splitting(sig, [curve])


def pants_decomposition(sig: OrbifoldSignature) -> SplittingSpec:
    """
    Canonical decomposition into elementary pieces.

    Order-two cones are paired lowest index first, the last handle is cut until the genus
    is zero, and two holes at a time are peeled off the remaining genus-0 pieces.
    """

    if sig.boundary != 0:
        raise InvalidSignature(f"pants decomposition expects a closed orbifold, got {sig.boundary} boundaries")
    validate(sig)
    builder = _SplittingBuilder(sig)

    while True:
        orders = builder.pieces[0].signature.cone_orders
        twos = [index for index, order in enumerate(orders, start=1) if order == 2]
        if len(twos) < 2:
            break
        builder.apply(FullSuborbifoldCurve(piece=0, cones=(twos[0], twos[1])))

    while builder.pieces[0].signature.genus > 0:
        builder.apply(NonSeparatingCurve(piece=0))

    pending = [0]
    while pending:
        index = pending.pop(0)
        if builder.pieces[index].signature.hole_count <= 3:
            continue
        builder.apply(SeparatingCurve(piece=index, cut=2))
        pending.extend([index, len(builder.pieces) - 1])

    splitting = builder.freeze()
    LOGGER.info(
        "Built pants decomposition",
        extra={
            "signature": sig.label(),
            "scc": splitting.scc_count,
            "full": splitting.full_count,
            "pieces": len(splitting.pieces),
        },
    )
    return splitting


def build_splitting(sig: OrbifoldSignature, request: SplittingFile) -> SplittingSpec:
    if request.pants:
        return pants_decomposition(sig)
    return apply_splitting(sig, list(request.curves))


def flow_direction_count(splitting: SplittingSpec) -> int:
    """M = 2 * (simple closed curves) + (full 1-suborbifolds)."""

    return 2 * splitting.scc_count + splitting.full_count

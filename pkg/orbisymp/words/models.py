from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

KIND_ORDER = {"x": 0, "y": 1, "z": 2, "s": 3}
_GENERATOR_PATTERN = re.compile(r"^([xyzs])(\d+)$")
_LETTER_PATTERN = re.compile(r"^([xyzs]\d+)(?:\^(-?1))?$")

Coefficient = Union[int, Fraction]


@dataclass(frozen=True)
class Generator:
    """A presentation generator: x_i, y_i (handles), z_j (boundaries) or s_k (cones)."""

    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError(f"generator index must be positive, got {self.index}")

    @classmethod
    def parse(cls, text: str) -> "Generator":
        match = _GENERATOR_PATTERN.match(text.strip())
        if not match:
            raise ValueError(f"cannot parse generator {text!r}")
        return cls(match.group(1), int(match.group(2)))

    def sort_key(self) -> Tuple[int, int]:
        return KIND_ORDER[self.kind], self.index

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


Letter = Tuple[Generator, int]


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: list[Letter] = []
    for generator, exponent in letters:
        if exponent not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {exponent}")
        if stack and stack[-1][0] == generator and stack[-1][1] == -exponent:
            stack.pop()
        else:
            stack.append((generator, exponent))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the free group on presentation generators."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def of(cls, generator: Generator, exponent: int = 1) -> "Word":
        return cls(((generator, exponent),))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse space separated letters such as ``"x1 y1 x1^-1 y1^-1"``; ``"1"`` is the identity."""

        stripped = text.strip()
        if stripped in ("", "1"):
            return cls.identity()
        letters: list[Letter] = []
        for token in stripped.split():
            match = _LETTER_PATTERN.match(token)
            if not match:
                raise ValueError(f"cannot parse letter {token!r}")
            letters.append((Generator.parse(match.group(1)), int(match.group(2) or 1)))
        return cls(tuple(letters))

    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(tuple((generator, -exponent) for generator, exponent in reversed(self.letters)))

    def power(self, exponent: int) -> "Word":
        base = self if exponent >= 0 else self.inverse()
        return Word(base.letters * abs(exponent))

    def generators(self) -> frozenset[Generator]:
        return frozenset(generator for generator, _ in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def sort_key(self) -> Tuple:
        return len(self.letters), tuple((g.sort_key(), e) for g, e in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(g) if e == 1 else f"{g}^-1" for g, e in self.letters)


def multiply(a: Word, b: Word) -> Word:
    return a * b


def inverse(a: Word) -> Word:
    return a.inverse()


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def product(words: Iterable[Word]) -> Word:
    result = Word.identity()
    for word in words:
        result = result * word
    return result


def _as_fraction(value: Coefficient) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"group ring coefficients must be rational, got {type(value).__name__}")


@dataclass(frozen=True)
class GroupRingElement:
    """Finite formal sum of words with exact rational coefficients; zero terms are never stored."""

    terms: Mapping[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: Dict[Word, Fraction] = {}
        for word, coefficient in self.terms.items():
            value = _as_fraction(coefficient)
            if value:
                cleaned[word] = value
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls({})

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({Word.identity(): Fraction(1)})

    @classmethod
    def from_word(cls, word: Word, coefficient: Coefficient = 1) -> "GroupRingElement":
        return cls({word: _as_fraction(coefficient)})

    def items(self) -> list[Tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        merged = dict(self.terms)
        for word, coefficient in other.terms.items():
            merged[word] = merged.get(word, Fraction(0)) + coefficient
        return GroupRingElement(merged)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({word: -c for word, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "GroupRingElement":
        value = _as_fraction(factor)
        return GroupRingElement({word: value * c for word, c in self.terms.items()})

    def __rmul__(self, factor: Coefficient) -> "GroupRingElement":
        return self.scale(factor)

    def __mul__(self, other: Union["GroupRingElement", Word, Coefficient]) -> "GroupRingElement":
        if isinstance(other, Word):
            return GroupRingElement({word * other: c for word, c in self.terms.items()})
        if isinstance(other, GroupRingElement):
            result: Dict[Word, Fraction] = {}
            for left, a in self.terms.items():
                for right, b in other.terms.items():
                    key = left * right
                    result[key] = result.get(key, Fraction(0)) + a * b
            return GroupRingElement(result)
        return self.scale(other)

    def left_multiply(self, word: Word) -> "GroupRingElement":
        return GroupRingElement({word * w: c for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{w}]" for w, c in self.items())


def augmentation(element: GroupRingElement) -> Fraction:
    """The augmentation map: sum of coefficients."""

    return sum(element.terms.values(), Fraction(0))


def bar_involution(element: GroupRingElement) -> GroupRingElement:
    """Replace each basis word by its inverse, keeping coefficients."""

    result: Dict[Word, Fraction] = {}
    for word, coefficient in element.terms.items():
        key = word.inverse()
        result[key] = result.get(key, Fraction(0)) + coefficient
    return GroupRingElement(result)


BarSymbol = Tuple[Word, Word]


@dataclass(frozen=True)
class BarTwoChain:
    """Rational combination of bar symbols [a|b]; symbols with an identity slot are dropped."""

    terms: Mapping[BarSymbol, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: Dict[BarSymbol, Fraction] = {}
        for (left, right), coefficient in self.terms.items():
            if left.is_identity() or right.is_identity():
                continue
            value = _as_fraction(coefficient)
            if value:
                cleaned[(left, right)] = cleaned.get((left, right), Fraction(0)) + value
        object.__setattr__(self, "terms", {k: v for k, v in cleaned.items() if v})

    @classmethod
    def zero(cls) -> "BarTwoChain":
        return cls({})

    @classmethod
    def from_ring(cls, left: GroupRingElement, right: Word) -> "BarTwoChain":
        """Expand [sum n_k g_k | right] linearly into sum n_k [g_k | right]."""

        return cls({(word, right): c for word, c in left.terms.items()})

    def __add__(self, other: "BarTwoChain") -> "BarTwoChain":
        merged = dict(self.terms)
        for symbol, coefficient in other.terms.items():
            merged[symbol] = merged.get(symbol, Fraction(0)) + coefficient
        return BarTwoChain(merged)

    def scale(self, factor: Coefficient) -> "BarTwoChain":
        value = _as_fraction(factor)
        return BarTwoChain({symbol: value * c for symbol, c in self.terms.items()})

    def items(self) -> list[Tuple[BarSymbol, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (item[0][0].sort_key(), item[0][1].sort_key()))

    def mass(self) -> Fraction:
        return sum((abs(c) for c in self.terms.values()), Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

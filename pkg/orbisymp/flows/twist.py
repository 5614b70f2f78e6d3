from __future__ import annotations

from typing import Callable, Dict, List, Literal, Optional, Tuple

import numpy as np
from scipy.linalg import expm

from orbisymp.errors import FlavorNotAvailable
from orbisymp.orbifold.models import GraphLetter, LetterWord
from orbisymp.rep.evaluate import evaluate
from orbisymp.rep.invariants import goldman_derivative
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger
from orbisymp.words import Generator

from .models import FlowSpec, GraphEdge, GraphOfGroups

LOGGER = get_logger(__name__)

# How a letter value m changes: conj E m E^-1, left E m, right m E, and the _inv variants with E^-1.
Move = Literal["conj", "left", "left_inv", "right", "right_inv"]
Chooser = Callable[[GraphLetter], Optional[Move]]
Run = Tuple[np.ndarray, Optional[Move]]

# the move applied to m^-1 when m moves
_INVERSE: Dict[str, Move] = {
    "conj": "conj",
    "left": "right_inv",
    "right_inv": "left",
    "right": "left_inv",
    "left_inv": "right",
}


def letter_value(rep: GroupRep, graph: GraphOfGroups, letter: GraphLetter) -> np.ndarray:
    splitting = graph.splitting
    if letter.kind == "gen":
        return evaluate(rep, splitting.pieces[letter.piece].inclusion.image(letter.generator))
    curve = splitting.curves[letter.curve]
    if letter.kind == "stable":
        return evaluate(rep, curve.stable)
    return evaluate(rep, curve.factors[letter.slot])


def _letter_vertex(graph: GraphOfGroups, letter: GraphLetter) -> int:
    if letter.kind == "gen":
        return letter.piece
    return graph.splitting.curves[letter.curve].refs[0].piece


def _tree_moves(graph: GraphOfGroups, edge: GraphEdge) -> Chooser:
    root = edge.plus_vertex

    def below(vertex: int) -> bool:
        return graph.at_or_below(vertex, root)

    def choose(letter: GraphLetter) -> Optional[Move]:
        if letter.kind != "stable":
            return "conj" if below(_letter_vertex(graph, letter)) else None
        other = graph.edge(letter.curve)
        plus, minus = below(other.plus_vertex), below(other.minus_vertex)
        if plus and minus:
            return "conj"
        if plus:
            return "right_inv"
        if minus:
            return "left"
        return None

    return choose


def _loop_moves(edge: GraphEdge) -> Chooser:
    def choose(letter: GraphLetter) -> Optional[Move]:
        return "right" if letter.kind == "stable" and letter.curve == edge.curve else None

    return choose


def _formal_moves(edge: GraphEdge) -> Chooser:
    def choose(letter: GraphLetter) -> Optional[Move]:
        return "conj" if letter.kind == "factor" and letter.curve == edge.curve else None

    return choose


def _runs(rep: GroupRep, graph: GraphOfGroups, word: LetterWord, choose: Chooser) -> List[Run]:
    """Letter values with their moves; neighbouring conjugated or unmoved letters are merged."""

    runs: List[Run] = []
    for letter, exponent in word:
        value = letter_value(rep, graph, letter)
        move = choose(letter)
        if exponent < 0:
            value = np.linalg.inv(value)
            move = None if move is None else _INVERSE[move]
        for _ in range(abs(exponent)):
            if runs and runs[-1][1] == move and move in (None, "conj"):
                runs[-1] = (runs[-1][0] @ value, move)
            else:
                runs.append((value, move))
    return runs


def _flowed(m: np.ndarray, runs: List[Run], E: np.ndarray, E_inv: np.ndarray) -> np.ndarray:
    """
    New value of a generator whose existing matrix is m = W_1 ... W_n (the run values).

    prod_j A_j W_j B_j = m * prod_j S_j^-1 (W_j^-1 A_j W_j B_j) S_j with S_j = W_(j+1) ... W_n,
    so the existing matrix is kept and only a correction built from the runs multiplies it.
    """

    sides = {
        "conj": (E, E_inv),
        "left": (E, None),
        "left_inv": (E_inv, None),
        "right": (None, E),
        "right_inv": (None, E_inv),
    }
    if len(runs) == 1:
        A, B = sides[runs[0][1]]
        moved = m if A is None else A @ m
        return moved if B is None else moved @ B
    factors: List[np.ndarray] = []
    suffix = np.eye(3)
    for value, move in reversed(runs):
        if move is not None:
            A, B = sides[move]
            inner = np.eye(3) if A is None else np.linalg.solve(value, A @ value)
            if B is not None:
                inner = inner @ B
            factors.append(np.linalg.solve(suffix, inner @ suffix))
        suffix = value @ suffix
    correction = np.eye(3)
    for factor in reversed(factors):
        correction = correction @ factor
    return m @ correction


def twist_flow(rep: GroupRep, graph: GraphOfGroups, spec: FlowSpec) -> GroupRep:
    """
    Hamiltonian flow of L or M of the curve ``spec.curve``, applied through the graph of groups.

    Tree edges conjugate the letters of the subtree below the edge, loops right-multiply their
    stable letter, full 1-suborbifolds conjugate their two factors. Each moved generator is
    updated from its existing matrix; generators whose letters are untouched keep it exactly.
    """

    edge = graph.edge(spec.curve)
    if edge.kind == "formal" and spec.flavor == "M":
        raise FlavorNotAvailable(f"curve {spec.curve} is a full 1-suborbifold; only L flows exist there")
    if spec.t == 0:
        return rep
    H = goldman_derivative(evaluate(rep, edge.plus), spec.flavor)
    E = expm(spec.t * H)
    E_inv = expm(-spec.t * H)
    if edge.kind == "tree":
        choose = _tree_moves(graph, edge)
    elif edge.kind == "loop":
        choose = _loop_moves(edge)
    else:
        choose = _formal_moves(edge)
    matrices: Dict[Generator, np.ndarray] = {}
    for generator, word in graph.splitting.letters.items():
        if any(choose(letter) is not None for letter, _ in word):
            matrices[generator] = _flowed(rep.matrix(generator), _runs(rep, graph, word, choose), E, E_inv)
    LOGGER.debug(
        "Twist flow",
        extra={
            "curve": spec.curve,
            "kind": edge.kind,
            "flavor": spec.flavor,
            "t": spec.t,
            "moved": sorted(map(str, matrices)),
        },
    )
    return rep.with_matrices(matrices)

from __future__ import annotations

from typing import Dict, Sequence, Tuple

from orbisymp.cocycle.models import Cocycle
from orbisymp.cocycle.spaces import project_cochain, z1_basis
from orbisymp.errors import InvalidSignature
from orbisymp.rep.deform import deform
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger

from .pairing import omega_closed_form

LOGGER = get_logger(__name__)

Point = Tuple[int, int, int]


class _Chart:
    """phi(a) = deform(rep, sum_i a_i u_i, 1) on the lattice h * Z^3, with memoised points."""

    def __init__(self, rep: GroupRep, directions: Sequence[Cocycle], h: float) -> None:
        self.rep = rep
        self.directions = list(directions)
        self.h = h
        self._points: Dict[Point, GroupRep] = {}

    @property
    def size(self) -> int:
        return len(self._points)

    def point(self, index: Point) -> GroupRep:
        if index not in self._points:
            if index == (0, 0, 0):
                self._points[index] = self.rep
            else:
                combined = sum(
                    (u.scale(k * self.h) for k, u in zip(index, self.directions) if k),
                    Cocycle.zero(self.rep.signature),
                )
                self._points[index] = deform(self.rep, combined, 1.0)
        return self._points[index]

    def tangent(self, index: Point, axis: int) -> Cocycle:
        """Central-difference coordinate tangent at ``index``, right-translated and projected to Z1."""

        forward = list(index)
        backward = list(index)
        forward[axis] += 1
        backward[axis] -= 1
        plus, minus = self.point(tuple(forward)), self.point(tuple(backward))
        base = self.point(index)
        values = {
            g: (plus.matrix(g) - minus.matrix(g)) / (2.0 * self.h) @ base.matrix(g, -1) for g in base.generators()
        }
        return project_cochain(z1_basis(base), Cocycle(base.signature, values))

    def omega(self, index: Point, first: int, second: int) -> float:
        base = self.point(index)
        return omega_closed_form(base, self.tangent(index, first), self.tangent(index, second))


def closedness_probe(rep: GroupRep, directions: Sequence[Cocycle], h: float) -> float:
    """
    Finite-difference estimate of d omega on three coordinate fields of the deform chart.

    Coordinate fields commute, so d omega(d1, d2, d3) is the cyclic sum of the directional
    derivatives of omega(d_j, d_k); each derivative is a central difference of step h.
    """

    if rep.signature.boundary:
        raise InvalidSignature("closedness probe runs on closed orbifolds only")
    if len(directions) != 3:
        raise ValueError(f"closedness probe needs exactly three directions, got {len(directions)}")
    chart = _Chart(rep, directions, h)
    estimate = 0.0
    for axis, (first, second) in ((0, (1, 2)), (1, (2, 0)), (2, (0, 1))):
        forward = tuple(1 if k == axis else 0 for k in range(3))
        backward = tuple(-1 if k == axis else 0 for k in range(3))
        derivative = (chart.omega(forward, first, second) - chart.omega(backward, first, second)) / (2.0 * h)
        estimate += derivative
    LOGGER.debug("Closedness probe", extra={"h": h, "estimate": estimate, "points": chart.size})
    return abs(estimate)


from __future__ import annotations

import math
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from orbisymp.errors import InvalidSignature
from orbisymp.orbifold.models import OrbifoldSignature
from orbisymp.orbifold.signature import validate
from orbisymp.utils.logging import get_logger
from orbisymp.words import Generator

from .algebra import J, random_lie_element
from .evaluate import relation_residual
from .invariants import classify
from .models import FuchsianSeed, GroupRep
from .newton import newton_refine

LOGGER = get_logger(__name__)


def _reflection(normal: np.ndarray) -> np.ndarray:
    """Reflection of R^{2,1} in the line with unit spacelike normal ``normal``."""

    return np.eye(3) - 2.0 * np.outer(normal, normal) @ J


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _boost(distance: float) -> np.ndarray:
    ch, sh = math.cosh(distance), math.sinh(distance)
    return np.array([[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]])


def _centre_frame(angle: float, distance: float) -> np.ndarray:
    """Isometry taking the origin of the hyperboloid to the point at polar coordinates (distance, angle)."""

    return _rotation(angle) @ _boost(distance) @ _rotation(-angle)


def fuchsian_triangle(p: int, q: int, r: int) -> GroupRep:
    """
    Rotations s1, s2, s3 of orders p, q, r about the vertices of a hyperbolic triangle.

    The side normals are recovered from the Gram matrix of the reflection group, so the
    relators hold to rounding.
    """

    sig = validate(OrbifoldSignature(genus=0, boundary=0, cone_orders=(p, q, r)))
    cp, cq, cr = math.cos(math.pi / p), math.cos(math.pi / q), math.cos(math.pi / r)
    gram = np.array([[1.0, -cp, -cr], [-cp, 1.0, -cq], [-cr, -cq, 1.0]])
    values, vectors = np.linalg.eigh(gram)
    # eigh sorts ascending; the single negative eigenvalue goes last to match J
    order = [1, 2, 0]
    values, vectors = values[order], vectors[:, order]
    normals = np.diag(np.sqrt(np.abs(values))) @ vectors.T
    sigma_a, sigma_b, sigma_c = (_reflection(normals[:, k]) for k in range(3))
    matrices = {
        Generator("s", 1): sigma_a @ sigma_b,
        Generator("s", 2): sigma_b @ sigma_c,
        Generator("s", 3): sigma_c @ sigma_a,
    }
    rep = GroupRep(sig, matrices)
    LOGGER.debug("Built triangle representation", extra={"orders": [p, q, r], "residual": relation_residual(rep)})
    return rep


def _inradius(half_angles: Sequence[float]) -> float:
    cosines = [math.cos(beta) for beta in half_angles]

    def excess(radius: float) -> float:
        return sum(math.asin(c / math.cosh(radius)) for c in cosines) - math.pi

    upper = math.acosh(max(sum(cosines) / 2.0, 1.0) + 1.0)
    return brentq(excess, 0.0, upper, xtol=1e-15, maxiter=200)


def _polygon(orders: Sequence[int]) -> Tuple[List[float], List[float], List[np.ndarray]]:
    """Polar angles, centre distances and side normals of the tangential polygon with angles pi/r_k."""

    half_angles = [math.pi / (2 * order) for order in orders]
    radius = _inradius(half_angles)
    central = [math.asin(math.cos(beta) / math.cosh(radius)) for beta in half_angles]
    distances = [
        math.acosh(1.0 / (math.tan(beta) * math.tan(gamma))) for beta, gamma in zip(half_angles, central)
    ]
    angles = [0.0]
    for k in range(len(orders) - 1):
        angles.append(angles[-1] + central[k] + central[k + 1])
    vertices = [
        np.array([math.sinh(d) * math.cos(phi), math.sinh(d) * math.sin(phi), math.cosh(d)])
        for d, phi in zip(distances, angles)
    ]
    normals: List[np.ndarray] = []
    count = len(vertices)
    for k in range(count):
        n = J @ np.cross(vertices[k], vertices[(k + 1) % count])
        n = n / math.sqrt(float(n @ J @ n))
        normals.append(n)
    return angles, distances, normals


def fuchsian_cone_sphere(orders: Sequence[int], seed: FuchsianSeed | None = None) -> GroupRep:
    """
    Holonomy of the cone sphere S2(r_1, ..., r_c) doubled from a polygon with an inscribed circle.

    Rotation k is the product of the reflections in the two sides meeting at vertex k, so
    s_1 ... s_c telescopes to the identity. A non-default seed moves the centres and jitters
    the rotations, and Newton refinement in so(2,1) restores the relator.
    """

    sig = validate(OrbifoldSignature(genus=0, boundary=0, cone_orders=tuple(orders)))
    params = seed or FuchsianSeed()
    angles, distances, normals = _polygon(sig.cone_orders)
    count = len(normals)
    reflections = [_reflection(n) for n in normals]
    matrices: Dict[Generator, np.ndarray] = {}
    for k in range(count):
        matrices[Generator("s", k + 1)] = reflections[k - 1] @ reflections[k]

    if params.radius_scale != 1.0 or params.jitter > 0.0:
        rng = np.random.default_rng(params.seed)
        for k in range(count):
            generator = Generator("s", k + 1)
            move = _centre_frame(angles[k], params.radius_scale * distances[k]) @ np.linalg.inv(
                _centre_frame(angles[k], distances[k])
            )
            if params.jitter > 0.0:
                move = expm(random_lie_element(rng, params.jitter, "so21")) @ move
            matrices[generator] = move @ matrices[generator] @ np.linalg.inv(move)
        rep = newton_refine(GroupRep(sig, matrices), algebra="so21")
    else:
        rep = GroupRep(sig, matrices)

    LOGGER.info(
        "Built cone-sphere representation",
        extra={"signature": sig.label(), "residual": relation_residual(rep), "seed": params.model_dump()},
    )
    return rep


# Fricke traces (tr x, tr y, tr xy) of the one-holed torus doubled into the genus-2 seed
TORUS_TRACES = (3.2, 3.2, 3.2)

# sl2 basis orthonormal for tr(XY), Gram matrix diag(1, 1, -1) = J
_SL2_BASIS = np.array(
    [
        [[1.0, 0.0], [0.0, -1.0]],
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, 1.0], [-1.0, 0.0]],
    ]
) / math.sqrt(2.0)


def _sl2_inverse(A: np.ndarray) -> np.ndarray:
    return np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])


def sl2_to_so21(A: np.ndarray) -> np.ndarray:
    """Adjoint action of A in SL(2, R) on sl2, an element of SO(2,1) preserving J."""

    images = np.einsum("ij,kjl,lm->kim", A, _SL2_BASIS, _sl2_inverse(A))
    return np.diag(J)[:, None] * np.einsum("aij,kji->ak", _SL2_BASIS, images)


def _one_holed_torus(a: float, b: float, c: float) -> Tuple[np.ndarray, np.ndarray]:
    """X, Y in SL(2, R) with traces a, b and tr XY = c; X diagonal."""

    if min(a, b, c) <= 2.0 or a * a + b * b + c * c - a * b * c >= 0.0:
        raise ValueError(f"traces ({a}, {b}, {c}) do not describe a one-holed torus with geodesic boundary")
    lam = (a + math.sqrt(a * a - 4.0)) / 2.0
    X = np.diag([lam, 1.0 / lam])
    p = (c - b / lam) / (lam - 1.0 / lam)
    s = b - p
    product = p * s - 1.0
    q = math.sqrt(abs(product))
    r = q if product >= 0.0 else -q
    return X, np.array([[p, q], [r, s]])


def _doubled_torus(traces: Tuple[float, float, float]) -> Dict[Generator, np.ndarray]:
    """
    Genus-2 holonomy in SL(2, R) doubled across the boundary geodesic of a one-holed torus.

    The torus is conjugated so that its boundary C = [X, Y] is diagonal; the reflection in
    the axis of C is conjugation by diag(1, -1), which flips off-diagonal signs exactly, and
    (x2, y2) = (sigma Y sigma, sigma X sigma) gives [x2, y2] = C^-1.
    """

    X, Y = _one_holed_torus(*traces)
    C = X @ Y @ _sl2_inverse(X) @ _sl2_inverse(Y)
    _, frame = np.linalg.eig(C)
    frame = frame.real
    frame_inv = np.linalg.inv(frame)
    X, Y = frame_inv @ X @ frame, frame_inv @ Y @ frame
    # diagonal conjugation minimizing the Frobenius norms, closed form
    upper = X[0, 1] ** 2 + Y[0, 1] ** 2
    lower = X[1, 0] ** 2 + Y[1, 0] ** 2
    shift = (lower / upper) ** 0.125
    D, D_inv = np.diag([shift, 1.0 / shift]), np.diag([1.0 / shift, shift])
    X, Y = D @ X @ D_inv, D @ Y @ D_inv
    sigma = np.diag([1.0, -1.0])
    return {
        Generator("x", 1): X,
        Generator("y", 1): Y,
        Generator("x", 2): sigma @ Y @ sigma,
        Generator("y", 2): sigma @ X @ sigma,
    }


def fuchsian_surface(genus: int) -> GroupRep:
    """
    Closed genus-2 holonomy: the double of a one-holed torus with traces ``TORUS_TRACES``.

    The SL(2, R) generators are mapped to SO(2,1) through the adjoint representation and
    polished with Newton in so(2,1). Curve lengths stay near 2 to 3, which keeps the Fox
    blocks of the relator well scaled.
    """

    if genus != 2:
        raise InvalidSignature(f"closed surface seeds are available for genus 2 only, got genus {genus}")
    matrices = {g: sl2_to_so21(A) for g, A in _doubled_torus(TORUS_TRACES).items()}
    rep = newton_refine(GroupRep(OrbifoldSignature(genus=2, boundary=0, cone_orders=()), matrices), algebra="so21")
    LOGGER.info(
        "Built genus-2 representation",
        extra={"traces": list(TORUS_TRACES), "residual": relation_residual(rep)},
    )
    return rep


def pants_representation(jitter: float = 0.05, seed: int = 0) -> GroupRep:
    """
    Pants representation with generic Hyp+ boundary holonomy.

    z1, z2 come from the genus-2 surface seed, perturbed in SL3; z3 = (z1 z2)^-1 closes the
    relator exactly.
    """

    surface = fuchsian_surface(2)
    rng = np.random.default_rng(seed)
    z1 = expm(random_lie_element(rng, jitter)) @ surface.matrix(Generator("x", 1))
    z2 = expm(random_lie_element(rng, jitter)) @ surface.matrix(Generator("y", 1))
    z3 = np.linalg.inv(z1 @ z2)
    sig = OrbifoldSignature(genus=0, boundary=3, cone_orders=())
    rep = GroupRep(sig, {Generator("z", 1): z1, Generator("z", 2): z2, Generator("z", 3): z3})
    for z in (z1, z2, z3):
        classify(z)
    return rep

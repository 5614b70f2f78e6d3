from __future__ import annotations

from typing import Literal

import numpy as np

Algebra = Literal["sl3", "so21"]

J = np.diag([1.0, 1.0, -1.0])


def _elementary(i: int, j: int) -> np.ndarray:
    matrix = np.zeros((3, 3))
    matrix[i, j] = 1.0
    return matrix


def _sl3_basis() -> np.ndarray:
    off_diagonal = [_elementary(i, j) for i in range(3) for j in range(3) if i != j]
    cartan = [np.diag([1.0, -1.0, 0.0]) / np.sqrt(2.0), np.diag([1.0, 1.0, -2.0]) / np.sqrt(6.0)]
    basis = np.array(off_diagonal + cartan)
    basis.setflags(write=False)
    return basis


def _so21_basis() -> np.ndarray:
    rotation = _elementary(0, 1) - _elementary(1, 0)
    boost_x = _elementary(0, 2) + _elementary(2, 0)
    boost_y = _elementary(1, 2) + _elementary(2, 1)
    basis = np.array([rotation, boost_x, boost_y]) / np.sqrt(2.0)
    basis.setflags(write=False)
    return basis


# Frobenius-orthonormal bases
SL3_BASIS = _sl3_basis()
SO21_BASIS = _so21_basis()
DIM = SL3_BASIS.shape[0]


def basis_for(algebra: Algebra) -> np.ndarray:
    if algebra == "sl3":
        return SL3_BASIS
    if algebra == "so21":
        return SO21_BASIS
    raise ValueError(f"unknown Lie algebra {algebra!r}")


def to_coords(X: np.ndarray) -> np.ndarray:
    return np.einsum("kij,ij->k", SL3_BASIS, X)


def from_coords(coords: np.ndarray) -> np.ndarray:
    return np.tensordot(np.asarray(coords, dtype=float), SL3_BASIS, axes=1)


def traceless(X: np.ndarray) -> np.ndarray:
    return X - np.trace(X) / 3.0 * np.eye(3)


def adjoint(g: np.ndarray, X: np.ndarray, g_inv: np.ndarray | None = None) -> np.ndarray:
    inverse = np.linalg.inv(g) if g_inv is None else g_inv
    return g @ X @ inverse


def ad_matrix(g: np.ndarray, g_inv: np.ndarray | None = None) -> np.ndarray:
    """Matrix of X -> g X g^-1 in SL3_BASIS coordinates."""

    inverse = np.linalg.inv(g) if g_inv is None else g_inv
    images = np.einsum("ij,kjl,lm->kim", g, SL3_BASIS, inverse)
    return np.einsum("aij,kij->ak", SL3_BASIS, images)


def trace_pairing(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.trace(A @ B))


def torsion_average(s: np.ndarray, u_s: np.ndarray, order: int) -> np.ndarray:
    """
    T = -(1/r) (u(s) + u(s^2) + ... + u(s^(r-1))), using u(s^k) = sum_{j<k} Ad_s^j u(s).

    Whenever u(s) satisfies the torsion condition, Ad_s T - T = u(s).
    """

    s_inv = np.linalg.inv(s)
    total = np.zeros((3, 3))
    power_value = np.zeros((3, 3))
    term = np.array(u_s, dtype=float)
    for _ in range(1, order):
        power_value = power_value + term
        total = total + power_value
        term = s @ term @ s_inv
    return -total / order


def random_lie_element(rng: np.random.Generator, scale: float = 1.0, algebra: Algebra = "sl3") -> np.ndarray:
    basis = basis_for(algebra)
    return scale * np.tensordot(rng.standard_normal(basis.shape[0]), basis, axes=1)

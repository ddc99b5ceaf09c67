"""Convection-pressure splittings of the Euler flux and their eigenstructure.

Three splittings are supported.  Each writes F = F_c + F_p, differing in how
much of the pressure work ends up on the pressure side:

  * Liou-Steffen:  F_p = (0, p, 0)
  * Zha-Bilgen:    F_p = (0, p, p u)
  * Toro-Vazquez:  F_p = (0, p, gamma p u / (gamma - 1))

Every convection Jacobian is weakly hyperbolic (real eigenvalues, defective
eigenvector set).  For the Zha-Bilgen and Toro-Vazquez splittings the basis is
completed with generalized eigenvectors forming a Jordan chain of order two;
the Liou-Steffen convection part stays defective and is exposed for analysis
only (no scheme is built on it).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .state import GasModel, PrimitiveState, sound_speed, total_energy


class SplittingKind(enum.Enum):
    LIOU_STEFFEN = "liou-steffen"
    ZHA_BILGEN = "zha-bilgen"
    TORO_VAZQUEZ = "toro-vazquez"


@dataclass(frozen=True)
class SplitFlux:
    convection: np.ndarray
    pressure: np.ndarray

    @property
    def total(self):
        return self.convection + self.pressure


@dataclass
class EigenSystem:
    """Eigenvalues with a complete (or deliberately incomplete) basis.

    ``chain_links[k] = j`` declares column k generalized with chain head j:
    A R_k = lambda_k R_k + R_j.  ``defective`` marks a basis that cannot be
    completed by the construction used here (Liou-Steffen convection part).
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray            # basis columns, shape (n, m) with m <= n
    chain_links: dict = field(default_factory=dict)
    free_params: dict = field(default_factory=dict)
    defective: bool = False


@dataclass
class JordanDecomposition:
    P: np.ndarray
    J: np.ndarray


def split_flux(kind: SplittingKind, w: PrimitiveState,
               gas: GasModel) -> SplitFlux:
    w.require_physical()
    g = gas.gamma
    rho, u, p = w.rho, w.u, w.p
    E = total_energy(w, gas)
    if kind is SplittingKind.LIOU_STEFFEN:
        fc = np.array([rho * u, rho * u * u, rho * u * E + p * u])
        fp = np.array([0.0, p, 0.0])
    elif kind is SplittingKind.ZHA_BILGEN:
        fc = np.array([rho * u, rho * u * u, rho * u * E])
        fp = np.array([0.0, p, p * u])
    else:
        fc = np.array([rho * u, rho * u * u, 0.5 * rho * u ** 3])
        fp = np.array([0.0, p, g * p * u / (g - 1.0)])
    return SplitFlux(fc, fp)


def convection_jacobian(kind: SplittingKind, w: PrimitiveState,
                        gas: GasModel) -> np.ndarray:
    w.require_physical()
    g = gas.gamma
    u = w.u
    E = total_energy(w, gas)
    if kind is SplittingKind.LIOU_STEFFEN:
        return np.array([
            [0.0, 1.0, 0.0],
            [-u * u, 2.0 * u, 0.0],
            [-g * u * E + (g - 1.0) * u ** 3,
             g * E - 1.5 * (g - 1.0) * u * u, g * u],
        ])
    if kind is SplittingKind.ZHA_BILGEN:
        return np.array([
            [0.0, 1.0, 0.0],
            [-u * u, 2.0 * u, 0.0],
            [-u * E, E, u],
        ])
    return np.array([
        [0.0, 1.0, 0.0],
        [-u * u, 2.0 * u, 0.0],
        [-u ** 3, 1.5 * u * u, 0.0],
    ])


def pressure_jacobian(kind: SplittingKind, w: PrimitiveState,
                      gas: GasModel) -> np.ndarray:
    w.require_physical()
    g = gas.gamma
    u = w.u
    a2 = g * w.p / w.rho
    row2 = [0.5 * (g - 1.0) * u * u, -(g - 1.0) * u, g - 1.0]
    if kind is SplittingKind.LIOU_STEFFEN:
        return np.array([[0.0, 0.0, 0.0], row2, [0.0, 0.0, 0.0]])
    if kind is SplittingKind.ZHA_BILGEN:
        return np.array([
            [0.0, 0.0, 0.0],
            row2,
            [-a2 * u / g + 0.5 * (g - 1.0) * u ** 3,
             a2 / g - (g - 1.0) * u * u, (g - 1.0) * u],
        ])
    return np.array([
        [0.0, 0.0, 0.0],
        row2,
        [-u * a2 / (g - 1.0) + 0.5 * g * u ** 3,
         a2 / (g - 1.0) - g * u * u, g * u],
    ])


def convection_eigensystem(kind: SplittingKind, w: PrimitiveState,
                           gas: GasModel, x1: float = 0.0,
                           x3: float = 0.0) -> EigenSystem:
    """Eigenvalues and (generalized) eigenvector basis of the convection part.

    x1, x3 are the arbitrary constants in the generalized eigenvectors; every
    scheme output downstream is independent of them.
    """
    w.require_physical()
    g = gas.gamma
    u = w.u
    E = total_energy(w, gas)
    if kind is SplittingKind.LIOU_STEFFEN:
        # Two independent eigenvectors only; no order-two chain closes.
        vecs = np.column_stack([
            [0.0, 0.0, 1.0],            # for gamma*u
            [1.0, u, 0.5 * u * u],      # for u
        ])
        return EigenSystem(np.array([g * u, u, u]), vecs, defective=True)
    if kind is SplittingKind.ZHA_BILGEN:
        vecs = np.column_stack([
            [1.0, u, E],                    # chain head
            [x1, 1.0 + u * x1, x3],         # generalized
            [0.0, 0.0, 1.0],
        ])
        return EigenSystem(np.array([u, u, u]), vecs,
                           chain_links={1: 0},
                           free_params={"x1": x1, "x3": x3})
    vecs = np.column_stack([
        [0.0, 0.0, 1.0],                            # for eigenvalue 0
        [1.0, u, 0.5 * u * u],                      # chain head, eigenvalue u
        [x1, 1.0 + u * x1, u + 0.5 * u * u * x1],   # generalized
    ])
    return EigenSystem(np.array([0.0, u, u]), vecs,
                       chain_links={2: 1}, free_params={"x1": x1})


def pressure_eigensystem(kind: SplittingKind, w: PrimitiveState,
                         gas: GasModel) -> EigenSystem:
    w.require_physical()
    g = gas.gamma
    u = w.u
    a = sound_speed(w, gas)
    if kind is SplittingKind.LIOU_STEFFEN:
        vecs = np.column_stack([
            [0.0, 1.0, 0.0],
            [1.0, 0.0, -0.5 * u * u],
            [0.0, 1.0, u],
        ])
        return EigenSystem(np.array([-(g - 1.0) * u, 0.0, 0.0]), vecs)
    if kind is SplittingKind.ZHA_BILGEN:
        c = np.sqrt((g - 1.0) / g) * a
        s = a / np.sqrt(g * (g - 1.0))
        vecs = np.column_stack([
            [0.0, 1.0, u - s],
            [1.0, u, 0.5 * u * u],
            [0.0, 1.0, u + s],
        ])
        return EigenSystem(np.array([-c, 0.0, c]), vecs)
    beta = np.sqrt(u * u + 4.0 * a * a)
    vecs = np.column_stack([
        [0.0, 1.0, u + 0.5 * (u - beta) / (g - 1.0)],
        [1.0, u, 0.5 * u * u],
        [0.0, 1.0, u + 0.5 * (u + beta) / (g - 1.0)],
    ])
    return EigenSystem(
        np.array([0.5 * (u - beta), 0.0, 0.5 * (u + beta)]), vecs)


class RankTestError(RuntimeError):
    """Rank decision too close to call for the requested tolerance."""


def _numerical_rank(M, tol_rel=1e-9, gap_guard=10.0, scale=None):
    """Rank of M with singular values below tol_rel * scale counted as zero.

    The scale defaults to the largest singular value of M itself; callers
    working with powers of a matrix must pass the power of the base norm
    instead, since a numerically nilpotent power is all round-off and its
    own largest singular value is meaningless as a reference.
    """
    sv = np.linalg.svd(M, compute_uv=False)
    smax = sv[0] if sv.size else 0.0
    if smax == 0.0:
        return 0
    cut = tol_rel * (smax if scale is None else scale)
    rank = int(np.sum(sv > cut))
    # A singular value hugging the threshold makes the rank call unreliable.
    near = (sv > cut / gap_guard) & (sv < cut * gap_guard)
    if near.any():
        raise RankTestError(
            f"singular value {sv[near][0]:.3e} within a factor {gap_guard} "
            f"of the rank cutoff {cut:.3e}")
    return rank


def jordan_block_signature(A: np.ndarray, lam: float,
                           tol_rel: float = 1e-9) -> list[int]:
    """Jordan block sizes for eigenvalue lam, from the rank sequence of
    (A - lam I)^k.  Number of blocks of size >= k is r_{k-1} - r_k."""
    n = A.shape[0]
    B = A - lam * np.eye(n)
    norm_b = max(float(np.linalg.norm(B, 2)), 1.0)
    ranks = [n]
    M = np.eye(n)
    for k in range(1, n + 1):
        M = M @ B
        ranks.append(_numerical_rank(M, tol_rel, scale=norm_b ** k))
        if ranks[-1] == ranks[-2]:
            break
    # blocks_ge[k] = number of blocks of size >= k+1
    blocks_ge = [ranks[k] - ranks[k + 1] for k in range(len(ranks) - 1)]
    sizes = []
    for k in range(len(blocks_ge) - 1, -1, -1):
        exactly = blocks_ge[k] - (blocks_ge[k + 1] if k + 1 < len(blocks_ge)
                                  else 0)
        sizes.extend([k + 1] * exactly)
    return sorted(sizes, reverse=True)


def verify_jordan(A: np.ndarray, decomp: JordanDecomposition) -> float:
    """Max-abs residual of P^-1 A P - J.  Raises on singular P."""
    P, J = decomp.P, decomp.J
    if abs(np.linalg.det(P)) < 1e-300:
        raise np.linalg.LinAlgError("singular basis matrix P")
    return float(np.max(np.abs(np.linalg.solve(P, A @ P) - J)))


def jordan_matrix(eigenvalues, chain_links):
    """Assemble J from an EigenSystem's eigenvalue order and chain links."""
    n = len(eigenvalues)
    J = np.diag(np.asarray(eigenvalues, dtype=float))
    for k, j in chain_links.items():
        J[j, k] = 1.0
    return J


def convection_jordan(kind: SplittingKind, w: PrimitiveState, gas: GasModel,
                      x1: float = 0.0, x3: float = 0.0) -> JordanDecomposition:
    """Basis and Jordan matrix for the ZB / TV convection Jacobian."""
    if kind is SplittingKind.LIOU_STEFFEN:
        raise ValueError("Liou-Steffen convection part has no completed basis")
    es = convection_eigensystem(kind, w, gas, x1=x1, x3=x3)
    return JordanDecomposition(es.vectors,
                               jordan_matrix(es.eigenvalues, es.chain_links))

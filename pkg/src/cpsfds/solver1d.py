"""1D finite-volume driver: uniform grid, ghost-cell boundary conditions,
CFL time stepping, first order or limited second order in space.

Second order uses Venkatakrishnan-limited linear reconstruction of the
primitive variables and a two-stage SSP time integration.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .fds1d import SchemeKind, interface_flux_batch
from .state import GasModel, NonPhysicalStateError, cons_to_prim_arrays, \
    prim_to_cons_arrays


class BoundaryCondition(enum.Enum):
    TRANSMISSIVE = "transmissive"
    REFLECTIVE = "reflective"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 4:
            raise ValueError("need at least 4 cells")
        if not self.x_max > self.x_min:
            raise ValueError("empty domain")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.n_cells

    def centers(self):
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class TimeControls:
    t_final: float
    cfl: float = 0.8
    max_steps: int = 10_000_000

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must be in (0, 1], got {self.cfl}")


@dataclass(frozen=True)
class ReconstructionConfig:
    order: int = 1
    limiter_k: float = 0.1

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if self.order == 2 and not self.limiter_k > 0.0:
            raise ValueError("limiter constant must be positive")


@dataclass
class StepLog:
    steps: int = 0
    t: float = 0.0
    dt_min: float = field(default=np.inf)


class SolverBlowUp(RuntimeError):
    """The run produced a non-physical state; expected for some scheme/case
    combinations (notably TVS-FDS on the blast problem)."""

    def __init__(self, scheme, step, cell, cause):
        super().__init__(
            f"{scheme} blew up at step {step}, cell {cell}: {cause}")
        self.scheme = scheme
        self.step = step
        self.cell = cell


def compute_dt(rho, u, p, gas: GasModel, dx: float, cfl: float) -> float:
    a = np.sqrt(gas.gamma * p / rho)
    return cfl * dx / float(np.max(np.abs(u) + a))


def muscl_reconstruct(q: np.ndarray, dx: float, k: float):
    """Limited face values for one variable.

    q includes one ghost value on each end; for each of the m-2 interior
    cells the pair (left-face value q_i - psi/2, right-face value
    q_i + psi/2) is returned.
    """
    dplus = q[2:] - q[1:-1]
    dminus = q[1:-1] - q[:-2]
    eps2 = (k * dx) ** 3
    psi = ((dplus ** 2 + eps2) * dminus + (dminus ** 2 + eps2) * dplus) \
        / (dplus ** 2 + dminus ** 2 + 2.0 * eps2)
    return q[1:-1] - 0.5 * psi, q[1:-1] + 0.5 * psi


def _extend(q, ng, bc, negate=False):
    """Pad a cell array with ng ghost values per the boundary conditions."""
    bc_l, bc_r = bc
    out = np.empty(q.size + 2 * ng)
    out[ng:-ng] = q
    if bc_l is BoundaryCondition.PERIODIC:
        out[:ng] = q[-ng:]
    elif bc_l is BoundaryCondition.REFLECTIVE:
        out[:ng] = (-1.0 if negate else 1.0) * q[ng - 1::-1]
    else:
        out[:ng] = q[0]
    if bc_r is BoundaryCondition.PERIODIC:
        out[-ng:] = q[:ng]
    elif bc_r is BoundaryCondition.REFLECTIVE:
        out[-ng:] = (-1.0 if negate else 1.0) * q[:-ng - 1:-1]
    else:
        out[-ng:] = q[-1]
    return out


def _face_states(rho, u, p, bc, recon: ReconstructionConfig, dx):
    """Left/right primitive states at the n+1 faces of an n-cell grid."""
    if recon.order == 1:
        re = _extend(rho, 1, bc)
        ue = _extend(u, 1, bc, negate=True)
        pe = _extend(p, 1, bc)
        return (re[:-1], ue[:-1], pe[:-1]), (re[1:], ue[1:], pe[1:])
    left, right = [], []
    for q, neg in ((rho, False), (u, True), (p, False)):
        qe = _extend(q, 2, bc, negate=neg)
        lo, hi = muscl_reconstruct(qe, dx, recon.limiter_k)
        # face j sits between extended cells j+1 and j+2
        left.append(hi[:-1])
        right.append(lo[1:])
    return tuple(left), tuple(right)


def _residual(U, scheme, bc, recon, dx, gas, step):
    rho, u, p = cons_to_prim_arrays(U, gas.gamma, step=step)
    (rl, ul, pl), (rr, ur, pr) = _face_states(rho, u, p, bc, recon, dx)
    if recon.order == 2:
        # limited face states can momentarily lose positivity only if the
        # underlying cells already did; reject them the same way
        for name, arr in (("rho", rl), ("p", pl), ("rho", rr), ("p", pr)):
            bad = ~(arr > 0.0) | ~np.isfinite(arr)
            if bad.any():
                i = int(np.argmax(bad))
                raise NonPhysicalStateError(
                    f"reconstructed {name} not positive", cell=i, step=step)
    F = interface_flux_batch(scheme, rl, ul, pl, rr, ur, pr, gas.gamma)
    return -(F[:, 1:] - F[:, :-1]) / dx


def advance(U: np.ndarray, grid: Grid1D, scheme: SchemeKind,
            recon: ReconstructionConfig, bc, controls: TimeControls,
            gas: GasModel):
    """March U (3, n_cells) to controls.t_final.  Returns (U, StepLog).

    Raises SolverBlowUp when a non-physical state appears anywhere.
    """
    U = np.array(U, dtype=float)
    log = StepLog()
    dx = grid.dx
    while log.t < controls.t_final and log.steps < controls.max_steps:
        try:
            rho, u, p = cons_to_prim_arrays(U, gas.gamma, step=log.steps)
            dt = compute_dt(rho, u, p, gas, dx, controls.cfl)
            dt = min(dt, controls.t_final - log.t)
            if recon.order == 1:
                U = U + dt * _residual(U, scheme, bc, recon, dx, gas,
                                       log.steps)
            else:
                U1 = U + dt * _residual(U, scheme, bc, recon, dx, gas,
                                        log.steps)
                U = 0.5 * U + 0.5 * (
                    U1 + dt * _residual(U1, scheme, bc, recon, dx, gas,
                                        log.steps))
        except NonPhysicalStateError as err:
            raise SolverBlowUp(scheme.value, log.steps, err.cell,
                               err) from err
        log.steps += 1
        log.t += dt
        log.dt_min = min(log.dt_min, dt)
    return U, log


def initialize(grid: Grid1D, init_fn, gas: GasModel):
    """Cell-centered conserved array from a (rho, u, p) = init_fn(x) field."""
    rho, u, p = init_fn(grid.centers())
    rho = np.broadcast_to(np.asarray(rho, dtype=float), (grid.n_cells,))
    u = np.broadcast_to(np.asarray(u, dtype=float), (grid.n_cells,))
    p = np.broadcast_to(np.asarray(p, dtype=float), (grid.n_cells,))
    return prim_to_cons_arrays(rho, u, p, gas.gamma)

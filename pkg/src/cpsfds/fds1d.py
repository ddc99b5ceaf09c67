"""ZBS-FDS and TVS-FDS interface fluxes.

Both schemes share the structure

    F_I = (F_L + F_R)/2 - (D_c + D_p)/2

where D_c is the convection upwind dissipation |u_bar| * dU (with dU written
through the Roe-type averages) and D_p is the characteristic pressure
dissipation sum alpha_i |lambda_i| R_i evaluated at the averaged state.  No
entropy fix is applied anywhere.

The module exposes a scalar API built on PrimitiveState plus array kernels
(`interface_flux_batch`) that the 1D solver uses for whole-grid sweeps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .state import GasModel, PrimitiveState, physical_flux, \
    physical_flux_arrays


class SchemeKind(enum.Enum):
    ZBS_FDS = "zbs"
    TVS_FDS = "tvs"


@dataclass(frozen=True)
class InterfaceAverages:
    """Roe-type averages at a cell face."""

    rho_bar: float
    u_bar: float
    a2_bar: float

    @property
    def a_bar(self):
        return np.sqrt(self.a2_bar)

    @property
    def beta_bar(self):
        return np.sqrt(self.u_bar ** 2 + 4.0 * self.a2_bar)


@dataclass(frozen=True)
class WaveStrengths:
    alpha: np.ndarray


def interface_averages(wL: PrimitiveState, wR: PrimitiveState,
                       gas: GasModel) -> InterfaceAverages:
    wL.require_physical()
    wR.require_physical()
    sL, sR = np.sqrt(wL.rho), np.sqrt(wR.rho)
    u_bar = (sL * wL.u + sR * wR.u) / (sL + sR)
    rho_bar = sL * sR
    g = gas.gamma
    a2_bar = (sL * g * wL.p / wL.rho + sR * g * wR.p / wR.rho) / (sL + sR)
    return InterfaceAverages(rho_bar, u_bar, a2_bar)


def zbs_pressure_strengths(avg: InterfaceAverages, drho: float, du: float,
                           dp: float, gas: GasModel) -> WaveStrengths:
    g = gas.gamma
    acoustic = np.sqrt(g / (g - 1.0)) * dp / (2.0 * avg.a_bar)
    shear = 0.5 * avg.rho_bar * du
    return WaveStrengths(np.array([shear - acoustic, drho, shear + acoustic]))


def tvs_pressure_strengths(avg: InterfaceAverages, drho: float, du: float,
                           dp: float, gas: GasModel) -> WaveStrengths:
    beta = avg.beta_bar
    half = 0.5 * avg.rho_bar * du
    skew = avg.rho_bar * avg.u_bar * du / (2.0 * beta)
    return WaveStrengths(np.array([half + skew - dp / beta,
                                   drho,
                                   half - skew + dp / beta]))


def _convection_dissipation(avg, drho, du, dp, gamma, with_dp):
    """|u_bar| * dU with dU expressed through the averages.

    ZBS upwinds the whole conserved jump (with_dp=True).  TVS carries the
    internal-energy jump dp/(gamma-1) on the zero-speed eigenvector of its
    convection part, so that term drops from the dissipation.
    """
    ub, rb = avg.u_bar, avg.rho_bar
    third = 0.5 * (ub * ub * drho + 2.0 * rb * ub * du)
    if with_dp:
        third = third + dp / (gamma - 1.0)
    return np.abs(ub) * np.array([drho, rb * du + ub * drho, third])


def zbs_dissipation(wL: PrimitiveState, wR: PrimitiveState,
                    gas: GasModel) -> np.ndarray:
    avg = interface_averages(wL, wR, gas)
    g = gas.gamma
    drho, du, dp = wR.rho - wL.rho, wR.u - wL.u, wR.p - wL.p
    d = _convection_dissipation(avg, drho, du, dp, g, with_dp=True)
    a1, _, a3 = zbs_pressure_strengths(avg, drho, du, dp, gas).alpha
    lam = np.sqrt((g - 1.0) / g) * avg.a_bar      # |lambda_1| = |lambda_3|
    s = avg.a_bar / np.sqrt(g * (g - 1.0))
    ub = avg.u_bar
    d += lam * np.array([0.0, a1 + a3, a1 * (ub - s) + a3 * (ub + s)])
    return d


def tvs_dissipation(wL: PrimitiveState, wR: PrimitiveState,
                    gas: GasModel) -> np.ndarray:
    avg = interface_averages(wL, wR, gas)
    g = gas.gamma
    drho, du, dp = wR.rho - wL.rho, wR.u - wL.u, wR.p - wL.p
    d = _convection_dissipation(avg, drho, du, dp, g, with_dp=False)
    a1, _, a3 = tvs_pressure_strengths(avg, drho, du, dp, gas).alpha
    ub, beta = avg.u_bar, avg.beta_bar
    l1 = np.abs(0.5 * (ub - beta))
    l3 = np.abs(0.5 * (ub + beta))
    r1 = ub + 0.5 * (ub - beta) / (g - 1.0)
    r3 = ub + 0.5 * (ub + beta) / (g - 1.0)
    d += np.array([0.0,
                   a1 * l1 + a3 * l3,
                   a1 * l1 * r1 + a3 * l3 * r3])
    return d


def interface_flux(scheme: SchemeKind, wL: PrimitiveState, wR: PrimitiveState,
                   gas: GasModel) -> np.ndarray:
    if scheme is SchemeKind.ZBS_FDS:
        d = zbs_dissipation(wL, wR, gas)
    else:
        d = tvs_dissipation(wL, wR, gas)
    return 0.5 * (physical_flux(wL, gas) + physical_flux(wR, gas)) - 0.5 * d


def interface_flux_batch(scheme: SchemeKind, rhoL, uL, pL, rhoR, uR, pR,
                         gamma: float) -> np.ndarray:
    """Vectorized interface flux over many faces; returns (3, n)."""
    sL, sR = np.sqrt(rhoL), np.sqrt(rhoR)
    wsum = sL + sR
    ub = (sL * uL + sR * uR) / wsum
    rb = sL * sR
    a2b = (sL * gamma * pL / rhoL + sR * gamma * pR / rhoR) / wsum
    ab = np.sqrt(a2b)
    drho, du, dp = rhoR - rhoL, uR - uL, pR - pL

    absu = np.abs(ub)
    d0 = absu * drho
    d1 = absu * (rb * du + ub * drho)
    d2 = absu * 0.5 * (ub * ub * drho + 2.0 * rb * ub * du)

    if scheme is SchemeKind.ZBS_FDS:
        d2 = d2 + absu * dp / (gamma - 1.0)
        acoustic = np.sqrt(gamma / (gamma - 1.0)) * dp / (2.0 * ab)
        shear = 0.5 * rb * du
        a1 = shear - acoustic
        a3 = shear + acoustic
        lam = np.sqrt((gamma - 1.0) / gamma) * ab
        s = ab / np.sqrt(gamma * (gamma - 1.0))
        d1 = d1 + lam * (a1 + a3)
        d2 = d2 + lam * (a1 * (ub - s) + a3 * (ub + s))
    else:
        beta = np.sqrt(ub * ub + 4.0 * a2b)
        half = 0.5 * rb * du
        skew = rb * ub * du / (2.0 * beta)
        a1 = half + skew - dp / beta
        a3 = half - skew + dp / beta
        l1 = np.abs(0.5 * (ub - beta))
        l3 = np.abs(0.5 * (ub + beta))
        r1 = ub + 0.5 * (ub - beta) / (gamma - 1.0)
        r3 = ub + 0.5 * (ub + beta) / (gamma - 1.0)
        d1 = d1 + a1 * l1 + a3 * l3
        d2 = d2 + a1 * l1 * r1 + a3 * l3 * r3

    FL = physical_flux_arrays(rhoL, uL, pL, gamma)
    FR = physical_flux_arrays(rhoR, uR, pR, gamma)
    return 0.5 * (FL + FR) - 0.5 * np.stack([d0, d1, d2])

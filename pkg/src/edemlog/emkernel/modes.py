"""Spectral-domain machinery for the layered-medium kernel.

Every field quantity is decomposed into TE and TM scalar modes.  Both modes
satisfy phi'' - u_n^2 phi = 0 inside layer n with interface conditions

    p_n * phi  continuous,     phi' continuous,

where p_n = 1 for TE (uniform permeability) and p_n = eta_n = sigma_n +
i*omega*eps_n for TM.  The TX dipole enters as a primary term
exp(-u_s |z - z_s|) (even parity) or sign(z - z_s) exp(-u_s |z - z_s|)
(odd parity) in the source layer; the remaining layer amplitudes are solved
from a small banded linear system per horizontal wavenumber, with all
exponentials referenced to layer tops/bottoms so they only ever decay.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..constants import EPS_0
from ..errors import DomainError
from .layers import LayerStack, wavenumber_squared


def layer_wavenumbers_squared(stack: LayerStack, freq: float) -> np.ndarray:
    """k_n^2 for every layer."""
    return np.array(
        [
            wavenumber_squared(
                r, freq, stack.relative_permittivity, stack.relative_permeability
            )
            for r in stack.resistivities
        ]
    )


def layer_admittances(stack: LayerStack, freq: float) -> np.ndarray:
    """eta_n = sigma_n + i*omega*eps for every layer (TM interface weight)."""
    omega = 2.0 * np.pi * freq
    sigma = 1.0 / np.asarray(stack.resistivities)
    return sigma + 1j * omega * EPS_0 * stack.relative_permittivity


def vertical_wavenumbers(k2: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """u_n = sqrt(lambda^2 - k_n^2) on the Re(u) >= 0 branch, shape (nlam, N)."""
    lam = np.asarray(lam, dtype=float)
    u = np.sqrt(lam[:, None] ** 2 - k2[None, :])
    # principal sqrt already has Re >= 0; enforce explicitly for the
    # Re = 0 edge so the decaying solution is always selected
    flip = u.real < 0.0
    if np.any(flip):
        u = np.where(flip, -u, u)
    return u


@dataclass(frozen=True)
class ReflectionCoefficients:
    """Generalized reflection coefficients at every interface.

    ``te_down[j]``/``tm_down[j]``: response seen by a downgoing wave in layer j
    reflecting off everything below interface j.  ``te_up[j]``/``tm_up[j]``:
    response seen by an upgoing wave in layer j+1 reflecting off everything
    above interface j.  Each entry has one value per requested lambda.
    """

    te_down: np.ndarray
    tm_down: np.ndarray
    te_up: np.ndarray
    tm_up: np.ndarray


def _local_down(p: np.ndarray, u: np.ndarray, j: int) -> np.ndarray:
    """Fresnel coefficient at interface j for incidence from layer j above."""
    pa, pb = p[j], p[j + 1]
    ua, ub = u[:, j], u[:, j + 1]
    return (pb * ua - pa * ub) / (pb * ua + pa * ub)


def _generalized(p: np.ndarray, u: np.ndarray, thick: np.ndarray):
    """Up/down generalized reflection recursions for one mode."""
    nlam, n_layer = u.shape
    n_int = n_layer - 1
    r_down = np.zeros((n_int, nlam), dtype=complex)
    r_up = np.zeros((n_int, nlam), dtype=complex)
    # downward: start at the deepest interface, walk up
    r_down[n_int - 1] = _local_down(p, u, n_int - 1)
    for j in range(n_int - 2, -1, -1):
        phase = np.exp(-2.0 * u[:, j + 1] * thick[j + 1])
        nxt = r_down[j + 1] * phase
        loc = _local_down(p, u, j)
        r_down[j] = (loc + nxt) / (1.0 + loc * nxt)
    # upward: start at the shallowest interface, walk down
    r_up[0] = -_local_down(p, u, 0)
    for j in range(1, n_int):
        phase = np.exp(-2.0 * u[:, j] * thick[j])
        prv = r_up[j - 1] * phase
        loc = -_local_down(p, u, j)
        r_up[j] = (loc + prv) / (1.0 + loc * prv)
    return r_down, r_up


def reflection_coefficients(
    stack: LayerStack, freq: float, lam
) -> ReflectionCoefficients:
    """Generalized TE and TM reflection coefficients of the stack at ``lam``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    if np.any(lam < 0.0):
        raise DomainError("lambda must be >= 0")
    if stack.n_layers < 2:
        empty = np.zeros((0, lam.size), dtype=complex)
        return ReflectionCoefficients(empty, empty, empty, empty)
    k2 = layer_wavenumbers_squared(stack, freq)
    u = vertical_wavenumbers(k2, lam)
    bnd = np.asarray(stack.boundaries)
    thick = np.empty(stack.n_layers)
    thick[0] = thick[-1] = np.inf
    thick[1:-1] = np.diff(bnd)
    p_te = np.ones(stack.n_layers, dtype=complex)
    p_tm = layer_admittances(stack, freq)
    te_down, te_up = _generalized(p_te, u, thick)
    tm_down, tm_up = _generalized(p_tm, u, thick)
    return ReflectionCoefficients(te_down, tm_down, te_up, tm_up)


def _primary(u_s: np.ndarray, z: float, z_src: float, odd: bool):
    """Primary term and its z-derivative at depth z (excluding prefactors)."""
    dz = z - z_src
    sgn = 1.0 if dz > 0.0 else -1.0
    damp = np.exp(-u_s * abs(dz))
    if odd:
        return sgn * damp, -u_s * damp
    return damp, -u_s * sgn * damp


def solve_secondary(
    u: np.ndarray,
    p: np.ndarray,
    boundaries: np.ndarray,
    z_src: float,
    z_rcv: float,
    src_layer: int,
    rcv_layer: int,
    parities,
):
    """Secondary (reflected/transmitted) mode solution at the receiver depth.

    Solves the layer-amplitude system for the given mode weights ``p`` and a
    unit-amplitude primary of each requested parity ('even'/'odd'), and
    returns ``[(phi, dphi), ...]`` per parity, each an (nlam,) array.  The
    primary itself is never included; the caller adds it (analytically for
    the coupling tensor) when source and receiver share a layer.
    """
    nlam, n_layer = u.shape
    if n_layer == 1:
        zero = np.zeros(nlam, dtype=complex)
        return [(zero.copy(), zero.copy()) for _ in parities]
    n_unknown = 2 * n_layer - 2
    bnd = boundaries
    thick = np.diff(bnd)  # interior layer thicknesses, len n_layer-2

    def cols(layer: int):
        """(col_a, col_b) unknown indices for a layer; None when absent."""
        col_a = None if layer == 0 else 2 * layer - 1
        col_b = None if layer == n_layer - 1 else 2 * layer
        return col_a, col_b

    one = np.ones(nlam, dtype=complex)
    interior_damp = {
        n: np.exp(-u[:, n] * thick[n - 1]) for n in range(1, n_layer - 1)
    }

    a_mat = np.zeros((nlam, n_unknown, n_unknown), dtype=complex)

    def add_side(row_p: int, layer: int, j: int, sign: float):
        """Accumulate the secondary field of ``layer`` evaluated at interface j.

        a-terms are referenced at the layer top and b-terms at the layer
        bottom, so the across-layer factor exp(-u d) appears on the term
        referenced at the far side of the interface.
        """
        col_a, col_b = cols(layer)
        un = u[:, layer]
        at_top = layer == j + 1  # interface j is this layer's top
        if col_a is not None:
            damp = one if at_top else interior_damp[layer]
            a_mat[:, row_p, col_a] += sign * p[layer] * damp
            a_mat[:, row_p + 1, col_a] += sign * (-un) * damp
        if col_b is not None:
            damp = interior_damp[layer] if at_top else one
            a_mat[:, row_p, col_b] += sign * p[layer] * damp
            a_mat[:, row_p + 1, col_b] += sign * un * damp

    for j in range(n_layer - 1):
        add_side(2 * j, j, j, +1.0)
        add_side(2 * j, j + 1, j, -1.0)

    u_src = u[:, src_layer]
    n_par = len(parities)
    rhs = np.zeros((nlam, n_unknown, n_par), dtype=complex)
    for ip, parity in enumerate(parities):
        odd = parity == "odd"
        for j in (src_layer - 1, src_layer):
            if j < 0 or j > n_layer - 2:
                continue
            prim, dprim = _primary(u_src, bnd[j], z_src, odd)
            # total-field continuity moved to the RHS
            if j == src_layer - 1:
                # source layer is below this interface
                rhs[:, 2 * j, ip] += p[src_layer] * prim
                rhs[:, 2 * j + 1, ip] += dprim
            else:
                rhs[:, 2 * j, ip] -= p[src_layer] * prim
                rhs[:, 2 * j + 1, ip] -= dprim
    sol = np.linalg.solve(a_mat, rhs)
    col_a, col_b = cols(rcv_layer)
    ur = u[:, rcv_layer]
    phi = np.zeros((nlam, n_par), dtype=complex)
    dphi = np.zeros((nlam, n_par), dtype=complex)
    if col_a is not None:
        damp = np.exp(-ur * (z_rcv - bnd[rcv_layer - 1]))[:, None]
        phi += sol[:, col_a, :] * damp
        dphi += -ur[:, None] * sol[:, col_a, :] * damp
    if col_b is not None:
        damp = np.exp(-ur * (bnd[rcv_layer] - z_rcv))[:, None]
        phi += sol[:, col_b, :] * damp
        dphi += ur[:, None] * sol[:, col_b, :] * damp
    return [(phi[:, ip], dphi[:, ip]) for ip in range(n_par)]

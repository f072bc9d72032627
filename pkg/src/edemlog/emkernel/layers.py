"""Domain types for the 1D layered-medium EM kernel.

Conventions used throughout the kernel (stated once, enforced everywhere):

* time dependence e^{+i omega t};
* vertical wavenumber u = sqrt(lambda^2 - k^2) with Re(u) >= 0;
* wavenumber k = sqrt(k^2) with Im(k) <= 0;
* z points down, x is horizontal in the tool's vertical plane;
* magnetic dipole moments are normalized to 1 A m^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..constants import EPS_0, MU_0
from ..errors import DomainError

#: points closer than this to a layer boundary are rejected (meters)
BOUNDARY_CLEARANCE = 1.0e-3


@dataclass(frozen=True)
class LayerStack:
    """A horizontally layered isotropic earth model.

    ``boundaries`` holds the N-1 interface depths (true vertical, meters,
    strictly increasing); ``resistivities`` the N layer resistivities in
    ohm-m, top to bottom.  A single shared relative permittivity and
    permeability apply to all layers.
    """

    boundaries: tuple
    resistivities: tuple
    relative_permittivity: float = 1.0
    relative_permeability: float = 1.0

    def __post_init__(self):
        bnd = tuple(float(b) for b in self.boundaries)
        res = tuple(float(r) for r in self.resistivities)
        object.__setattr__(self, "boundaries", bnd)
        object.__setattr__(self, "resistivities", res)
        if len(res) < 1:
            raise DomainError("a LayerStack needs at least one layer")
        if len(bnd) != len(res) - 1:
            raise DomainError(
                f"{len(res)} layers require {len(res) - 1} boundaries, got {len(bnd)}"
            )
        if any(r <= 0.0 for r in res):
            raise DomainError("all resistivities must be positive")
        if any(b2 <= b1 for b1, b2 in zip(bnd, bnd[1:])):
            raise DomainError("boundaries must be strictly increasing")
        if self.relative_permittivity < 0.0:
            raise DomainError("relative_permittivity must be >= 0")
        if self.relative_permeability <= 0.0:
            raise DomainError("relative_permeability must be > 0")

    @property
    def n_layers(self) -> int:
        return len(self.resistivities)

    def layer_index(self, z: float) -> int:
        """Index of the layer containing depth ``z``.

        Raises :class:`DomainError` when ``z`` is within 1 mm of a boundary;
        nudge the point by at least that much instead.
        """
        for b in self.boundaries:
            if abs(z - b) < BOUNDARY_CLEARANCE:
                raise DomainError(
                    f"point at z={z} m is within {BOUNDARY_CLEARANCE * 1e3:.0f} mm of the "
                    f"boundary at {b} m; move it by at least 1 mm"
                )
        return int(np.searchsorted(np.asarray(self.boundaries), z))


@dataclass(frozen=True)
class DipolePose:
    """Position and unit moment direction of a point magnetic dipole."""

    position: np.ndarray
    moment_direction: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.position, dtype=float)
        mom = np.asarray(self.moment_direction, dtype=float)
        if pos.shape != (3,) or mom.shape != (3,):
            raise DomainError("position and moment_direction must be 3-vectors")
        if abs(np.linalg.norm(mom) - 1.0) > 1e-12:
            raise DomainError("moment_direction must be a unit vector (|m| = 1 within 1e-12)")
        object.__setattr__(self, "position", pos)
        object.__setattr__(self, "moment_direction", mom)


@dataclass(frozen=True)
class CouplingTensor:
    """3x3 complex magnetic coupling: H-field component i at RX per unit TX moment along j."""

    h: np.ndarray
    frequency: float

    def __post_init__(self):
        h = np.asarray(self.h, dtype=complex)
        if h.shape != (3, 3):
            raise DomainError("coupling tensor must be 3x3")
        object.__setattr__(self, "h", h)


def wavenumber_squared(rho: float, freq: float, eps_r: float = 1.0, mu_r: float = 1.0) -> complex:
    """k^2 = omega^2 mu eps - i omega mu sigma for resistivity ``rho`` at ``freq``."""
    if rho <= 0.0:
        raise DomainError("resistivity must be positive")
    if freq <= 0.0:
        raise DomainError("frequency must be positive")
    if eps_r < 0.0:
        raise DomainError("eps_r must be >= 0")
    if mu_r <= 0.0:
        raise DomainError("mu_r must be > 0")
    omega = 2.0 * np.pi * freq
    mu = MU_0 * mu_r
    return omega**2 * mu * EPS_0 * eps_r - 1j * omega * mu / rho


def wavenumber(rho: float, freq: float, eps_r: float = 1.0, mu_r: float = 1.0) -> complex:
    """k = sqrt(k^2) on the Im(k) <= 0 branch."""
    k = np.sqrt(wavenumber_squared(rho, freq, eps_r, mu_r))
    if k.imag > 0.0:
        k = -k
    return complex(k)

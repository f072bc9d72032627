"""Forward simulation of the 13-channel extra-deep EM logging suite.

Assembles the measurement vector from dipole coupling tensors: coil placement
from the two well angles, two-receiver propagation measurements, symmetric
compensation, homogeneous-inverse apparent-resistivity conversion, and signed
azimuthal (cross-coupled) signals.

Geometry conventions: the reference point of the tool sits at the origin,
z points along the downward layering normal, x is horizontal in the tool's
vertical plane toward the up-dip side.  The tool inclination theta is the
angle between the tool axis and the downward normal, so theta = 90 degrees is
bedding-parallel drilling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

import numpy as np

from .emkernel import (
    CouplingTensor,
    DipolePose,
    LayerStack,
    coupling_tensor,
    coupling_tensor_quadrature,
    default_filter,
    homogeneous_coupling,
)
from .errors import ConfigError, DataError, DomainError, SimulationError

#: canonical output order of the 13 channels
CHANNEL_ORDER = (
    "RT_CRES_RPCHEX",
    "RT_CRES_RACEHX",
    "RT_CRES_RPCHELX",
    "RT_CRES_RACEHLX",
    "RT_ARSLLM",
    "RT_DTK_ATC50X",
    "RT_DTK_PDC50X",
    "RT_EDAR_ImV50k",
    "RT_EDAR_ReV50k",
    "RT_DTK_ATC20X",
    "RT_DTK_PDC20X",
    "RT_EDAR_ImV20k",
    "RT_EDAR_ReV20k",
)

#: arc length (meters) over which the well angle interpolates to theta_ahead
AHEAD_DISTANCE = 20.0


@dataclass(frozen=True)
class Coil:
    """One coil of the tool string."""

    name: str
    axial_offset: float  # meters along the tool from the reference point
    orientation: str  # 'coaxial' | 'transverse'
    role: str  # 'TX' | 'RX'

    def __post_init__(self):
        if self.orientation not in ("coaxial", "transverse"):
            raise ConfigError(f"coil {self.name}: bad orientation {self.orientation!r}")
        if self.role not in ("TX", "RX"):
            raise ConfigError(f"coil {self.name}: bad role {self.role!r}")


@dataclass(frozen=True)
class Channel:
    """One output channel: wiring, frequency, signal extraction, gain.

    ``paths`` lists (tx_name, rx_name) coil pairs.  Propagation and
    apparent-resistivity channels use two paths (near, far) per transmitter
    leg; azimuthal channels combine the signed per-path projections.
    """

    mnemonic: str
    kind: str  # 'apparent-resistivity' | 'propagation' | 'azimuthal'
    frequency: float
    source: str  # 'phase' | 'attenuation' | 'imag' | 'real'
    unit: str
    paths: tuple  # of (tx, rx) name pairs
    path_signs: tuple = ()  # azimuthal only: sign per path
    gain: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))
        object.__setattr__(self, "path_signs", tuple(self.path_signs))
        if self.kind not in ("apparent-resistivity", "propagation", "azimuthal"):
            raise ConfigError(f"channel {self.mnemonic}: bad kind {self.kind!r}")
        if self.kind == "azimuthal":
            if self.source not in ("imag", "real"):
                raise ConfigError(f"channel {self.mnemonic}: bad source {self.source!r}")
            if len(self.path_signs) != len(self.paths):
                raise ConfigError(f"channel {self.mnemonic}: one sign per path required")
        else:
            if self.source not in ("phase", "attenuation"):
                raise ConfigError(f"channel {self.mnemonic}: bad source {self.source!r}")
        if self.frequency <= 0.0:
            raise ConfigError(f"channel {self.mnemonic}: frequency must be positive")


@dataclass(frozen=True)
class ToolConfig:
    """Immutable tool description: coils, channels, conversion tables.

    Apparent-resistivity lookup tables are built (and monotonicity-checked)
    at construction from the homogeneous closed form; they are derived state
    and are rebuilt on JSON load from the persisted build parameters.
    """

    coils: tuple
    channels: tuple
    resistivity_cap: float = 2000.0
    resistivity_floor: float = 0.1
    relative_permittivity: float = 1.0
    table_nodes: int = 320
    tables: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        coils = tuple(
            c if isinstance(c, Coil) else Coil(**c) for c in self.coils
        )
        channels = tuple(
            c if isinstance(c, Channel) else Channel(**c) for c in self.channels
        )
        object.__setattr__(self, "coils", coils)
        object.__setattr__(self, "channels", channels)
        names = [c.name for c in coils]
        if len(set(names)) != len(names):
            raise ConfigError("coil names must be unique")
        mnemonics = tuple(c.mnemonic for c in channels)
        if mnemonics != CHANNEL_ORDER:
            raise ConfigError(
                "channels must be exactly the 13 canonical mnemonics in order; "
                f"got {mnemonics}"
            )
        by_name = {c.name: c for c in coils}
        for ch in channels:
            for tx, rx in ch.paths:
                if tx not in by_name or rx not in by_name:
                    raise ConfigError(f"channel {ch.mnemonic}: unknown coil in path ({tx}, {rx})")
                if by_name[tx].role != "TX" or by_name[rx].role != "RX":
                    raise ConfigError(f"channel {ch.mnemonic}: path ({tx}, {rx}) violates coil roles")
        if not 0.0 < self.resistivity_floor < self.resistivity_cap:
            raise ConfigError("need 0 < resistivity_floor < resistivity_cap")
        if self.table_nodes < 256:
            raise ConfigError("table_nodes must be >= 256")
        object.__setattr__(self, "tables", {})
        for ch in channels:
            if ch.kind == "apparent-resistivity":
                self.tables[ch.mnemonic] = _build_table(self, ch)

    def coil(self, name: str) -> Coil:
        for c in self.coils:
            if c.name == name:
                return c
        raise ConfigError(f"no coil named {name!r}")

    def channel(self, mnemonic: str) -> Channel:
        for c in self.channels:
            if c.mnemonic == mnemonic:
                return c
        raise ConfigError(f"no channel named {mnemonic!r}")

    def to_json(self) -> str:
        doc = {
            "format": "edemlog-tool-config",
            "version": 1,
            "coils": [asdict(c) for c in self.coils],
            "channels": [
                {k: v for k, v in asdict(c).items()}
                for c in self.channels
            ],
            "resistivity_cap": self.resistivity_cap,
            "resistivity_floor": self.resistivity_floor,
            "relative_permittivity": self.relative_permittivity,
            "table_nodes": self.table_nodes,
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ToolConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"tool config: invalid JSON: {exc}") from exc
        if doc.get("format") != "edemlog-tool-config":
            raise DataError("tool config: missing or wrong 'format' marker")
        if doc.get("version") != 1:
            raise DataError(f"tool config: unsupported version {doc.get('version')!r}")
        try:
            return cls(
                coils=tuple(Coil(**c) for c in doc["coils"]),
                channels=tuple(Channel(**c) for c in doc["channels"]),
                resistivity_cap=float(doc["resistivity_cap"]),
                resistivity_floor=float(doc["resistivity_floor"]),
                relative_permittivity=float(doc["relative_permittivity"]),
                table_nodes=int(doc["table_nodes"]),
            )
        except (KeyError, TypeError) as exc:
            raise DataError(f"tool config: malformed document: {exc}") from exc


@dataclass(frozen=True)
class ModelInput:
    """The 22-variable model parameterization around one tool position.

    ``b``: 6 boundary offsets (meters, perpendicular to layering, relative to
    the reference point, positive down, strictly increasing, with the
    reference point strictly inside the 4th layer).  ``rho_par``/``rho_perp``:
    7 layer resistivities each (ohm-m, top to bottom; must be equal — only
    isotropic resistivities are supported).  ``theta_rx``/``theta_ahead``:
    well inclination at the reference point and 20 m ahead (degrees from the
    downward layering normal).
    """

    b: tuple
    rho_par: tuple
    rho_perp: tuple
    theta_rx: float
    theta_ahead: float

    def __post_init__(self):
        b = tuple(float(v) for v in self.b)
        rp = tuple(float(v) for v in self.rho_par)
        rq = tuple(float(v) for v in self.rho_perp)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "rho_par", rp)
        object.__setattr__(self, "rho_perp", rq)
        if len(b) != 6 or len(rp) != 7 or len(rq) != 7:
            raise DomainError("ModelInput needs 6 boundaries and 7+7 resistivities")
        if any(b2 <= b1 for b1, b2 in zip(b, b[1:])):
            raise DomainError("boundary offsets must be strictly increasing")
        if not (b[2] < 0.0 < b[3]):
            raise DomainError("reference point must lie strictly inside the middle layer")
        if any(r <= 0.0 for r in rp + rq):
            raise DomainError("resistivities must be positive")
        if rp != rq:
            raise DomainError("anisotropic resistivities are not supported (rho_par must equal rho_perp)")
        if not (0.0 < self.theta_rx < 180.0 and 0.0 < self.theta_ahead < 180.0):
            raise DomainError("angles must lie in (0, 180) degrees")

    def to_array(self) -> np.ndarray:
        """The 22-vector [b, rho_par, rho_perp, theta_rx, theta_ahead]."""
        return np.array(self.b + self.rho_par + self.rho_perp + (self.theta_rx, self.theta_ahead))

    @classmethod
    def from_array(cls, p) -> "ModelInput":
        p = np.asarray(p, dtype=float)
        if p.shape != (22,):
            raise DomainError("model input vector must have 22 entries")
        return cls(
            b=tuple(p[:6]),
            rho_par=tuple(p[6:13]),
            rho_perp=tuple(p[13:20]),
            theta_rx=float(p[20]),
            theta_ahead=float(p[21]),
        )


@dataclass(frozen=True)
class MeasurementVector:
    """The 13 channel outputs in canonical order, plus cap flags."""

    m: np.ndarray
    capped_flags: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        flags = np.asarray(self.capped_flags, dtype=bool)
        if m.shape != (13,) or flags.shape != (13,):
            raise DomainError("MeasurementVector needs 13 values and 13 flags")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "capped_flags", flags)


def _theta_at(theta_rx: float, theta_ahead: float, s: float) -> float:
    """Inclination (degrees) at along-tool arc length s (meters)."""
    if s <= 0.0:
        return theta_rx
    return theta_rx + (theta_ahead - theta_rx) * s / AHEAD_DISTANCE


def _cos_deg(theta: float) -> float:
    # exact at quadrant angles so a perfectly horizontal tool (theta = 90)
    # has exactly zero vertical offsets and cross-couplings
    if theta % 90.0 == 0.0:
        return float(np.cos(np.radians(theta % 360.0)) .round())
    return float(np.cos(np.radians(theta)))


def _sin_deg(theta: float) -> float:
    if theta % 90.0 == 0.0:
        return float(np.sin(np.radians(theta % 360.0)).round())
    return float(np.sin(np.radians(theta)))


def _position_at(theta_rx: float, theta_ahead: float, s: float) -> np.ndarray:
    """Arc-length integral of the tangent (sin theta, 0, cos theta)."""
    if s <= 0.0 or theta_rx == theta_ahead:
        return np.array([s * _sin_deg(theta_rx), 0.0, s * _cos_deg(theta_rx)])
    rate = np.radians(theta_ahead - theta_rx) / AHEAD_DISTANCE  # rad per meter
    t_s = _theta_at(theta_rx, theta_ahead, s)
    x = (_cos_deg(theta_rx) - _cos_deg(t_s)) / rate
    z = (_sin_deg(t_s) - _sin_deg(theta_rx)) / rate
    return np.array([x, 0.0, z])


def place_coils(config: ToolConfig, theta_rx: float, theta_ahead: float) -> list:
    """Pose of every coil for the given well angles (degrees).

    The inclination varies linearly with arc length from ``theta_rx`` at the
    reference point to ``theta_ahead`` 20 m ahead (linear extrapolation
    beyond, constant behind).  Coaxial moments follow the local tangent;
    transverse moments are the in-plane normal with positive x-component
    (pointing toward the up-dip side).
    """
    if not (0.0 < theta_rx < 180.0 and 0.0 < theta_ahead < 180.0):
        raise DomainError("angles must lie in (0, 180) degrees")
    poses = []
    for coil in config.coils:
        s = coil.axial_offset
        pos = _position_at(theta_rx, theta_ahead, s)
        t = _theta_at(theta_rx, theta_ahead, s)
        tangent = np.array([_sin_deg(t), 0.0, _cos_deg(t)])
        if coil.orientation == "coaxial":
            moment = tangent
        else:
            moment = np.array([_cos_deg(t), 0.0, -_sin_deg(t)])
        poses.append(DipolePose(position=pos, moment_direction=moment))
    return poses


def pair_response(tensor: CouplingTensor, tx_moment, rx_moment) -> complex:
    """Induced-signal projection rx^T . h . tx for unit moments."""
    tx = np.asarray(tx_moment, dtype=float)
    rx = np.asarray(rx_moment, dtype=float)
    for v in (tx, rx):
        if abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise DomainError("moments must be unit vectors")
    return complex(rx @ tensor.h @ tx)


def attenuation_phase(v_near: complex, v_far: complex):
    """Attenuation (dB) and wrapped phase difference (degrees) of two voltages."""
    if v_near == 0 or v_far == 0:
        raise DomainError("receiver voltages must be nonzero")
    att = 20.0 * np.log10(abs(v_near) / abs(v_far))
    diff = np.degrees(np.angle(v_near) - np.angle(v_far))
    wrapped = diff - 360.0 * np.ceil((diff - 180.0) / 360.0)
    return float(att), float(wrapped)


def symmetric_compensation(forward, reverse):
    """Mean attenuation and mean phase difference of mirror TX measurements."""
    return (
        0.5 * (forward[0] + reverse[0]),
        0.5 * (forward[1] + reverse[1]),
    )


def _homogeneous_axial(rho: float, dist: float, freq: float, eps_r: float) -> complex:
    """Coaxial coil response at axial distance ``dist`` in a whole space."""
    return homogeneous_coupling(rho, (0.0, 0.0, 0.0), (0.0, 0.0, dist), freq, eps_r).h[2, 2]


def _channel_distances(config: ToolConfig, channel: Channel):
    """(near, far) TX-RX distances per path leg, from the axial offsets."""
    out = []
    for tx, rx in channel.paths:
        out.append(abs(config.coil(tx).axial_offset - config.coil(rx).axial_offset))
    return out


def _homogeneous_response(config: ToolConfig, channel: Channel, rho: float) -> float:
    """Compensated homogeneous response (source-selected) of an AR channel."""
    dists = _channel_distances(config, channel)
    legs = []
    for d_near, d_far in zip(dists[0::2], dists[1::2]):
        v_near = _homogeneous_axial(rho, d_near, channel.frequency, config.relative_permittivity)
        v_far = _homogeneous_axial(rho, d_far, channel.frequency, config.relative_permittivity)
        legs.append(attenuation_phase(v_near, v_far))
    comp = legs[0]
    for leg in legs[1:]:
        comp = symmetric_compensation(comp, leg)
    return comp[0] if channel.source == "attenuation" else comp[1]


def _build_table(config: ToolConfig, channel: Channel):
    """Homogeneous lookup table (rho -> response) with monotonicity check."""
    nodes = np.logspace(
        np.log10(config.resistivity_floor),
        np.log10(config.resistivity_cap),
        config.table_nodes,
    )
    resp = np.array([_homogeneous_response(config, channel, r) for r in nodes])
    d = np.diff(resp)
    if not (np.all(d > 0.0) or np.all(d < 0.0)):
        raise ConfigError(
            f"channel {channel.mnemonic}: homogeneous response is not monotone over "
            f"[{config.resistivity_floor}, {config.resistivity_cap}] ohm-m"
        )
    return nodes, resp


def apparent_resistivity(value: float, channel_id: str, config: ToolConfig):
    """Invert a compensated response to the homogeneous-equivalent resistivity.

    Returns ``(rho, capped)``; responses outside the table range clamp to the
    nearest cap with ``capped = True``.  Inside the range the table bracket is
    refined by bisection on the closed-form response to 1e-4 relative.
    """
    channel = config.channel(channel_id)
    if channel.kind != "apparent-resistivity":
        raise ConfigError(f"channel {channel_id} is not an apparent-resistivity channel")
    nodes, resp = config.tables[channel_id]
    decreasing = resp[0] > resp[-1]
    r_sorted = resp[::-1] if decreasing else resp
    n_sorted = nodes[::-1] if decreasing else nodes
    caps = (config.resistivity_floor, config.resistivity_cap)
    if value <= r_sorted[0]:
        return caps[0] if n_sorted[0] < n_sorted[-1] else caps[1], True
    if value >= r_sorted[-1]:
        return caps[1] if n_sorted[0] < n_sorted[-1] else caps[0], True
    idx = int(np.searchsorted(r_sorted, value))
    lo, hi = sorted((n_sorted[idx - 1], n_sorted[idx]))
    sign = -1.0 if decreasing else 1.0
    while hi / lo > 1.0 + 1.0e-4:
        mid = np.sqrt(lo * hi)
        if sign * (_homogeneous_response(config, channel, mid) - value) < 0.0:
            lo = mid
        else:
            hi = mid
    return float(np.sqrt(lo * hi)), False


def azimuthal_signed(
    tensor: CouplingTensor,
    channel_id: str,
    config: ToolConfig,
    tx_moment=None,
    rx_moment=None,
) -> float:
    """Signed dimensionless azimuthal signal from one cross-coupling tensor.

    Moments default to a straight bedding-parallel tool (theta = 90 degrees):
    coaxial along +x, transverse along -z.
    """
    channel = config.channel(channel_id)
    if channel.kind != "azimuthal":
        raise ConfigError(f"channel {channel_id} is not an azimuthal channel")
    tx_name, rx_name = channel.paths[0]
    if tx_moment is None:
        tx_moment = (1.0, 0.0, 0.0) if config.coil(tx_name).orientation == "coaxial" else (0.0, 0.0, -1.0)
    if rx_moment is None:
        rx_moment = (1.0, 0.0, 0.0) if config.coil(rx_name).orientation == "coaxial" else (0.0, 0.0, -1.0)
    v = pair_response(tensor, tx_moment, rx_moment)
    part = v.imag if channel.source == "imag" else v.real
    return float(channel.gain * part)


def simulate(p: ModelInput, config: ToolConfig, method: str = "filter") -> MeasurementVector:
    """Forward-model all 13 channels for one model input.

    ``method`` selects the Hankel evaluation: ``'filter'`` (fast digital
    filter, default) or ``'quadrature'`` (slow adaptive oracle, used for
    validation).  Coupling tensors are memoized across channels that share a
    TX-RX geometry and frequency.
    """
    if method not in ("filter", "quadrature"):
        raise DomainError(f"unknown method {method!r}")
    stack = LayerStack(
        boundaries=p.b,
        resistivities=p.rho_par,
        relative_permittivity=config.relative_permittivity,
    )
    poses = place_coils(config, p.theta_rx, p.theta_ahead)
    pose_by_name = {c.name: pose for c, pose in zip(config.coils, poses)}
    for coil, pose in zip(config.coils, poses):
        try:
            stack.layer_index(pose.position[2])
        except DomainError as exc:
            raise SimulationError(
                f"coil {coil.name} at z={pose.position[2]:.4f} m lies on a layer "
                f"boundary: {exc}"
            ) from exc

    filt = default_filter() if method == "filter" else None
    memo = {}

    def tensor_for(tx_name: str, rx_name: str, freq: float) -> CouplingTensor:
        tx = pose_by_name[tx_name].position
        rx = pose_by_name[rx_name].position
        key = (tuple(np.round(tx, 12)), tuple(np.round(rx, 12)), freq)
        if key not in memo:
            if method == "filter":
                memo[key] = coupling_tensor(stack, tx, rx, freq, filt)
            else:
                memo[key] = coupling_tensor_quadrature(stack, tx, rx, freq, 1.0e-9)
        return memo[key]

    def response(tx_name: str, rx_name: str, freq: float) -> complex:
        t = tensor_for(tx_name, rx_name, freq)
        return pair_response(
            t,
            pose_by_name[tx_name].moment_direction,
            pose_by_name[rx_name].moment_direction,
        )

    values = np.zeros(13)
    flags = np.zeros(13, dtype=bool)
    for i, channel in enumerate(config.channels):
        if channel.kind == "azimuthal":
            acc = 0.0
            for (tx, rx), sign in zip(channel.paths, channel.path_signs):
                v = response(tx, rx, channel.frequency)
                acc += sign * (v.imag if channel.source == "imag" else v.real)
            values[i] = channel.gain * acc / len(channel.paths)
            continue
        legs = []
        for (tx_n, rx_n), (tx_f, rx_f) in zip(channel.paths[0::2], channel.paths[1::2]):
            v_near = response(tx_n, rx_n, channel.frequency)
            v_far = response(tx_f, rx_f, channel.frequency)
            legs.append(attenuation_phase(v_near, v_far))
        comp = legs[0]
        for leg in legs[1:]:
            comp = symmetric_compensation(comp, leg)
        raw = comp[0] if channel.source == "attenuation" else comp[1]
        if channel.kind == "propagation":
            values[i] = raw
        else:
            values[i], flags[i] = apparent_resistivity(raw, channel.mnemonic, config)
    return MeasurementVector(m=values, capped_flags=flags)


def default_tool_config(relative_permittivity: float = 1.0) -> ToolConfig:
    """The documented default tool: deep propagation suite plus extra-deep coils.

    Offsets are meters from the reference point (midpoint of the deep tool's
    R1-R2 pair).  Azimuthal gains normalize by the homogeneous 1 ohm-m
    coaxial coupling magnitude at each channel's spacing and frequency.
    """
    coils = (
        Coil("T1", -0.85, "coaxial", "TX"),
        Coil("R1", -0.15, "coaxial", "RX"),
        Coil("R2", +0.15, "coaxial", "RX"),
        Coil("T2", +0.85, "coaxial", "TX"),
        Coil("R3", -1.15, "transverse", "RX"),
        Coil("R4", +1.15, "transverse", "RX"),
        Coil("XR1", +2.0, "coaxial", "RX"),
        Coil("XR2", +4.0, "coaxial", "RX"),
        Coil("XTZ", +16.0, "coaxial", "TX"),
        Coil("XTX", +16.0, "transverse", "TX"),
    )

    def azimuthal_gain(spacing: float, freq: float) -> float:
        return 1.0 / abs(_homogeneous_axial(1.0, spacing, freq, relative_permittivity))

    g_arsllm = azimuthal_gain(2.0, 400.0e3)
    g_edar50 = azimuthal_gain(12.0, 50.0e3)
    g_edar20 = azimuthal_gain(12.0, 20.0e3)
    cres_paths = (("T1", "R1"), ("T1", "R2"), ("T2", "R2"), ("T2", "R1"))
    dtk_paths = (("XTZ", "XR2"), ("XTZ", "XR1"))
    edar_paths = (("XTX", "XR2"),)
    channels = (
        Channel("RT_CRES_RPCHEX", "apparent-resistivity", 2.0e6, "phase", "ohm-m", cres_paths),
        Channel("RT_CRES_RACEHX", "apparent-resistivity", 2.0e6, "attenuation", "ohm-m", cres_paths),
        Channel("RT_CRES_RPCHELX", "apparent-resistivity", 400.0e3, "phase", "ohm-m", cres_paths),
        Channel("RT_CRES_RACEHLX", "apparent-resistivity", 400.0e3, "attenuation", "ohm-m", cres_paths),
        Channel(
            "RT_ARSLLM", "azimuthal", 400.0e3, "imag", "nondimensional",
            (("T2", "R3"), ("T1", "R4")), path_signs=(+1.0, -1.0), gain=g_arsllm,
        ),
        Channel("RT_DTK_ATC50X", "propagation", 50.0e3, "attenuation", "dB", dtk_paths),
        Channel("RT_DTK_PDC50X", "propagation", 50.0e3, "phase", "deg", dtk_paths),
        Channel("RT_EDAR_ImV50k", "azimuthal", 50.0e3, "imag", "nondimensional",
                edar_paths, path_signs=(+1.0,), gain=g_edar50),
        Channel("RT_EDAR_ReV50k", "azimuthal", 50.0e3, "real", "nondimensional",
                edar_paths, path_signs=(+1.0,), gain=g_edar50),
        Channel("RT_DTK_ATC20X", "propagation", 20.0e3, "attenuation", "dB", dtk_paths),
        Channel("RT_DTK_PDC20X", "propagation", 20.0e3, "phase", "deg", dtk_paths),
        Channel("RT_EDAR_ImV20k", "azimuthal", 20.0e3, "imag", "nondimensional",
                edar_paths, path_signs=(+1.0,), gain=g_edar20),
        Channel("RT_EDAR_ReV20k", "azimuthal", 20.0e3, "real", "nondimensional",
                edar_paths, path_signs=(+1.0,), gain=g_edar20),
    )
    return ToolConfig(
        coils=coils,
        channels=channels,
        relative_permittivity=relative_permittivity,
    )

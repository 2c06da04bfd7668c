"""Link gains (pathloss, shadowing, fading) and per-RB SINR computation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dtxalign.geometry import MobileDrop, NetworkLayout

BOLTZMANN_J_PER_K = 1.380649e-23

# 2 GHz urban-macro NLOS curve, lognormal shadowing on top.
PATHLOSS_INTERCEPT_DB = 128.1
PATHLOSS_SLOPE_DB_PER_DECADE = 37.6
DISTANCE_FLOOR_M = 35.0


@dataclass(frozen=True)
class LinkGainMap:
    """Linear power gain of every (cell, mobile, subcarrier) link.

    Gains are frozen for the lifetime of one drop (quasi-static block
    fading): the only frame-to-frame SINR change is the transmit pattern.
    """

    gain: np.ndarray  # (C, M, N), M = C * K mobiles cell-major
    mobiles_per_cell: int

    @property
    def num_cells(self) -> int:
        return self.gain.shape[0]

    @property
    def num_subcarriers(self) -> int:
        return self.gain.shape[2]


def pathloss_db(distance_m) -> np.ndarray:
    """Macro NLOS pathloss in dB, with a 35 m distance floor."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be > 0")
    d = np.maximum(d, DISTANCE_FLOOR_M)
    out = PATHLOSS_INTERCEPT_DB + PATHLOSS_SLOPE_DB_PER_DECADE * np.log10(d / 1000.0)
    return out if out.ndim else float(out)


def sample_shadowing(rng: np.random.Generator, size=None, std_db: float = 8.0):
    """Zero-mean lognormal shadowing, expressed in dB."""
    return rng.normal(0.0, std_db, size=size)


def noise_power(bandwidth_hz: float, temperature_k: float) -> float:
    """Thermal noise power k_B * T * B in watts."""
    if bandwidth_hz <= 0 or temperature_k <= 0:
        raise ValueError("bandwidth and temperature must be > 0")
    return BOLTZMANN_J_PER_K * temperature_k * bandwidth_hz


def build_link_gains(layout: NetworkLayout, drop: MobileDrop,
                     rng: np.random.Generator, n_subcarriers: int,
                     shadowing_std_db: float = 8.0) -> LinkGainMap:
    """Draw the frozen per-drop gain map.

    gain = 10^(-(PL + shadowing)/10) * fading with a unit-mean exponential
    (Rayleigh power) fading draw per (cell, mobile, subcarrier).  Shadowing
    is one draw per mobile, shared by all of that mobile's links: it then
    cancels out of interference-limited SINR, which keeps the cell-edge
    rate floor set by geometry alone.  Independent per-link draws create
    mobiles whose targets exceed the whole frame grid, freezing the entire
    network at full power.
    """
    mobiles = drop.flat_positions                       # (M, 2)
    cells = layout.cell_positions                       # (C, 2)
    dist = np.linalg.norm(mobiles[None, :, :] - cells[:, None, :], axis=2)
    pl = pathloss_db(dist)                              # (C, M)
    shadow = sample_shadowing(rng, size=(1, mobiles.shape[0]),
                              std_db=shadowing_std_db)
    fading = rng.exponential(1.0, size=pl.shape + (n_subcarriers,))
    gain = 10.0 ** (-(pl + shadow) / 10.0)[..., None] * fading
    return LinkGainMap(gain=gain, mobiles_per_cell=drop.mobiles_per_cell)


def compute_sinr(gains: LinkGainMap, active: np.ndarray, p_rb: float,
                 n0: float) -> np.ndarray:
    """Hypothetical per-RB SINR tensors for every cell.

    active[c, n, t] marks cells transmitting on RB (n, t).  Returns
    s[c, n, t, k], the SINR mobile k of cell c would see on RB (n, t);
    the desired-link numerator is evaluated on every RB, including the
    serving cell's DTX slots, so slot rankings can use all T slots.
    """
    if p_rb <= 0:
        raise ValueError("p_rb must be > 0")
    g = gains.gain
    num_cells, num_mobiles, n_sub = g.shape
    k_per = gains.mobiles_per_cell
    act = active.astype(float)                           # (C, N, T)
    n_slots = act.shape[2]
    # total received power per mobile and RB from all active cells
    total = p_rb * np.einsum("cmn,cnt->mnt", g, act)     # (M, N, T)
    sinr = np.empty((num_cells, n_sub, n_slots, k_per))
    for c in range(num_cells):
        sel = slice(c * k_per, (c + 1) * k_per)
        desired = p_rb * g[c, sel, :]                    # (K, N)
        own = desired[:, :, None] * act[c][None, :, :]   # serving cell's share
        interference = total[sel] - own
        s = desired[:, :, None] / (n0 + interference)    # (K, N, T)
        sinr[c] = s.transpose(1, 2, 0)
    return sinr

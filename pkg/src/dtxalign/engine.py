"""Synchronous multi-cell frame loop and Monte-Carlo experiment driver."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from dtxalign.channel import build_link_gains, compute_sinr, noise_power
from dtxalign.config import SimConfig
from dtxalign.geometry import build_hex_layout, drop_mobiles
from dtxalign.power import PowerBreakdown, PowerParams, total_power
from dtxalign.scheduler import ScheduleMap, allocate_from_bits, rb_bits
from dtxalign.strategies import make_strategy, slot_sum_capacity

# Relative slack when comparing realized to scheduled RB rates; absorbs
# float noise only, any real SINR drop dwarfs it.
DELIVERY_RTOL = 1e-9


@dataclass(frozen=True)
class FrameMetrics:
    """Per-frame record; per-mobile fields refer to the center cell."""

    frame: int
    cell_power_w: np.ndarray       # (C,) total power of every cell
    center_power: PowerBreakdown
    scheduled_bits: np.ndarray     # (K,)
    delivered_bits: np.ndarray     # (K,)
    retransmission: np.ndarray     # (K,) bool: delivered < target
    infeasible: np.ndarray         # (K,) bool: target not schedulable


@dataclass(frozen=True)
class AlgoTraceStep:
    """Memory-strategy internals of the center cell for one frame."""

    frame: int
    psi: tuple
    ranking: tuple
    priority: tuple


@dataclass(frozen=True)
class DropResult:
    frames: list
    algo_trace: list


@dataclass(frozen=True)
class RunSummary:
    strategy: str
    rate_mbps: float
    sum_rate_mbps: float
    mean_power_w: float
    power_trace_w: np.ndarray      # (frames,) mean center-cell power
    retransmission_prob: float
    outage_rate: float
    convergence_frame: int         # 1% band


def convergence_frame(trace: np.ndarray, rel_tol: float) -> int:
    """First frame from which the trace stays within rel_tol of its final
    value."""
    trace = np.asarray(trace, dtype=float)
    final = trace[-1]
    ok = np.abs(trace - final) <= rel_tol * abs(final)
    idx = len(trace) - 1
    while idx > 0 and ok[idx - 1]:
        idx -= 1
    return idx


def retransmission_probability(frames: list) -> float:
    """Fraction of (frame, center-cell mobile) pairs flagged for
    retransmission; infeasible mobiles count as flagged."""
    if not frames:
        raise ValueError("no frames")
    flags = np.array([fm.retransmission | fm.infeasible for fm in frames])
    return float(flags.mean())


def _full_power_frame(config: SimConfig, sinr: np.ndarray, params: PowerParams,
                      targets: np.ndarray) -> FrameMetrics:
    """Worst-case start: every cell transmits on every RB."""
    n_cells = sinr.shape[0]
    n_sub, n_slots, k_mob = sinr.shape[1:]
    # any all-nonzero assignment works; round-robin over mobiles
    n_grid, t_grid = np.meshgrid(np.arange(n_sub), np.arange(n_slots), indexing="ij")
    pi = (n_grid + t_grid) % k_mob + 1
    center = 0  # center cell index by construction
    cell_power = np.empty(n_cells)
    center_breakdown = None
    scheduled = delivered = None
    for c in range(n_cells):
        bits = rb_bits(sinr[c][n_grid, t_grid, pi - 1],
                       config.subcarrier_bw_hz, config.slot_duration_s)
        sched = ScheduleMap(pi=pi, bits=bits,
                            infeasible=np.zeros(k_mob, dtype=bool))
        pb = total_power(sched, params, n_slots)
        cell_power[c] = pb.total_w
        if c == center:
            center_breakdown = pb
            scheduled = sched.scheduled_bits_per_mobile(k_mob)
            delivered = scheduled.copy()   # bits set at realized SINR
    retx = delivered < targets * (1.0 - DELIVERY_RTOL)
    return FrameMetrics(frame=0, cell_power_w=cell_power,
                        center_power=center_breakdown,
                        scheduled_bits=scheduled, delivered_bits=delivered,
                        retransmission=retx,
                        infeasible=np.zeros(k_mob, dtype=bool))


def run_drop(config: SimConfig, drop_seed) -> DropResult:
    """Simulate one Monte-Carlo drop.

    Frame 0 transmits everywhere at full power; each later frame ranks
    slots from the previous frame's reported SINR, schedules, applies all
    cells' schedules simultaneously and accounts delivered bits against
    the realized SINR.
    """
    config.validate()
    seq = drop_seed if isinstance(drop_seed, np.random.SeedSequence) \
        else np.random.SeedSequence(drop_seed)
    # spawn from a fresh copy: SeedSequence.spawn is stateful, and the same
    # drop seed must yield the same channels every time it is replayed
    seq = np.random.SeedSequence(entropy=seq.entropy, spawn_key=seq.spawn_key)
    layout = build_hex_layout(config.tiers, config.isd_m)
    n_cells = layout.num_cells
    children = seq.spawn(2 + n_cells)
    rng_geo = np.random.default_rng(children[0])
    rng_chan = np.random.default_rng(children[1])
    strat_rngs = [np.random.default_rng(s) for s in children[2:]]

    drop = drop_mobiles(layout, config.mobiles_per_cell, rng_geo)
    gains = build_link_gains(layout, drop, rng_chan, config.subcarriers,
                             config.shadowing_std_db)
    n0 = noise_power(config.subcarrier_bw_hz, config.noise_temp_k)
    params = PowerParams(config.p_sleep_w, config.p_idle_w,
                         config.load_factor, config.p_rb_w)
    strategies = [make_strategy(config.strategy, config.slots, strat_rngs[c],
                                p=config.p_persist, psi_ul=config.psi_ul,
                                psi_ll=config.psi_ll)
                  for c in range(n_cells)]
    k_mob = config.mobiles_per_cell
    targets = np.full(k_mob, config.target_bits_per_frame)
    center = layout.center_cell_index
    rate_scale = config.subcarrier_bw_hz * config.slot_duration_s

    active = np.ones((n_cells, config.subcarriers, config.slots), dtype=bool)
    sinr = compute_sinr(gains, active, config.p_rb_w, n0)
    frames = [_full_power_frame(config, sinr, params, targets)]
    algo_trace = []
    prev_sinr = sinr

    for f in range(1, config.frames):
        schedules = []
        for c in range(n_cells):
            caps = np.log2(1.0 + prev_sinr[c])           # (N, T, K)
            b = caps.sum(axis=(0, 2))                    # slot sum capacity
            priority = strategies[c].next_priority(b)
            sched = allocate_from_bits(priority, rate_scale * caps, targets)
            schedules.append(sched)
            active[c] = sched.pi > 0
        sinr = compute_sinr(gains, active, config.p_rb_w, n0)

        cell_power = np.empty(n_cells)
        for c in range(n_cells):
            sched = schedules[c]
            cell_power[c] = total_power(sched, params, config.slots).total_w
            strategies[c].record_used(sched.slot_used)
        sched = schedules[center]
        mask = sched.pi > 0
        owners = sched.pi[mask] - 1
        n_sel, t_sel = np.nonzero(mask)
        actual_bits = rb_bits(sinr[center][n_sel, t_sel, owners],
                              config.subcarrier_bw_hz, config.slot_duration_s)
        ok = actual_bits >= sched.bits[mask] * (1.0 - DELIVERY_RTOL)
        delivered = np.zeros(k_mob)
        np.add.at(delivered, owners[ok], sched.bits[mask][ok])
        scheduled = sched.scheduled_bits_per_mobile(k_mob)
        retx = delivered < targets * (1.0 - DELIVERY_RTOL)
        frames.append(FrameMetrics(
            frame=f, cell_power_w=cell_power,
            center_power=total_power(sched, params, config.slots),
            scheduled_bits=scheduled, delivered_bits=delivered,
            retransmission=retx, infeasible=sched.infeasible.copy()))
        if config.strategy == "memory":
            strat = strategies[center]
            algo_trace.append(AlgoTraceStep(
                frame=f, psi=tuple(int(x) for x in strat.state.psi),
                ranking=strat.last_ranking, priority=strat.last_priority))
        prev_sinr = sinr
    return DropResult(frames=frames, algo_trace=algo_trace)


def run_experiment(config: SimConfig, rate_sweep) -> list:
    """Average center-cell metrics over config.drops for each target rate.

    Drop seeds derive from the master seed alone, so results are
    independent of evaluation order; the same drops (positions, channels)
    are reused across rates to reduce sweep noise.
    """
    config.validate()
    if config.drops < 1:
        raise ValueError("drops must be >= 1")
    drop_seeds = np.random.SeedSequence(config.seed).spawn(config.drops)
    summaries = []
    for rate in rate_sweep:
        cfg = replace(config, target_rate_mbps=float(rate))
        traces = np.empty((config.drops, config.frames))
        retx = []
        outage = []
        for d, ds in enumerate(drop_seeds):
            result = run_drop(cfg, ds)
            traces[d] = [fm.cell_power_w[0] for fm in result.frames]
            steady = result.frames[config.warmup_frames:]
            retx.append(retransmission_probability(steady))
            outage.append(float(np.mean([fm.infeasible for fm in steady])))
        mean_trace = traces.mean(axis=0)
        steady_mean = float(mean_trace[config.warmup_frames:].mean())
        summaries.append(RunSummary(
            strategy=config.strategy,
            rate_mbps=float(rate),
            sum_rate_mbps=float(rate) * config.mobiles_per_cell,
            mean_power_w=steady_mean,
            power_trace_w=mean_trace,
            retransmission_prob=float(np.mean(retx)),
            outage_rate=float(np.mean(outage)),
            convergence_frame=convergence_frame(mean_trace, 0.01),
        ))
    return summaries

"""Plot-ready tabular result files."""

from __future__ import annotations

import os


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _write_table(path: str, config_hash: str, header: list, rows: list) -> None:
    with open(path, "w") as fh:
        fh.write(f"# config_hash={config_hash}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_sweep(summaries: list, outdir: str, config_hash: str,
                filename: str = "sweep.csv") -> str:
    """One row per (strategy, target rate) with steady-state metrics."""
    if not summaries:
        raise ValueError("no summaries to write")
    header = ["strategy", "rate_mbps", "sum_rate_mbps", "mean_power_w",
              "retransmission_prob", "outage_rate", "convergence_frame"]
    rows = [
        (s.strategy, s.rate_mbps, s.sum_rate_mbps, s.mean_power_w,
         s.retransmission_prob, s.outage_rate, s.convergence_frame)
        for s in summaries
    ]
    path = os.path.join(outdir, filename)
    _write_table(path, config_hash, header, rows)
    return path


def write_trace(summaries: list, outdir: str, config_hash: str,
                filename: str = "trace.csv") -> str:
    """One row per (strategy, frame) with the mean center-cell power."""
    if not summaries:
        raise ValueError("no summaries to write")
    header = ["strategy", "rate_mbps", "frame", "power_w"]
    rows = []
    for s in summaries:
        for f, p in enumerate(s.power_trace_w):
            rows.append((s.strategy, s.rate_mbps, f, float(p)))
    path = os.path.join(outdir, filename)
    _write_table(path, config_hash, header, rows)
    return path


def write_algo_trace(steps: list, outdir: str, config_hash: str,
                     labels: list | None = None,
                     filename: str = "algorithm_trace.csv") -> str:
    """Per-frame score map, capacity ranking and priority of the memory
    strategy.  Slot sequences are pipe-joined; labels default to 1-based
    slot numbers."""
    if not steps:
        raise ValueError("no trace steps to write")
    n_slots = len(steps[0].psi)
    if labels is None:
        labels = [str(t + 1) for t in range(n_slots)]

    def slots(seq):
        return "|".join(labels[t] for t in seq)

    header = ["frame", "psi", "ranking", "priority"]
    rows = []
    for st in steps:
        psi_str = "|".join(f"{labels[t]}:{st.psi[t]}" for t in range(n_slots))
        rows.append((st.frame, psi_str, slots(st.ranking), slots(st.priority)))
    path = os.path.join(outdir, filename)
    _write_table(path, config_hash, header, rows)
    return path

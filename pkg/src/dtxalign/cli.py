"""Command-line front end: run, sweep, convergence, trace-algorithm."""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

import numpy as np
import yaml

from dtxalign.config import CONFIG_FIELD_NAMES, STRATEGIES, SimConfig
from dtxalign.engine import AlgoTraceStep, run_drop, run_experiment
from dtxalign.output import write_algo_trace, write_sweep, write_trace
from dtxalign.strategies import ScoreState, memory_update


class CliError(Exception):
    pass


def parse_config(path: str | None, overrides: dict) -> SimConfig:
    """Resolve config: flag overrides > file values > built-in defaults."""
    values = {}
    if path is not None:
        if not os.path.isfile(path):
            raise CliError(f"config file not found: {path}")
        with open(path) as fh:
            loaded = yaml.safe_load(fh)
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise CliError("config file must be a key-value mapping")
        unknown = set(loaded) - set(CONFIG_FIELD_NAMES)
        if unknown:
            raise CliError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        config = SimConfig(**values)
        config.validate()
    except (TypeError, ValueError) as exc:
        raise CliError(f"invalid configuration: {exc}") from exc
    return config


def echo_config(config: SimConfig, outdir: str) -> None:
    with open(os.path.join(outdir, "resolved_config.yaml"), "w") as fh:
        fh.write(f"# config_hash={config.config_hash()}\n")
        yaml.safe_dump(dataclasses.asdict(config), fh, sort_keys=True)


def parse_rates(spec: str) -> list:
    """Accept 'start:stop:step' (inclusive) or a comma-separated list."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise CliError("rate range must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise CliError("invalid rate range")
        n = int(round((stop - start) / step))
        rates = [start + i * step for i in range(n + 1)]
    else:
        rates = [float(p) for p in spec.split(",") if p]
    if not rates or any(r <= 0 for r in rates):
        raise CliError("rates must be positive")
    return rates


def parse_strategies(spec: str) -> list:
    if spec == "all":
        return list(STRATEGIES)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for name in names:
        if name not in STRATEGIES:
            raise CliError(f"unknown strategy: {name}")
    return names


def _prepare_outdir(outdir: str) -> None:
    try:
        os.makedirs(outdir, exist_ok=True)
        probe = os.path.join(outdir, ".write_probe")
        with open(probe, "w"):
            pass
        os.remove(probe)
    except OSError as exc:
        raise CliError(f"output directory not writable: {exc}") from exc


def cmd_run(args) -> None:
    config = parse_config(args.config, {
        "strategy": args.strategy, "target_rate_mbps": args.rate_mbps,
        "drops": args.drops, "frames": args.frames, "seed": args.seed,
    })
    _prepare_outdir(args.out)
    echo_config(config, args.out)
    summaries = run_experiment(config, [config.target_rate_mbps])
    chash = config.config_hash()
    write_sweep(summaries, args.out, chash)
    write_trace(summaries, args.out, chash)
    if config.strategy == "memory":
        result = run_drop(config, np.random.SeedSequence(config.seed).spawn(1)[0])
        write_algo_trace(result.algo_trace, args.out, chash)
    s = summaries[0]
    print(f"strategy={s.strategy} rate={s.rate_mbps:g} Mbps "
          f"mean_power={s.mean_power_w:.6g} W retx={s.retransmission_prob:.6g}")


def cmd_sweep(args) -> None:
    config = parse_config(args.config, {
        "drops": args.drops, "frames": args.frames, "seed": args.seed,
    })
    rates = parse_rates(args.rates)
    strategies = parse_strategies(args.strategies)
    _prepare_outdir(args.out)
    echo_config(config, args.out)
    summaries = []
    for name in strategies:
        cfg = dataclasses.replace(config, strategy=name)
        summaries.extend(run_experiment(cfg, rates))
    path = write_sweep(summaries, args.out, config.config_hash())
    print(f"wrote {len(summaries)} rows to {path}")


def cmd_convergence(args) -> None:
    config = parse_config(args.config, {
        "target_rate_mbps": args.rate_mbps, "drops": args.drops,
        "frames": args.frames, "seed": args.seed,
    })
    strategies = parse_strategies(args.strategies)
    _prepare_outdir(args.out)
    echo_config(config, args.out)
    summaries = []
    for name in strategies:
        cfg = dataclasses.replace(config, strategy=name)
        summaries.extend(run_experiment(cfg, [config.target_rate_mbps]))
    path = write_trace(summaries, args.out, config.config_hash())
    print(f"wrote power traces to {path}")


# Three-slot scoring walkthrough: slots a, b, c; each step gives the slots
# used last frame and the capacity order observed this frame.
DEMO_LABELS = ["a", "b", "c"]
DEMO_PSI0 = {"a": 0, "b": 2, "c": 5}
DEMO_STEPS = [
    ({"c"}, ("b", "c", "a")),
    ({"b", "c"}, ("b", "c", "a")),
    ({"b"}, ("b", "a", "c")),
]


def trace_algorithm_steps(n_steps: int, psi_ul: int = 5,
                          psi_ll: int = 0) -> list:
    """Replay the built-in three-slot scoring walkthrough.

    Steps beyond the scripted three repeat the last input, showing the
    scores settling.  Returns AlgoTraceStep records with 0-based slot
    indices (a=0, b=1, c=2).
    """
    if n_steps < 1:
        raise CliError("steps must be >= 1")
    index = {lab: i for i, lab in enumerate(DEMO_LABELS)}
    n_slots = len(DEMO_LABELS)
    psi = np.array([DEMO_PSI0[lab] for lab in DEMO_LABELS], dtype=int)
    state = ScoreState(psi=psi, psi_ul=psi_ul, psi_ll=psi_ll,
                       used_last=np.zeros(n_slots, dtype=bool))
    steps = []
    for i in range(n_steps):
        used_labels, rank_labels = DEMO_STEPS[min(i, len(DEMO_STEPS) - 1)]
        used = np.zeros(n_slots, dtype=bool)
        used[[index[lab] for lab in used_labels]] = True
        state = dataclasses.replace(state, used_last=used)
        # synthetic capacities realizing the given ranking
        b = np.empty(n_slots)
        for rank, lab in enumerate(rank_labels):
            b[index[lab]] = n_slots - rank
        ranking = tuple(index[lab] for lab in rank_labels)
        state, priority = memory_update(state, b)
        steps.append(AlgoTraceStep(frame=i + 1,
                                   psi=tuple(int(x) for x in state.psi),
                                   ranking=ranking, priority=priority))
    return steps


def cmd_trace_algorithm(args) -> None:
    steps = trace_algorithm_steps(args.steps)
    for st in steps:
        psi_str = ",".join(f"{DEMO_LABELS[t]}:{st.psi[t]}"
                           for t in range(len(DEMO_LABELS)))
        v_str = ",".join(DEMO_LABELS[t] for t in st.priority)
        print(f"step {st.frame}: psi={{{psi_str}}} V=({v_str})")
    if args.out is not None:
        _prepare_outdir(args.out)
        write_algo_trace(steps, args.out, "demo", labels=DEMO_LABELS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtx-sim",
        description="Multi-cell DTX time-slot alignment simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None, help="YAML key-value config file")
        p.add_argument("--drops", type=int, default=None)
        p.add_argument("--frames", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default="results", help="output directory")

    p_run = sub.add_parser("run", help="single strategy at a single rate")
    common(p_run)
    p_run.add_argument("--strategy", choices=STRATEGIES, default=None)
    p_run.add_argument("--rate-mbps", type=float, default=None)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="rate sweep over strategies")
    common(p_sweep)
    p_sweep.add_argument("--rates", default="0.5:3.0:0.25",
                         help="start:stop:step or comma list, in Mbps")
    p_sweep.add_argument("--strategies", default="all")
    p_sweep.set_defaults(func=cmd_sweep)

    p_conv = sub.add_parser("convergence", help="per-frame power traces")
    common(p_conv)
    p_conv.add_argument("--rate-mbps", type=float, default=None)
    p_conv.add_argument("--strategies", default="all")
    p_conv.set_defaults(func=cmd_convergence)

    p_tr = sub.add_parser("trace-algorithm",
                          help="replay the three-slot scoring walkthrough")
    p_tr.add_argument("--steps", type=int, default=3)
    p_tr.add_argument("--out", default=None)
    p_tr.set_defaults(func=cmd_trace_algorithm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

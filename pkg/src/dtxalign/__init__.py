"""Multi-cell OFDMA downlink simulator for distributed DTX time-slot alignment.

Base stations in a reuse-one hexagonal network independently decide which
time slots of each OFDMA frame to use for transmission and which to put
into short sleep (DTX).  Four distributed prioritization strategies are
provided (sequential, random, p-persistent ranking, score-memory ranking)
together with a sequential resource-block scheduler, a slot-level power
model and a Monte-Carlo experiment driver.
"""

from dtxalign.config import SimConfig
from dtxalign.engine import run_drop, run_experiment

__all__ = ["SimConfig", "run_drop", "run_experiment"]

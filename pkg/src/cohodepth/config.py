"""Search bounds and engine limits, overridable from the CLI."""

from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    # Abort Buchberger runs whose pending S-pair exceeds this weighted degree.
    max_gb_degree: int = 40
    # Witness / separating-element searches scan homogeneous degrees up to here.
    degree_bound: int = 20
    # Per-degree cap on F_p-combinations tried in witness/separating searches.
    combination_cap: int = 4096
    # Cross-class parallelism; 1 means fully serial.
    jobs: int = 1


DEFAULT_CONFIG = EngineConfig()

"""Tunable knobs, grouped."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SearchConfig:
    attempts: int = 20
    seed: int = 0
    max_den: int = 10**6
    # LM stalls near 1e-7 on the degenerate roots; the exact re-check decides
    numeric_gate: float = 1e-5
    min_det: float = 1e-6
    barrier_schedule: tuple = (1e-1, 1e-2, 1e-3, 1e-4, 1e-6)
    start_scale: float = 2.0


@dataclass(frozen=True)
class Thresholds:
    brioschi_rational: float = 1e-8
    brioschi_other: float = 1e-7
    first_integral: float = 1e-9
    cofactor: float = 1e-8


@dataclass(frozen=True)
class VerifyConfig:
    tol: float = 1e-10
    t_end: float = 0.5
    seed: int = 0
    path_shift: float = 0.0
    samples_per_segment: int = 40
    thresholds: Thresholds = Thresholds()

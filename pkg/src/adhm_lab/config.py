"""Run-wide knobs shared by the CLI and the pipelines."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .fields import QQ, parse_field_spec


@dataclass
class RunConfig:
    field: object = QQ
    seed: int = 0
    samples: int = 20
    degree_bound: int = 8
    k_min: int = -2
    k_max: int = 2
    trials: int = 64
    strict: bool = False

    @classmethod
    def from_args(cls, args):
        cfg = cls()
        if getattr(args, "field", None):
            cfg.field = parse_field_spec(args.field)
        for name in ("seed", "samples", "degree_bound", "k_min", "k_max",
                     "trials", "strict"):
            value = getattr(args, name, None)
            if value is not None:
                setattr(cfg, name, value)
        return cfg


def thread_cap():
    """Parallelism cap from the environment; at least one."""
    raw = os.environ.get("ADHM_LAB_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return max(1, os.cpu_count() or 1)

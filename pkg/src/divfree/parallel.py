"""Process-pool fan-out controlled by the DIVFREE_JOBS environment variable."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

ENV_VAR = "DIVFREE_JOBS"


def resolve_jobs(jobs: int | None = None) -> int:
    if jobs is None:
        raw = os.environ.get(ENV_VAR)
        if raw is None:
            return os.cpu_count() or 1
        try:
            jobs = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ValueError(f"parallelism degree must be positive, got {jobs}")
    return jobs


def chunked(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    return [items[i::parts] for i in range(parts)]


def fan_out(func, items: list, jobs: int | None = None, min_items: int = 64) -> list:
    """func(chunk) -> list, run over chunks; results concatenated in chunk order.

    Falls back to a plain call when the work is small or one job is requested,
    so results never depend on the degree of parallelism.
    """
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < min_items:
        return func(items)
    chunks = chunked(items, jobs)
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(func, chunks))
    out = []
    for p in parts:
        out.extend(p)
    return out

"""Deterministic parallel map over an indexed task list.

Work is split by task, every task derives its randomness from its own
index, and results come back in task order, so output is byte-identical
whatever the worker count. Fork start is used deliberately: tasks carry
numpy arrays and dataclasses that are cheap to inherit and the package
only targets POSIX hosts for multi-worker runs.
"""
from __future__ import annotations

import multiprocessing
import os

__all__ = ["pmap"]


def pmap(fn, tasks, workers: int = 1):
    """Map fn over tasks, optionally across worker processes."""
    tasks = list(tasks)
    workers = max(1, min(int(workers), len(tasks) or 1))
    if workers == 1:
        return [fn(task) for task in tasks]
    cpus = os.cpu_count() or 1
    workers = min(workers, cpus)
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(tasks) // (workers * 4))
    with ctx.Pool(workers) as pool:
        return pool.map(fn, tasks, chunksize=chunk)

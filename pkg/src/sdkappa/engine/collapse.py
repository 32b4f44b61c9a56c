"""Elementary simplicial collapses.

A face ``tau`` is free when it lies in exactly one other simplex ``sigma``
of the complex, necessarily of one dimension more and maximal.  Removing the
pair keeps the homotopy type.  The greedy strategy always takes a free face
of the smallest available dimension, breaking ties by the sorted vertex
tuple, so runs are reproducible.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence


def _closure(simplices: Iterable[Sequence]) -> set[tuple]:
    out: set[tuple] = set()
    stack = [tuple(sorted(s)) for s in simplices]
    while stack:
        s = stack.pop()
        if s in out:
            continue
        out.add(s)
        if len(s) > 1:
            stack.extend(s[:i] + s[i + 1:] for i in range(len(s)))
    return out


def _cofaces(alive: set[tuple]) -> dict[tuple, set[tuple]]:
    co: dict[tuple, set[tuple]] = {s: set() for s in alive}
    for s in alive:
        if len(s) > 1:
            for i in range(len(s)):
                co[s[:i] + s[i + 1:]].add(s)
    return co


def greedy_collapse(simplices: Iterable[Sequence]) -> tuple[list[tuple[tuple, tuple]], set[tuple]]:
    """Collapse greedily; returns the ``(free face, coface)`` steps and what remains."""
    alive = _closure(simplices)
    co = _cofaces(alive)
    heap = [(len(s), s) for s in alive if len(co[s]) == 1]
    heapq.heapify(heap)
    steps: list[tuple[tuple, tuple]] = []
    while heap:
        _, tau = heapq.heappop(heap)
        if tau not in alive or len(co[tau]) != 1:
            continue
        (sigma,) = co[tau]
        if co[sigma]:
            continue
        steps.append((tau, sigma))
        for s in (sigma, tau):
            alive.discard(s)
            if len(s) > 1:
                for i in range(len(s)):
                    f = s[:i] + s[i + 1:]
                    if f in alive:
                        co[f].discard(s)
                        if len(co[f]) == 1:
                            heapq.heappush(heap, (len(f), f))
            del co[s]
        if len(alive) == 1:
            break
    return steps, alive


def replay_collapse(simplices: Iterable[Sequence], steps: Sequence[tuple[Sequence, Sequence]]) -> set[tuple]:
    """Re-check a collapse sequence; raises ValueError on the first illegal step."""
    alive = _closure(simplices)
    co = _cofaces(alive)
    for tau, sigma in steps:
        tau, sigma = tuple(tau), tuple(sigma)
        if tau not in alive or sigma not in alive:
            raise ValueError(f"{tau} or {sigma} is not present")
        if co[tau] != {sigma} or co[sigma]:
            raise ValueError(f"{tau} is not a free face of {sigma}")
        for s in (sigma, tau):
            alive.discard(s)
            if len(s) > 1:
                for i in range(len(s)):
                    f = s[:i] + s[i + 1:]
                    if f in co:
                        co[f].discard(s)
            del co[s]
    return alive

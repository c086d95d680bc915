"""Monte Carlo cross-checks of the closed-form hitting-time transforms.

This is the only module allowed to touch floating point.  Every path draws
from its own counter-based stream (Philox keyed by ``(seed, path_index)``)
and results are reduced in path order, so a report is bit-reproducible for
a fixed seed regardless of how the work would be scheduled.

Level crossings of the continuous paths are detected at grid times only;
the induced discretization bias is absorbed by an absolute tolerance floor
(default 0.01 at dt = 1e-3) on top of the three-standard-error band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import BudgetExceededError, InvalidSitesError
from .models import BirthDeathChain

DEFAULT_ABS_FLOOR = 0.01
_STEP_CAP = 10_000_000
_FIRST_BLOCK = 1024
_MAX_BLOCK = 1 << 16


@dataclass(frozen=True)
class SimReport:
    """Outcome of one simulation run against its closed-form target.

    ``passed`` holds when ``|estimate - target| <= max(3*std_error, abs_floor)``.
    """

    estimate: float
    std_error: float
    target: float
    paths: int
    dt: float
    seed: int
    passed: bool


def _finish(values: np.ndarray, target: float, paths: int, dt: float, seed: int,
            abs_floor: float) -> SimReport:
    estimate = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(paths)) if paths > 1 else 0.0
    passed = abs(estimate - target) <= max(3 * std_error, abs_floor)
    return SimReport(estimate, std_error, target, paths, dt, seed, passed)


def _path_rng(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed & (2**64 - 1), index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def simulate_bm_hit(
    level: Fraction | float,
    w: float,
    paths: int = 100_000,
    dt: float = 1e-3,
    seed: int = 0,
    step_cap: int = _STEP_CAP,
    abs_floor: float = DEFAULT_ABS_FLOOR,
) -> SimReport:
    """Estimate ``E[exp(-w^2 T / 2)]`` for reflected Brownian motion from 0
    hitting ``level``; the closed-form target is ``1/cosh(level * w)``.

    The path is the absolute value of a running Gaussian sum with per-step
    variance ``dt``; ``T`` is the first grid time at or beyond the level.
    """
    lvl = float(level)
    if lvl <= 0 or w < 0 or dt <= 0 or paths < 1:
        raise ValueError("need level > 0, w >= 0, dt > 0 and at least one path")
    lam = w * w / 2
    sqrt_dt = math.sqrt(dt)
    values = np.empty(paths)
    for i in range(paths):
        rng = _path_rng(seed, i)
        position = 0.0
        steps_done = 0
        block = _FIRST_BLOCK
        while True:
            walk = position + np.cumsum(rng.standard_normal(block)) * sqrt_dt
            hits = np.abs(walk) >= lvl
            if hits.any():
                hit_time = (steps_done + int(np.argmax(hits)) + 1) * dt
                values[i] = math.exp(-lam * hit_time)
                break
            position = walk[-1]
            steps_done += block
            if steps_done >= step_cap:
                raise BudgetExceededError(f"path {i} exceeded {step_cap} steps")
            block = min(block * 2, _MAX_BLOCK)
    target = 1 / math.cosh(lvl * w)
    return _finish(values, target, paths, dt, seed, abs_floor)


def simulate_bessel_hit(
    level: Fraction | float,
    w: float,
    paths: int = 100_000,
    dt: float = 1e-3,
    seed: int = 0,
    step_cap: int = _STEP_CAP,
    abs_floor: float = DEFAULT_ABS_FLOOR,
) -> SimReport:
    """Estimate ``E[exp(-w^2 T / 2)]`` for the norm of 3-d Brownian motion
    from the origin hitting ``level``; the target is
    ``(level*w)/sinh(level*w)`` (1 at ``w = 0``)."""
    lvl = float(level)
    if lvl <= 0 or w < 0 or dt <= 0 or paths < 1:
        raise ValueError("need level > 0, w >= 0, dt > 0 and at least one path")
    lam = w * w / 2
    sqrt_dt = math.sqrt(dt)
    values = np.empty(paths)
    for i in range(paths):
        rng = _path_rng(seed, i)
        position = np.zeros(3)
        steps_done = 0
        block = _FIRST_BLOCK
        while True:
            walk = position + np.cumsum(rng.standard_normal((block, 3)), axis=0) * sqrt_dt
            hits = (walk * walk).sum(axis=1) >= lvl * lvl
            if hits.any():
                hit_time = (steps_done + int(np.argmax(hits)) + 1) * dt
                values[i] = math.exp(-lam * hit_time)
                break
            position = walk[-1]
            steps_done += block
            if steps_done >= step_cap:
                raise BudgetExceededError(f"path {i} exceeded {step_cap} steps")
            block = min(block * 2, _MAX_BLOCK)
    target = lvl * w / math.sinh(lvl * w) if w > 0 else 1.0
    return _finish(values, target, paths, dt, seed, abs_floor)


def _bd_pgf_value(
    chain: BirthDeathChain, start: int, target: int, taboo: int | None, z: float
) -> float:
    """Float evaluation of the first-passage PGF at ``z`` by an absorbing
    dynamic program, iterated until the unresolved tail is negligible."""
    n = chain.n_sites
    up = [float(p) for p in chain.up]
    dist = [0.0] * n
    dist[start] = 1.0
    total = 0.0
    z_pow = 1.0
    for _ in range(1_000_000):
        z_pow *= z
        nxt = [0.0] * n
        for i, mass in enumerate(dist):
            if mass == 0.0:
                continue
            if i == 0:
                nxt[1] += mass
            elif i == n - 1:
                nxt[n - 2] += mass
            else:
                nxt[i + 1] += mass * up[i - 1]
                nxt[i - 1] += mass * (1 - up[i - 1])
        total += z_pow * nxt[target]
        nxt[target] = 0.0
        if taboo is not None:
            nxt[taboo] = 0.0
        dist = nxt
        if z_pow * sum(dist) < 1e-15:
            break
    return total


def simulate_bd(
    chain: BirthDeathChain,
    start: int,
    target: int,
    z: float,
    paths: int = 100_000,
    seed: int = 0,
    taboo: int | None = None,
    step_cap: int = 1_000_000,
    abs_floor: float = 0.0,
) -> SimReport:
    """Estimate ``E[z^T; success]`` for the chain's first passage from
    ``start`` to ``target`` (optionally avoiding ``taboo``).

    A path absorbed by the taboo contributes 0, as does the vanishing tail
    of a path that outlives the step cap.  ``dt`` is reported as 0: the
    chain is exact in discrete time, so the default tolerance is purely
    statistical.
    """
    if not 0 < z <= 1:
        raise ValueError("need 0 < z <= 1")
    if paths < 1:
        raise ValueError("need at least one path")
    n = chain.n_sites
    if not (0 <= start < n and 0 <= target < n) or start == target:
        raise InvalidSitesError("start and target must be distinct sites of the chain")
    if taboo is not None and (not 0 <= taboo < n or taboo in (start, target)):
        raise InvalidSitesError("taboo must be a chain site distinct from start and target")
    up = [float(p) for p in chain.up]
    values = np.empty(paths)
    for i in range(paths):
        rng = _path_rng(seed, i)
        site = start
        steps = 0
        outcome = 0.0
        uniforms = iter(())
        while steps < step_cap:
            if site == 0:
                site = 1
            elif site == n - 1:
                site = n - 2
            else:
                u = next(uniforms, None)
                if u is None:
                    uniforms = iter(rng.random(256))
                    u = next(uniforms)
                site += 1 if u < up[site - 1] else -1
            steps += 1
            if site == target:
                outcome = z**steps
                break
            if site == taboo:
                break
        values[i] = outcome
    target_value = _bd_pgf_value(chain, start, target, taboo, z)
    return _finish(values, target_value, paths, 0.0, seed, abs_floor)

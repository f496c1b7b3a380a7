"""Optimization engines: standard PSO and TVAC-PSO.

Both engines share one driver parameterized by an inertia strategy.  The
update is synchronous: the global best used in velocity updates is the
value from the end of the previous iteration, and all particles are moved
and evaluated together, in index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    RunBudget,
    RunRecord,
    checked_evaluation,
    clip_position,
    initialize_swarm,
    spawn_rng,
    update_bests,
)
from .inertia import (
    ConstantInertia,
    FitnessDeltas,
    InertiaStrategy,
    ldiw_weight,
    per_particle_weights,
)

STANDARD = "standard"
TVAC = "tvac"


@dataclass(frozen=True)
class PsoConfig:
    """Engine settings for one run.

    ``variant`` selects constant acceleration coefficients (``standard``,
    c1 = c2 = 1.0 by default) or linearly varying ones (``tvac``, cognitive
    2.5 -> 0.5 and social 0.5 -> 2.5).  ``w0`` and the ``w_min``/``w_max``
    schedule supply the weight used before fitness-adaptive strategies have
    two fitness samples per particle (standard and tvac variant
    respectively).
    """

    n: int
    budget: RunBudget
    inertia: InertiaStrategy = field(default_factory=ConstantInertia)
    seed: int = 0
    variant: str = STANDARD
    c1: float = 1.0
    c2: float = 1.0
    c1_start: float = 2.5
    c1_final: float = 0.5
    c2_start: float = 0.5
    c2_final: float = 2.5
    w0: float = 0.72
    w_min: float = 0.4
    w_max: float = 0.9

    def __post_init__(self):
        if self.variant not in (STANDARD, TVAC):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.budget.max_evals < 2 * self.n:
            raise ValueError("budget must allow at least one iteration (2n evals)")

    @classmethod
    def standard(cls, n, max_evals, inertia=None, seed=0, **kw):
        inertia = ConstantInertia() if inertia is None else inertia
        return cls(n=n, budget=RunBudget(max_evals), inertia=inertia, seed=seed,
                   variant=STANDARD, **kw)

    @classmethod
    def tvac(cls, n, max_evals, inertia=None, seed=0, **kw):
        from .inertia import LinearDecreasingInertia

        inertia = LinearDecreasingInertia() if inertia is None else inertia
        return cls(n=n, budget=RunBudget(max_evals), inertia=inertia, seed=seed,
                   variant=TVAC, **kw)


def tvac_coefficients(cfg, t, t_max):
    """Cognitive/social coefficients at iteration ``t``.

    Linear schedules between the configured start and final values; the
    standard variant returns its constant pair.
    """
    if cfg.variant == STANDARD:
        return cfg.c1, cfg.c2
    tau = t / t_max if t_max else 0.0
    c1 = cfg.c1_start + (cfg.c1_final - cfg.c1_start) * tau
    c2 = cfg.c2_start + (cfg.c2_final - cfg.c2_start) * tau
    return c1, c2


def velocity_step(v, x, p, g, w, c1, c2, r1, r2):
    """New velocities from the PSO update rule.

    ``w`` is per particle, ``r1``/``r2`` are (n, D) uniform draws, and the
    products with the attraction terms are component-wise.
    """
    w = np.asarray(w, dtype=float).reshape(-1, 1)
    return w * v + c1 * r1 * (p - x) + c2 * r2 * (g - x)


def velocity_update(v, x, p, g, w, c1, c2, rng):
    """Velocity update drawing fresh uniform [0,1] D-vectors per particle."""
    r1 = rng.random(x.shape)
    r2 = rng.random(x.shape)
    return velocity_step(v, x, p, g, w, c1, c2, r1, r2)


def position_update(x, v, space):
    """Move by the velocity, then clamp back into the search box."""
    return clip_position(x + v, space)


def _fallback_weight(cfg, t, t_max):
    if cfg.variant == TVAC:
        return ldiw_weight(cfg.w_min, cfg.w_max, t, t_max)
    return cfg.w0


def run(problem, cfg, warm_start=None):
    """Execute one seeded run and return its record.

    The iteration count is fixed up front from the evaluation budget so the
    time-blended schedules have a constant denominator; the budget is never
    exceeded.  All randomness comes from a single stream keyed by
    ``cfg.seed``: initialization draws, any degenerate-angle replacements,
    then the two uniform vectors per particle per iteration.
    """
    rng = spawn_rng(cfg.seed)
    t_max = cfg.budget.iterations(cfg.n)
    state = initialize_swarm(problem, cfg.n, rng, warm_start=warm_start)
    trace = [state.f_g]
    for t in range(1, t_max + 1):
        state.t = t
        deltas = None
        if t >= 2:
            deltas = FitnessDeltas.from_fitness(state.f_curr, state.f_prev)
        w = per_particle_weights(
            cfg.inertia, deltas, t, t_max, rng, cfg.n,
            fallback=_fallback_weight(cfg, t, t_max),
        )
        c1, c2 = tvac_coefficients(cfg, t, t_max)
        state.v = velocity_update(state.v, state.x, state.p, state.g, w, c1, c2, rng)
        state.x = position_update(state.x, state.v, problem.space)
        state.f_prev = state.f_curr
        state.f_curr = checked_evaluation(problem, state.x)
        state.evals += cfg.n
        update_bests(state)
        trace.append(state.f_g)
    return RunRecord(
        final_best=float(state.f_g),
        trace=np.asarray(trace),
        evals_used=state.evals,
        seed=cfg.seed,
        best_position=state.g.copy(),
    )

"""Inertia-weight strategies.

Covers the classic schedules (constant, linearly decreasing) and the
fitness-adaptive family: the languid on/off switch and its generalization
where each particle's inertia is read off a pair of piecewise-linear
weight curves indexed by an "advancement angle".

The angle for particle k is ``atan2(df_k, min_i df_i)`` where ``df`` is the
fitness change over the last completed iteration.  Under minimization it
always lands in [pi/4, 5*pi/4] and splits into three bands:

* [pi/4, pi/2]   every particle got worse (or stalled),
* (pi/2, pi]     the swarm improved somewhere, particle k did not,
* (pi, 5*pi/4]   particle k itself improved.

A weight model maps angles to inertia weights through five knots at
``THETA_KNOTS``, one curve for the start of the run and one for the end,
blended linearly over iterations.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

THETA_MIN = np.pi / 4
THETA_MAX = 5 * np.pi / 4
THETA_KNOTS = np.array([np.pi / 4, np.pi / 2, 3 * np.pi / 4, np.pi, 5 * np.pi / 4])

# atan2 of two exhausted deltas is ~0; such angles carry no information and
# are replaced by a random angle over the whole band.
_NEAR_ZERO = 1e-300

# Inertia bonus granted to particles that improved, on top of the default
# weight, compensating for the swarm's intermittent inertial velocity.
LANGUID_BONUS = 0.05


class Advancement(enum.Enum):
    ALL_FAILED = "all_failed"
    SWARM_IMPROVED_PARTICLE_NOT = "swarm_improved_particle_not"
    PARTICLE_IMPROVED = "particle_improved"


def advancement_angles(deltas, min_delta, rng):
    """Vector of advancement angles for per-particle fitness changes.

    ``min_delta`` must be <= every entry of ``deltas``.  Angles are mapped
    into [pi/4, 5*pi/4]; near-zero results (both arguments exhausted to
    zero) are replaced by uniform random draws over the same interval, in
    index order, from ``rng``.
    """
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    theta = np.arctan2(deltas, float(min_delta))
    theta = np.where(theta < 0.0, theta + 2.0 * np.pi, theta)
    degenerate = np.abs(theta) < _NEAR_ZERO
    if degenerate.any():
        theta[degenerate] = rng.uniform(THETA_MIN, THETA_MAX, size=int(degenerate.sum()))
    return np.clip(theta, THETA_MIN, THETA_MAX)


def advancement_angle(delta_k, min_delta, rng):
    """Scalar advancement angle, see :func:`advancement_angles`."""
    if not min_delta <= delta_k:
        raise ValueError("min_delta must not exceed delta_k")
    return float(advancement_angles([delta_k], min_delta, rng)[0])


def classify_advancement(theta):
    """Map an angle in [pi/4, 5*pi/4] to its particle-vs-swarm state."""
    if not THETA_MIN <= theta <= THETA_MAX:
        raise ValueError(f"angle {theta!r} outside [pi/4, 5*pi/4]")
    if theta <= np.pi / 2:
        return Advancement.ALL_FAILED
    if theta <= np.pi:
        return Advancement.SWARM_IMPROVED_PARTICLE_NOT
    return Advancement.PARTICLE_IMPROVED


def interpolate_knots(knots, theta):
    """Piecewise-linear interpolation of five knot weights over THETA_KNOTS.

    Exact at the knot abscissae.  Accepts scalar or array ``theta``.
    """
    knots = np.asarray(knots, dtype=float)
    if knots.shape != (5,):
        raise ValueError("exactly five knot values are required")
    return np.interp(theta, THETA_KNOTS, knots)


@dataclass(frozen=True)
class AkbModel:
    """Adaptive-inertia model: five start and five final knot weights.

    ``knots_start`` and ``knots_final`` are the inertia weights at the knot
    angles {pi/4, pi/2, 3*pi/4, pi, 5*pi/4} at the first and last iteration
    of a run; in between the two curves are blended linearly in time.
    """

    name: str
    knots_start: np.ndarray
    knots_final: np.ndarray

    def __post_init__(self):
        for attr in ("knots_start", "knots_final"):
            arr = np.asarray(getattr(self, attr), dtype=float)
            if arr.shape != (5,):
                raise ValueError(f"{attr} must hold exactly 5 values")
            object.__setattr__(self, attr, arr)

    def weight_start(self, theta):
        return interpolate_knots(self.knots_start, theta)

    def weight_final(self, theta):
        return interpolate_knots(self.knots_final, theta)

    def to_dict(self):
        return {
            "name": self.name,
            "knots_start": self.knots_start.tolist(),
            "knots_final": self.knots_final.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            name=str(data["name"]),
            knots_start=np.asarray(data["knots_start"], dtype=float),
            knots_final=np.asarray(data["knots_final"], dtype=float),
        )

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class LanguidStepModel:
    """Step-shaped weight model: zero unless the particle itself improved.

    Equivalent to the languid switch, expressed as a weight-vs-angle model.
    Kept as a dedicated step function because a 5-knot linear interpolant
    cannot represent the jump at theta = pi.
    """

    w0: float = 0.72

    @property
    def name(self):
        return f"languid-step({self.w0})"

    def _step(self, theta):
        return np.where(np.asarray(theta) > np.pi, self.w0 + LANGUID_BONUS, 0.0)

    def weight_start(self, theta):
        return self._step(theta)

    def weight_final(self, theta):
        return self._step(theta)


def languid_step_model(w0=0.72):
    """Languid switch recast as a step weight model."""
    return LanguidStepModel(w0=float(w0))


def blended_weight(model, theta, t, t_max):
    """Inertia weight from a model at angle ``theta`` and iteration ``t``.

    Linear blend of the start and final weight curves; the endpoints
    reproduce those curves exactly.  A degenerate single-iteration run
    (``t_max == 0``) uses the start curve alone.
    """
    w_s = model.weight_start(theta)
    if t_max == 0 or t == 0:
        return w_s
    w_f = model.weight_final(theta)
    if t == t_max:
        return w_f
    return w_s + (w_f - w_s) * (t / t_max)


def ldiw_weight(w_min, w_max, t, t_max):
    """Linearly decreasing inertia weight: w_max at t=0 down to w_min at t_max."""
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    return w_max + (w_min - w_max) * (t / t_max)


_BUILTIN_KNOTS = {
    # name: (variant, start knots, final knots)
    "Flying Stork": (
        "standard",
        (-0.86, 0.24, -1.10, 0.75, 0.72),
        (-0.81, -0.35, -0.26, 0.64, 0.60),
    ),
    "Messy Tie": (
        "standard",
        (-0.62, 0.18, 0.65, 0.32, 0.77),
        (0.36, 0.73, -0.62, 0.40, 1.09),
    ),
    "Rightward Peaks": (
        "tvac",
        (-1.79, -0.33, 2.00, -0.67, 1.30),
        (-0.91, -0.88, -0.84, 0.67, -0.36),
    ),
    "Origami Snake": (
        "tvac",
        (-1.36, 2.00, 1.00, -0.60, 1.22),
        (0.30, 1.03, -0.21, 0.40, 0.06),
    ),
}


def builtin_models():
    """The four published adaptive-inertia models."""
    return [
        AkbModel(name=name, knots_start=np.array(start), knots_final=np.array(final))
        for name, (_, start, final) in _BUILTIN_KNOTS.items()
    ]


def builtin_model(name):
    """Look up one built-in model by name."""
    if name not in _BUILTIN_KNOTS:
        known = ", ".join(sorted(_BUILTIN_KNOTS))
        raise KeyError(f"unknown model {name!r}; built-ins: {known}")
    _, start, final = _BUILTIN_KNOTS[name]
    return AkbModel(name=name, knots_start=np.array(start), knots_final=np.array(final))


def recommended_variant(name):
    """PSO variant ('standard' or 'tvac') a built-in model was designed for."""
    return _BUILTIN_KNOTS[name][0]


# ---------------------------------------------------------------------------
# strategies


@dataclass(frozen=True)
class ConstantInertia:
    w: float = 0.72


@dataclass(frozen=True)
class LinearDecreasingInertia:
    w_min: float = 0.4
    w_max: float = 0.9

    def __post_init__(self):
        if self.w_min > self.w_max:
            raise ValueError("w_min must not exceed w_max")


@dataclass(frozen=True)
class LanguidInertia:
    """Direct on/off switch: inertia only for particles that just improved."""

    w0: float = 0.72


@dataclass(frozen=True)
class AnakatabaticInertia:
    """Per-particle inertia through an angle-indexed weight model."""

    model: AkbModel | LanguidStepModel


InertiaStrategy = (
    ConstantInertia | LinearDecreasingInertia | LanguidInertia | AnakatabaticInertia
)


@dataclass(frozen=True)
class FitnessDeltas:
    """Per-particle fitness changes over the last completed iteration."""

    delta: np.ndarray
    min_delta: float

    def __post_init__(self):
        object.__setattr__(self, "delta", np.asarray(self.delta, dtype=float))
        if self.delta.size and not np.all(self.min_delta <= self.delta):
            raise ValueError("min_delta must be <= every delta")

    @classmethod
    def from_fitness(cls, f_latest, f_earlier):
        delta = np.asarray(f_latest, dtype=float) - np.asarray(f_earlier, dtype=float)
        return cls(delta=delta, min_delta=float(np.min(delta)))


def per_particle_weights(strategy, deltas, t, t_max, rng, n, fallback=0.72):
    """Inertia weight vector for the whole swarm at iteration ``t``.

    Constant and linearly-decreasing strategies ignore ``deltas`` and give
    every particle the same weight.  The fitness-adaptive strategies need
    ``deltas`` (available from t >= 2); before that they return
    ``fallback``, the weight the plain variant would have used.
    """
    if isinstance(strategy, ConstantInertia):
        return np.full(n, strategy.w)
    if isinstance(strategy, LinearDecreasingInertia):
        return np.full(n, ldiw_weight(strategy.w_min, strategy.w_max, t, t_max))
    if deltas is None:
        if t >= 2:
            raise ValueError("fitness deltas are required from iteration 2 on")
        return np.full(n, float(fallback))
    if isinstance(strategy, LanguidInertia):
        return np.where(deltas.delta < 0.0, strategy.w0 + LANGUID_BONUS, 0.0)
    if isinstance(strategy, AnakatabaticInertia):
        theta = advancement_angles(deltas.delta, deltas.min_delta, rng)
        return np.asarray(blended_weight(strategy.model, theta, t, t_max), dtype=float)
    raise TypeError(f"unknown inertia strategy {strategy!r}")

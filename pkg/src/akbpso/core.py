"""Problem definitions, swarm state and deterministic randomness.

Everything here is shared by the optimization engines: the bounded search
space, the objective wrapper, the struct-of-arrays swarm state, seeded
random streams and the evaluation-budget arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class NonFiniteFitnessError(RuntimeError):
    """Objective returned NaN/inf; the run is aborted rather than patched."""

    def __init__(self, problem_name, particle, position, value):
        self.problem_name = problem_name
        self.particle = int(particle)
        self.position = np.asarray(position)
        self.value = value
        super().__init__(
            f"non-finite fitness {value!r} for particle {particle} of "
            f"problem {problem_name!r} at x={np.asarray(position).tolist()}"
        )


def spawn_rng(*key):
    """Independent random generator keyed by a tuple of integers.

    The same key always yields the same stream; distinct keys yield
    streams that are independent in practice.  Used everywhere seeds are
    derived positionally, e.g. ``spawn_rng(master_seed, problem_index,
    run_index)``.
    """
    return np.random.default_rng(np.random.SeedSequence(tuple(int(k) for k in key)))


def derive_seed(*key):
    """Collapse a positional key into a single 64-bit run seed."""
    ss = np.random.SeedSequence(tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box in R^D."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ValueError("lower/upper must be 1-D vectors of equal length")
        if lower.size < 1:
            raise ValueError("search space needs at least one dimension")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")

    @property
    def dims(self):
        return self.lower.size

    @classmethod
    def cube(cls, dims, low, high):
        """Hypercube [low, high]^dims."""
        return cls(np.full(dims, float(low)), np.full(dims, float(high)))


class ObjectiveProblem:
    """Minimization problem over a bounded box.

    Parameters
    ----------
    evaluate : callable
        Pure, deterministic map from a D-vector to a scalar.
    space : SearchSpace
        Feasible box; engines keep particles inside it.
    f_star : float, optional
        Known global minimum, when available.
    name : str
        Identifier used in results and diagnostics.
    """

    def __init__(self, evaluate, space, f_star=None, name=""):
        self._evaluate = evaluate
        self.space = space
        self.f_star = None if f_star is None else float(f_star)
        self.name = name or getattr(evaluate, "__name__", "problem")

    def evaluate(self, x):
        return float(self._evaluate(np.asarray(x, dtype=float)))

    def evaluate_many(self, xs):
        """Evaluate a (m, D) batch of points; rows are independent."""
        xs = np.asarray(xs, dtype=float)
        return np.array([self.evaluate(x) for x in xs])


@dataclass
class SwarmState:
    """Struct-of-arrays swarm: row ``k`` of each array is particle ``k``.

    ``f_prev`` holds the fitness one iteration back and is ``None`` until
    every particle has been evaluated twice.
    """

    x: np.ndarray          # (n, D) positions
    v: np.ndarray          # (n, D) velocities
    f_curr: np.ndarray     # (n,) fitness at x
    p: np.ndarray          # (n, D) personal-best positions
    f_p: np.ndarray        # (n,) personal-best fitness
    g: np.ndarray          # (D,) global-best position
    f_g: float             # global-best fitness
    t: int = 0             # iteration counter
    evals: int = 0         # objective evaluations so far
    f_prev: np.ndarray | None = None

    @property
    def n(self):
        return self.x.shape[0]


@dataclass(frozen=True)
class RunBudget:
    """Evaluation budget; the driver never exceeds ``max_evals``.

    Counting the n initialization evaluations, a swarm of n particles can
    afford ``max_evals // n - 1`` update iterations.
    """

    max_evals: int

    def __post_init__(self):
        if self.max_evals < 1:
            raise ValueError("max_evals must be positive")

    def iterations(self, n):
        return self.max_evals // n - 1


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one seeded run."""

    final_best: float
    trace: np.ndarray          # best-of-swarm fitness after init and each iteration
    evals_used: int
    seed: int
    best_position: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "trace", np.asarray(self.trace, dtype=float))


def clip_position(x, space):
    """Clamp every component of ``x`` into the box."""
    return np.clip(x, space.lower, space.upper)


def checked_evaluation(problem, xs):
    """Batch-evaluate ``xs``; abort on NaN/inf with the offending particle."""
    f = np.asarray(problem.evaluate_many(xs), dtype=float)
    bad = ~np.isfinite(f)
    if bad.any():
        k = int(np.argmax(bad))
        raise NonFiniteFitnessError(problem.name, k, xs[k], f[k])
    return f


def initialize_swarm(problem, n, rng, warm_start=None):
    """Random swarm over the problem box, evaluated once.

    Positions are uniform in [lower, upper] per dimension, velocities
    uniform in +/-(upper - lower).  ``warm_start`` optionally replaces the
    first rows of the position matrix with caller-supplied points (used to
    seed metaoptimization with known-good design vectors).
    """
    if n < 2:
        raise ValueError("swarm needs at least 2 particles")
    space = problem.space
    d = space.dims
    span = space.upper - space.lower
    x = space.lower + rng.uniform(size=(n, d)) * span
    v = -span + rng.uniform(size=(n, d)) * (2.0 * span)
    if warm_start is not None:
        warm = np.atleast_2d(np.asarray(warm_start, dtype=float))
        if warm.shape[0] > n or warm.shape[1] != d:
            raise ValueError("warm_start must be at most (n, D)")
        x[: warm.shape[0]] = clip_position(warm, space)
    f = checked_evaluation(problem, x)
    best = int(np.argmin(f))
    return SwarmState(
        x=x,
        v=v,
        f_curr=f,
        p=x.copy(),
        f_p=f.copy(),
        g=x[best].copy(),
        f_g=float(f[best]),
        t=0,
        evals=n,
    )


def update_bests(state):
    """Fold current fitness into personal/global bests (gbest topology).

    Global-best ties break toward the lowest particle index so replays are
    deterministic.  Mutates and returns ``state``.
    """
    improved = state.f_curr < state.f_p
    state.p[improved] = state.x[improved]
    state.f_p[improved] = state.f_curr[improved]
    best = int(np.argmin(state.f_p))
    state.g = state.p[best].copy()
    state.f_g = float(state.f_p[best])
    return state

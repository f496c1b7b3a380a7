"""Seeded benchmark suite of shifted/rotated test functions.

Structurally modeled on the classic competition suites: a catalog of base
functions with their optimum at the origin, random shift/rotation
transforms with a known offset optimum, plus hybrid (dimension-split) and
composition (distance-weighted blend) constructors.  Every problem knows
its global minimum ``f_star`` exactly, and identical ``(dims, seed)``
always reproduce the identical suite.

The search domain is [-100, 100]^D throughout; optima are shifted
uniformly within [-80, 80]^D so they stay interior.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .core import ObjectiveProblem, SearchSpace, spawn_rng

DOMAIN_LOW, DOMAIN_HIGH = -100.0, 100.0
SHIFT_LOW, SHIFT_HIGH = -80.0, 80.0

# Internal input scalings keep the classic landscapes at their intended
# ruggedness over the +/-100 domain (mirrors the usual domain remappings:
# rastrigin +/-5.12, griewank +/-600, schwefel +/-1000, weierstrass +/-0.5).
_RASTRIGIN_SCALE = 5.12 / 100.0
_GRIEWANK_SCALE = 600.0 / 100.0
_ROSENBROCK_SCALE = 2.048 / 100.0
_SCHWEFEL_SCALE = 1000.0 / 100.0
_WEIERSTRASS_SCALE = 0.5 / 100.0

_SCHWEFEL_OPT = 420.9687462275036
_SCHWEFEL_PEAK = _SCHWEFEL_OPT * np.sin(np.sqrt(_SCHWEFEL_OPT))


def _sphere(z):
    return np.sum(z * z, axis=-1)


def _bent_cigar(z):
    return z[..., 0] ** 2 + 1e6 * np.sum(z[..., 1:] ** 2, axis=-1)


def _discus(z):
    return 1e6 * z[..., 0] ** 2 + np.sum(z[..., 1:] ** 2, axis=-1)


def _rosenbrock(z):
    # Map so the minimum sits at the origin: y = scale*z + 1.
    y = _ROSENBROCK_SCALE * z + 1.0
    a, b = y[..., :-1], y[..., 1:]
    return np.sum(100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2, axis=-1)


def _ackley(z):
    d = z.shape[-1]
    s1 = np.sum(z * z, axis=-1) / d
    s2 = np.sum(np.cos(2.0 * np.pi * z), axis=-1) / d
    return -20.0 * np.exp(-0.2 * np.sqrt(s1)) - np.exp(s2) + 20.0 + np.e


def _rastrigin(z):
    y = _RASTRIGIN_SCALE * z
    return np.sum(y * y - 10.0 * np.cos(2.0 * np.pi * y) + 10.0, axis=-1)


def _griewank(z):
    y = _GRIEWANK_SCALE * z
    d = y.shape[-1]
    idx = np.sqrt(np.arange(1.0, d + 1.0))
    return np.sum(y * y, axis=-1) / 4000.0 - np.prod(np.cos(y / idx), axis=-1) + 1.0


def _schwefel_g(y):
    """One coordinate's contribution, with the out-of-range taper."""
    out = np.empty_like(y)
    inside = np.abs(y) <= 500.0
    out[inside] = y[inside] * np.sin(np.sqrt(np.abs(y[inside])))
    hi = y > 500.0
    if hi.any():
        yh = y[hi]
        m = 500.0 - np.mod(yh, 500.0)
        out[hi] = m * np.sin(np.sqrt(np.abs(m))) - (yh - 500.0) ** 2 / (10000.0 * y.shape[-1])
    lo = y < -500.0
    if lo.any():
        yl = y[lo]
        m = np.mod(np.abs(yl), 500.0) - 500.0
        out[lo] = m * np.sin(np.sqrt(np.abs(m))) - (yl + 500.0) ** 2 / (10000.0 * y.shape[-1])
    return out


def _schwefel(z):
    y = _SCHWEFEL_SCALE * z + _SCHWEFEL_OPT
    return np.sum(_SCHWEFEL_PEAK - _schwefel_g(y), axis=-1)


_W_A, _W_B, _W_KMAX = 0.5, 3.0, 20
_W_POWERS = _W_A ** np.arange(_W_KMAX + 1)
_W_FREQS = 2.0 * np.pi * _W_B ** np.arange(_W_KMAX + 1)
_W_BASELINE = float(np.sum(_W_POWERS * np.cos(_W_FREQS * 0.5)))


def _weierstrass(z):
    y = _WEIERSTRASS_SCALE * z
    d = y.shape[-1]
    terms = _W_POWERS * np.cos(_W_FREQS * (y[..., None] + 0.5))
    return np.sum(terms, axis=(-2, -1)) - d * _W_BASELINE


@dataclass(frozen=True)
class BaseFunction:
    """A catalog entry: minimum value 0 attained at the origin."""

    name: str
    fn: callable
    modality: str  # "unimodal" | "multimodal"

    def __call__(self, z):
        return self.fn(np.asarray(z, dtype=float))


_CATALOG = [
    BaseFunction("sphere", _sphere, "unimodal"),
    BaseFunction("bent_cigar", _bent_cigar, "unimodal"),
    BaseFunction("discus", _discus, "unimodal"),
    BaseFunction("rosenbrock", _rosenbrock, "multimodal"),
    BaseFunction("ackley", _ackley, "multimodal"),
    BaseFunction("rastrigin", _rastrigin, "multimodal"),
    BaseFunction("griewank", _griewank, "multimodal"),
    BaseFunction("schwefel", _schwefel, "multimodal"),
    BaseFunction("weierstrass", _weierstrass, "multimodal"),
]
_BY_NAME = {b.name: b for b in _CATALOG}


def base_catalog():
    """All base functions, unimodal first."""
    return list(_CATALOG)


def base_function(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown base function {name!r}") from None


def random_rotation(dims, rng):
    """Random orthogonal matrix from QR of a Gaussian matrix (det +/-1)."""
    if dims < 1:
        raise ValueError("dims must be >= 1")
    q, r = np.linalg.qr(rng.standard_normal((dims, dims)))
    return q * np.sign(np.diag(r))


def _domain_space(dims):
    return SearchSpace.cube(dims, DOMAIN_LOW, DOMAIN_HIGH)


class TransformedProblem(ObjectiveProblem):
    """Shift/rotate/bias wrapper with the optimum pinned at the shift.

    Evaluation is ``inner(M (x - o)) + bias`` where ``inner`` is a base
    function or a hybrid recipe, so the global minimum sits at ``x = o``
    with value ``bias``.
    """

    def __init__(self, inner, shift, rotation, bias, name, kind="transformed"):
        shift = np.asarray(shift, dtype=float)
        rotation = np.asarray(rotation, dtype=float)
        space = _domain_space(shift.size)
        if not (np.all(shift > space.lower) and np.all(shift < space.upper)):
            raise ValueError("shift must be strictly inside the search domain")
        self.inner = inner
        self.shift = shift
        self.rotation = rotation
        self.bias = float(bias)
        self.kind = kind
        super().__init__(self._eval_one, space, f_star=float(bias), name=name)

    def _eval_one(self, x):
        # Route through the batch path so both entry points agree bitwise.
        return float(self.evaluate_many(np.asarray(x, dtype=float)[None, :])[0])

    def evaluate_many(self, xs):
        z = (np.atleast_2d(np.asarray(xs, dtype=float)) - self.shift) @ self.rotation.T
        return np.asarray(self.inner(z) + self.bias, dtype=float)


def transform(base, shift, rotation, bias, name=None):
    """Shifted/rotated/biased problem from a base function."""
    name = name or base.name
    return TransformedProblem(base, shift, rotation, bias, name, kind=base.modality)


class _HybridRecipe:
    """Contiguous dimension blocks, one base function per block."""

    def __init__(self, parts, dims):
        fracs = np.array([f for _, f in parts], dtype=float)
        if abs(fracs.sum() - 1.0) > 1e-9:
            raise ValueError("hybrid fractions must sum to 1")
        sizes = np.floor(fracs * dims).astype(int)
        for i in range(dims - int(sizes.sum())):
            sizes[i % len(sizes)] += 1
        if (sizes < 1).any():
            raise ValueError("every hybrid part needs at least one dimension")
        self.bases = [b for b, _ in parts]
        self.bounds = np.concatenate([[0], np.cumsum(sizes)])

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        total = 0.0
        for base, lo, hi in zip(self.bases, self.bounds[:-1], self.bounds[1:]):
            total = total + base(z[..., lo:hi])
        return total


def make_hybrid(parts, shift, rotation, bias, name="hybrid"):
    """Hybrid problem: rotated coordinates split into per-function blocks.

    ``parts`` is a list of (BaseFunction, fraction) with fractions summing
    to one; each part must receive at least one dimension.  The minimum
    stays at the shift with value ``bias``.
    """
    shift = np.asarray(shift, dtype=float)
    recipe = _HybridRecipe(parts, shift.size)
    return TransformedProblem(recipe, shift, rotation, bias, name, kind="hybrid")


class CompositionProblem(ObjectiveProblem):
    """Distance-weighted blend of component problems.

    Weights are ``exp(-||x - o_i||^2 / (2 D sigma_i^2))`` normalized to sum
    one; when all of them underflow to zero the nearest component wins
    outright.  The global minimum is the smallest component bias, reached
    at that component's shift (checked numerically at construction).
    """

    def __init__(self, components, sigmas, name="composition"):
        if len(components) < 2:
            raise ValueError("composition needs at least 2 components")
        dims = {c.space.dims for c in components}
        if len(dims) != 1:
            raise ValueError("all components must share one dimensionality")
        sigmas = np.asarray(sigmas, dtype=float)
        if sigmas.shape != (len(components),) or (sigmas <= 0).any():
            raise ValueError("one positive sigma per component is required")
        self.components = list(components)
        self.sigmas = sigmas
        self.shifts = np.stack([c.shift for c in components])
        best = int(np.argmin([c.bias for c in components]))
        self._best = best
        d = self.shifts.shape[1]
        super().__init__(self._eval_one, _domain_space(d),
                         f_star=self.components[best].bias, name=name)
        self.kind = "composition"
        gap = abs(self.evaluate(self.components[best].shift) - self.f_star)
        if gap > 1e-6:
            raise ValueError(
                f"composition optimum check failed: off by {gap:.3e}; "
                "components are too close for their sigmas"
            )

    def _weights(self, xs):
        d2 = np.sum((xs[:, None, :] - self.shifts[None, :, :]) ** 2, axis=-1)
        dims = xs.shape[-1]
        w = np.exp(-d2 / (2.0 * dims * self.sigmas**2))
        tot = w.sum(axis=1)
        dead = tot == 0.0
        if dead.any():
            nearest = np.argmin(d2[dead], axis=1)
            w[dead] = 0.0
            w[np.flatnonzero(dead), nearest] = 1.0
            tot = w.sum(axis=1)
        return w / tot[:, None]

    def _eval_one(self, x):
        return float(self.evaluate_many(np.asarray(x, dtype=float)[None, :])[0])

    def evaluate_many(self, xs):
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        w = self._weights(xs)
        vals = np.stack([c.evaluate_many(xs) for c in self.components], axis=1)
        return np.sum(w * vals, axis=1)


def make_composition(components, sigmas, name="composition"):
    return CompositionProblem(components, sigmas, name=name)


@dataclass(frozen=True)
class Suite:
    """Ordered problem collection, reproducible from (dims, seed)."""

    problems: tuple
    dims: int
    seed: int

    def __len__(self):
        return len(self.problems)

    def __iter__(self):
        return iter(self.problems)

    def __getitem__(self, i):
        return self.problems[i]

    def recipe(self):
        """JSON-ready description: names, seeds, shifts and biases."""
        return {
            "suite": "desk",
            "dims": self.dims,
            "seed": self.seed,
            "problems": [
                {
                    "name": p.name,
                    "kind": p.kind,
                    "f_star": p.f_star,
                    "shift": getattr(p, "shift", np.array([])).tolist()
                    if not isinstance(p, CompositionProblem)
                    else [c.shift.tolist() for c in p.components],
                }
                for p in self.problems
            ],
        }

    def recipe_hash(self):
        blob = json.dumps(self.recipe(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


_DESK_DIMS = (2, 10, 20, 50)


def _draw_shift(rng, dims):
    return rng.uniform(SHIFT_LOW, SHIFT_HIGH, size=dims)


def _separated_shifts(rng, dims, count, min_dist):
    """Shifts with pairwise distance >= min_dist, by rejection."""
    shifts = [_draw_shift(rng, dims)]
    attempts = 0
    while len(shifts) < count:
        cand = _draw_shift(rng, dims)
        if all(np.linalg.norm(cand - s) >= min_dist for s in shifts):
            shifts.append(cand)
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("could not separate composition shifts")
    return shifts


def desk_suite(dims, seed):
    """The 12-problem suite: 3 unimodal, 5 multimodal, 2 hybrid, 2 composition.

    Biases are 100 * (index + 1).  Every problem is freshly shifted and
    rotated from streams keyed by (seed, problem index), so suites with the
    same (dims, seed) are bit-identical.
    """
    if dims not in _DESK_DIMS:
        raise ValueError(f"dims must be one of {_DESK_DIMS}")

    problems = []

    def prob_rng(idx):
        return spawn_rng(seed, dims, idx)

    plain = ["sphere", "bent_cigar", "discus", "rosenbrock", "ackley",
             "rastrigin", "griewank", "schwefel"]
    for idx, name in enumerate(plain):
        rng = prob_rng(idx)
        problems.append(
            transform(base_function(name), _draw_shift(rng, dims),
                      random_rotation(dims, rng), 100.0 * (idx + 1),
                      name=f"f{idx + 1:02d}_{name}")
        )

    hybrids = [
        ("h_cigar_rastrigin", [(base_function("bent_cigar"), 0.5),
                               (base_function("rastrigin"), 0.5)]),
        ("h_griewank_weierstrass", [(base_function("griewank"), 0.5),
                                    (base_function("weierstrass"), 0.5)]),
    ]
    for j, (name, parts) in enumerate(hybrids):
        idx = 8 + j
        rng = prob_rng(idx)
        problems.append(
            make_hybrid(parts, _draw_shift(rng, dims), random_rotation(dims, rng),
                        100.0 * (idx + 1), name=f"f{idx + 1:02d}_{name}")
        )

    compositions = [
        ("c_rastrigin_sphere", ["rastrigin", "sphere"], (8.0, 6.0)),
        ("c_ackley_weier_griewank", ["ackley", "weierstrass", "griewank"],
         (6.0, 8.0, 7.0)),
    ]
    for j, (name, bases, sigmas) in enumerate(compositions):
        idx = 10 + j
        rng = prob_rng(idx)
        bias0 = 100.0 * (idx + 1)
        min_dist = np.sqrt(2.0 * dims * max(sigmas) ** 2 * 26.0)
        shifts = _separated_shifts(rng, dims, len(bases), min_dist)
        comps = [
            transform(base_function(b), shifts[i], random_rotation(dims, rng),
                      bias0 + 100.0 * i, name=f"{name}.{b}")
            for i, b in enumerate(bases)
        ]
        problems.append(
            make_composition(comps, sigmas, name=f"f{idx + 1:02d}_{name}")
        )

    return Suite(problems=tuple(problems), dims=dims, seed=seed)

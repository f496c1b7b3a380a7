"""Accuracy and comparison measures over repeated runs.

``epsilon_hat`` is the mean final best-of-swarm fitness minus the known
optimum.  Two paired scores compare a plain variant X against its
adaptive-inertia counterpart XA on the same problem: ``alpha`` is a
bounded relative rating in [-2, 2] and ``omega`` the improvement in
orders of magnitude; both are positive when XA is more accurate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Zero errors would break the logarithmic scores, so errors are floored at
# a value far below anything the benchmarks produce.
EPS_FLOOR = 1e-300


def epsilon_hat(records, f_star):
    """Mean final best fitness across runs, minus the optimum (floored)."""
    if not records:
        raise ValueError("epsilon_hat needs at least one run record")
    mean_best = float(np.mean([r.final_best for r in records]))
    return max(mean_best - f_star, EPS_FLOOR)


def alpha(eps_x, eps_xa):
    """Relative accuracy rating in [-2, 2]; positive favors the XA side."""
    if eps_x <= 0 or eps_xa <= 0:
        raise ValueError("alpha needs strictly positive errors")
    return (eps_x - eps_xa) / (0.5 * (eps_x + eps_xa))


def omega(eps_x, eps_xa):
    """Error improvement in orders of magnitude; positive favors XA."""
    if eps_x <= 0 or eps_xa <= 0:
        raise ValueError("omega needs strictly positive errors")
    return np.log10(eps_x / eps_xa)


@dataclass(frozen=True)
class FunctionResult:
    """All runs of one configuration on one problem."""

    problem: str
    f_star: float
    records: tuple
    eps_hat: float

    @classmethod
    def collect(cls, problem_name, f_star, records):
        return cls(
            problem=problem_name,
            f_star=float(f_star),
            records=tuple(records),
            eps_hat=epsilon_hat(records, f_star),
        )


@dataclass(frozen=True)
class ComparisonRow:
    problem: str
    eps_x: float
    eps_xa: float
    alpha: float
    omega: float


@dataclass(frozen=True)
class SuiteComparison:
    """Per-function scores plus their unweighted means across the suite."""

    rows: tuple
    alpha_avg: float
    omega_avg: float


def compare_suite(results_x, results_xa):
    """Pair up per-function results of two configurations and score them.

    Both lists must cover the same problems in the same order.  Returns
    per-function alpha/omega rows and their plain means.
    """
    if len(results_x) != len(results_xa):
        raise ValueError("result lists differ in length")
    rows = []
    for rx, ra in zip(results_x, results_xa):
        if rx.problem != ra.problem:
            raise ValueError(f"problem mismatch: {rx.problem!r} vs {ra.problem!r}")
        rows.append(
            ComparisonRow(
                problem=rx.problem,
                eps_x=rx.eps_hat,
                eps_xa=ra.eps_hat,
                alpha=alpha(rx.eps_hat, ra.eps_hat),
                omega=omega(rx.eps_hat, ra.eps_hat),
            )
        )
    return SuiteComparison(
        rows=tuple(rows),
        alpha_avg=float(np.mean([r.alpha for r in rows])),
        omega_avg=float(np.mean([r.omega for r in rows])),
    )


def comparison_csv(comparison):
    """CSV text: one row per function and a trailing summary row."""
    lines = ["problem,eps_x,eps_xa,alpha,omega"]
    for r in comparison.rows:
        lines.append(f"{r.problem},{r.eps_x!r},{r.eps_xa!r},{r.alpha!r},{r.omega!r}")
    lines.append(f"AVERAGE,,,{comparison.alpha_avg!r},{comparison.omega_avg!r}")
    return "\n".join(lines) + "\n"

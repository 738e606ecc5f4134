"""Moments, dependence measures, and orthant-order checks for count PMFs.

Counts here are small integers with heavy ties, so the rank statistics use
the tie-corrected variants: Kendall's tau-b and Spearman's rho on average
ranks. When a margin is constant, all three correlation measures are
reported as explicitly undefined rather than silently zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats as _sps

from .pmf import JointPmf
from .simulate import SampleMatrix

__all__ = [
    "TypeMoments",
    "MomentSummary",
    "DependenceSummary",
    "OrderViolation",
    "OrderReport",
    "marginal_moments",
    "correlations",
    "pairwise_correlations",
    "upper_orthant_survival",
    "lower_orthant_cdf",
    "check_orthant_monotone",
]


@dataclass(frozen=True)
class TypeMoments:
    mean: float
    sd: float
    mean_prop: float
    sd_prop: float


@dataclass(frozen=True)
class MomentSummary:
    """Mean and SD of each type's compromised count (and proportion)."""

    per_type: tuple[TypeMoments, ...]


@dataclass(frozen=True)
class DependenceSummary:
    """Pearson, Kendall tau-b and Spearman rho; None when undefined."""

    pearson: float | None
    kendall: float | None
    spearman: float | None

    @property
    def undefined(self) -> bool:
        return self.pearson is None


def _pmf_moments(pmf: JointPmf) -> MomentSummary:
    out = []
    for axis, size in enumerate(pmf.type_sizes):
        marg = pmf.marginal(axis)
        xs = np.arange(marg.size, dtype=float)
        mean = float((xs * marg).sum())
        var = float(((xs - mean) ** 2 * marg).sum())
        sd = float(np.sqrt(max(var, 0.0)))
        if size > 0:
            out.append(TypeMoments(mean, sd, mean / size, sd / size))
        else:
            out.append(TypeMoments(mean, sd, 0.0, 0.0))
    return MomentSummary(tuple(out))


def _sample_moments(samples: SampleMatrix, depth: int) -> MomentSummary:
    block = samples.at_depth(depth).astype(float)
    out = []
    for t in range(samples.num_types):
        col = block[:, t]
        mean = float(col.mean())
        sd = float(col.std(ddof=1)) if col.size > 1 else 0.0
        size = samples.type_sizes[t] if samples.type_sizes else 0
        if size > 0:
            out.append(TypeMoments(mean, sd, mean / size, sd / size))
        else:
            out.append(TypeMoments(mean, sd, 0.0, 0.0))
    return MomentSummary(tuple(out))


def marginal_moments(
    source: JointPmf | SampleMatrix, depth: int | None = None
) -> MomentSummary:
    """Per-type count moments: exact from a PMF, unbiased-SD from samples."""
    if isinstance(source, JointPmf):
        return _pmf_moments(source)
    if depth is None:
        raise ValueError("depth required for sample moments")
    return _sample_moments(source, depth)


def correlations(x: Sequence[float], y: Sequence[float]) -> DependenceSummary:
    """Dependence between two count sequences.

    Returns the all-undefined summary when either margin is constant
    (correlation with a constant has no value).
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or xa.shape != ya.shape:
        raise ValueError("x and y must be 1-D of equal length")
    if xa.size < 2:
        raise ValueError("need at least 2 samples")
    if np.all(xa == xa[0]) or np.all(ya == ya[0]):
        return DependenceSummary(None, None, None)
    pearson = float(np.corrcoef(xa, ya)[0, 1])
    kendall = float(_sps.kendalltau(xa, ya).statistic)
    spearman = float(_sps.spearmanr(xa, ya).statistic)
    return DependenceSummary(pearson, kendall, spearman)


def pairwise_correlations(
    samples: SampleMatrix, depth: int
) -> dict[tuple[int, int], DependenceSummary]:
    """Dependence summaries for every type pair at one depth."""
    block = samples.at_depth(depth)
    m = samples.num_types
    out = {}
    for i in range(m):
        for j in range(i + 1, m):
            out[(i, j)] = correlations(block[:, i], block[:, j])
    return out


def _check_point(pmf: JointPmf, point: Sequence[int]) -> tuple[int, ...]:
    pt = tuple(int(v) for v in point)
    if len(pt) != pmf.num_types:
        raise ValueError(f"point has {len(pt)} coordinates, PMF has {pmf.num_types}")
    return pt


def upper_orthant_survival(pmf: JointPmf, point: Sequence[int]) -> float:
    """P(X_1 > x_1, ..., X_M > x_M). Coordinates of -1 impose no bound."""
    pt = _check_point(pmf, point)
    sel = tuple(slice(max(x, -1) + 1, None) for x in pt)
    return float(pmf.probs[sel].sum())


def lower_orthant_cdf(pmf: JointPmf, point: Sequence[int]) -> float:
    """P(X_1 <= x_1, ..., X_M <= x_M)."""
    pt = _check_point(pmf, point)
    if any(x < 0 for x in pt):
        return 0.0
    sel = tuple(slice(0, x + 1) for x in pt)
    return float(pmf.probs[sel].sum())


@dataclass(frozen=True)
class OrderViolation:
    kind: str  # "survival" or "cdf"
    point: tuple[int, ...]
    magnitude: float


@dataclass(frozen=True)
class OrderReport:
    """Outcome of an orthant comparison between two PMFs.

    ``passed`` holds iff ``max_violation <= tolerance``; the violation list
    carries every grid point where an inequality failed beyond tolerance.
    """

    claim: str
    tolerance: float
    max_violation: float
    violations: tuple[OrderViolation, ...]
    passed: bool

    def summary(self, max_listed: int = 5) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status}: {self.claim} (max violation {self.max_violation:.3e}, tol {self.tolerance:.1e})"]
        for v in self.violations[:max_listed]:
            lines.append(f"  {v.kind} at x={v.point}: {v.magnitude:.3e}")
        extra = len(self.violations) - max_listed
        if extra > 0:
            lines.append(f"  ... and {extra} more")
        return "\n".join(lines)


def _survival_grid(probs: np.ndarray) -> np.ndarray:
    """g[x] = P(X >= x) for every grid point x."""
    g = probs
    for ax in range(probs.ndim):
        g = np.flip(np.cumsum(np.flip(g, ax), ax), ax)
    return g


def _cdf_grid(probs: np.ndarray) -> np.ndarray:
    g = probs
    for ax in range(probs.ndim):
        g = np.cumsum(g, ax)
    return g


def check_orthant_monotone(
    pmf_lo: JointPmf,
    pmf_hi: JointPmf,
    tol: float = 1e-12,
    claim: str = "lo is orthant-dominated by hi",
) -> OrderReport:
    """Check the orthant inequalities implied by stochastic dominance.

    Passes iff, at every grid point, the upper-orthant survival of ``pmf_hi``
    is at least that of ``pmf_lo`` and its lower-orthant CDF is at most that
    of ``pmf_lo``, both within ``tol``. These are necessary conditions of the
    usual multivariate stochastic order; the full order (over all
    nondecreasing functions) is not finitely checkable and is not claimed.
    """
    if pmf_lo.dims != pmf_hi.dims:
        raise ValueError(f"dimension mismatch: {pmf_lo.dims} vs {pmf_hi.dims}")
    surv_gap = _survival_grid(pmf_lo.probs) - _survival_grid(pmf_hi.probs)
    cdf_gap = _cdf_grid(pmf_hi.probs) - _cdf_grid(pmf_lo.probs)
    violations: list[OrderViolation] = []
    for kind, gap in (("survival", surv_gap), ("cdf", cdf_gap)):
        for point in np.argwhere(gap > tol):
            pt = tuple(int(v) for v in point)
            violations.append(OrderViolation(kind, pt, float(gap[pt])))
    violations.sort(key=lambda v: -v.magnitude)
    max_violation = max(0.0, float(surv_gap.max()), float(cdf_gap.max()))
    return OrderReport(
        claim=claim,
        tolerance=tol,
        max_violation=max_violation,
        violations=tuple(violations),
        passed=max_violation <= tol,
    )

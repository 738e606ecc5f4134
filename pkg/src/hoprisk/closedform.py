"""Closed-form joint compromise-count distributions for symmetric topologies.

For a complete graph with homogeneous probabilities, a star, and a complete
bipartite graph, the exact-set probabilities depend only on set sizes, which
collapses the subset enumeration of the general engine into short binomial
sums. Each formula here is checked against the general engine in the test
suite, so these are safe fast paths, not approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .pmf import JointPmf

__all__ = [
    "CompleteHomogParams",
    "TwoClassParams",
    "r_complete",
    "complete_homog_pmf",
    "star_pmf",
    "bipartite_pmf",
]

# exact integer binomials below this n, log-gamma floats above (overflow safety)
_EXACT_COMB_LIMIT = 60


def _comb(n: int, m: int) -> float:
    if m < 0 or m > n:
        return 0.0
    if n <= _EXACT_COMB_LIMIT:
        return float(math.comb(n, m))
    return math.exp(
        math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)
    )


@dataclass(frozen=True)
class CompleteHomogParams:
    """Complete graph, common direct probability p and attempt probability q."""

    type_sizes: tuple[int, ...]
    p: float
    q: float
    depth: int

    def __post_init__(self) -> None:
        if not self.type_sizes or min(self.type_sizes) <= 0:
            raise ValueError("type sizes must be positive")
        if not 0.0 <= self.p <= 1.0 or not 0.0 <= self.q <= 1.0:
            raise ValueError("p and q must be in [0, 1]")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


@dataclass(frozen=True)
class TwoClassParams:
    """Two node classes with class-level probabilities.

    ``p1``/``p2`` are the direct-compromise probabilities of class 1 and 2;
    ``q12`` is the per-attempt probability that a class-1 node compromises a
    class-2 node, ``q21`` the reverse. For a star, class 1 is the hub.
    """

    p1: float
    p2: float
    q12: float
    q21: float

    def __post_init__(self) -> None:
        for val in (self.p1, self.p2, self.q12, self.q21):
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"probability out of [0, 1]: {val}")


@lru_cache(maxsize=None)
def _r_complete(u: int, c: int, d: int, depth: int, q: float) -> float:
    qbar = 1.0 - q
    if depth == 1:
        return (1.0 - qbar**d) ** (c - d) * qbar ** (d * (u - c))
    total = 0.0
    for i in range(c - d + 1):
        w = _r_complete(u, d + i, d, 1, q)
        if w != 0.0:
            total += _comb(c - d, i) * w * _r_complete(u - d, c - d, i, depth - 1, q)
    return total


def r_complete(u: int, c: int, d: int, depth: int, *, q: float) -> float:
    """Exact-set propagation probability on the complete graph K_u.

    Probability that, starting from some d directly compromised nodes, the
    compromised set after ``depth`` rounds is exactly some fixed superset of
    size c. By symmetry only the sizes matter.
    """
    if not 0 <= d <= c <= u:
        raise ValueError(f"need 0 <= d <= c <= u, got d={d}, c={c}, u={u}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be in [0, 1]")
    return _r_complete(u, c, d, depth, q)


def complete_homog_pmf(params: CompleteHomogParams) -> JointPmf:
    """Joint count distribution on a homogeneous complete graph.

    f(x) factors into the number of ways to choose the compromised nodes per
    type times a sum over how many of them were hit directly.
    """
    sizes = params.type_sizes
    n = sum(sizes)
    p, pbar, depth = params.p, 1.0 - params.p, params.depth
    dims = tuple(s + 1 for s in sizes)
    probs = np.zeros(dims)
    for x in np.ndindex(*dims):
        chi = sum(x)
        ways = 1.0
        for size, xi in zip(sizes, x):
            ways *= _comb(size, xi)
        total = 0.0
        for d in range(chi + 1):
            total += (
                _comb(chi, d)
                * p**d
                * pbar ** (n - d)
                * _r_complete(n, chi, d, depth, params.q)
            )
        probs[x] = ways * total
    return JointPmf(dims, probs)


def star_pmf(params: TwoClassParams, n: int, depth: int) -> JointPmf:
    """Joint count distribution on a star with hub (class 1) and n-1 leaves.

    Propagation on a star saturates after two rounds, so any depth >= 2 maps
    to the depth-2 form.
    """
    if n < 2:
        raise ValueError("a star needs at least 2 nodes")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    leaves = n - 1
    p1, p2, q12, q21 = params.p1, params.p2, params.q12, params.q21
    p1b, p2b, q12b, q21b = 1.0 - p1, 1.0 - p2, 1.0 - q12, 1.0 - q21
    dims = (2, n)
    probs = np.zeros(dims)
    for m in range(leaves + 1):
        # hub intact: the m directly compromised leaves must all miss it
        probs[0, m] = _comb(leaves, m) * p1b * p2**m * p2b ** (leaves - m) * q21b**m
        if depth == 1:
            hit_by_leaves = (
                _comb(leaves, m)
                * p2**m
                * p1b
                * p2b ** (leaves - m)
                * (1.0 - q21b**m)
            )
            hub_direct = 0.0
            for d in range(m + 1):
                hub_direct += (
                    _comb(m, d)
                    * p1
                    * p2**d
                    * p2b ** (leaves - d)
                    * q12 ** (m - d)
                    * q12b ** (leaves - m)
                )
            probs[1, m] = hit_by_leaves + _comb(leaves, m) * hub_direct
        else:
            # hub compromised in round 1 by a direct leaf, spreads in round 2
            via_leaves = 0.0
            for d in range(1, m + 1):
                via_leaves += (
                    _comb(m, d)
                    * p1b
                    * p2**d
                    * p2b ** (leaves - d)
                    * (1.0 - q21b**d)
                    * q12b ** (leaves - m)
                    * q12 ** (m - d)
                )
            hub_direct = 0.0
            for d in range(m + 1):
                hub_direct += (
                    _comb(m, d)
                    * p1
                    * p2**d
                    * p2b ** (leaves - d)
                    * q12b ** (leaves - m)
                    * q12 ** (m - d)
                )
            probs[1, m] = _comb(leaves, m) * (via_leaves + hub_direct)
    return JointPmf(dims, probs)


def bipartite_pmf(
    params: TwoClassParams, n1: int, n2: int, depth: int = 1
) -> JointPmf:
    """Joint count distribution on the complete bipartite graph K_{n1,n2}.

    Only the single-round case has a closed form here; for deeper propagation
    use the exact engine on an explicitly built bipartite network.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both sides must be nonempty")
    if depth != 1:
        raise ValueError(
            "bipartite closed form covers depth 1 only; use the exact engine "
            "for deeper propagation"
        )
    p1, p2, q12, q21 = params.p1, params.p2, params.q12, params.q21
    dims = (n1 + 1, n2 + 1)
    probs = np.zeros(dims)
    for m1 in range(n1 + 1):
        for m2 in range(n2 + 1):
            total = 0.0
            for d1 in range(m1 + 1):
                for d2 in range(m2 + 1):
                    total += (
                        _comb(m1, d1)
                        * _comb(m2, d2)
                        * p1**d1
                        * p2**d2
                        * (1.0 - p1) ** (n1 - d1)
                        * (1.0 - p2) ** (n2 - d2)
                        * (1.0 - (1.0 - q12) ** d1) ** (m2 - d2)
                        * (1.0 - (1.0 - q21) ** d2) ** (m1 - d1)
                        * (1.0 - q12) ** (d1 * (n2 - m2))
                        * (1.0 - q21) ** (d2 * (n1 - m1))
                    )
            probs[m1, m2] = _comb(n1, m1) * _comb(n2, m2) * total
    return JointPmf(dims, probs)

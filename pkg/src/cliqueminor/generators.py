"""Graph families, the dense random model, and the fixed-partition minor probability."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, blow_up
from .structure import (TGraphSpec, k33_three_twist, petersen_complement_base, reconstruct_from_T,
                        v8_complement_base)

__all__ = [
    "RandomModel", "gen_petersen_complement", "gen_v8_complement", "gen_dipole_graph", "k33_three_twist",
    "gen_random_dense", "fix_antitriangles", "expected_minor_probability", "partition_count",
    "monte_carlo_fixed_partition", "rng_for",
]


def rng_for(seed: int) -> np.random.Generator:
    """The package's only source of randomness: Philox-4x64 keyed by ``seed``."""
    return np.random.Generator(np.random.Philox(seed & (2**64 - 1)))


def _checked_sizes(sizes: Sequence[int], count: int) -> list[int]:
    sizes = [int(s) for s in sizes]
    if len(sizes) != count:
        raise ValueError(f"expected {count} pole sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("pole sizes must be positive")
    return sizes


def gen_petersen_complement(sizes: Sequence[int]) -> Graph:
    return blow_up(petersen_complement_base(), _checked_sizes(sizes, 10))[0]


def gen_v8_complement(sizes: Sequence[int]) -> Graph:
    return blow_up(v8_complement_base(), _checked_sizes(sizes, 8))[0]


def gen_dipole_graph(spec: TGraphSpec) -> Graph:
    return reconstruct_from_T(spec)


@dataclass(frozen=True)
class RandomModel:
    n: int
    c: float
    alpha: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if not 0 <= self.alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")
        if not 0 < self.p < 1:
            raise ValueError(f"edge probability {self.p} is outside (0, 1)")

    @property
    def p(self) -> float:
        return 1.0 - self.c * self.n ** (-self.alpha)

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def d(self) -> int:
        return (self.n - 1) // 2


def gen_random_dense(model: RandomModel) -> Graph:
    """G(n, p) with one uniform draw per vertex pair, pairs in lexicographic order."""
    n = model.n
    draws = rng_for(model.seed).random(n * (n - 1) // 2)
    rows = [0] * n
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[k] < model.p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            k += 1
    return Graph._trusted(n, tuple(rows))


def fix_antitriangles(g: Graph, seed: int = 0) -> Graph:
    """Add edges until no antitriangle is left.

    The lexicographically first antitriangle is repaired each round by one of
    its three pairs, chosen uniformly.  Repairs only add edges, so earlier
    triples stay repaired and a single sweep over triples in lexicographic
    order gives the same result as rescanning.  At most C(n, 3) additions.
    """
    rng = rng_for(seed)
    n = g.n
    rows = list(g.rows)
    full = (1 << n) - 1
    for a in range(n):
        for b in range(a + 1, n):
            floor = b
            while not rows[a] >> b & 1:
                cand = full & ~(rows[a] | rows[b]) & ~((2 << floor) - 1)
                if not cand:
                    break
                c = (cand & -cand).bit_length() - 1
                u, v = ((a, b), (a, c), (b, c))[int(rng.integers(3))]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                floor = c
    return Graph._trusted(n, tuple(rows))


def partition_count(n: int) -> int:
    """Partitions of n (odd) vertices into (n-1)/2 pairs and one singleton."""
    if n % 2 == 0:
        raise ValueError("only odd n is supported")
    d = (n - 1) // 2
    return math.factorial(n) // (math.factorial(d) * 2**d)


def expected_minor_probability(n: int, p: float) -> tuple[float, float]:
    """Probability that a fixed pair partition gives a complete minor, and the log expected count.

    For odd n with d = (n-1)/2 and q = 1 - p the probability is
    p^d (1 - q^4)^C(d,2) (1 - q^2)^d.
    """
    if n % 2 == 0:
        raise ValueError("even n is not supported by the closed form")
    if n < 1 or not 0 < p <= 1:
        raise ValueError("need n >= 1 and 0 < p <= 1")
    q = 1.0 - p
    d = (n - 1) // 2
    log_prob = d * math.log(p) + math.comb(d, 2) * math.log1p(-q**4) + d * math.log1p(-q**2)
    log_count = math.lgamma(n + 1) - math.lgamma(d + 1) - d * math.log(2)
    return math.exp(log_prob), log_count + log_prob


def monte_carlo_fixed_partition(n: int, p: float, trials: int, seed: int = 0) -> tuple[float, float]:
    """Empirical probability (and standard error) that pairs {0,1}, {2,3}, ... plus
    the last singleton form a complete minor in G(n, p)."""
    if n % 2 == 0:
        raise ValueError("only odd n is supported")
    if trials < 1:
        raise ValueError("trials must be positive")
    d = (n - 1) // 2
    rng = rng_for(seed)
    # adjacency samples for every pair, trials along axis 0
    iu, ju = np.triu_indices(n, 1)
    draws = rng.random((trials, iu.size)) < p
    adj = np.zeros((trials, n, n), dtype=bool)
    adj[:, iu, ju] = draws
    adj[:, ju, iu] = draws
    ok = np.ones(trials, dtype=bool)
    for i in range(d):
        ok &= adj[:, 2 * i, 2 * i + 1]
    parts = [[2 * i, 2 * i + 1] for i in range(d)] + [[n - 1]]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            touch = np.zeros(trials, dtype=bool)
            for x in parts[i]:
                for y in parts[j]:
                    touch |= adj[:, x, y]
            ok &= touch
    mean = float(ok.mean())
    stderr = math.sqrt(mean * (1 - mean) / trials)
    return mean, stderr

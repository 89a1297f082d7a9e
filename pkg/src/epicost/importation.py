"""Probability models for infectious travelers imported between regions.

The exact model draws k travelers uniformly without replacement from a
population of N containing K infectious people, so the imported count is
hypergeometric. A limit form for small samples from large populations
(k << K << N) replaces the pmf terms with C(k, nu) * L**nu at prevalence
L = K / N; note this form drops the (1 - L)**(k - nu) factor, so its tail
sums are not a normalized distribution and overcount at high prevalence.

Exact pmf values are computed as correctly-rounded floats from big-integer
binomial coefficients; full-support evaluation anchors one exact value at
the mode and extends it by the exact-rational neighbor recurrence, which
keeps normalization error near machine precision even for N up to 1e6.
"""

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ImportScenario:
    """Population N with K infectious members, from which k people travel."""

    population: int
    infected: int
    travelers: int

    def __post_init__(self):
        n, big_k, k = self.population, self.infected, self.travelers
        if not (isinstance(n, int) and isinstance(big_k, int) and isinstance(k, int)):
            raise DomainError("scenario fields must be integers")
        if n < 1:
            raise DomainError(f"population must be >= 1, got {n}")
        if not 0 <= big_k <= n:
            raise DomainError(f"infected must lie in [0, {n}], got {big_k}")
        if not 0 <= k <= n:
            raise DomainError(f"travelers must lie in [0, {n}], got {k}")

    @classmethod
    def from_prevalence(cls, population: int, prevalence: float, travelers: int):
        """Build a scenario with the infected count rounded from a prevalence."""
        if not 0.0 <= prevalence <= 1.0:
            raise DomainError(f"prevalence must lie in [0, 1], got {prevalence}")
        return cls(population, round(prevalence * population), travelers)

    @property
    def support(self) -> tuple[int, int]:
        """Inclusive bounds of the imported-count support."""
        lo = max(0, self.travelers - (self.population - self.infected))
        hi = min(self.travelers, self.infected)
        return lo, hi


@dataclass(frozen=True)
class SourceProfile:
    """Travel sources: per-source infection probability and traveler count."""

    sources: tuple[tuple[float, int], ...]

    def __post_init__(self):
        for i, (p, k) in enumerate(self.sources):
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"source {i}: probability must lie in [0, 1], got {p}")
            if k < 0:
                raise DomainError(f"source {i}: traveler count must be >= 0, got {k}")


def _exact_pmf_float(s: ImportScenario, nu: int) -> float:
    """Correctly-rounded float of C(K,nu) C(N-K,k-nu) / C(N,k)."""
    num = comb(s.infected, nu) * comb(s.population - s.infected, s.travelers - nu)
    return num / comb(s.population, s.travelers)


def hypergeom_pmf(s: ImportScenario, nu: int) -> float:
    """Probability that exactly ``nu`` of the k travelers are infectious."""
    if nu < 0:
        raise DomainError(f"count must be >= 0, got {nu}")
    lo, hi = s.support
    if nu < lo or nu > hi:
        return 0.0
    return _exact_pmf_float(s, nu)


def pmf_support(s: ImportScenario) -> tuple[np.ndarray, np.ndarray]:
    """Full pmf over the support, as (counts, probabilities) arrays.

    One exact anchor at the mode, extended outward by the neighbor ratio
    pmf(nu+1)/pmf(nu) = (K-nu)(k-nu) / ((nu+1)(N-K-k+nu+1)); the integer
    products stay below 2**53 for N <= 1e6, so each ratio is exact.
    """
    n, big_k, k = s.population, s.infected, s.travelers
    lo, hi = s.support
    nus = np.arange(lo, hi + 1, dtype=np.int64)
    if lo == hi:
        return nus, np.ones(1)

    mode = min(max((k + 1) * (big_k + 1) // (n + 2), lo), hi)
    probs = np.empty(nus.shape[0])
    anchor_idx = mode - lo
    probs[anchor_idx] = _exact_pmf_float(s, mode)

    up = np.arange(mode, hi, dtype=np.float64)
    if up.shape[0]:
        ratios = ((big_k - up) * (k - up)) / ((up + 1.0) * (n - big_k - k + up + 1.0))
        probs[anchor_idx + 1:] = probs[anchor_idx] * np.cumprod(ratios)

    down = np.arange(mode, lo, -1, dtype=np.float64)
    if down.shape[0]:
        ratios = (down * (n - big_k - k + down)) / ((big_k - down + 1.0) * (k - down + 1.0))
        probs[anchor_idx - 1::-1] = probs[anchor_idx] * np.cumprod(ratios)

    return nus, probs


def import_tail_sum(s: ImportScenario, n: int) -> float:
    """Sum of pmf over nu = 1..n (the displayed lower-tail sum, nu=0 excluded)."""
    if n < 0:
        raise DomainError(f"count must be >= 0, got {n}")
    lo, hi = s.support
    start, stop = max(1, lo), min(n, hi)
    if stop < start:
        return 0.0
    big_k, k, pop = s.infected, s.travelers, s.population
    p = _exact_pmf_float(s, start)
    total = p
    for nu in range(start, stop):
        p *= ((big_k - nu) * (k - nu)) / ((nu + 1) * (pop - big_k - k + nu + 1))
        total += p
    return total


def approx_tail_sum(k: int, prevalence: float, n: int) -> float:
    """Limit-form tail sum: C(k,nu) L**nu over nu = 1..n.

    Not a normalized distribution (the binomial (1-L)**(k-nu) factor is
    deliberately absent); accurate only when k * L is small.
    """
    if not 0.0 <= prevalence <= 1.0:
        raise DomainError(f"prevalence must lie in [0, 1], got {prevalence}")
    if not 0 <= n <= k:
        raise DomainError(f"count must lie in [0, {k}], got {n}")
    # running term C(k,nu) L**nu avoids huge intermediate binomials
    term, total = 1.0, 0.0
    for nu in range(1, n + 1):
        term *= (k - nu + 1) / nu * prevalence
        total += term
    return total


def expected_imports(k: int, prevalence: float) -> float:
    """Expected imported cases per day in the limit form.

    Direct evaluation of sum_{nu=1..k} nu C(k,nu) L**nu, which equals
    k L (1+L)**(k-1) in closed form. May be fractional.
    """
    if k < 0:
        raise DomainError(f"traveler count must be >= 0, got {k}")
    if not 0.0 <= prevalence <= 1.0:
        raise DomainError(f"prevalence must lie in [0, 1], got {prevalence}")
    term, total = 1.0, 0.0
    for nu in range(1, k + 1):
        term *= (k - nu + 1) / nu * prevalence
        total += nu * term
    return total


def hypergeom_mean(s: ImportScenario) -> float:
    """Exact expected imported cases: k K / N."""
    return s.travelers * s.infected / s.population


def expected_imports_multi(profile: SourceProfile | Iterable[Sequence]) -> float:
    """Expected imports summed over independent sources: sum of p_R * k_R."""
    if not isinstance(profile, SourceProfile):
        profile = SourceProfile(tuple((float(p), int(k)) for p, k in profile))
    return float(sum(p * k for p, k in profile.sources))


def sample_imports(s: ImportScenario, seed: int, trials: int) -> np.ndarray:
    """Monte Carlo oracle: per-trial infected counts among k draws without replacement.

    The same seed always yields the same sequence. Sampling goes through
    numpy's hypergeometric generator, independent of the combinatorial pmf
    code above, so the two can cross-check each other.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    return rng.hypergeometric(s.infected, s.population - s.infected,
                              s.travelers, size=trials)

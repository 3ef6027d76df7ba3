"""Exact (epsilon, delta)-LDP auditing of finite mechanisms.

The tightest delta at privacy level epsilon equals the hockey-stick
contraction coefficient of the kernel at gamma = e^epsilon, so the whole
privacy profile of a finite mechanism is computable exactly from its
rows. A sampled verifier checks the contraction inequality

    E_{e^eps}(PK || QK) <= delta * E_{e^eps}(P || Q)

on random and point-mass input pairs; the point masses make the negative
direction exact rather than probabilistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contraction import PrivacyParams, eta_gamma_two_point
from .dist import Distribution, egamma
from .errors import DomainError
from .kernel import Kernel, pushforward

# Fixed default seed for the sampled verifier; override per call for
# independent replications.
DEFAULT_SEED = 1729

IS_LDP_TOL = 1e-12
VERIFY_TOL = 1e-10


def delta_at(k: Kernel, epsilon: float) -> float:
    """Smallest delta for which k is (epsilon, delta)-LDP."""
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon!r}")
    return eta_gamma_two_point(k, math.exp(epsilon)).eta_gamma


def is_ldp(k: Kernel, params: PrivacyParams) -> bool:
    """Whether k satisfies (epsilon, delta)-LDP, up to additive 1e-12."""
    return delta_at(k, params.epsilon) <= params.delta + IS_LDP_TOL


@dataclass(frozen=True)
class PrivacyProfile:
    """Sampled privacy profile: (epsilon, tightest delta) pairs on a grid."""

    points: tuple[tuple[float, float], ...]
    kernel_id: str = ""

    def __post_init__(self):
        eps = [e for e, _ in self.points]
        deltas = [d for _, d in self.points]
        if any(e2 <= e1 for e1, e2 in zip(eps, eps[1:])):
            raise DomainError("epsilon grid must be strictly increasing")
        if any(not 0.0 <= d <= 1.0 for d in deltas):
            raise DomainError("profile deltas must lie in [0, 1]")
        if any(d2 > d1 + 1e-12 for d1, d2 in zip(deltas, deltas[1:])):
            raise DomainError("profile deltas must be nonincreasing in epsilon")


def privacy_profile(k: Kernel, epsilons, kernel_id: str = "") -> PrivacyProfile:
    """Evaluate the exact profile on a strictly increasing epsilon grid."""
    pts = tuple((float(e), delta_at(k, float(e))) for e in epsilons)
    return PrivacyProfile(points=pts, kernel_id=kernel_id)


@dataclass(frozen=True)
class EpsilonSearchResult:
    """Outcome of inverting the profile at a target delta.

    ``epsilon`` is +inf when no finite level achieves the target (the
    kernel leaks some mass even at infinite epsilon); ``saturated`` marks
    the defensive case where the search hit its epsilon ceiling without
    bracketing.
    """

    epsilon: float
    delta_achieved: float
    saturated: bool = False


def _infinite_epsilon_residual(k: Kernel) -> float:
    # lim_{gamma -> inf} E_gamma(row_x || row_x') is the mass row_x puts
    # where row_x' is exactly zero.
    best = 0.0
    for x in range(k.input_size):
        for xp in range(k.input_size):
            if x == xp:
                continue
            mass = float(k.rows[x][k.rows[xp] == 0.0].sum())
            best = max(best, mass)
    return best


def tightest_epsilon(
    k: Kernel, delta: float, eps_max: float = 50.0, tol: float = 1e-9
) -> EpsilonSearchResult:
    """Smallest epsilon with delta_at(k, epsilon) <= delta, by bisection.

    Bisects on [0, eps_max] to absolute tolerance ``tol``. Returns +inf
    when delta is below the kernel's infinite-epsilon residual (then no
    finite epsilon suffices).
    """
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must be in [0, 1], got {delta!r}")
    d0 = delta_at(k, 0.0)
    if d0 <= delta:
        return EpsilonSearchResult(epsilon=0.0, delta_achieved=d0)
    residual = _infinite_epsilon_residual(k)
    if delta < residual:
        return EpsilonSearchResult(epsilon=math.inf, delta_achieved=residual)
    d_max = delta_at(k, eps_max)
    if d_max > delta:
        return EpsilonSearchResult(epsilon=eps_max, delta_achieved=d_max, saturated=True)
    lo, hi = 0.0, eps_max
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if delta_at(k, mid) <= delta:
            hi = mid
        else:
            lo = mid
    return EpsilonSearchResult(epsilon=hi, delta_achieved=delta_at(k, hi))


@dataclass(frozen=True)
class EquivalenceReport:
    """Sampled check of the contraction form of the LDP constraint.

    ``max_ratio`` is the largest observed E_gamma(PK||QK) / E_gamma(P||Q)
    over pairs with non-negligible denominator, with the achieving pair
    recorded. ``violation_found`` reports whether any pair (point masses
    included) exceeded delta * E_gamma(P||Q) beyond tolerance.
    """

    epsilon: float
    delta: float
    certified: bool
    trials: int
    max_ratio: float
    max_ratio_pair: tuple | None
    violation_found: bool
    violation_pair: tuple | None

    def to_dict(self) -> dict:
        def _pair(pair):
            if pair is None:
                return None
            return [list(np.asarray(v, dtype=float)) for v in pair]

        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "certified": self.certified,
            "trials": self.trials,
            "max_ratio": self.max_ratio,
            "max_ratio_pair": _pair(self.max_ratio_pair),
            "violation_found": self.violation_found,
            "violation_pair": _pair(self.violation_pair),
        }


def verify_equivalence(
    k: Kernel, params: PrivacyParams, trials: int, seed: int = DEFAULT_SEED
) -> EquivalenceReport:
    """Probe the contraction inequality on sampled plus point-mass pairs.

    When the kernel is certified at (epsilon, delta), no probed pair may
    violate the inequality beyond an additive 1e-10. When it is not, the
    point-mass sweep is guaranteed to exhibit a violating pair, because
    the two-point supremum is attained there.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    gamma = math.exp(params.epsilon)
    certified = is_ldp(k, params)
    d = k.input_size

    pairs = []
    for x in range(d):
        for xp in range(d):
            if x != xp:
                pairs.append(
                    (Distribution.point_mass(x, d), Distribution.point_mass(xp, d))
                )
    rng = np.random.default_rng(seed)
    ps = rng.dirichlet(np.ones(d), size=trials)
    qs = rng.dirichlet(np.ones(d), size=trials)
    pairs.extend((Distribution(p), Distribution(q)) for p, q in zip(ps, qs))

    max_ratio = 0.0
    max_ratio_pair = None
    violation_found = False
    violation_pair = None
    for p, q in pairs:
        den = egamma(p, q, gamma)
        num = egamma(pushforward(p, k), pushforward(q, k), gamma)
        if num > params.delta * den + VERIFY_TOL and not violation_found:
            violation_found = True
            violation_pair = (p.probs, q.probs)
        if den > 1e-12:
            ratio = num / den
            if ratio > max_ratio:
                max_ratio = ratio
                max_ratio_pair = (p.probs, q.probs)
    return EquivalenceReport(
        epsilon=params.epsilon,
        delta=params.delta,
        certified=certified,
        trials=trials,
        max_ratio=max_ratio,
        max_ratio_pair=max_ratio_pair,
        violation_found=violation_found,
        violation_pair=violation_pair,
    )

"""Contraction coefficients of kernels and closed-form bounds on them.

For gamma >= 1 the hockey-stick contraction coefficient has a two-point
characterization: it is the largest E_gamma between any two rows of the
kernel. At gamma = 1 this is Dobrushin's total-variation coefficient.
The universal upper bound for any f-divergence contraction of an
(epsilon, delta)-locally-private kernel is

    phi(epsilon, delta) = 1 - (1 - delta) * exp(-epsilon),

with the n-fold tensorized version phi_n = 1 - (1 - phi)^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dist import egamma, tv
from .errors import DomainError
from .kernel import Kernel


@dataclass(frozen=True)
class PrivacyParams:
    """The pair (epsilon, delta) with epsilon >= 0 and delta in [0, 1]."""

    epsilon: float
    delta: float = 0.0

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if not 0.0 <= self.delta <= 1.0:
            raise DomainError(f"delta must be in [0, 1], got {self.delta!r}")


@dataclass(frozen=True)
class ContractionReport:
    """Result of a two-point contraction scan.

    ``argmax_pair`` is the (x, x') ordered input pair achieving the sup,
    ties broken toward the smallest lexicographic pair so reports are
    deterministic. ``upper_bounds`` collects named closed-form bounds
    evaluated alongside.
    """

    eta_gamma: float
    gamma: float
    eta_tv: float
    argmax_pair: tuple[int, int]
    upper_bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        ok = (
            self.eta_gamma >= -1e-12
            and self.eta_gamma <= self.eta_tv + 1e-12
            and self.eta_tv <= 1.0 + 1e-12
        )
        if not ok:
            raise DomainError(
                f"contraction ordering violated: eta_gamma={self.eta_gamma!r}, "
                f"eta_tv={self.eta_tv!r}"
            )

    def to_dict(self) -> dict:
        return {
            "eta_gamma": self.eta_gamma,
            "gamma": self.gamma,
            "eta_tv": self.eta_tv,
            "argmax_pair": list(self.argmax_pair),
            "upper_bounds": dict(self.upper_bounds),
        }


def eta_gamma_two_point(k: Kernel, gamma: float) -> ContractionReport:
    """Hockey-stick contraction coefficient via the two-point formula.

    Scans all ordered input pairs (E_gamma is asymmetric) in O(|X|^2 |Z|);
    valid for gamma >= 1 only.
    """
    if gamma < 1:
        raise DomainError(f"two-point formula requires gamma >= 1, got {gamma!r}")
    best = 0.0
    best_tv = 0.0
    best_pair = (0, 0)
    for x in range(k.input_size):
        px = k.row(x)
        for xp in range(k.input_size):
            qx = k.row(xp)
            value = egamma(px, qx, gamma)
            if value > best:
                best = value
                best_pair = (x, xp)
            best_tv = max(best_tv, tv(px, qx))
    return ContractionReport(
        eta_gamma=best,
        gamma=gamma,
        eta_tv=best_tv,
        argmax_pair=best_pair,
        upper_bounds={"eta_tv_from_eta_gamma": eta_tv_from_eta_gamma(best, gamma)},
    )


def eta_tv_dobrushin(k: Kernel) -> float:
    """Dobrushin coefficient: the largest TV distance between two rows."""
    best = 0.0
    for x in range(k.input_size):
        px = k.row(x)
        for xp in range(x + 1, k.input_size):
            best = max(best, tv(px, k.row(xp)))
    return best


def phi(params: PrivacyParams) -> float:
    """Universal f-divergence contraction bound 1 - (1 - delta) e^{-epsilon}."""
    return 1.0 - (1.0 - params.delta) * math.exp(-params.epsilon)


def phi_n(params: PrivacyParams, n: int) -> float:
    """Tensorized bound 1 - (1 - phi)^n = 1 - e^{-n epsilon} (1 - delta)^n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return 1.0 - (1.0 - phi(params)) ** n


def eta_tv_from_eta_gamma(eta_gamma: float, gamma: float) -> float:
    """Upper bound on the TV coefficient: eta_tv <= 1 - (1 - eta_gamma) / gamma."""
    if not 0.0 <= eta_gamma <= 1.0:
        raise DomainError(f"eta_gamma must be in [0, 1], got {eta_gamma!r}")
    if gamma < 1:
        raise DomainError(f"gamma must be >= 1, got {gamma!r}")
    return 1.0 - (1.0 - eta_gamma) / gamma


def eta_f_upper_ldp(params: PrivacyParams) -> float:
    """eta_f(K) <= phi(epsilon, delta) for every f and every such private K."""
    return phi(params)


def eta_f_tensor_upper(params: PrivacyParams, n: int) -> float:
    """eta_f(K tensor n) <= phi_n(epsilon, delta) for non-interactive products."""
    return phi_n(params, n)


def eta_kl_bsc(omega: float) -> float:
    """KL contraction coefficient of a binary symmetric channel: (1 - 2 omega)^2.

    Substituting omega = 1/(1 + e^eps) gives ((e^eps - 1)/(e^eps + 1))^2
    for the randomized-response parameterization. (The form 1 - 2 omega^2
    sometimes quoted is inconsistent with that specialization.)
    """
    if not 0.0 <= omega <= 1.0:
        raise DomainError(f"crossover probability {omega!r} outside [0, 1]")
    return (1.0 - 2.0 * omega) ** 2


def eta_gamma_curve(k: Kernel, gammas) -> list[ContractionReport]:
    """Two-point reports over a gamma grid, for CSV emission."""
    return [eta_gamma_two_point(k, float(g)) for g in np.asarray(gammas, dtype=float)]

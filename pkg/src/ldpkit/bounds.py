"""Privacy-constrained risk bound calculators.

Every calculator returns a ``BoundReport`` carrying the value, the
optimizer's witness arguments, and an echo of its inputs, so results can
be re-derived from the report alone. Suprema over the slack parameter
zeta (and, where applicable, gamma) are dense-grid maximizations with
configurable grids; negative brackets clamp to zero and are flagged as
vacuous rather than reported negative. Logs are nats throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .contraction import PrivacyParams, phi, phi_n
from .errors import DomainError
from .oracle import grid_max

LN2 = math.log(2.0)


@dataclass(frozen=True)
class GridSpec:
    """Dense evaluation grid: ``steps`` points from lo to hi, linear or log spaced."""

    lo: float
    hi: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.steps < 2:
            raise DomainError(f"grid needs at least 2 steps, got {self.steps}")
        if not self.lo < self.hi:
            raise DomainError(f"grid requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"unknown grid scale {self.scale!r}")
        if self.scale == "log" and self.lo <= 0:
            raise DomainError("log-spaced grid requires lo > 0")

    def points(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.steps)
        return np.linspace(self.lo, self.hi, self.steps)

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "steps": self.steps, "scale": self.scale}


DEFAULT_ZETA_GRID = GridSpec(1e-4, 0.5, 2000, "log")
DEFAULT_GAMMA_GRID = GridSpec(0.0, 4.0, 800, "linear")


def small_ball_uniform01(zeta: float) -> float:
    """Small-ball function of a uniform [0, 1] prior under absolute loss.

    The largest probability that the parameter lands within zeta of any
    fixed point: min(2 zeta, 1).
    """
    return min(2.0 * zeta, 1.0)


@dataclass(frozen=True)
class BoundReport:
    """A named bound value plus optimizer witnesses and an input echo."""

    bound_name: str
    value: float
    witness: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "value": self.value,
            "witness": dict(self.witness),
            "inputs": dict(self.inputs),
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class LeCamConfig:
    """Two-point minimax reduction: separation 2*tau, KL(P0||P1) in nats."""

    tau: float
    kl_p0_p1: float
    n: int
    params: PrivacyParams

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0, got {self.tau!r}")
        if self.kl_p0_p1 < 0:
            raise DomainError("kl_p0_p1 must be >= 0")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class FanoConfig:
    """Multi-way testing reduction over a packing of v_count hypotheses.

    ``avg_pairwise_kl`` is the KL sum over ordered hypothesis pairs
    divided by v_count squared (nats). Supplying ``mi_xn_v`` switches the
    mutual-information cap to the direct form based on I(X^n; V).
    """

    v_count: int
    avg_pairwise_kl: float
    tau: float
    n: int
    params: PrivacyParams
    mi_xn_v: float | None = None

    def __post_init__(self):
        if self.v_count < 2:
            raise DomainError(f"v_count must be >= 2, got {self.v_count}")
        if self.avg_pairwise_kl < 0:
            raise DomainError("avg_pairwise_kl must be >= 0")
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0, got {self.tau!r}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class BayesConfig:
    """Inputs for the Bayes-risk lower bounds.

    ``small_ball`` maps zeta to the largest prior mass of a zeta-ball
    (nondecreasing, valued in [0, 1]; not validated). ``info_value`` is
    I(Theta; X^n) in nats for the mutual-information bound and
    I_{e^eps}(Theta; X^n) for the hockey-stick bound. The gamma-optimized
    bound ignores ``info_value`` and needs ``info_fn``, a callable
    gamma -> I_gamma(Theta; X^n).
    """

    small_ball: Callable[[float], float]
    info_value: float
    n: int
    params: PrivacyParams
    zeta_grid: GridSpec = DEFAULT_ZETA_GRID
    gamma_grid: GridSpec = DEFAULT_GAMMA_GRID
    info_fn: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.info_value < 0:
            raise DomainError("info_value must be >= 0")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")


def _flags_for(value: float, extra: tuple[str, ...] = ()) -> tuple[str, ...]:
    return extra + (("vacuous",) if value <= 0 else ())


def lecam_private(cfg: LeCamConfig) -> BoundReport:
    """Two-point minimax lower bound (tau/2)[1 - sqrt(n phi KL / 2)], clamped at 0."""
    phi_v = phi(cfg.params)
    bracket = 1.0 - math.sqrt(0.5 * cfg.n * phi_v * cfg.kl_p0_p1)
    value = max(0.0, 0.5 * cfg.tau * bracket)
    return BoundReport(
        bound_name="lecam_private",
        value=value,
        witness={},
        inputs={
            "tau": cfg.tau,
            "kl_p0_p1": cfg.kl_p0_p1,
            "n": cfg.n,
            "epsilon": cfg.params.epsilon,
            "delta": cfg.params.delta,
            "phi": phi_v,
        },
        flags=_flags_for(value),
    )


def moment_estimation_lb(k_moment: float, n: int, params: PrivacyParams) -> BoundReport:
    """Explicit-constant minimax lower bound for one-dimensional mean
    estimation under a k-th moment constraint.

    Uses the three-point construction with mass omega at +-omega^{-1/k}:
    the risk is at least omega^{2(k-1)/k} [1 - sqrt(2) sqrt(1 - (1 - omega phi)^n)]
    at omega = min(1, (1/phi)(1 - (7/8)^{1/sqrt(n)})). With phi = 0 no
    information leaves the mechanism and the trivial constant bound is
    returned, flagged.
    """
    if not k_moment > 1:
        raise DomainError(f"moment order must be > 1, got {k_moment!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    phi_v = phi(params)
    exponent = 2.0 * (k_moment - 1.0) / k_moment
    extra: tuple[str, ...] = ()
    if phi_v == 0.0:
        omega = 1.0
        value = 1.0
        extra = ("trivial",)
    else:
        omega = min(1.0, (1.0 - (7.0 / 8.0) ** (1.0 / math.sqrt(n))) / phi_v)
        bracket = 1.0 - math.sqrt(2.0) * math.sqrt(1.0 - (1.0 - omega * phi_v) ** n)
        value = omega**exponent * max(0.0, bracket)
    return BoundReport(
        bound_name="moment_estimation_lb",
        value=value,
        witness={"omega": omega},
        inputs={
            "k_moment": k_moment,
            "n": n,
            "epsilon": params.epsilon,
            "delta": params.delta,
            "phi": phi_v,
            "variant": "explicit-constant",
        },
        flags=_flags_for(value, extra),
    )


def fano_mi_upper(cfg: FanoConfig) -> float:
    """Cap on the privatized-sample information I(Z^n; V).

    Uses phi_n * I(X^n; V) when the caller supplied the sample
    information directly, otherwise the KL-averaged form
    n * phi_n * avg_pairwise_kl.
    """
    pn = phi_n(cfg.params, cfg.n)
    if cfg.mi_xn_v is not None:
        return pn * cfg.mi_xn_v
    return cfg.n * pn * cfg.avg_pairwise_kl


def fano_lb(cfg: FanoConfig) -> BoundReport:
    """Multi-way testing lower bound tau [1 - (MI cap + log 2) / log v_count]."""
    mi_up = fano_mi_upper(cfg)
    bracket = 1.0 - (mi_up + LN2) / math.log(cfg.v_count)
    value = max(0.0, cfg.tau * bracket)
    return BoundReport(
        bound_name="fano_lb",
        value=value,
        witness={},
        inputs={
            "v_count": cfg.v_count,
            "avg_pairwise_kl": cfg.avg_pairwise_kl,
            "tau": cfg.tau,
            "n": cfg.n,
            "epsilon": cfg.params.epsilon,
            "delta": cfg.params.delta,
            "mi_upper": mi_up,
        },
        flags=_flags_for(value),
    )


def highdim_mean_lb(d: int, r: float, n: int, params: PrivacyParams) -> BoundReport:
    """Explicit-constant lower bound for mean estimation in an l2-ball of
    radius r in d dimensions.

    Evaluates (r^2 omega^2 / k)[1 - 16 (1 + n omega phi_n) log2 / k] at
    the packing size k = max(16, min(floor(n phi_n), d)) and
    omega = min(1, k / (50 n phi_n)). The hidden universal constant of
    the order-notation statement is not reproduced; this is the explicit
    pre-constant expression.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if not r > 0:
        raise DomainError(f"radius must be > 0, got {r!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    pn = phi_n(params, n)
    extra: tuple[str, ...] = ()
    if pn == 0.0:
        k_pack = 16
        omega = 1.0
        extra = ("trivial",)
    else:
        k_pack = max(16, min(int(math.floor(n * pn)), d))
        omega = min(1.0, k_pack / (50.0 * n * pn))
    bracket = 1.0 - 16.0 * (1.0 + n * omega * pn) * LN2 / k_pack
    value = (r**2 * omega**2 / k_pack) * max(0.0, bracket)
    return BoundReport(
        bound_name="highdim_mean_lb",
        value=value,
        witness={"omega": omega, "k": k_pack},
        inputs={
            "d": d,
            "r": r,
            "n": n,
            "epsilon": params.epsilon,
            "delta": params.delta,
            "phi_n": pn,
            "variant": "explicit-constant",
        },
        flags=_flags_for(value, extra),
    )


def _bayes_inputs(cfg: BayesConfig, **extra) -> dict:
    out = {
        "info_value": cfg.info_value,
        "n": cfg.n,
        "epsilon": cfg.params.epsilon,
        "delta": cfg.params.delta,
        "zeta_grid": cfg.zeta_grid.to_dict(),
    }
    out.update(extra)
    return out


def bayes_xu_raginsky_private(cfg: BayesConfig) -> BoundReport:
    """Mutual-information Bayes-risk lower bound under privacy.

    sup over zeta of zeta [1 - (phi_n I(Theta; X^n) + log 2) / log(1/L(zeta))],
    with grid points where L(zeta) >= 1 skipped (their bracket is
    vacuous). If no grid point is feasible the value is 0, flagged.
    """
    pn = phi_n(cfg.params, cfg.n)
    numerator = pn * cfg.info_value + LN2
    small_ball = np.vectorize(cfg.small_ball, otypes=[float])

    def objective(z):
        ball = small_ball(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_inv = np.log(1.0 / ball)
            bracket = 1.0 - numerator / log_inv
        vals = z * np.maximum(0.0, bracket)
        return np.where(ball < 1.0, vals, -np.inf)

    (zeta_star,), value = grid_max(objective, cfg.zeta_grid.points())
    if not math.isfinite(value):
        return BoundReport(
            bound_name="bayes_xu_raginsky_private",
            value=0.0,
            witness={},
            inputs=_bayes_inputs(cfg, phi_n=pn),
            flags=("no-feasible-zeta", "vacuous"),
        )
    return BoundReport(
        bound_name="bayes_xu_raginsky_private",
        value=value,
        witness={"zeta": zeta_star},
        inputs=_bayes_inputs(cfg, phi_n=pn),
        flags=_flags_for(value),
    )


def bayes_egamma_lb(cfg: BayesConfig) -> BoundReport:
    """Hockey-stick Bayes-risk lower bound under privacy.

    sup over zeta of zeta [1 - c I_gamma - e^eps L(zeta)] at gamma = e^eps,
    where the contraction coefficient c is delta itself for n = 1 and
    phi_n for n > 1.
    """
    gamma = math.exp(cfg.params.epsilon)
    c = cfg.params.delta if cfg.n == 1 else phi_n(cfg.params, cfg.n)
    small_ball = np.vectorize(cfg.small_ball, otypes=[float])

    def objective(z):
        return z * np.maximum(0.0, 1.0 - c * cfg.info_value - gamma * small_ball(z))

    (zeta_star,), value = grid_max(objective, cfg.zeta_grid.points())
    return BoundReport(
        bound_name="bayes_egamma_lb",
        value=value,
        witness={"zeta": zeta_star},
        inputs=_bayes_inputs(cfg, gamma=gamma, info_coefficient=c),
        flags=_flags_for(value),
    )


def bayes_gamma_opt_lb(cfg: BayesConfig) -> BoundReport:
    """Non-private Bayes-risk bound optimized jointly over zeta and gamma.

    sup over (zeta, gamma >= 0) of
    zeta [1 - I_gamma - gamma L(zeta) - max(1 - gamma, 0)], with the
    gamma profile supplied by ``cfg.info_fn``.
    """
    if cfg.info_fn is None:
        raise DomainError("bayes_gamma_opt_lb requires info_fn (gamma -> I_gamma)")
    small_ball = np.vectorize(cfg.small_ball, otypes=[float])
    info_fn = np.vectorize(cfg.info_fn, otypes=[float])

    def objective(z, g):
        bracket = 1.0 - info_fn(g) - g * small_ball(z) - np.maximum(1.0 - g, 0.0)
        return z * np.maximum(0.0, bracket)

    (zeta_star, gamma_star), value = grid_max(
        objective, cfg.zeta_grid.points(), cfg.gamma_grid.points()
    )
    return BoundReport(
        bound_name="bayes_gamma_opt_lb",
        value=value,
        witness={"zeta": zeta_star, "gamma": gamma_star},
        inputs=_bayes_inputs(cfg, gamma_grid=cfg.gamma_grid.to_dict()),
        flags=_flags_for(value),
    )


def ht_exponent(kl_p0_p1: float, params: PrivacyParams) -> float:
    """Bound on the asymptotic type-II error exponent of private testing.

    The privatized exponent is at least -phi(epsilon, delta) KL(P0||P1);
    the type-I level does not enter (the exponent is level-free).
    """
    if kl_p0_p1 < 0:
        raise DomainError("kl_p0_p1 must be >= 0")
    return -phi(params) * kl_p0_p1


def mi_cap(h_x: float, params: PrivacyParams) -> float:
    """Largest mutual information any private view can retain: phi * H(X)."""
    if h_x < 0:
        raise DomainError("entropy must be >= 0")
    return phi(params) * h_x

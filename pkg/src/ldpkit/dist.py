"""Finite probability distributions and divergences between them.

Everything operates on plain double-precision probability vectors. The
divergences implemented are total variation, KL (nats), chi-squared,
squared Hellinger, and the hockey-stick family

    E_gamma(P||Q) = sum_i max(p_i - gamma * q_i, 0) - max(1 - gamma, 0),

which equals total variation at gamma = 1. Three algebraically equivalent
forms of E_gamma are provided so they can be cross-checked against each
other; the sup-over-sets form above is the one used everywhere else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError

# Sum-to-one is enforced to SUM_TOL; constructors silently renormalize when
# the deviation is below RENORM_TOL and reject anything worse.
SUM_TOL = 1e-12
RENORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over a finite alphabet.

    Entries must be nonnegative and sum to one within ``RENORM_TOL``
    (small deviations are renormalized away). The stored array is
    read-only.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DimensionError("probability vector must be 1-d and non-empty")
        if not np.all(np.isfinite(arr)):
            raise DomainError("probabilities must be finite")
        if np.any(arr < 0):
            raise DomainError("probabilities must be nonnegative")
        total = float(arr.sum())
        if not abs(total - 1.0) < RENORM_TOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        if total != 1.0:
            arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def alphabet_size(self) -> int:
        return int(self.probs.size)

    @classmethod
    def point_mass(cls, index: int, size: int) -> "Distribution":
        if not 0 <= index < size:
            raise DomainError(f"point mass index {index} outside alphabet of size {size}")
        v = np.zeros(size)
        v[index] = 1.0
        return cls(v)

    @classmethod
    def bernoulli(cls, p: float) -> "Distribution":
        """Distribution [1-p, p] over {0, 1}."""
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"bernoulli parameter {p!r} outside [0, 1]")
        return cls(np.array([1.0 - p, p]))

    @classmethod
    def uniform(cls, size: int) -> "Distribution":
        if size < 1:
            raise DomainError("alphabet size must be >= 1")
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        """Parse from a JSON array or a single comma-separated line."""
        stripped = text.strip()
        if stripped.startswith("["):
            values = json.loads(stripped)
        else:
            values = [float(tok) for tok in stripped.split(",") if tok.strip()]
        return cls(np.asarray(values, dtype=float))

    def to_json(self) -> str:
        """Lossless JSON array (17 significant digits)."""
        return "[" + ",".join(f"{x:.17g}" for x in self.probs) + "]"


_F_KINDS = ("tv", "kl", "chi2", "hellinger_sq", "egamma")


@dataclass(frozen=True)
class FGenerator:
    """Generator of an f-divergence; each kind is convex with f(1) = 0.

    ``egamma`` takes the extra parameter gamma >= 0 and uses
    f(t) = max(t - gamma, 0) - max(1 - gamma, 0), which keeps f(1) = 0
    for gamma below 1 as well.
    """

    kind: str
    gamma: float | None = None

    def __post_init__(self):
        if self.kind not in _F_KINDS:
            raise DomainError(f"unknown f-divergence kind {self.kind!r}")
        if self.kind == "egamma":
            if self.gamma is None or self.gamma < 0:
                raise DomainError("egamma requires gamma >= 0")
        elif self.gamma is not None:
            raise DomainError(f"kind {self.kind!r} takes no gamma parameter")

    @classmethod
    def total_variation(cls) -> "FGenerator":
        return cls("tv")

    @classmethod
    def kl(cls) -> "FGenerator":
        return cls("kl")

    @classmethod
    def chi_squared(cls) -> "FGenerator":
        return cls("chi2")

    @classmethod
    def hellinger_squared(cls) -> "FGenerator":
        return cls("hellinger_sq")

    @classmethod
    def egamma(cls, gamma: float) -> "FGenerator":
        return cls("egamma", gamma)


def _check_alphabets(p: Distribution, q: Distribution):
    if p.alphabet_size != q.alphabet_size:
        raise DimensionError(
            f"alphabet sizes differ: {p.alphabet_size} vs {q.alphabet_size}"
        )


def tv(p: Distribution, q: Distribution) -> float:
    """Total variation distance (1/2) sum |p_i - q_i|, in [0, 1]."""
    _check_alphabets(p, q)
    return float(0.5 * np.abs(p.probs - q.probs).sum())


def egamma(p: Distribution, q: Distribution, gamma: float) -> float:
    """Hockey-stick divergence E_gamma(P||Q), sup-over-sets form."""
    _check_alphabets(p, q)
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma!r}")
    pos = np.maximum(p.probs - gamma * q.probs, 0.0).sum()
    return float(max(0.0, pos - max(1.0 - gamma, 0.0)))


def egamma_integral_form(p: Distribution, q: Distribution, gamma: float) -> float:
    """E_gamma via (1/2) sum |p_i - gamma q_i| - (1/2) |1 - gamma|.

    Kept as an independent formula for cross-validation against
    :func:`egamma`; agrees with it for every gamma >= 0.
    """
    _check_alphabets(p, q)
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma!r}")
    return float(0.5 * np.abs(p.probs - gamma * q.probs).sum() - 0.5 * abs(1.0 - gamma))


def egamma_threshold_form(p: Distribution, q: Distribution, gamma: float) -> float:
    """E_gamma via the likelihood-ratio threshold set A = {i : p_i > gamma q_i}.

    Returns P(A) - gamma Q(A) - max(1 - gamma, 0). Symbols with
    p_i = q_i = 0 never enter A.
    """
    _check_alphabets(p, q)
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma!r}")
    mask = p.probs > gamma * q.probs
    value = p.probs[mask].sum() - gamma * q.probs[mask].sum()
    return float(value - max(1.0 - gamma, 0.0))


def hellinger_sq(p: Distribution, q: Distribution) -> float:
    """Squared Hellinger distance sum (sqrt(p_i) - sqrt(q_i))^2, in [0, 2]."""
    _check_alphabets(p, q)
    return float(((np.sqrt(p.probs) - np.sqrt(q.probs)) ** 2).sum())


def _kl(p: np.ndarray, q: np.ndarray) -> float:
    # 0 log 0 = 0; p_i > 0 with q_i = 0 gives +inf.
    sup = p > 0
    if np.any(q[sup] == 0):
        return float("inf")
    ps = p[sup]
    return float((ps * np.log(ps / q[sup])).sum())


def _chi2(p: np.ndarray, q: np.ndarray) -> float:
    # Pearson form sum (p - q)^2 / q; identical to sum p^2/q - 1 on
    # probability vectors but free of cancellation.
    sup = p > 0
    if np.any(q[sup] == 0):
        return float("inf")
    qs = q > 0
    return float(((p[qs] - q[qs]) ** 2 / q[qs]).sum())


def f_divergence(p: Distribution, q: Distribution, f: FGenerator) -> float:
    """D_f(P||Q) = sum_i q_i f(p_i / q_i) with the usual edge conventions.

    Symbols with q_i = 0 = p_i contribute nothing; q_i = 0 < p_i yields
    +inf for KL and chi-squared and the finite limit for the others.
    """
    _check_alphabets(p, q)
    if f.kind == "tv":
        return tv(p, q)
    if f.kind == "kl":
        return _kl(p.probs, q.probs)
    if f.kind == "chi2":
        return _chi2(p.probs, q.probs)
    if f.kind == "hellinger_sq":
        return hellinger_sq(p, q)
    return egamma(p, q, f.gamma)

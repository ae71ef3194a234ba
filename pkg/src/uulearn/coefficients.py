"""Mapping from class priors to risk-rewriting coefficients.

Two unlabeled pools drawn at class priors theta and theta' (theta != theta'),
plus the test prior pi_p, determine four non-negative constants

    a = (1 - theta') * pi_p / (theta - theta')
    b = theta' * (1 - pi_p) / (theta - theta')
    c = (1 - theta) * pi_p / (theta - theta')
    d = theta * (1 - pi_p) / (theta - theta')

with which the classification risk can be written as a signed combination of
expectations over the two unlabeled marginals.  Two algebraic identities pin
the coefficients down exactly:

    a - c = pi_p          d - b = 1 - pi_p

The two pools are exchangeable, so inputs with theta < theta' are swapped
before computing; downstream estimators expect the pool with the *larger*
prior first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegeneratePriorsError

__all__ = ["RiskCoefficients", "compute_coefficients"]

DEFAULT_PRIOR_GAP = 1e-6


@dataclass(frozen=True)
class RiskCoefficients:
    """Rewriting constants together with the priors that generated them.

    Instances built by :func:`compute_coefficients` satisfy the identities
    above; the dataclass itself performs no validation so that degenerate
    coefficient sets (e.g. all zeros) can be constructed directly in tests.
    """

    theta: float
    theta_prime: float
    pi_p: float
    a: float
    b: float
    c: float
    d: float

    @property
    def pi_n(self) -> float:
        return 1.0 - self.pi_p

    @property
    def coefficient_sum(self) -> float:
        return self.a + self.b + self.c + self.d


def compute_coefficients(
    theta: float,
    theta_prime: float,
    pi_p: float,
    *,
    min_gap: float = DEFAULT_PRIOR_GAP,
    allow_boundaries: bool = False,
) -> RiskCoefficients:
    """Build the rewriting coefficients for a prior triple.

    Parameters
    ----------
    theta, theta_prime : float
        Class priors of the two unlabeled pools, each strictly inside (0, 1).
        They are swapped if necessary so the stored ``theta`` is the larger.
    pi_p : float
        Class prior of the distribution the classifier is evaluated on,
        strictly inside (0, 1).
    min_gap : float
        Smallest allowed |theta - theta'|.  The coefficients scale like
        1 / (theta - theta'), so a near-zero gap silently blows them up;
        an explicit error is raised instead.
    allow_boundaries : bool
        Permit theta = 1 and/or theta' = 0.  That boundary pair makes the
        pools perfectly labeled and reduces the rewritten risk to the
        ordinary supervised estimator (a = pi_p, b = c = 0, d = 1 - pi_p);
        it is intended for reduction checks, not for experiment configs.
    """
    for name, value in (("theta", theta), ("theta_prime", theta_prime), ("pi_p", pi_p)):
        if not np.isfinite(value):
            raise ConfigurationError(f"{name} must be finite, got {value!r}")
    if not 0.0 < pi_p < 1.0:
        raise ConfigurationError(f"pi_p must lie strictly inside (0, 1), got {pi_p}")

    lo, hi = (0.0, 1.0) if allow_boundaries else (np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
    for name, value in (("theta", theta), ("theta_prime", theta_prime)):
        if not lo <= value <= hi:
            bound = "[0, 1]" if allow_boundaries else "(0, 1)"
            raise ConfigurationError(f"{name} must lie in {bound}, got {value}")

    if theta < theta_prime:
        theta, theta_prime = theta_prime, theta
    gap = theta - theta_prime
    if gap <= min_gap:
        raise DegeneratePriorsError(
            f"|theta - theta_prime| = {gap:g} is at or below the minimum gap "
            f"{min_gap:g}; the rewriting coefficients are ill-conditioned"
        )

    a = (1.0 - theta_prime) * pi_p / gap
    b = theta_prime * (1.0 - pi_p) / gap
    c = (1.0 - theta) * pi_p / gap
    d = theta * (1.0 - pi_p) / gap
    return RiskCoefficients(
        theta=theta, theta_prime=theta_prime, pi_p=pi_p, a=a, b=b, c=c, d=d
    )

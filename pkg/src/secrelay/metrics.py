"""Secrecy metrics of the full-duplex relay link.

Each metric comes in two flavours: a fixed-order Gaussian-quadrature
estimator (the closed form) and an adaptive-integration reference used as
ground truth.  The end-to-end SNR is min(relay SINR, Bob SNR); its CDF has a
closed erfc-product form because both inputs are log-normal.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special

from .channel import Endpoints
from .errors import AccuracyError
from .numerics import (IntegralEstimate, adaptive_integrate,
                       gauss_hermite_rule, gauss_laguerre_rule)

__all__ = [
    "MetricResult",
    "min_snr_cdf",
    "avg_secrecy_rate",
    "avg_secrecy_rate_reference",
    "secrecy_outage",
    "secrecy_outage_reference",
]

logger = logging.getLogger(__name__)

_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)
_LN2 = math.log(2.0)

# below this, a rate or probability is zero for every purpose and relative
# tolerance stops being meaningful for the adaptive integrator
_UNDERFLOW_FLOOR = 1e-30


def _integrate_metric(f, rel_tol: float) -> IntegralEstimate:
    try:
        return adaptive_integrate(f, 0.0, math.inf, rel_tol)
    except AccuracyError as exc:
        if abs(exc.best_estimate) <= _UNDERFLOW_FLOOR:
            return IntegralEstimate(exc.best_estimate, exc.rel_error)
        raise


@dataclass(frozen=True)
class MetricResult:
    value: float
    method: str  # "quadrature" or "reference"
    quadrature_order: Optional[int] = None
    error_estimate: Optional[float] = None


def _require_random(ep: Endpoints, who: str) -> None:
    for name in ("relay", "bob", "eve"):
        if getattr(ep, name).sigma <= 0.0:
            raise ValueError(f"{who} requires non-degenerate endpoints; "
                             f"{name} has sigma = 0")


def min_snr_cdf(ep: Endpoints, z: float) -> float:
    """CDF of the end-to-end SNR min(relay, bob) at z.

    Equals 1 - (1-F_relay)(1-F_bob); with log-normal inputs each survival
    factor is erfc((-mu + ln z) / (sqrt(2) sigma)) / 2.
    """
    if z < 0.0:
        raise ValueError(f"z must be >= 0, got {z!r}")
    if ep.relay.sigma <= 0.0 or ep.bob.sigma <= 0.0:
        raise ValueError("min_snr_cdf requires relay and bob sigmas > 0")
    if z == 0.0:
        return 0.0
    lz = math.log(z)
    sr = math.erfc((-ep.relay.mu + lz) / (_SQRT2 * ep.relay.sigma))
    sb = math.erfc((-ep.bob.mu + lz) / (_SQRT2 * ep.bob.sigma))
    return 1.0 - 0.25 * sr * sb


def avg_secrecy_rate(ep: Endpoints, order: int = 24) -> MetricResult:
    """Average secrecy rate in bits/s/Hz by Gauss-Laguerre quadrature.

    The rate integrand over z is mapped through z = e^t - 1, cancelling the
    1/(1+z) factor against the Jacobian, and the remaining integral against
    e^-t is evaluated with a K-point Laguerre rule; hence the e^(node)
    factor on each weight.
    """
    _require_random(ep, "avg_secrecy_rate")
    rule = gauss_laguerre_rule(order)  # validates the order range
    x = rule.node_array()
    logw = np.log(rule.weight_array())
    z = np.expm1(x)
    lz = np.log(z)
    prod = (special.erfc((ep.eve.mu - lz) / (_SQRT2 * ep.eve.sigma))
            * special.erfc((-ep.bob.mu + lz) / (_SQRT2 * ep.bob.sigma))
            * special.erfc((-ep.relay.mu + lz) / (_SQRT2 * ep.relay.sigma)))
    # weights times e^node evaluated in log space: the factors vary over
    # hundreds of orders of magnitude at high order
    value = float(np.sum(np.exp(logw + x) * prod)) / (8.0 * _LN2)
    return MetricResult(value=value, method="quadrature", quadrature_order=order)


def _rate_integrand_cdf_form(ep: Endpoints):
    """Rate integrand built from the endpoint CDFs (oracle route)."""
    eve = ep.eve

    def f(z: float) -> float:
        if z <= 0.0:
            return 0.0
        return eve.cdf(z) * (1.0 - min_snr_cdf(ep, z)) / (1.0 + z)

    return f


def _rate_integrand_erfc_form(ep: Endpoints):
    """Closed erfc-product rate integrand (each factor scaled by its own sigma)."""
    mr, sr = ep.relay.mu, ep.relay.sigma
    mb, sb = ep.bob.mu, ep.bob.sigma
    me, se = ep.eve.mu, ep.eve.sigma

    def f(z: float) -> float:
        if z <= 0.0:
            return 0.0
        lz = math.log(z)
        return (math.erfc((me - lz) / (_SQRT2 * se))
                * math.erfc((-mb + lz) / (_SQRT2 * sb))
                * math.erfc((-mr + lz) / (_SQRT2 * sr))) / (8.0 * (1.0 + z))

    return f


def avg_secrecy_rate_reference(ep: Endpoints, rel_tol: float = 1e-9,
                               form: str = "cdf") -> MetricResult:
    """Average secrecy rate by adaptive integration (ground truth).

    form="cdf" integrates F_eve(z) [1 - F_min(z)] / (1+z) built from the
    CDF routines; form="erfc" integrates the algebraically equal closed
    erfc-product integrand.  Both exist so their agreement can be asserted.
    """
    _require_random(ep, "avg_secrecy_rate_reference")
    if not (1e-12 <= rel_tol <= 1e-4):
        raise ValueError(f"rel_tol must lie in [1e-12, 1e-4], got {rel_tol!r}")
    if form == "cdf":
        f = _rate_integrand_cdf_form(ep)
    elif form == "erfc":
        f = _rate_integrand_erfc_form(ep)
    else:
        raise ValueError(f"unknown integrand form {form!r}")
    est = _integrate_metric(f, rel_tol)
    return MetricResult(value=est.value / _LN2, method="reference",
                        error_estimate=est.rel_error)


def _clamp_unit(value: float, what: str) -> float:
    if -1e-12 < value < 0.0:
        logger.debug("%s rounded %.3e up to 0", what, value)
        return 0.0
    if 1.0 < value < 1.0 + 1e-12:
        logger.debug("%s rounded %.3e down to 1", what, value)
        return 1.0
    return value


def secrecy_outage(ep: Endpoints, rs_target: float, order: int = 24) -> MetricResult:
    """Secrecy outage probability for a target rate by Gauss-Hermite quadrature.

    The expectation over the eavesdropper SNR is taken along z =
    exp(mu_e + sqrt(2) sigma_e u), turning its density into the e^-u^2
    Hermite weight; the end-to-end CDF is evaluated at the rate threshold
    2^rs (1 + z) - 1.
    """
    _require_random(ep, "secrecy_outage")
    if not (rs_target > 0.0 and math.isfinite(rs_target)):
        raise ValueError(f"rs_target must be positive, got {rs_target!r}")
    rule = gauss_hermite_rule(order)
    u = rule.node_array()
    w = rule.weight_array()
    threshold = 2.0 ** rs_target * (np.exp(ep.eve.mu + _SQRT2 * ep.eve.sigma * u) + 1.0) - 1.0
    lt = np.log(threshold)
    survival = (special.erfc((-ep.bob.mu + lt) / (_SQRT2 * ep.bob.sigma))
                * special.erfc((-ep.relay.mu + lt) / (_SQRT2 * ep.relay.sigma)))
    value = 1.0 - float(np.sum(w * survival)) / (4.0 * _SQRT_PI)
    return MetricResult(value=_clamp_unit(value, "secrecy_outage"),
                        method="quadrature", quadrature_order=order)


def secrecy_outage_reference(ep: Endpoints, rs_target: float,
                             rel_tol: float = 1e-10) -> MetricResult:
    """Secrecy outage by adaptive integration of F_min(2^rs (1+z) - 1) f_eve(z)."""
    _require_random(ep, "secrecy_outage_reference")
    if not (rs_target > 0.0 and math.isfinite(rs_target)):
        raise ValueError(f"rs_target must be positive, got {rs_target!r}")
    if not (1e-12 <= rel_tol <= 1e-4):
        raise ValueError(f"rel_tol must lie in [1e-12, 1e-4], got {rel_tol!r}")
    eve = ep.eve
    scale = 2.0 ** rs_target

    def f(z: float) -> float:
        if z <= 0.0:
            return 0.0
        return min_snr_cdf(ep, scale * (1.0 + z) - 1.0) * eve.pdf(z)

    est = _integrate_metric(f, rel_tol)
    return MetricResult(value=_clamp_unit(est.value, "secrecy_outage_reference"),
                        method="reference", error_estimate=est.rel_error)

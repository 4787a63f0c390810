"""Constructive existence/uniqueness certificates for Caputo fractional IVPs.

A certificate packages the quantities that make the Picard operator
T y = y0 + I^alpha F(., y) a contraction on a ball: the field bound K on the
box, a Lipschitz constant L, an interval length h small enough that
k = L h^alpha / Gamma(alpha+1) < 1 and K h^alpha / Gamma(alpha+1) <= M.

Sampled maxima are not rigorous suprema, so K and L_p estimates are inflated
by 1.05 (1.25 for finite-difference L) and the contraction target is
theta = 0.9 rather than 1; certificates carry a ``sampled`` flag.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfun

__all__ = [
    "THETA",
    "IvpProblem",
    "ExistenceCertificate",
    "NonFiniteFieldError",
    "certify_nonlinear",
    "certify_linear",
]

THETA = 0.9
K_INFLATION = 1.05
LP_INFLATION = 1.05
L_FD_INFLATION = 1.25
_FD_REL_STEP = 1e-5


class NonFiniteFieldError(ArithmeticError):
    """The right-hand side evaluated to a non-finite value on the sample set."""


@dataclass(frozen=True)
class IvpProblem:
    """Scalar Caputo IVP: D^alpha y = F(t, y) on [a, b], y(a) = y0.

    ``box_radius`` is the half-width M of the box around y0 on which the
    certificate is sought; ``lipschitz`` may supply a known constant, else
    one is estimated by central differences on the sampled box.
    """

    alpha: float
    rhs: Callable[[float, float], float]
    interval: tuple[float, float]
    y0: float
    box_radius: float
    lipschitz: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "interval", (float(self.interval[0]), float(self.interval[1])))
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
        if not (math.isfinite(self.box_radius) and self.box_radius > 0.0):
            raise ValueError(f"box_radius must be > 0, got {self.box_radius}")
        if not math.isfinite(self.y0):
            raise ValueError(f"y0 must be finite, got {self.y0}")
        if self.lipschitz is not None and not (
            math.isfinite(self.lipschitz) and self.lipschitz >= 0.0
        ):
            raise ValueError(f"lipschitz must be finite and >= 0, got {self.lipschitz}")


@dataclass(frozen=True)
class ExistenceCertificate:
    """Contraction certificate; all fields suffice to re-check the inequalities.

    ``m_unconstrained`` marks the linear path, where no box is needed and M
    is reported as +inf; ``continuation_required`` marks a linear certificate
    that covers only [a, a+h] with continuation over subintervals extending
    it to the full interval.
    """

    alpha: float
    M: float
    K: float
    L: float
    h: float
    k: float
    guaranteed_interval: tuple[float, float]
    apriori_bound_factor: float
    sampled: bool = True
    m_unconstrained: bool = False
    continuation_required: bool = False

    def to_json_dict(self) -> dict:
        return {
            "type": "existence_certificate",
            "alpha": self.alpha,
            "M": None if math.isinf(self.M) else self.M,
            "K": self.K,
            "L": self.L,
            "h": self.h,
            "k": self.k,
            "guaranteed_interval": list(self.guaranteed_interval),
            "apriori_bound_factor": self.apriori_bound_factor,
            "sampled": self.sampled,
            "m_unconstrained": self.m_unconstrained,
            "continuation_required": self.continuation_required,
        }


def _gamma_alpha_plus_1(alpha: float) -> float:
    return specfun.gamma(alpha + 1.0).value()


def _interval_bound(ratio: float, alpha: float) -> float:
    # ratio**(1/alpha) can overflow for small alpha; an infinite bound just
    # means the constraint is inactive
    try:
        return ratio ** (1.0 / alpha)
    except OverflowError:
        return math.inf


def certify_nonlinear(
    problem: IvpProblem, sample_density: int = 33
) -> ExistenceCertificate:
    """Certificate for the nonlinear IVP on the box [a,b] x [y0-M, y0+M].

    K is the inflated sampled maximum of |F| on the box; L is the supplied
    Lipschitz constant, or the inflated sampled maximum of |dF/dy| by central
    differences.  The interval length is the largest h meeting both the
    invariance constraint K h^alpha/Gamma(alpha+1) <= M and the contraction
    target L h^alpha/Gamma(alpha+1) <= theta, capped at b - a.
    """
    if sample_density < 2:
        raise ValueError(f"sample_density must be >= 2, got {sample_density}")
    a, b = problem.interval
    M = problem.box_radius
    ts = np.linspace(a, b, sample_density)
    ys = np.linspace(problem.y0 - M, problem.y0 + M, sample_density)
    k_raw = 0.0
    l_raw = 0.0
    estimate_l = problem.lipschitz is None
    for t in ts:
        for y in ys:
            v = problem.rhs(float(t), float(y))
            if not math.isfinite(v):
                raise NonFiniteFieldError(f"F({t}, {y}) = {v} is not finite")
            k_raw = max(k_raw, abs(v))
            if estimate_l:
                e = _FD_REL_STEP * max(1.0, abs(y))
                vp = problem.rhs(float(t), float(y + e))
                vm = problem.rhs(float(t), float(y - e))
                if not (math.isfinite(vp) and math.isfinite(vm)):
                    raise NonFiniteFieldError(
                        f"F not finite near ({t}, {y}) while estimating the Lipschitz constant"
                    )
                l_raw = max(l_raw, abs(vp - vm) / (2.0 * e))
    K = K_INFLATION * k_raw
    L = problem.lipschitz if problem.lipschitz is not None else L_FD_INFLATION * l_raw
    g = _gamma_alpha_plus_1(problem.alpha)
    h = b - a
    if K > 0.0:
        h = min(h, _interval_bound(M * g / K, problem.alpha))
    if L > 0.0:
        h = min(h, _interval_bound(THETA * g / L, problem.alpha))
    k = L * h**problem.alpha / g
    return ExistenceCertificate(
        alpha=problem.alpha,
        M=M,
        K=K,
        L=L,
        h=h,
        k=k,
        guaranteed_interval=(a, a + h),
        apriori_bound_factor=k / (1.0 - k),
        sampled=True,
        m_unconstrained=False,
        continuation_required=False,
    )


def certify_linear(
    alpha: float,
    p: Callable[[float], float],
    interval: tuple[float, float],
    sample_density: int = 257,
) -> ExistenceCertificate:
    """Certificate for D^alpha y + p(t) y = f(t) on [a, b].

    No box is involved: when L_p (b-a)^alpha / Gamma(alpha+1) < 1 the full
    interval is certified outright; otherwise the largest h with contraction
    constant theta is returned and continuation over subintervals (restarting
    at the new initial value) extends the result to [a, b].
    """
    a, b = float(interval[0]), float(interval[1])
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not a < b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    if sample_density < 2:
        raise ValueError(f"sample_density must be >= 2, got {sample_density}")
    samples = np.linspace(a, b, sample_density)
    lp_raw = 0.0
    for t in samples:
        v = p(float(t))
        if not math.isfinite(v):
            raise NonFiniteFieldError(f"p({t}) = {v} is not finite")
        lp_raw = max(lp_raw, abs(v))
    L_p = LP_INFLATION * lp_raw
    g = _gamma_alpha_plus_1(alpha)
    k_full = L_p * (b - a) ** alpha / g
    if k_full < 1.0:
        h = b - a
        k = k_full
        continuation = False
    else:
        # L_p (b-a)^alpha / Gamma(alpha+1) >= 1 forces L_p > 0, and the
        # resulting h is strictly below b - a, so no overflow is possible
        h = (THETA * g / L_p) ** (1.0 / alpha)
        k = L_p * h**alpha / g
        continuation = True
    return ExistenceCertificate(
        alpha=alpha,
        M=math.inf,
        K=0.0,
        L=L_p,
        h=h,
        k=k,
        guaranteed_interval=(a, a + h),
        apriori_bound_factor=k / (1.0 - k),
        sampled=True,
        m_unconstrained=True,
        continuation_required=continuation,
    )

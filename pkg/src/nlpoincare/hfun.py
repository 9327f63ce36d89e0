"""The sign-changing minimizer integral H(m, p, r) and its eigenvalue map.

A minimizer that changes sign, normalized to maximum 1 and minimum -m,
forces the eigenvalue to equal (p-1) H(m,p,r)^p, where

    H(m,p,r) = int_0^1 dy / F_I  +  int_0^1 m dy / F_II,

    F_I ^p = (1 - y^p) - R (1 - y^r),
    F_II^p = R m^r (1 - y^r) + m^p (1 - y^p),
    R(m,p,r) = (1 - m^p) / (1 + m^r),   T = 1 - R.

Both radicands vanish linearly at y = 1, giving a (1-y)^(-1/p) endpoint
singularity that the tanh-sinh kernel absorbs; at m = 0 the first term
degenerates to y^r (1 - y^(p-r)), adding an integrable y^(-r/p) blow-up
for r < p and a genuinely divergent integral at r = p.

The structural facts verified numerically against this module:
  * H(1,p,r) = pi_p/(p-1)^(1/p) for every admissible r,
  * H(m,p,p/2) is constant in m (k_half is an independently coded
    formulation of that same quantity used as a cross-check),
  * H is strictly increasing in r on [p/2, p],
  * H >= pi_p/(p-1)^(1/p) everywhere, with equality iff m = 1 when
    r > p/2 (so the minimal eigenvalue over m is pi_p^p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ptrig import DomainError, PExponent, pi_p, _pval
from .quadrature import integrate_01, one_minus_pow

__all__ = [
    "Exponents",
    "HEvaluation",
    "DivergentIntegralError",
    "ratio_R",
    "ratio_T",
    "integrand_h",
    "eval_H",
    "k_half",
    "lambda_candidate",
    "minimize_lambda_over_m",
    "MinimizeResult",
]


class DivergentIntegralError(ValueError):
    """H(0, p, p) is +infinity; callers must branch on this case."""


@dataclass(frozen=True)
class Exponents:
    """Validated parameter triple: p >= 2, p/2 <= r <= p, finite alpha."""

    p: float
    r: float
    alpha: float = 0.0

    def __post_init__(self):
        p = _pval(self.p)
        object.__setattr__(self, "p", p)
        r = float(self.r)
        if not math.isfinite(r) or not (p / 2.0 <= r <= p):
            raise DomainError(
                f"moment exponent must satisfy p/2 <= r <= p, got r={self.r} for p={p}"
            )
        object.__setattr__(self, "r", r)
        a = float(self.alpha)
        if not math.isfinite(a):
            raise DomainError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def pexp(self) -> PExponent:
        return PExponent(self.p)

    def with_alpha(self, alpha: float) -> "Exponents":
        return Exponents(self.p, self.r, alpha)


@dataclass(frozen=True)
class HEvaluation:
    m: float
    value: float
    est_error: float
    lambda_candidate: float


def _check_m(m: float) -> float:
    m = float(m)
    if not (0.0 <= m <= 1.0):
        raise DomainError(f"depth ratio m must lie in [0, 1], got {m}")
    return m


def ratio_R(m: float, exps: Exponents) -> float:
    """R(m,p,r) = (1 - m^p)/(1 + m^r); decreases from 1 at m=0 to 0 at m=1."""
    m = _check_m(m)
    return (1.0 - m ** exps.p) / (1.0 + m ** exps.r)


def ratio_T(m: float, exps: Exponents) -> float:
    """Complement T = 1 - R = (m^p + m^r)/(1 + m^r)."""
    m = _check_m(m)
    return (m ** exps.p + m ** exps.r) / (1.0 + m ** exps.r)


def _radicands(m: float, exps: Exponents, y, omy):
    """(F_I^p, F_II^p) in cancellation-free form.

    F_II^p = R m^r (1-y^r) + m^p (1-y^p) is an exact rearrangement of
    1 - R(1 + m^r y^r) - m^p y^p; both terms are nonnegative, so it keeps
    full relative accuracy all the way into the y = 1 singularity.
    """
    p, r = exps.p, exps.r
    R = ratio_R(m, exps)
    omyp = one_minus_pow(omy, p)
    omyr = one_minus_pow(omy, r)
    rad1 = omyp - R * omyr
    rad2 = R * m ** r * omyr + m ** p * omyp
    return rad1, rad2


def _h_pair(m: float, exps: Exponents, y, omy):
    """Integrand h = 1/F_I + m/F_II on the accurate node pair (y, 1-y)."""
    p, r = exps.p, exps.r
    if m == 0.0:
        if r >= p:
            raise DivergentIntegralError(
                "integrand is identically singular for m=0, r=p"
            )
        # F_I^p degenerates to y^r (1 - y^(p-r)); second term vanishes with m
        rad1 = y ** r * one_minus_pow(omy, p - r)
        rad1 = np.maximum(rad1, 0.0)
        return np.where(rad1 > 0.0, rad1, 1.0) ** (-1.0 / p) * (rad1 > 0.0)
    rad1, rad2 = _radicands(m, exps, y, omy)
    rad1 = np.maximum(rad1, 0.0)
    rad2 = np.maximum(rad2, 0.0)
    t1 = np.where(rad1 > 0.0, rad1, 1.0) ** (-1.0 / p) * (rad1 > 0.0)
    t2 = np.where(rad2 > 0.0, rad2, 1.0) ** (-1.0 / p) * (rad2 > 0.0)
    return t1 + m * t2


def integrand_h(m: float, exps: Exponents, y):
    """Pointwise integrand of H at y in [0, 1).

    Raises at y = 1 (the integrable endpoint singularity) and for the
    divergent m=0, r=p combination.  Vectorized over y.
    """
    m = _check_m(m)
    ys = np.asarray(y, dtype=float)
    if np.any(ys < 0.0) or np.any(ys >= 1.0):
        raise DomainError("integrand_h requires 0 <= y < 1 (singular at y=1)")
    out = _h_pair(m, exps, ys, 1.0 - ys)
    return out if ys.shape else float(out)


def eval_H(m: float, exps: Exponents, tol: float = 1e-10) -> HEvaluation:
    """H(m,p,r) by tanh-sinh quadrature with estimated error <= tol.

    The (m=0, r=p) case raises DivergentIntegralError.  For m = 0 with
    r/p close to 1 the fixed node window cannot represent the y^(-r/p)
    blow-up to full accuracy; the analytic truncation tail is added to
    the reported error estimate so the guarantee stays honest.
    """
    m = _check_m(m)
    p, r = exps.p, exps.r
    if m == 0.0 and r >= p:
        raise DivergentIntegralError("H(0, p, p) diverges")
    res = integrate_01(lambda y, omy: _h_pair(m, exps, y, omy), tol=tol)
    est = res.est_error
    if m == 0.0:
        # mass of the un-sampled left tail below the smallest node
        y_min = 1e-275
        est += y_min ** (1.0 - r / p) / (1.0 - r / p)
        if est > tol:
            raise DivergentIntegralError(
                f"H(0,p,r) too close to the r=p divergence: tail estimate {est:.2e}"
            )
    value = res.value
    lam = (p - 1.0) * value ** p
    floor = pi_p(p) / (p - 1.0) ** (1.0 / p)
    if value < floor - est - 1e-9:
        raise ArithmeticError(
            f"H evaluation {value!r} fell below the proven floor {floor!r}"
        )
    return HEvaluation(m=m, value=value, est_error=est, lambda_candidate=lam)


def k_half(m: float, p, tol: float = 1e-10) -> float:
    """Independent formulation of H(m, p, p/2) used as a cross-check.

    Integrates A^(-1/p) + m B^(-1/p) with
        A = m^(p/2) + (1 - m^(p/2)) y^(p/2) - y^p
          = (m^(p/2) + y^(p/2)) (1 - y^(p/2)),
        B = m^(p/2) - (1 - m^(p/2)) m^(p/2) y^(p/2) - m^p y^p
          = m^(p/2) (1 - y^(p/2)) (1 + m^(p/2) y^(p/2)),
    the factored right-hand sides being exact rearrangements that stay
    accurate at the y = 1 root.  Constant in m by the structure theory.
    """
    m = _check_m(m)
    p = _pval(p)
    q = p / 2.0
    mq = m ** q

    def f(y, omy):
        omyq = one_minus_pow(omy, q)
        A = (mq + y ** q) * omyq
        t1 = np.where(A > 0.0, A, 1.0) ** (-1.0 / p) * (A > 0.0)
        if m == 0.0:
            return t1
        B = mq * omyq * (1.0 + mq * y ** q)
        t2 = np.where(B > 0.0, B, 1.0) ** (-1.0 / p) * (B > 0.0)
        return t1 + m * t2

    return integrate_01(f, tol=tol).value


def lambda_candidate(m: float, exps: Exponents, tol: float = 1e-10) -> float:
    """Eigenvalue (p-1) H(m,p,r)^p of a sign-changing profile with depth m."""
    return eval_H(m, exps, tol=tol).lambda_candidate


@dataclass(frozen=True)
class MinimizeResult:
    m_star: float
    lambda_star: float
    flat: bool


def minimize_lambda_over_m(exps: Exponents, tol: float = 1e-8) -> MinimizeResult:
    """Minimize (p-1) H(m)^p over m in [0, 1].

    101-point uniform pre-scan, then golden-section refinement of the best
    bracket.  When the scan range is below 10*tol the objective is flagged
    flat (the r = p/2 case, where H does not depend on m at all).
    """
    p, r = exps.p, exps.r
    qtol = max(tol * 1e-3, 1e-12)
    ms = np.linspace(0.0, 1.0, 101)
    if r >= p:
        ms = ms[1:]  # H(0,p,p) diverges; open left endpoint

    def obj(m):
        return eval_H(float(m), exps, tol=qtol).lambda_candidate

    vals = np.array([obj(m) for m in ms])
    k = int(np.argmin(vals))
    if float(vals.max() - vals.min()) < 10.0 * tol:
        return MinimizeResult(m_star=float(ms[k]), lambda_star=float(vals[k]), flat=True)

    lo = ms[max(k - 1, 0)]
    hi = ms[min(k + 1, len(ms) - 1)]
    # golden-section; tolerates the minimum sitting on a bracket endpoint
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = obj(c), obj(d)
    while b - a > 1e-6:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = obj(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = obj(d)
    m_star = c if fc < fd else d
    lam = obj(m_star)
    best = min((lam, float(m_star)), (float(vals[k]), float(ms[k])))
    return MinimizeResult(m_star=best[1], lambda_star=best[0], flat=False)

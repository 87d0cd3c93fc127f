"""Counting bounds in log space: ball-size estimates and their uses.

Ball sizes and factorials here routinely overflow doubles, so everything
is carried as natural logs at 113-bit working precision with an explicit
epsilon margin on comparisons; a comparison landing inside the margin is
reported as inconclusive (None) rather than guessed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import mpmath as mp

from . import composed, cyclic
from .errors import DomainError, ResourceLimitError
from .oracle import ball_size_exact

__all__ = [
    "ComparisonResult",
    "LogValue",
    "RelabelRadiusBound",
    "ball_size_log_bound",
    "certification_threshold",
    "covered_fraction_bound",
    "covering_impossible",
    "cyclic_vs_identity_ratio_bound",
    "log_factorial",
    "min_relabeling_radius_bound",
]

PRECISION_BITS = 113
DEFAULT_MARGIN = 1e-9  # log-domain slack, approximately relative in exp domain

_lnfact: list = []
_cum: list = []  # _cum[j] = sum_{i=1..j} 2 ln(i!)/i


def log_factorial(k: int):
    """ln(k!) as an mpmath float at the module's working precision."""
    if k < 0:
        raise DomainError(f"factorial argument must be >= 0, got {k}")
    with mp.workprec(PRECISION_BITS):
        if not _lnfact:
            _lnfact.append(mp.mpf(0))
        while len(_lnfact) <= k:
            _lnfact.append(_lnfact[-1] + mp.log(len(_lnfact)))
    return _lnfact[k]


def _cum_ratio(j: int):
    """sum over i = 1..j of 2 ln(i!)/i, cached."""
    if j < 0:
        return mp.mpf(0)
    log_factorial(j)
    with mp.workprec(PRECISION_BITS):
        if not _cum:
            _cum.append(mp.mpf(0))
        while len(_cum) <= j:
            i = len(_cum)
            _cum.append(_cum[-1] + 2 * _lnfact[i] / i)
    return _cum[j]


@dataclass(frozen=True)
class LogValue:
    """A positive magnitude stored as its natural log (an mpmath float)."""

    ln: object

    @classmethod
    def from_integer(cls, x: int) -> "LogValue":
        if x < 1:
            raise DomainError("LogValue wants a positive integer")
        with mp.workprec(PRECISION_BITS):
            return cls(mp.log(mp.mpf(x)))

    def exp(self):
        with mp.workprec(PRECISION_BITS):
            return mp.e ** self.ln


def _compare(lhs_ln, rhs_ln, margin: float) -> bool | None:
    """lhs <= rhs, None when the logs agree to within the margin."""
    with mp.workprec(PRECISION_BITS):
        diff = rhs_ln - lhs_ln
        if abs(diff) <= margin:
            return None
        return diff > 0


def _case_low(n: int, r: int):
    # ((2r+1)!)^((n-2r)/(2r+1)) * prod_{i=r+1}^{2r} (i!)^(2/i)
    return (mp.mpf(n - 2 * r) / (2 * r + 1) * log_factorial(2 * r + 1)
            + _cum_ratio(2 * r) - _cum_ratio(r))


def _case_high(n: int, r: int):
    # (n!)^((2r+2-n)/n) * prod_{i=r+1}^{n-1} (i!)^(2/i)
    return (mp.mpf(2 * r + 2 - n) / n * log_factorial(n)
            + _cum_ratio(n - 1) - _cum_ratio(r))


def ball_size_log_bound(n: int, r: int) -> LogValue:
    """Upper bound on the l-infinity ball size |B(n, r)|, in log form.

    Piecewise: one product form for r <= (n-1)/2, another for
    r >= (n-1)/2, the smaller of the two where both apply.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if not 0 <= r <= n - 1:
        raise DomainError(f"radius must lie in 0..{n - 1}, got {r}")
    with mp.workprec(PRECISION_BITS):
        low = _case_low(n, r) if 2 * r <= n - 1 else None
        high = _case_high(n, r) if 2 * r >= n - 1 else None
        if low is not None and high is not None:
            return LogValue(min(low, high))
        return LogValue(low if low is not None else high)


def covered_fraction_bound(n: int, radius: int):
    """Upper bound on the fraction of S_n covered by n balls of radius
    ``radius - 1``; below 1, no n-codeword code can cover at that radius.
    Defined for (n+1)/2 <= radius <= n-1; returns an mpmath float.
    """
    if n < 2:
        raise DomainError(f"degree must be >= 2, got {n}")
    if 2 * radius < n + 1 or radius > n - 1:
        raise DomainError(
            f"defined for (n+1)/2 <= radius <= n-1, got radius={radius}, n={n}")
    with mp.workprec(PRECISION_BITS):
        # n * bound(|B(n, radius-1)|) / n!  via the high-range product form
        return mp.e ** (_case_high(n, radius - 1) - log_factorial(n - 1))


def covering_impossible(code_size: int, n: int, radius: int,
                        margin: float = DEFAULT_MARGIN) -> bool | None:
    """Whether ``code_size`` balls of radius ``radius - 1`` provably fail
    to cover S_n (hence any such code has covering radius >= radius).

    Uses the exact ball size when affordable, else the log-space bound; a
    bound can only certify True, so an unfavorable comparison then comes
    back inconclusive (None) rather than False.
    """
    if code_size < 1:
        raise DomainError("code_size must be >= 1")
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if radius < 1:
        raise DomainError("radius must be >= 1 for the counting argument")
    try:
        ball = ball_size_exact(n, radius - 1)
    except ResourceLimitError:
        ball = None
    if ball is not None:
        return code_size * ball < factorial(n)
    with mp.workprec(PRECISION_BITS):
        lhs = mp.log(mp.mpf(code_size)) + ball_size_log_bound(n, radius - 1).ln
        verdict = _compare(lhs, log_factorial(n), margin)
    if verdict is True:
        # strict inequality certified through an upper bound on the ball
        return True
    return None


@dataclass(frozen=True)
class RelabelRadiusBound:
    """Lower bound on the worst-case relabeled covering radius for codes
    of size n.  ``certified`` records whether the counting argument
    actually closes at this degree; otherwise the value is asymptotic
    only."""

    n: int
    value: int
    certified: bool


def min_relabeling_radius_bound(n: int,
                                margin: float = DEFAULT_MARGIN) -> RelabelRadiusBound:
    """n - ceil(sqrt(2 n ln n + 2 n)), certified at degrees where the
    covered-fraction bound falls below 1."""
    if n < 3:
        raise DomainError(f"defined for n >= 3, got {n}")
    with mp.workprec(PRECISION_BITS):
        target = mp.sqrt(2 * n * mp.log(n) + 2 * n)
        value = n - int(mp.ceil(target))
    certified = False
    if 2 * value >= n + 1 and value <= n - 1:
        frac = covered_fraction_bound(n, value)
        with mp.workprec(PRECISION_BITS):
            verdict = _compare(mp.log(frac), mp.mpf(0), margin)
        certified = verdict is True
    return RelabelRadiusBound(n, value, certified)


def certification_threshold(limit: int = 10_000) -> int:
    """Smallest degree N0 such that min_relabeling_radius_bound is
    certified at every degree from N0 through ``limit``."""
    if limit < 3:
        raise DomainError("limit must be >= 3")
    _cum_ratio(limit)  # build the tables once
    last_bad = 2
    for n in range(3, limit + 1):
        if not min_relabeling_radius_bound(n).certified:
            last_bad = n
    if last_bad >= limit:
        raise DomainError(f"no certified range up to {limit}")
    return last_bad + 1


@dataclass(frozen=True)
class ComparisonResult:
    """Two log magnitudes and whether lhs <= rhs (None: within margin)."""

    lhs: LogValue
    rhs: LogValue
    holds: bool | None


def cyclic_vs_identity_ratio_bound(t: int, m: int,
                                   margin: float = DEFAULT_MARGIN) -> ComparisonResult:
    """Compare composed-code sizes at degree n = t*m: cyclic blocks of
    width m versus identity blocks of width r+1 (r the cyclic block
    radius).  lhs is the exact size ratio in log form, rhs the closed-form
    envelope 2^(2t+2) sqrt(t) (2 pi t)^t (m^2 e^(2 - sqrt(m)))^t; holds
    means lhs <= rhs up to the margin."""
    if t < 1 or m < 1:
        raise DomainError("t and m must be >= 1")
    n = t * m
    r = cyclic.covering_radius(m)
    m_cyc = composed.cardinality(composed.ComposedCodeSpec(n, m))
    m_id = composed.cardinality(
        composed.ComposedCodeSpec(n, r + 1, composed.KIND_IDENTITY,
                                  composed.KIND_IDENTITY))
    with mp.workprec(PRECISION_BITS):
        lhs = mp.log(mp.mpf(m_cyc)) - mp.log(mp.mpf(m_id))
        rhs = ((2 * t + 2) * mp.log(2) + mp.log(t) / 2
               + t * mp.log(2 * mp.pi * t)
               + t * (2 * mp.log(m) + 2 - mp.sqrt(m)))
        holds = _compare(lhs, rhs, margin)
    return ComparisonResult(LogValue(lhs), LogValue(rhs), holds)

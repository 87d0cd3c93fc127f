"""Brute-force ground truth, independent of any closed forms.

Everything here answers questions by exhausting over permutations (with a
compiled kernel where available) or by exact counting, so it can sit on
the other side of a test from the formula-based modules.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

from .errors import DimensionError, DomainError, ResourceLimitError
from .perms import Perm, as_permutation, linf_distance

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

__all__ = [
    "DEFAULT_CAP",
    "RadiusCertificate",
    "ball_size_enumeration",
    "ball_size_exact",
    "covering_radius_bruteforce",
    "distance_to_code",
    "effective_cap",
    "max_distance_witness",
]

DEFAULT_CAP = 10
_ENV_CAP = "PERMCOVER_CAP_N"


def effective_cap(cap: int | None = None, default: int = DEFAULT_CAP) -> int:
    """Resolve a brute-force degree cap: explicit argument, else the
    PERMCOVER_CAP_N environment variable, else the given default."""
    if cap is not None:
        return cap
    env = os.environ.get(_ENV_CAP)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"{_ENV_CAP} must be an integer, got {env!r}") from exc
    return default


@dataclass(frozen=True)
class RadiusCertificate:
    """Exhaustively verified covering radius with a maximizing witness."""

    radius: int
    witness: Perm
    code_size: int


def distance_to_code(f, code) -> int:
    """min over codewords of the l-infinity distance to f."""
    f = as_permutation(f)
    best = None
    for g in code:
        d = linf_distance(f, tuple(g))
        if best is None or d < best:
            best = d
            if best == 0:
                break
    if best is None:
        raise DomainError("code must be nonempty")
    return best


def _normalized_code(code) -> list[Perm]:
    words = [as_permutation(g) for g in code]
    if not words:
        raise DomainError("code must be nonempty")
    n = len(words[0])
    if any(len(g) != n for g in words):
        raise DimensionError("codewords must share one degree")
    return words


def _radius_scan_py(code: np.ndarray, upper: int) -> tuple[int, np.ndarray]:
    """Max-over-S_n of min-over-codewords distance, lexicographic order.

    ``upper`` < 0 scans everything; otherwise the scan stops as soon as the
    running maximum reaches ``upper`` (callers must pass a proven upper
    bound).  Same logic as the jitted kernel below.
    """
    m, n = code.shape
    f = np.arange(1, n + 1, dtype=np.int64)
    best = -1
    wit = f.copy()
    while True:
        covered = False
        for c in range(m):
            ok = True
            for i in range(n):
                dv = f[i] - code[c, i]
                if dv < 0:
                    dv = -dv
                if dv > best:
                    ok = False
                    break
            if ok:
                covered = True
                break
        if not covered:
            dmin = n
            for c in range(m):
                dmax = 0
                for i in range(n):
                    dv = f[i] - code[c, i]
                    if dv < 0:
                        dv = -dv
                    if dv > dmax:
                        dmax = dv
                        if dmax >= dmin:
                            break
                if dmax < dmin:
                    dmin = dmax
            if dmin > best:
                best = dmin
                wit[:] = f
                if 0 <= upper <= best:
                    return best, wit
        i = n - 2
        while i >= 0 and f[i] >= f[i + 1]:
            i -= 1
        if i < 0:
            return best, wit
        j = n - 1
        while f[j] <= f[i]:
            j -= 1
        f[i], f[j] = f[j], f[i]
        lo = i + 1
        hi = n - 1
        while lo < hi:
            f[lo], f[hi] = f[hi], f[lo]
            lo += 1
            hi -= 1


if njit is not None:
    _radius_scan = njit(cache=True, nogil=True)(_radius_scan_py)
else:  # pragma: no cover
    _radius_scan = _radius_scan_py


def covering_radius_bruteforce(code, cap: int | None = None,
                               upper_bound: int | None = None) -> RadiusCertificate:
    """Covering radius of an explicit code by sweeping all of S_n.

    Degrees above the cap (see ``effective_cap``) raise ResourceLimitError
    since the sweep costs n! distance evaluations.  ``upper_bound``, when
    given, must be a proven bound on the radius; the sweep then stops early
    once it is attained, with the certificate unchanged in meaning.
    """
    words = _normalized_code(code)
    n = len(words[0])
    if n == 0:
        return RadiusCertificate(0, (), len(words))
    limit = effective_cap(cap)
    if n > limit:
        raise ResourceLimitError(
            f"degree {n} exceeds brute-force cap {limit}; raise the cap "
            f"explicitly or via {_ENV_CAP} to proceed")
    arr = np.array(words, dtype=np.int64)
    upper = -1 if upper_bound is None else int(upper_bound)
    radius, wit = _radius_scan(arr, upper)
    return RadiusCertificate(int(radius), tuple(int(v) for v in wit), len(words))


def max_distance_witness(code, cap: int | None = None) -> Perm:
    """A permutation at maximal distance from the code."""
    return covering_radius_bruteforce(code, cap=cap).witness


# ---------------------------------------------------------------------------
# exact ball sizes |{f : max_i |f(i) - i| <= r}|

# widest window the subset DP accepts by default; each extra column can
# double the live state count, and 21 keeps the worst case near C(21,10)
# masks which is still interactive
DEFAULT_BAND_LIMIT = 21
_ENUM_LIMIT = 10


def ball_size_exact(n: int, radius: int, band_limit: int = DEFAULT_BAND_LIMIT) -> int:
    """Number of permutations of degree n within distance ``radius`` of any
    fixed permutation (centers are interchangeable by right invariance).

    Counted as the permanent of the 0/1 band matrix |i - j| <= radius via
    a sliding-window subset dynamic program; when the band 2r+1 exceeds
    ``band_limit`` it falls back to full enumeration for n <= 10 and
    raises ResourceLimitError beyond that.  Exact at any size (arbitrary
    precision).

    >>> ball_size_exact(4, 1)
    5
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if radius < 0:
        raise DomainError(f"radius must be >= 0, got {radius}")
    if n <= 1:
        return 1
    if radius >= n - 1:
        return factorial(n)
    if radius == 0:
        return 1
    if 2 * radius + 1 > band_limit:
        if n <= _ENUM_LIMIT:
            return ball_size_enumeration(n, radius)
        raise ResourceLimitError(
            f"band {2 * radius + 1} exceeds limit {band_limit} and degree {n} "
            f"is too large to enumerate")
    return _ball_dp(n, radius)


def _ball_dp(n: int, r: int) -> int:
    # states: bitmask of used values inside the window [lo, hi] around the
    # current position; values sliding out of the window must be used
    states = {0: 1}
    lo = 1
    for i in range(1, n + 1):
        lo_i = max(1, i - r)
        hi_i = min(n, i + r)
        if lo_i > lo:
            shift = lo_i - lo
            need = (1 << shift) - 1
            shifted: dict[int, int] = {}
            for mask, cnt in states.items():
                if mask & need == need:
                    m2 = mask >> shift
                    shifted[m2] = shifted.get(m2, 0) + cnt
            states = shifted
            lo = lo_i
        new: dict[int, int] = {}
        for mask, cnt in states.items():
            for v in range(lo, hi_i + 1):
                b = 1 << (v - lo)
                if not mask & b:
                    m2 = mask | b
                    new[m2] = new.get(m2, 0) + cnt
        states = new
    full = (1 << (n - lo + 1)) - 1
    return sum(cnt for mask, cnt in states.items() if mask == full)


@lru_cache(maxsize=None)
def _displacement_profile(n: int) -> tuple[int, ...]:
    """counts[d] = number of degree-n permutations with max displacement d."""
    counts = [0] * n
    base = tuple(range(1, n + 1))
    for p in permutations(base):
        d = 0
        for i, v in enumerate(p):
            dv = v - i - 1
            if dv < 0:
                dv = -dv
            if dv > d:
                d = dv
        counts[d] += 1
    return tuple(counts)


def ball_size_enumeration(n: int, radius: int) -> int:
    """Ball size by enumerating S_n outright; n <= 10 only."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if n > _ENUM_LIMIT:
        raise ResourceLimitError(f"enumeration limited to degree {_ENUM_LIMIT}")
    if n <= 1:
        return 1
    prof = _displacement_profile(n)
    return sum(prof[: min(radius, n - 1) + 1])

"""The cyclic rotation code and its covering geometry.

The code of degree n consists of the n rotations ``[k+1,...,n,1,...,k]``
under the l-infinity distance ``max_i |f(i) - g(i)|``.  This module gives
its covering radius in closed form, a permutation attaining that radius (a
deep hole), a linear-time search for a rotation within the radius of any
input, and the interval bookkeeping ("exposure") those results rest on.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import DomainError, GuaranteeError
from .perms import CyclicInterval, Perm, as_permutation, is_permutation

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

__all__ = [
    "CyclicGroupCode",
    "ExposureEvidence",
    "ExposureRecord",
    "covering_codeword",
    "covering_radius",
    "covering_radius_lower",
    "covering_radius_upper",
    "covering_rotation",
    "cyclic_group",
    "deep_hole",
    "exposure_set",
    "is_exposed",
    "rotation",
]


# ---------------------------------------------------------------------------
# closed-form radius, via exact integer square roots only

def _side_floor(n: int) -> int:
    """floor((sqrt(4n+1)+1)/2): the unique a with a(a-1) <= n < a(a+1)."""
    return (isqrt(4 * n + 1) - 1) // 2 + 1


def _side_ceil(n: int) -> int:
    """ceil((sqrt(4n+1)-1)/2): the least a with a(a+1) >= n."""
    x = 4 * n + 1
    s = isqrt(x)
    if s * s == x:
        return (s - 1) // 2
    # 4n+1 is not a square, so sqrt(4n+1) is irrational: ceil = floor + 1
    return (s - 1) // 2 + 1


def covering_radius(n: int) -> int:
    """Exact covering radius of the degree-n rotation code.

    >>> [covering_radius(n) for n in range(1, 9)]
    [0, 0, 1, 2, 3, 3, 4, 5]
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    return n - _side_floor(n)


def covering_radius_upper(n: int) -> int:
    """Upper bound n - ceil((sqrt(4n+1)-1)/2); exceeds the radius by one
    exactly when n = t(t+1), and matches it otherwise.  Defined for n >= 3."""
    if n < 3:
        raise DomainError(f"bound defined for n >= 3, got {n}")
    return n - _side_ceil(n)


def covering_radius_lower(n: int) -> int:
    """Lower bound n - floor((sqrt(4n+1)+1)/2); tight for every n >= 3."""
    if n < 3:
        raise DomainError(f"bound defined for n >= 3, got {n}")
    return n - _side_floor(n)


# ---------------------------------------------------------------------------
# the code itself

def rotation(n: int, k: int) -> Perm:
    """The rotation sending i to i + k (wrapped), one-line [k+1,...,n,1,...,k]."""
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    k %= n
    return tuple(range(k + 1, n + 1)) + tuple(range(1, k + 1))


@dataclass(frozen=True)
class CyclicGroupCode:
    """The n rotations of degree n, indexed by shift k = 0..n-1."""

    n: int
    codewords: tuple[Perm, ...]

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.codewords)

    def __contains__(self, f) -> bool:
        f = tuple(f)
        if len(f) != self.n or not is_permutation(f):
            return False
        return f == rotation(self.n, f[0] - 1)


def cyclic_group(n: int) -> CyclicGroupCode:
    """All rotations of degree n >= 1."""
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    return CyclicGroupCode(n, tuple(rotation(n, k) for k in range(n)))


# ---------------------------------------------------------------------------
# a permutation at maximal distance from the code

def deep_hole(n: int) -> Perm:
    """A permutation whose distance to the rotation code equals the
    covering radius, built explicitly for n >= 3.

    Writing a for the side length with a(a-1) <= n < a(a+1), value n-a+k
    is pinned at position k(k+1)/2 for k = 1..a and value a-l+1 at
    position a(a+1)-1-l(l+1)/2 for each l = 1..a whose position fits
    inside 1..n.  Remaining values fill remaining positions ascending.

    >>> deep_hole(7)
    (5, 2, 6, 3, 1, 7, 4)
    """
    if n < 3:
        raise DomainError(f"defined for n >= 3, got {n}")
    a = _side_floor(n)
    out = [0] * (n + 1)
    for k in range(1, a + 1):
        pos = k * (k + 1) // 2
        if pos > n:
            raise GuaranteeError(f"rising position {pos} escaped 1..{n}")
        out[pos] = n - a + k
    for l in range(1, a + 1):
        pos = a * (a + 1) - 1 - l * (l + 1) // 2
        if pos > n:
            continue
        if out[pos]:
            raise GuaranteeError(f"position {pos} assigned twice")
        out[pos] = a - l + 1
    free_vals = sorted(set(range(1, n + 1)) - set(out))
    it = iter(free_vals)
    for pos in range(1, n + 1):
        if not out[pos]:
            out[pos] = next(it)
    return tuple(out[1:])


# ---------------------------------------------------------------------------
# linear-time covering search

def covering_rotation(f) -> int:
    """Shift k of a rotation within the covering radius of f.

    Accepts a tuple/list or a numpy array (1-based values either way) and
    runs in time linear in the degree.  The returned k indexes
    ``rotation(n, k)``; ties break toward the first viable candidate in
    the internal sieve order, so the result is deterministic.
    """
    if _np is not None and isinstance(f, _np.ndarray):
        return _covering_rotation_np(f)
    n = len(f)
    if n < 1:
        raise DomainError("degree must be >= 1")
    if not is_permutation(f):
        raise DomainError("input is not a permutation")
    a = (isqrt(4 * n + 1) - 1) // 2
    # V[i] = 1 once the rotation associated with slot i is ruled out
    V = bytearray(n + 1)
    for i0, v in enumerate(f):
        i = i0 + 1
        if v <= a:
            run = a - (v - 1)
            for j in range(i + 1, i + run + 1):
                V[(j - 1) % n + 1] = 1
        elif v >= n - a + 1:
            run = a - (n - v)
            for j in range(i - run + 1, i + 1):
                V[(j - 1) % n + 1] = 1
    for i in range(1, n + 1):
        if not V[i]:
            return (n - i + 1) % n
    raise GuaranteeError("sieve left no rotation; this should be impossible")


def _covering_rotation_np(f) -> int:
    n = int(f.size)
    if n < 1:
        raise DomainError("degree must be >= 1")
    arr = f.astype(_np.int64, copy=False).reshape(-1)
    if int(arr.min()) < 1 or int(arr.max()) > n:
        raise DomainError("input is not a permutation")
    if (_np.bincount(arr, minlength=n + 1)[1:] != 1).any():
        raise DomainError("input is not a permutation")
    a = (isqrt(4 * n + 1) - 1) // 2
    V = _np.zeros(n, dtype=bool)  # V[i0] covers slot i0+1

    def mark(start: int, run: int) -> None:
        # run < n always, so at most one wrap
        s = start % n
        e = s + run
        if e <= n:
            V[s:e] = True
        else:
            V[s:] = True
            V[: e - n] = True

    for p in _np.flatnonzero(arr <= a):
        i = int(p) + 1
        mark(i, a - (int(arr[p]) - 1))
    for p in _np.flatnonzero(arr >= n - a + 1):
        i = int(p) + 1
        mark(i - (a - (n - int(arr[p]))), a - (n - int(arr[p])))
    idx = _np.flatnonzero(~V)
    if idx.size == 0:
        raise GuaranteeError("sieve left no rotation; this should be impossible")
    i = int(idx[0]) + 1
    return (n - i + 1) % n


def covering_codeword(f):
    """A rotation g with linf distance to f at most the covering radius.

    Returns the same kind as the input: tuple in, tuple out; numpy array
    in, numpy array out.
    """
    k = covering_rotation(f)
    n = len(f)
    if _np is not None and isinstance(f, _np.ndarray):
        return _np.concatenate(
            (_np.arange(k + 1, n + 1, dtype=_np.int64),
             _np.arange(1, k + 1, dtype=_np.int64)))
    return rotation(n, k)


# ---------------------------------------------------------------------------
# exposure: which codeword slots rule out which single mappings

@dataclass(frozen=True)
class ExposureRecord:
    """Slots whose rotation moves position i too far from value j.

    ``interval`` collects, as a wrapping interval, the slots g^-1(1) of the
    rotations g with |j - g(i)| above the threshold; None when no rotation
    does.
    """

    i: int
    j: int
    interval: CyclicInterval | None

    def values(self) -> tuple[int, ...]:
        return tuple(self.interval) if self.interval is not None else ()


def exposure_set(n: int, radius: int, i: int, j: int) -> ExposureRecord:
    """Interval form of the slots ruling out the mapping i -> j at the
    given threshold radius.  Needs radius >= n/2 - 1 (below that the
    interval shapes break down) and 0 <= radius, 1 <= i, j <= n.

    >>> exposure_set(7, 3, 5, 1).values()
    (6, 7, 1)
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"i, j must lie in 1..{n}")
    if radius < 0:
        raise DomainError("radius must be >= 0")
    if 2 * (radius + 1) < n:
        raise DomainError(
            f"interval form needs radius >= n/2 - 1 (n={n}, radius={radius})")
    if j <= n - radius - 1:
        return ExposureRecord(i, j, CyclicInterval(n, i + 1, i + n - radius - j))
    if j >= radius + 2:
        return ExposureRecord(i, j, CyclicInterval(n, i - j + radius + 2, i))
    return ExposureRecord(i, j, None)


@dataclass(frozen=True)
class ExposureEvidence:
    """Outcome of an exposure test with its per-slot coverage bitmap.

    ``coverage[v-1]`` is True when the rotation whose slot g^-1(1) equals v
    lies farther than the threshold from f.  ``exposed`` means every slot
    is covered, i.e. the whole code is farther than the threshold.
    """

    exposed: bool
    coverage: tuple[bool, ...]
    method: str


def is_exposed(f, radius: int) -> ExposureEvidence:
    """Whether f is farther than ``radius`` from every rotation.

    Uses the interval form of the per-mapping slot sets when it is valid
    (radius >= n/2 - 1) and falls back to direct distance checks per
    rotation otherwise; both fill identical bitmaps on the shared domain.
    """
    f = as_permutation(f)
    n = len(f)
    if n < 1:
        raise DomainError("degree must be >= 1")
    if radius < 0:
        raise DomainError("radius must be >= 0")
    covered = [False] * n
    if 2 * (radius + 1) >= n:
        for i0, j in enumerate(f):
            i = i0 + 1
            if j <= n - radius - 1:
                lo, run = i + 1, n - radius - j
            elif j >= radius + 2:
                lo, run = i - j + radius + 2, j - radius - 1
            else:
                continue
            for v in range(lo, lo + run):
                covered[(v - 1) % n] = True
        method = "intervals"
    else:
        for k in range(n):
            g = rotation(n, k)
            far = any(abs(a - b) > radius for a, b in zip(f, g))
            slot = 1 if k == 0 else n - k + 1
            covered[slot - 1] = far
        method = "direct"
    return ExposureEvidence(all(covered), tuple(covered), method)

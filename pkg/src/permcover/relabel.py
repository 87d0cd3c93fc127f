"""Relabeled rotation codes: conjugates, exhaustive scans, dihedral bounds.

Relabeling the symbols by h turns the rotation code into its conjugate
h C h^-1, which is again generated by an n-cycle.  The covering radius
then depends on the relabeling; this module scans all relabelings of a
degree, gives the exact maximum in closed form, and bounds the dihedral
variant (rotations plus reflections).
"""
from __future__ import annotations

import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import gcd, isqrt

import numpy as np

from . import cyclic, oracle
from .errors import DomainError, GuaranteeError, ResourceLimitError
from .perms import Perm, as_permutation, compose, inverse

__all__ = [
    "ScanHistogram",
    "conjugate",
    "dihedral_group",
    "dihedral_radius_bounds",
    "max_relabeling_radius",
    "max_relabeling_witness",
    "relabeled_cyclic_group",
    "scan_relabelings",
    "scan_relabelings_naive",
]

DEFAULT_SCAN_CAP = 8
LONG_RUN_SCAN_CAP = 10


def conjugate(code, h) -> tuple[Perm, ...]:
    """The code h g h^-1 for g in code, sorted for a stable identity."""
    h = as_permutation(h)
    hinv = inverse(h)
    return tuple(sorted(compose(compose(h, as_permutation(g)), hinv)
                        for g in code))


def relabeled_cyclic_group(n: int, h) -> tuple[Perm, ...]:
    """Powers of the n-cycle (h(1), h(2), ..., h(n)), sorted.

    Equals ``conjugate(cyclic_group(n).codewords, h)``.
    """
    h = as_permutation(h)
    if len(h) != n or n < 1:
        raise DomainError(f"h must be a permutation of degree {n}")
    return _cycle_word_group(h)


def _cycle_word_group(word: tuple[int, ...]) -> tuple[Perm, ...]:
    n = len(word)
    sigma = [0] * n
    for t in range(n):
        sigma[word[t] - 1] = word[(t + 1) % n]
    sigma_t = tuple(sigma)
    out = [tuple(range(1, n + 1))]
    g = sigma_t
    while g != out[0]:
        out.append(g)
        g = compose(sigma_t, g)
    if len(out) != n:
        raise GuaranteeError(f"cycle word generated {len(out)} powers, wanted {n}")
    return tuple(sorted(out))


def max_relabeling_radius(n: int) -> int:
    """Largest covering radius over all relabelings of degree n >= 3:
    n - ceil((sqrt(4n+1)-1)/2).  Coincides with the unrelabeled radius
    except at n = t(t+1), where it is one larger."""
    return cyclic.covering_radius_upper(n)


def max_relabeling_witness(n: int) -> tuple[Perm, Perm]:
    """Relabeling h and permutation f attaining the maximal radius, for
    the degrees n = t(t+1), t >= 2, where the maximum exceeds the
    unrelabeled radius.  Other degrees raise DomainError (the identity
    relabeling plus ``deep_hole`` already attains the maximum there).

    Returns (h, f) with h the transposition of 1 and 2 and f pinned so
    that its distance to the relabeled code reaches the maximum; unpinned
    values fill ascending.
    """
    t = (isqrt(4 * n + 1) - 1) // 2
    if n != t * (t + 1) or t < 2:
        raise DomainError(f"witness defined for degrees t(t+1), t >= 2; got {n}")
    a = t
    out = [0] * (n + 1)
    out[1] = 1
    out[2] = n
    out[3] = n - a + 1

    def pin(pos: int, val: int) -> None:
        if not 1 <= pos <= n or out[pos]:
            raise GuaranteeError(f"witness pin {pos} -> {val} collides")
        out[pos] = val

    for k in range(0, a - 1):
        pin(k * (k + 1) // 2 + a + 2, a - k)
    for l in range(1, a - 1):
        pin(n - a + 2 - l * (l + 1) // 2, n - a + 1 + l)
    free_vals = sorted(set(range(1, n + 1)) - set(out))
    it = iter(free_vals)
    for pos in range(1, n + 1):
        if not out[pos]:
            out[pos] = next(it)
    h = (2, 1) + tuple(range(3, n + 1))
    return h, tuple(out[1:])


# ---------------------------------------------------------------------------
# exhaustive scan over relabelings

@dataclass(frozen=True)
class ScanHistogram:
    """Covering-radius histogram over all n! relabelings h."""

    n: int
    counts: dict[int, int]

    @property
    def lmin(self) -> int:
        return min(self.counts)

    @property
    def lmax(self) -> int:
        return max(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def items(self):
        return sorted(self.counts.items())


def scan_relabelings_naive(n: int) -> ScanHistogram:
    """Reference scan: every h separately, no dedup, no early exit."""
    if n < 3:
        raise DomainError(f"scan defined for n >= 3, got {n}")
    if n > 6:
        raise ResourceLimitError("naive scan is for n <= 6; use scan_relabelings")
    counts: dict[int, int] = {}
    for h in permutations(range(1, n + 1)):
        code = relabeled_cyclic_group(n, h)
        cert = oracle.covering_radius_bruteforce(code, cap=n)
        counts[cert.radius] = counts.get(cert.radius, 0) + 1
    return ScanHistogram(n, counts)


def _coprimes(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n) if gcd(k, n) == 1) or (1,)

def _canonical_word(word: tuple[int, ...], cops: tuple[int, ...]) -> tuple[int, ...]:
    # the group generated by the cycle word is shared exactly by the words
    # of its coprime powers; each is normalized here to start at 1
    n = len(word)
    best = word
    for k in cops:
        if k == 1:
            continue
        w = tuple(word[(t * k) % n] for t in range(n))
        if w < best:
            best = w
    return best


def _representative_words(n: int):
    """Lexicographically yield one normalized cycle word per distinct
    relabeled group; each stands for n * phi(n) relabelings h."""
    cops = _coprimes(n)
    for rest in permutations(range(2, n + 1)):
        word = (1,) + rest
        if _canonical_word(word, cops) == word:
            yield word


def _group_radius(word: tuple[int, ...], upper: int) -> int:
    code = _cycle_word_group(word)
    arr = np.array(code, dtype=np.int64)
    radius, _wit = oracle._radius_scan(arr, upper)
    return int(radius)


def _write_checkpoint(path: str, counts: dict[int, int], cursor: int) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".scan-", dir=d)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(f"cursor {cursor}\n")
            for r in sorted(counts):
                fh.write(f"{r} {counts[r]}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_checkpoint(path: str) -> tuple[dict[int, int], int]:
    counts: dict[int, int] = {}
    cursor = 0
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            key, val = line.split()
            if key == "cursor":
                cursor = int(val)
            else:
                counts[int(key)] = int(val)
    return counts, cursor


def scan_relabelings(n: int, jobs: int = 1, cap: int | None = None,
                     long_run: bool = False,
                     checkpoint_path: str | None = None,
                     resume: bool = False,
                     checkpoint_every: int = 64) -> ScanHistogram:
    """Histogram of covering radii over all n! relabelings of degree n.

    The radius only depends on the generated group, so the scan visits one
    representative cycle word per group and weights it by the n * phi(n)
    relabelings producing that group; the result is identical to the naive
    per-h scan.  Each representative sweep stops early at the proven
    maximum ``max_relabeling_radius(n)``.

    Degrees up to 8 run by default (cap overridable per call or via
    PERMCOVER_CAP_N); 9 and 10 additionally need ``long_run=True``.
    ``jobs`` splits representatives across threads without changing the
    result.  With ``checkpoint_path``, progress is written as "radius
    count" lines plus a cursor, and ``resume=True`` picks up from such a
    file.
    """
    if n < 3:
        raise DomainError(f"scan defined for n >= 3, got {n}")
    if n > LONG_RUN_SCAN_CAP:
        raise ResourceLimitError(
            f"scan not supported beyond degree {LONG_RUN_SCAN_CAP}")
    if n > DEFAULT_SCAN_CAP and not long_run:
        raise ResourceLimitError(
            f"degree {n} scans take long; opt in to long runs to proceed")
    default = LONG_RUN_SCAN_CAP if long_run else DEFAULT_SCAN_CAP
    limit = oracle.effective_cap(cap, default=default)
    if n > limit:
        raise ResourceLimitError(
            f"degree {n} exceeds scan cap {limit}; pass cap= or set "
            f"PERMCOVER_CAP_N")

    counts: dict[int, int] = {}
    start = 0
    if resume:
        if not checkpoint_path:
            raise DomainError("resume needs a checkpoint_path")
        if os.path.exists(checkpoint_path):
            counts, start = _read_checkpoint(checkpoint_path)

    weight = n * len(_coprimes(n))
    upper = max_relabeling_radius(n)
    words = list(_representative_words(n))
    todo = words[start:]
    done = start
    jobs = max(1, jobs)

    def flush():
        if checkpoint_path:
            _write_checkpoint(checkpoint_path, counts, done)

    if jobs == 1:
        for word in todo:
            r = _group_radius(word, upper)
            counts[r] = counts.get(r, 0) + weight
            done += 1
            if checkpoint_path and done % checkpoint_every == 0:
                flush()
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunk = max(jobs * 8, checkpoint_every)
            for base in range(0, len(todo), chunk):
                batch = todo[base:base + chunk]
                for r in pool.map(lambda w: _group_radius(w, upper), batch):
                    counts[r] = counts.get(r, 0) + weight
                done += len(batch)
                if checkpoint_path:
                    flush()
    flush()

    total = sum(counts.values())
    if total != math.factorial(n):
        raise GuaranteeError(
            f"scan weights sum to {total}, expected {n}! = {math.factorial(n)}")
    return ScanHistogram(n, counts)


# ---------------------------------------------------------------------------
# dihedral variant

def dihedral_group(n: int) -> tuple[Perm, ...]:
    """The 2n permutations generated by the basic rotation and the
    reflection j -> n - j (n fixed), for n >= 3; sorted."""
    if n < 3:
        raise DomainError(f"dihedral group defined for n >= 3, got {n}")
    rot = cyclic.rotation(n, 1)
    refl = tuple(n - j for j in range(1, n)) + (n,)
    seen = {tuple(range(1, n + 1)), rot, refl}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for gen in (rot, refl):
                h = compose(gen, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    if len(seen) != 2 * n:
        raise GuaranteeError(f"closure found {len(seen)} elements, wanted {2 * n}")
    return tuple(sorted(seen))


def _ceil_sqrt_affine(x: int, sub: int, den: int) -> int:
    """ceil((sqrt(x) - sub)/den) for x >= sub*sub >= 0, den >= 1."""
    s = isqrt(x)
    if s * s == x:
        return -((sub - s) // den)
    # sqrt(x) irrational: floor((sqrt(x)-sub)/den) = (s-sub)//den
    return (s - sub) // den + 1


def dihedral_radius_bounds(n: int) -> tuple[int, int]:
    """(lower, upper) for the covering radius of the degree-n dihedral
    code, n >= 4.  The upper bound is the rotation-code radius; the lower
    bound is piecewise in n and matches the upper bound at n = 6."""
    if n < 4:
        raise DomainError(f"bounds defined for n >= 4, got {n}")
    upper = cyclic.covering_radius(n)
    if n <= 9:
        lower = n - _ceil_sqrt_affine(288 * n + 297, 3, 16)
    elif n <= 911:
        lower = n - _ceil_sqrt_affine(288 * n + 737, 1, 16)
    else:
        lower = n - _ceil_sqrt_affine(18 * n - 18, 0, 4)
    return lower, upper

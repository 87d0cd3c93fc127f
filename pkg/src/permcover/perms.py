"""Permutation arithmetic over one-line tuples.

A permutation of degree n is a tuple of the values 1..n, so ``f[i - 1]`` is
the image of position i.  All public interfaces are 1-based; the empty tuple
is the (unique) permutation of degree 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError, ParseError

__all__ = [
    "CyclicInterval",
    "Perm",
    "as_permutation",
    "compose",
    "format_cycles",
    "format_oneline",
    "identity",
    "inverse",
    "is_permutation",
    "linf_distance",
    "mod1",
    "parse_permutation",
    "project_positions",
    "project_values",
]

Perm = tuple

def identity(n: int) -> Perm:
    """The identity permutation of degree n >= 0."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    return tuple(range(1, n + 1))


def is_permutation(seq: Sequence[int]) -> bool:
    """True iff seq is an arrangement of 1..len(seq).

    >>> is_permutation((2, 3, 1))
    True
    >>> is_permutation((1, 1, 3))
    False
    """
    n = len(seq)
    seen = bytearray(n + 1)
    for v in seq:
        v = int(v)
        if v < 1 or v > n or seen[v]:
            return False
        seen[v] = 1
    return True


def as_permutation(seq: Iterable[int]) -> Perm:
    """Validate seq and return it as a permutation tuple."""
    t = tuple(int(v) for v in seq)
    if not is_permutation(t):
        raise DomainError(f"not a permutation of 1..{len(t)}: {t!r}")
    return t


def compose(f: Perm, g: Perm) -> Perm:
    """The composition i -> f(g(i)).

    >>> compose((2, 3, 1), (2, 1, 3))
    (3, 2, 1)
    """
    if len(f) != len(g):
        raise DimensionError(f"degree mismatch: {len(f)} vs {len(g)}")
    return tuple(f[v - 1] for v in g)


def inverse(f: Perm) -> Perm:
    """The inverse permutation.

    >>> inverse((3, 1, 2))
    (2, 3, 1)
    """
    out = [0] * len(f)
    for i, v in enumerate(f):
        out[v - 1] = i + 1
    return tuple(out)


def linf_distance(f: Perm, g: Perm) -> int:
    """max_i |f(i) - g(i)|; zero for the degree-0 permutation pair."""
    if len(f) != len(g):
        raise DimensionError(f"degree mismatch: {len(f)} vs {len(g)}")
    d = 0
    for a, b in zip(f, g):
        dv = a - b if a >= b else b - a
        if dv > d:
            d = dv
    return d


def mod1(m: int, n: int) -> int:
    """The representative of m modulo n lying in 1..n.

    >>> mod1(8, 7)
    1
    >>> mod1(7, 7)
    7
    >>> mod1(0, 5)
    5
    """
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    return (m - 1) % n + 1


@dataclass(frozen=True)
class CyclicInterval:
    """Wrapping interval of residues start..end inside 1..n, ends inclusive.

    >>> tuple(CyclicInterval(7, 6, 8))
    (6, 7, 1)
    >>> len(CyclicInterval(5, 2, 2))
    1
    """

    n: int
    start: int
    end: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"modulus must be >= 1, got {self.n}")
        # ends are normalized into 1..n so equality is representation-free
        object.__setattr__(self, "start", mod1(self.start, self.n))
        object.__setattr__(self, "end", mod1(self.end, self.n))

    def __len__(self) -> int:
        return (self.end - self.start) % self.n + 1

    def __iter__(self):
        for k in range(len(self)):
            yield mod1(self.start + k, self.n)

    def __contains__(self, j: int) -> bool:
        return (j - self.start) % self.n < len(self)


def project_positions(f: Perm, positions: Iterable[int]) -> Perm:
    """Restriction of f to a set of positions, renumbered to 1..|positions|.

    Positions are taken in ascending order and the kept values are replaced
    by their ranks, preserving relative order.

    >>> project_positions((6, 1, 3, 5, 2, 4), {3, 5, 6})
    (2, 1, 3)
    >>> project_positions((2, 1), ())
    ()
    """
    pos = sorted({int(i) for i in positions})
    n = len(f)
    if pos and (pos[0] < 1 or pos[-1] > n):
        raise DomainError(f"positions must lie in 1..{n}")
    vals = [f[i - 1] for i in pos]
    rank = {v: k + 1 for k, v in enumerate(sorted(vals))}
    return tuple(rank[v] for v in vals)


def project_values(f: Perm, values: Iterable[int]) -> Perm:
    """Restriction of f to a set of values: (f^-1 restricted to values)^-1.

    Equivalently, keep the entries of f lying in ``values`` (in position
    order) and rank them.

    >>> project_values((6, 1, 3, 5, 2, 4), {3, 5, 6})
    (3, 1, 2)
    """
    return inverse(project_positions(inverse(f), values))


# ---------------------------------------------------------------------------
# text round trip

def format_oneline(f: Perm) -> str:
    """One-line form, e.g. ``[2,3,1]``; degree 0 prints as ``[]``."""
    return "[" + ",".join(str(v) for v in f) + "]"


def format_cycles(f: Perm) -> str:
    """Disjoint-cycle form with fixed points omitted; identity is ``()``.

    Cycles start at their smallest element and are ordered by it.

    >>> format_cycles((2, 3, 1, 4, 6, 5))
    '(1,2,3)(5,6)'
    """
    n = len(f)
    seen = [False] * (n + 1)
    parts = []
    for i in range(1, n + 1):
        if seen[i] or f[i - 1] == i:
            continue
        cyc = [i]
        seen[i] = True
        j = f[i - 1]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = f[j - 1]
        parts.append("(" + ",".join(str(v) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


def _skip_ws(text: str, k: int) -> int:
    while k < len(text) and text[k].isspace():
        k += 1
    return k


def _read_int(text: str, k: int) -> tuple[int, int]:
    k = _skip_ws(text, k)
    start = k
    while k < len(text) and text[k].isdigit():
        k += 1
    if k == start:
        raise ParseError("expected an integer", start)
    return int(text[start:k]), k


def parse_permutation(text: str, n: int | None = None) -> Perm:
    """Parse one-line (``[2,3,1]``) or cycle (``(1,2,3)(4,5)``) notation.

    Whitespace is ignored.  Cycle notation needs an explicit degree n since
    fixed points are omitted; for one-line input n is an optional
    consistency check.  Malformed input raises ParseError with the
    character offset; a well-formed list that is not a permutation raises
    too (repeated or out-of-range values).
    """
    k = _skip_ws(text, 0)
    if k >= len(text):
        raise ParseError("empty input", k)
    if text[k] == "[":
        return _parse_oneline(text, k, n)
    if text[k] == "(":
        if n is None:
            raise ParseError("cycle notation requires an explicit degree n", k)
        return _parse_cycles(text, k, n)
    raise ParseError(f"expected '[' or '(', found {text[k]!r}", k)


def _parse_oneline(text: str, k: int, n: int | None) -> Perm:
    k += 1
    vals: list[int] = []
    k = _skip_ws(text, k)
    if k < len(text) and text[k] == "]":
        k += 1
    else:
        while True:
            pos_before = _skip_ws(text, k)
            v, k = _read_int(text, k)
            if vals and n is not None and len(vals) >= n:
                raise ParseError(f"more than {n} entries", pos_before)
            vals.append(v)
            k = _skip_ws(text, k)
            if k >= len(text):
                raise ParseError("unterminated one-line form, expected ']'", k)
            if text[k] == ",":
                k += 1
                continue
            if text[k] == "]":
                k += 1
                break
            raise ParseError(f"expected ',' or ']', found {text[k]!r}", k)
    k = _skip_ws(text, k)
    if k != len(text):
        raise ParseError("trailing characters after permutation", k)
    if n is not None and len(vals) != n:
        raise ParseError(f"expected degree {n}, got {len(vals)} entries", 0)
    m = len(vals)
    seen = [False] * (m + 1)
    for v in vals:
        if v < 1 or v > m:
            raise ParseError(f"value {v} outside 1..{m}", 0)
        if seen[v]:
            raise ParseError(f"value {v} repeated", 0)
        seen[v] = True
    return tuple(vals)


def _parse_cycles(text: str, k: int, n: int) -> Perm:
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    out = list(range(1, n + 1))
    used = [False] * (n + 1)
    any_cycle = False
    while True:
        k = _skip_ws(text, k)
        if k >= len(text):
            break
        if text[k] != "(":
            raise ParseError(f"expected '(', found {text[k]!r}", k)
        k += 1
        cyc: list[int] = []
        k = _skip_ws(text, k)
        if k < len(text) and text[k] == ")":
            k += 1  # "()" denotes the identity contribution
        else:
            while True:
                pos_before = _skip_ws(text, k)
                v, k = _read_int(text, k)
                if v < 1 or v > n:
                    raise ParseError(f"value {v} outside 1..{n}", pos_before)
                if used[v]:
                    raise ParseError(f"value {v} repeated across cycles", pos_before)
                used[v] = True
                cyc.append(v)
                k = _skip_ws(text, k)
                if k >= len(text):
                    raise ParseError("unterminated cycle, expected ')'", k)
                if text[k] == ",":
                    k += 1
                    continue
                if text[k] == ")":
                    k += 1
                    break
                raise ParseError(f"expected ',' or ')', found {text[k]!r}", k)
        any_cycle = True
        for t, v in enumerate(cyc):
            out[v - 1] = cyc[(t + 1) % len(cyc)]
    if not any_cycle:
        raise ParseError("empty input", k)
    return tuple(out)

"""Codes assembled from small block codes on consecutive value ranges.

Values 1..n are cut into ``floor(n/m)`` ranges of width m plus a tail of
width ``n mod m``.  A permutation belongs to the composed code when its
restriction to each value range (positions kept in order, values ranked)
lies in that range's block code.  Cardinality and covering radius follow
in closed form from the blocks, and a covering codeword for any input can
be assembled blockwise in linear time.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, log2
from typing import Iterator

from . import cyclic
from .errors import (CapabilityError, DimensionError, DomainError,
                     ResourceLimitError)
from .perms import Perm, as_permutation, identity

__all__ = [
    "BlockSpec",
    "ComposedCodeSpec",
    "KIND_CYCLIC",
    "KIND_IDENTITY",
    "KIND_EXPLICIT",
    "cardinality",
    "composed_spec",
    "covering_codeword",
    "covering_radius",
    "enumerate_codewords",
    "from_json",
    "is_codeword",
    "normalized_radius",
    "rate",
    "tail_substitution",
    "to_json",
    "value_blocks",
]

KIND_CYCLIC = "cyclic"
KIND_IDENTITY = "identity"
KIND_EXPLICIT = "explicit"


@dataclass(frozen=True)
class BlockSpec:
    """One block code: the rotations, the singleton identity, or an
    explicit list of codewords of the block's degree."""

    kind: str
    size: int
    codewords: tuple[Perm, ...] | None = None

    def __post_init__(self):
        if self.size < 0:
            raise DomainError(f"block size must be >= 0, got {self.size}")
        if self.kind == KIND_EXPLICIT:
            if not self.codewords:
                raise DomainError("explicit block needs codewords")
            words = tuple(as_permutation(g) for g in self.codewords)
            if any(len(g) != self.size for g in words):
                raise DomainError("explicit codewords must match block size")
            object.__setattr__(self, "codewords", words)
        elif self.kind in (KIND_CYCLIC, KIND_IDENTITY):
            if self.codewords is not None:
                raise DomainError(f"{self.kind} block takes no codeword list")
        else:
            raise DomainError(f"unknown block kind {self.kind!r}")

    def code(self) -> tuple[Perm, ...]:
        if self.kind == KIND_EXPLICIT:
            return self.codewords
        if self.size == 0:
            return ((),)
        if self.kind == KIND_IDENTITY:
            return (identity(self.size),)
        return cyclic.cyclic_group(self.size).codewords

    def block_cardinality(self) -> int:
        if self.kind == KIND_EXPLICIT:
            return len(self.codewords)
        if self.kind == KIND_IDENTITY or self.size == 0:
            return 1
        return self.size

    def block_radius(self) -> int:
        """Covering radius of the block code inside its own degree."""
        if self.size <= 1:
            return 0
        if self.kind == KIND_CYCLIC:
            return cyclic.covering_radius(self.size)
        if self.kind == KIND_IDENTITY:
            return self.size - 1
        from .oracle import covering_radius_bruteforce
        return covering_radius_bruteforce(self.codewords).radius

    def covers(self, p: Perm) -> bool:
        if self.kind == KIND_CYCLIC:
            if self.size == 0:
                return p == ()
            return p in cyclic.cyclic_group(self.size)
        if self.kind == KIND_IDENTITY:
            return p == identity(self.size)
        return p in self.codewords


def value_blocks(n: int, m: int) -> tuple[tuple[int, int], ...]:
    """Inclusive value ranges (lo, hi): floor(n/m) of width m, then the
    tail of width n mod m when nonzero.

    >>> value_blocks(5, 3)
    ((1, 3), (4, 5))
    >>> value_blocks(6, 3)
    ((1, 3), (4, 6))
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if not 1 <= m <= n:
        raise DomainError(f"block width must lie in 1..{n}, got {m}")
    out = [(i * m + 1, (i + 1) * m) for i in range(n // m)]
    if n % m:
        out.append(((n // m) * m + 1, n))
    return tuple(out)


@dataclass(frozen=True)
class ComposedCodeSpec:
    """Degree, block width, and the block-code kind for head and tail."""

    n: int
    m: int
    head_kind: str = KIND_CYCLIC
    tail_kind: str = KIND_CYCLIC

    def __post_init__(self):
        value_blocks(self.n, self.m)  # validates n, m
        for kind in (self.head_kind, self.tail_kind):
            if kind not in (KIND_CYCLIC, KIND_IDENTITY):
                raise CapabilityError(
                    f"composed specs take {KIND_CYCLIC!r} or {KIND_IDENTITY!r}"
                    f" blocks, got {kind!r}")

    @property
    def tail_size(self) -> int:
        return self.n % self.m

    def blocks(self) -> tuple[BlockSpec, ...]:
        out = [BlockSpec(self.head_kind, self.m) for _ in range(self.n // self.m)]
        if self.tail_size:
            out.append(BlockSpec(self.tail_kind, self.tail_size))
        return tuple(out)


def composed_spec(n: int, m: int, head_kind: str = KIND_CYCLIC,
                  tail_kind: str = KIND_CYCLIC) -> ComposedCodeSpec:
    return ComposedCodeSpec(n, m, head_kind, tail_kind)


def _block_ranges(spec: ComposedCodeSpec):
    return zip(value_blocks(spec.n, spec.m), spec.blocks())


def is_codeword(f, spec: ComposedCodeSpec) -> bool:
    """Membership: every value-range restriction lies in its block code."""
    f = as_permutation(f)
    if len(f) != spec.n:
        raise DimensionError(f"expected degree {spec.n}, got {len(f)}")
    for (lo, hi), block in _block_ranges(spec):
        # contiguous ranges make ranking a plain shift by lo - 1
        p = tuple(v - lo + 1 for v in f if lo <= v <= hi)
        if not block.covers(p):
            return False
    return True


def cardinality(spec: ComposedCodeSpec) -> int:
    """Exact codeword count: multinomial placement times block choices."""
    t = spec.n // spec.m
    total = factorial(spec.n) // (factorial(spec.m) ** t * factorial(spec.tail_size))
    for block in spec.blocks():
        total *= block.block_cardinality()
    return total


def covering_radius(spec: ComposedCodeSpec) -> int:
    """Exact covering radius: the worst block radius."""
    return max(block.block_radius() for block in spec.blocks())


def covering_codeword(f, spec: ComposedCodeSpec) -> Perm:
    """A codeword within the covering radius of f, assembled blockwise.

    For each value range, the positions holding those values keep them as
    a range permutation; a block codeword covering that pattern is placed
    back on the same positions.  Runs in time linear in n for the built-in
    block kinds.
    """
    f = as_permutation(f)
    if len(f) != spec.n:
        raise DimensionError(f"degree mismatch: {len(f)} vs {spec.n}")
    out = [0] * spec.n
    for (lo, hi), block in _block_ranges(spec):
        pos = [i for i, v in enumerate(f) if lo <= v <= hi]
        p = tuple(f[i] - lo + 1 for i in pos)
        if block.kind == KIND_CYCLIC:
            q = cyclic.covering_codeword(p) if p else ()
        elif block.kind == KIND_IDENTITY:
            q = identity(block.size)
        else:
            raise CapabilityError(f"no covering search for {block.kind!r} blocks")
        for i, qv in zip(pos, q):
            out[i] = lo - 1 + qv
    return tuple(out)


def enumerate_codewords(spec: ComposedCodeSpec, cap: int = 10_000_000) -> Iterator[Perm]:
    """Yield every codeword (position sets in combination order, then block
    codewords); refuses upfront when the count exceeds ``cap``."""
    total = cardinality(spec)
    if total > cap:
        raise ResourceLimitError(f"{total} codewords exceed cap {cap}")
    ranges = list(_block_ranges(spec))

    def rec(free: tuple[int, ...], k: int, out: list[int]) -> Iterator[Perm]:
        if k == len(ranges):
            yield tuple(out)
            return
        (lo, _hi), block = ranges[k]
        size = block.size
        for pos in combinations(free, size):
            rest = tuple(i for i in free if i not in pos)
            for q in block.code():
                for i, qv in zip(pos, q):
                    out[i] = lo - 1 + qv
                yield from rec(rest, k + 1, out)

    yield from rec(tuple(range(spec.n)), 0, [0] * spec.n)


def rate(spec: ComposedCodeSpec) -> float:
    """log2(cardinality) / n, exact bit-length arithmetic for huge counts."""
    return _log2_int(cardinality(spec)) / spec.n


def _log2_int(x: int) -> float:
    if x < 1:
        raise DomainError("log2 needs a positive integer")
    bl = x.bit_length()
    if bl <= 53:
        return log2(x)
    shift = bl - 53
    return log2(x >> shift) + shift


def normalized_radius(spec: ComposedCodeSpec) -> Fraction:
    """Covering radius over n - 1, as an exact fraction; degree >= 2."""
    if spec.n < 2:
        raise DomainError("normalized radius needs degree >= 2")
    return Fraction(covering_radius(spec), spec.n - 1)


def tail_substitution(spec: ComposedCodeSpec) -> ComposedCodeSpec:
    """Swap a cyclic tail for the singleton identity when that cannot raise
    the covering radius, i.e. when (n mod m) - 1 is at most the head block
    radius.  Cardinality divides by n mod m; radius is unchanged.  Specs
    without that opportunity come back unchanged."""
    tail = spec.tail_size
    if tail == 0 or spec.tail_kind != KIND_CYCLIC:
        return spec
    head_radius = max(
        (b.block_radius() for b in spec.blocks()[:-1]), default=0)
    if tail - 1 > head_radius:
        return spec
    return ComposedCodeSpec(spec.n, spec.m, spec.head_kind, KIND_IDENTITY)


def to_json(spec: ComposedCodeSpec) -> str:
    return json.dumps({
        "n": spec.n,
        "m": spec.m,
        "head_kind": spec.head_kind,
        "tail_kind": spec.tail_kind,
    })


def from_json(text: str) -> ComposedCodeSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad spec JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DomainError("spec JSON must be an object")
    try:
        n = int(obj["n"])
        m = int(obj["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError("spec JSON needs integer n and m") from exc
    return ComposedCodeSpec(
        n, m,
        str(obj.get("head_kind", KIND_CYCLIC)),
        str(obj.get("tail_kind", KIND_CYCLIC)))

import itertools
import json
import math

import numpy as np
import pytest

from permcover import composed, cyclic, oracle
from permcover.composed import (KIND_CYCLIC, KIND_IDENTITY, ComposedCodeSpec,
                                cardinality, covering_codeword,
                                covering_radius, enumerate_codewords,
                                is_codeword, normalized_radius, rate,
                                tail_substitution, value_blocks)
from permcover.errors import (CapabilityError, DimensionError, DomainError,
                              ResourceLimitError)
from permcover.perms import linf_distance

PAIRS = [(4, 2), (5, 3), (6, 2), (6, 3), (7, 3), (7, 5)]


def test_value_blocks():
    assert value_blocks(5, 3) == ((1, 3), (4, 5))
    assert value_blocks(6, 3) == ((1, 3), (4, 6))
    assert value_blocks(7, 7) == ((1, 7),)
    assert value_blocks(7, 2) == ((1, 2), (3, 4), (5, 6), (7, 7))
    with pytest.raises(DomainError):
        value_blocks(3, 4)
    with pytest.raises(DomainError):
        value_blocks(3, 0)


def test_membership_examples():
    spec = ComposedCodeSpec(5, 3)
    assert is_codeword((1, 2, 3, 4, 5), spec)
    assert is_codeword((2, 3, 1, 5, 4), spec)
    assert not is_codeword((2, 1, 3, 4, 5), spec)
    with pytest.raises(DimensionError):
        is_codeword((1, 2, 3), spec)


def test_membership_agrees_with_enumeration():
    for n, m in PAIRS:
        spec = ComposedCodeSpec(n, m)
        listed = set(enumerate_codewords(spec))
        direct = {f for f in itertools.permutations(range(1, n + 1))
                  if is_codeword(f, spec)}
        assert listed == direct, (n, m)


def test_cardinality_formula_matches_enumeration():
    for n, m in PAIRS:
        spec = ComposedCodeSpec(n, m)
        words = list(enumerate_codewords(spec))
        assert len(words) == cardinality(spec), (n, m)
        assert len(set(words)) == len(words)
    assert cardinality(ComposedCodeSpec(5, 3)) == 60
    assert cardinality(ComposedCodeSpec(6, 3)) == 180
    assert cardinality(ComposedCodeSpec(7, 3)) == 1260
    assert cardinality(ComposedCodeSpec(7, 5)) == 210
    # single block of full width: the code is the rotation code itself
    assert cardinality(ComposedCodeSpec(6, 6)) == 6
    assert set(enumerate_codewords(ComposedCodeSpec(6, 6))) == \
        set(cyclic.cyclic_group(6).codewords)


def test_block_width_one_gives_whole_space():
    spec = ComposedCodeSpec(4, 1)
    assert cardinality(spec) == math.factorial(4)
    assert covering_radius(spec) == 0


def test_covering_radius_formula():
    assert covering_radius(ComposedCodeSpec(5, 3)) == 1
    assert covering_radius(ComposedCodeSpec(6, 3)) == 1
    assert covering_radius(ComposedCodeSpec(7, 3)) == 1
    assert covering_radius(ComposedCodeSpec(7, 5)) == 3
    assert covering_radius(ComposedCodeSpec(4, 2)) == 0
    assert covering_radius(ComposedCodeSpec(12, 4)) == cyclic.covering_radius(4)


def test_guaranteed_radius_upper_bounds_true_radius():
    # the constructed radius is a certified upper bound; for (7,5) the
    # interleaving slack makes the true radius strictly smaller
    for n, m in PAIRS:
        spec = ComposedCodeSpec(n, m)
        cert = oracle.covering_radius_bruteforce(list(enumerate_codewords(spec)))
        assert cert.radius <= covering_radius(spec), (n, m)
    spec75 = ComposedCodeSpec(7, 5)
    cert75 = oracle.covering_radius_bruteforce(list(enumerate_codewords(spec75)))
    assert cert75.radius == 2
    assert covering_radius(spec75) == 3


def test_covering_codeword_exhaustive_small():
    for n, m in ((4, 2), (5, 3), (6, 3)):
        spec = ComposedCodeSpec(n, m)
        r = covering_radius(spec)
        for f in itertools.permutations(range(1, n + 1)):
            g = covering_codeword(f, spec)
            assert is_codeword(g, spec)
            assert linf_distance(f, g) <= r, (n, m, f, g)


def test_covering_codeword_randomized_large():
    rng = np.random.default_rng(31337)
    for n in (100, 1000):
        m = int(math.isqrt(n))
        spec = ComposedCodeSpec(n, m)
        r = covering_radius(spec)
        for _ in range(100):
            f = tuple(int(v) for v in rng.permutation(n) + 1)
            g = covering_codeword(f, spec)
            assert is_codeword(g, spec)
            assert linf_distance(f, g) <= r


def test_covering_codeword_identity_blocks():
    spec = ComposedCodeSpec(6, 3, KIND_IDENTITY, KIND_IDENTITY)
    r = covering_radius(spec)
    assert r == 2  # identity block of width 3 has radius 2
    for f in itertools.permutations(range(1, 7)):
        g = covering_codeword(f, spec)
        assert is_codeword(g, spec)
        assert linf_distance(f, g) <= r


def test_tail_substitution():
    spec = ComposedCodeSpec(7, 5)
    sub = tail_substitution(spec)
    assert sub.tail_kind == KIND_IDENTITY
    assert cardinality(sub) * 2 == cardinality(spec)
    assert covering_radius(sub) == covering_radius(spec) == 3
    # the substituted code even attains the bound exactly
    cert = oracle.covering_radius_bruteforce(list(enumerate_codewords(sub)))
    assert cert.radius == 3
    # (5,3) drops 60 -> 30
    sub53 = tail_substitution(ComposedCodeSpec(5, 3))
    assert cardinality(sub53) == 30
    # aligned tail: nothing to do
    spec63 = ComposedCodeSpec(6, 3)
    assert tail_substitution(spec63) is spec63
    # tail too wide for the head radius: unchanged
    wide = ComposedCodeSpec(9, 4)  # tail 1, (1-1)=0 <= r(G_4): substituted
    assert tail_substitution(wide).tail_kind == KIND_IDENTITY


def test_rate_and_normalized_radius():
    spec = ComposedCodeSpec(5, 3)
    assert abs(rate(spec) - math.log2(60) / 5) < 1e-12
    assert normalized_radius(spec) == 0.25
    single = ComposedCodeSpec(6, 6)
    assert abs(rate(single) - math.log2(6) / 6) < 1e-12
    with pytest.raises(DomainError):
        normalized_radius(ComposedCodeSpec(1, 1))


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        list(enumerate_codewords(ComposedCodeSpec(40, 5)))


def test_explicit_kind_rejected_for_spec_codes():
    with pytest.raises(CapabilityError):
        ComposedCodeSpec(6, 3, "explicit", KIND_CYCLIC)


def test_json_round_trip():
    spec = ComposedCodeSpec(7, 5, KIND_CYCLIC, KIND_IDENTITY)
    text = composed.to_json(spec)
    back = composed.from_json(text)
    assert back == spec
    payload = json.loads(text)
    assert payload["n"] == 7 and payload["m"] == 5

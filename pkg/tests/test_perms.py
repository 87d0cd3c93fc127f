import random

import pytest

from permcover.errors import DimensionError, DomainError, ParseError
from permcover.perms import (CyclicInterval, as_permutation, compose,
                             format_cycles, format_oneline, identity, inverse,
                             is_permutation, linf_distance, mod1,
                             parse_permutation, project_positions,
                             project_values)


def test_identity_and_validation():
    assert identity(0) == ()
    assert identity(4) == (1, 2, 3, 4)
    assert is_permutation((2, 1, 3))
    assert not is_permutation((1, 1, 2))
    assert not is_permutation((0, 1, 2))
    assert not is_permutation((1, 2, 4))
    assert as_permutation([3, 1, 2]) == (3, 1, 2)
    with pytest.raises(DomainError):
        as_permutation([1, 1])


def test_compose_inverse_round_trip():
    rng = random.Random(11)
    for n in range(1, 9):
        for _ in range(20):
            vals = list(range(1, n + 1))
            rng.shuffle(vals)
            f = tuple(vals)
            assert compose(f, inverse(f)) == identity(n)
            assert compose(inverse(f), f) == identity(n)
    with pytest.raises(DimensionError):
        compose((1, 2), (1, 2, 3))


def test_linf_distance_basic():
    assert linf_distance((1, 2, 3), (1, 2, 3)) == 0
    assert linf_distance((1, 2, 3), (3, 2, 1)) == 2
    assert linf_distance((), ()) == 0
    with pytest.raises(DimensionError):
        linf_distance((1,), (1, 2))


def test_right_invariance_seeded():
    rng = random.Random(20260822)
    for n in range(3, 11):
        base = list(range(1, n + 1))
        for _ in range(200):
            f = tuple(rng.sample(base, n))
            g = tuple(rng.sample(base, n))
            h = tuple(rng.sample(base, n))
            assert linf_distance(compose(f, h), compose(g, h)) == \
                linf_distance(f, g)


def test_mod1_wraps_into_one_based_range():
    assert [mod1(i, 5) for i in range(-4, 12)] == [
        1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1]


def test_cyclic_interval():
    iv = CyclicInterval(7, 6, 8)
    assert tuple(iv) == (6, 7, 1)
    assert len(iv) == 3
    assert 7 in iv and 2 not in iv
    full = CyclicInterval(5, 3, 2)
    assert len(full) == 5
    assert tuple(full) == (3, 4, 5, 1, 2)
    single = CyclicInterval(4, 2, 2)
    assert tuple(single) == (2,)


def test_projections_match_worked_example():
    f = (6, 1, 3, 5, 2, 4)
    assert project_positions(f, {3, 5, 6}) == (2, 1, 3)
    assert project_values(f, {3, 5, 6}) == (3, 1, 2)
    assert project_positions(f, set()) == ()
    assert project_values(f, set()) == ()
    with pytest.raises(DomainError):
        project_positions(f, {0, 1})


def test_projection_duality_exhaustive_small():
    import itertools
    for f in itertools.permutations(range(1, 6)):
        for vals in ({1, 2}, {2, 4, 5}, {1, 3, 5}):
            via_dual = project_values(f, vals)
            inv = inverse(f)
            assert via_dual == inverse(project_positions(inv, vals))


def test_format_and_parse_oneline_round_trip():
    rng = random.Random(3)
    for n in range(1, 10):
        vals = list(range(1, n + 1))
        rng.shuffle(vals)
        f = tuple(vals)
        assert parse_permutation(format_oneline(f)) == f
        assert parse_permutation(format_oneline(f), n) == f


def test_format_and_parse_cycles_round_trip():
    rng = random.Random(4)
    for n in range(1, 10):
        vals = list(range(1, n + 1))
        rng.shuffle(vals)
        f = tuple(vals)
        assert parse_permutation(format_cycles(f), n) == f
    assert format_cycles(identity(3)) == "()"
    assert parse_permutation("()", 4) == identity(4)


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as exc:
        parse_permutation("[1,2,x]")
    assert exc.value.position is not None
    assert "offset" in str(exc.value)
    with pytest.raises(ParseError):
        parse_permutation("[1,2,2]")
    with pytest.raises(ParseError):
        parse_permutation("[1,3]")
    with pytest.raises(ParseError):
        parse_permutation("(1,2)(2,3)", 4)
    with pytest.raises(ParseError):
        parse_permutation("(1,2)")  # cycle text needs explicit n
    with pytest.raises(ParseError):
        parse_permutation("[1,2,3", 3)
    with pytest.raises(ParseError):
        parse_permutation("[1,2]", 3)

import random

import pytest
from hypothesis import given, settings, strategies as st

from hered.quiver import (
    ParseError,
    PresentationError,
    delta_left,
    delta_left_m,
    delta_right,
    enumerate_basis,
    left_m,
    linear_quiver,
    linear_truncated,
    occurrences,
    parse_presentation,
    path_divides,
    random_presentation,
    right_m,
    truncated_presentation,
)

A3 = "vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation b a\n"


def test_parse_a3_with_one_relation():
    pres = parse_presentation(A3)
    q = pres.quiver
    assert (len(q.vertices), len(q.arrows), len(pres.relations)) == (3, 2, 1)
    (r,) = pres.relations
    assert q.name(r) == "b a" and r.source == 0 and r.target == 2


def test_parse_rejects_dangling_arrow():
    with pytest.raises(ParseError, match="unknown arrow"):
        parse_presentation(A3 + "relation c b a\n")


def test_parse_rejects_short_relation():
    with pytest.raises(PresentationError, match="length < 2"):
        parse_presentation(A3.replace("relation b a", "relation a"))


def test_parse_rejects_non_minimal_relations():
    text = "vertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\nrelation b a\nrelation c b a\n"
    with pytest.raises(PresentationError, match="not minimal"):
        parse_presentation(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_presentation("vertices 1 2\narrow a 1 -> 2\n")
    assert info.value.line == 2


def test_parse_rejects_undeclared_vertex():
    with pytest.raises(ParseError, match="undeclared vertex"):
        parse_presentation("vertices 1 2\narrow a: 1 -> 3\n")


def test_parse_rejects_non_composable_relation():
    with pytest.raises(ParseError):
        parse_presentation("vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a b\n")


def test_serialize_round_trip(star96):
    again = parse_presentation(star96.serialize())
    assert again.serialize() == star96.serialize()


def test_star96_counts(star96):
    q = star96.quiver
    assert (len(q.vertices), len(q.arrows), len(star96.relations)) == (16, 15, 18)


def test_path_division():
    q = linear_quiver(5)
    ba = q.path(["a2", "a1"])
    assert path_divides(q, q.path(["a1"]), ba) == (q.path(["a2"]), q.trivial(0))
    left, right = path_divides(q, ba, ba)
    assert left == q.trivial(2) and right == q.trivial(0)
    cbad = q.path(["a4", "a3", "a2", "a1"])
    mid = q.path(["a3", "a2"])
    assert path_divides(q, mid, cbad) == (q.path(["a4"]), q.path(["a1"]))
    assert path_divides(q, q.path(["a4"]), ba) is None


def test_occurrences_lists_every_position():
    from hered.quiver import Quiver

    q = Quiver(["1"], [("x", 0, 0)])
    xxx = q.path(["x", "x", "x"])
    assert len(occurrences(q, q.path(["x"]), xxx)) == 3


def test_deltas():
    q = linear_quiver(3)
    a, b = q.path(["a1"]), q.path(["a2"])
    ba = q.path(["a2", "a1"])
    assert delta_left(b, ba) == a
    assert delta_right(a, ba) == b
    assert delta_left(a, ba) is None


def test_truncations():
    q = linear_quiver(4)
    p = q.path(["a3", "a2", "a1"])
    assert left_m(q, 1, p) == q.path(["a3"])
    assert right_m(q, 2, p) == q.path(["a2", "a1"])
    assert delta_left_m(q, 3, p) is None
    with pytest.raises(ValueError):
        left_m(q, 4, p)


def test_truncated_basis_dimension():
    # paths of length < l in linear A_m
    for m, ell in [(5, 2), (5, 3), (7, 3)]:
        basis = enumerate_basis(linear_truncated(m, ell))
        assert basis.dimension == sum(m - k for k in range(ell))


def test_infinite_algebra_detected():
    text = "vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 1\narrow c: 2 -> 3\nrelation c a\n"
    basis = enumerate_basis(parse_presentation(text))
    assert not basis.finite and basis.witness is not None
    # a b a = 0 kills every path through four arrows of the 2-cycle
    finite = parse_presentation("vertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a b a\n")
    assert enumerate_basis(finite).dimension == 7


def test_truncated_presentation_of_cycle_kills_all_long_paths():
    from hered.quiver import Quiver

    q = Quiver(["1", "2"], [("a", 0, 1), ("b", 1, 0)])
    pres = truncated_presentation(q, 2)
    assert len(pres.relations) == 2
    assert enumerate_basis(pres).dimension == 4


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_presentations_are_minimal_and_connected(seed):
    pres = random_presentation(random.Random(seed))
    assert pres.quiver._is_connected()
    for r in pres.relations:
        assert len(r) >= 2
        assert not any(s is not r and path_divides(pres.quiver, s, r) for s in pres.relations)
    assert all(pres.is_zero(r) for r in pres.relations)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypertrans.core import WedgeParts
from hypertrans.interaction import (
    COVERAGE,
    PENALIZED,
    ScoreFunction,
    check_goodness,
    custom_score,
    f_coverage,
    f_penalized,
    score_function,
)


@st.composite
def wedge_and_edge(draw):
    nodes = draw(st.permutations(range(16)))
    nl, nr, nb = draw(st.integers(1, 5)), draw(st.integers(1, 5)), draw(st.integers(1, 3))
    left, right, body = nodes[:nl], nodes[nl : nl + nr], nodes[nl + nr : nl + nr + nb]
    parts = WedgeParts.from_edges(set(left) | set(body), set(right) | set(body))
    e = draw(st.sets(st.sampled_from(range(16)), min_size=1, max_size=10))
    return parts, frozenset(e)


def test_coverage_fixture(fixture_parts, E):
    assert f_coverage(fixture_parts, E["e3"]) == pytest.approx(1 / 4, abs=1e-12)
    assert f_coverage(fixture_parts, {1, 2, 4, 5}) == 1.0
    assert f_coverage(fixture_parts, E["e1"]) == 0.0


def test_penalized_fixture(fixture_parts, E):
    assert f_penalized(fixture_parts, E["e8"]) == pytest.approx(1 / 2, abs=1e-12)
    assert f_penalized(fixture_parts, {1, 2, 4, 5}) == 1.0
    assert f_penalized(fixture_parts, E["e12"]) == pytest.approx(2 / 9, abs=1e-12)


@given(wedge_and_edge())
def test_penalized_never_exceeds_coverage(pe):
    parts, e = pe
    assert 0.0 <= f_penalized(parts, e) <= f_coverage(parts, e) <= 1.0


@given(wedge_and_edge())
def test_penalized_is_one_exactly_on_the_wings(pe):
    parts, e = pe
    assert (f_penalized(parts, e) == 1.0) == (e == parts.wings)
    assert f_penalized(parts, parts.wings) == 1.0


@given(wedge_and_edge())
def test_overlapping_edges_score_positive(pe):
    parts, e = pe
    if parts.is_overlapping(e):
        assert f_coverage(parts, e) > 0 and f_penalized(parts, e) > 0


@given(wedge_and_edge(), st.randoms(use_true_random=False))
def test_growing_with_wing_nodes(pe, r):
    parts, e = pe
    extra = [v for v in parts.wings if v not in e]
    if not extra:
        return
    grown = e | set(r.sample(extra, r.randint(1, len(extra))))
    for f in (f_coverage, f_penalized):
        assert f(parts, e) <= f(parts, grown)
        if parts.is_overlapping(grown):
            assert f(parts, e) < f(parts, grown)


@given(wedge_and_edge())
def test_symmetric_in_wings(pe):
    parts, e = pe
    for f in (f_coverage, f_penalized):
        assert f(parts, e) == f(parts.swapped(), e)


def test_score_function_lookup():
    assert score_function("penalized") is PENALIZED
    assert score_function("Coverage") is COVERAGE
    assert score_function(PENALIZED) is PENALIZED
    with pytest.raises(ValueError):
        score_function("jaccard")


@pytest.mark.parametrize("f", [PENALIZED, COVERAGE])
def test_builtins_are_good(f):
    rep = check_goodness(f, trials=2000, seed=1)
    assert rep.all_pass, rep.to_dict()
    assert rep.failed == []


def test_constant_half_fails_property_four():
    rep = check_goodness(_const(0.5), trials=500)
    assert rep.failed == [4, 6]  # a constant can never be one on the wings or strictly grow
    cex = rep.verdicts[4].counterexample
    assert cex.e == cex.parts.wings
    assert cex.replay(score_function(PENALIZED)) is False
    assert cex.replay(_const(0.5))


def _const(c):
    return ScoreFunction("custom", lambda parts, e: c, f"const{c}")


def test_constant_two_fails_property_one():
    rep = check_goodness(_const(2.0), trials=500)
    assert 1 in rep.failed
    assert rep.verdicts[1].counterexample.replay(_const(2.0))


def test_goodness_is_deterministic():
    a = check_goodness(_const(0.5), trials=300, seed=4).to_dict()
    b = check_goodness(_const(0.5), trials=300, seed=4).to_dict()
    assert a == b


def test_custom_score_gate():
    with pytest.warns(UserWarning):
        bad = custom_score(lambda parts, e: 0.5, name="half", trials=200)
    assert bad.good is False
    good = custom_score(f_penalized, name="pen-copy", trials=200)
    assert good.good is True and not good.builtin


def test_goodness_samplers_honor_hypotheses():
    # every counterexample reported for a function failing everything must satisfy its hypothesis
    rep = check_goodness(lambda parts, e: random.Random(len(e)).random() * 3, trials=200)
    for p in rep.failed:
        c = rep.verdicts[p].counterexample
        if p == 2:
            assert c.parts.is_overlapping(c.e)
        if p == 4:
            assert c.e == c.parts.wings
        if p in (5, 6):
            assert c.e <= c.e_prime <= c.e | c.parts.wings
        if p == 6:
            assert c.e != c.e_prime and c.parts.is_overlapping(c.e_prime)

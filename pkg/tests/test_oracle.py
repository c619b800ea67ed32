import itertools

import pytest

from insitu import Alphabet, Mapping, component_permutation, permutation_length_bound
from insitu.oracle import (
    BudgetExceeded,
    SuiteReport,
    exhaustive_suite,
    full_universe,
    linear_universe,
    min_length_bfs,
)


def test_universe_sizes():
    a = Alphabet(2, 2)
    assert len(full_universe(a)) == 2 * 2 ** 4
    assert len(linear_universe(a)) == 2 * 4
    with pytest.raises(BudgetExceeded):
        full_universe(Alphabet(2, 4))


def test_identity_needs_no_steps():
    a = Alphabet(2, 2)
    assert min_length_bfs(Mapping.identity(a), 3) == 0


def test_swap_needs_three_steps():
    a = Alphabet(2, 2)
    swap = component_permutation((2, 1), a)
    assert min_length_bfs(swap, 5) == 3
    assert min_length_bfs(swap, 2) is None
    # the lower bound n - fixed + cycles is met with equality here
    assert permutation_length_bound((2, 1)) == 3


def test_component_permutations_meet_lower_bound():
    a = Alphabet(2, 2)
    for perm in itertools.permutations((1, 2)):
        e = component_permutation(perm, a)
        assert min_length_bfs(e, 5) == permutation_length_bound(perm)


def test_three_cycle_over_linear_universe():
    # rotating three boolean components linearly takes exactly 4 steps
    a = Alphabet(2, 3)
    e = component_permutation((2, 3, 1), a)
    uni = linear_universe(a)
    assert min_length_bfs(e, 3, universe=uni) is None
    assert min_length_bfs(e, 4, universe=uni) == 4


def test_state_budget():
    a = Alphabet(2, 2)
    swap = component_permutation((2, 1), a)
    with pytest.raises(BudgetExceeded):
        min_length_bfs(swap, 3, max_states=5)


def test_unreachable_returns_none():
    # a non-linear mapping is outside the closure of linear assignments
    a = Alphabet(2, 2)
    e = Mapping(a, (0, 1, 2, 0))
    assert min_length_bfs(e, 4, universe=linear_universe(a)) is None


def test_suite_all_boolean_bijections():
    report = exhaustive_suite(Alphabet(2, 2), "benes")
    assert report.ok
    assert report.total == 24
    assert report.max_length == 3
    assert sum(c for _, c in report.length_counts) == 24


def test_suite_all_boolean_mappings():
    report = exhaustive_suite(Alphabet(2, 2), "general4-sorted")
    assert report.ok
    assert report.total == 256
    assert report.max_length <= 5


def test_suite_sampled():
    report = exhaustive_suite(Alphabet(2, 3), "general5", sample=40, seed=7)
    assert report.ok
    assert report.total == 40
    assert report.max_length <= 11
    again = exhaustive_suite(Alphabet(2, 3), "general5", sample=40, seed=7)
    assert again == report


def test_suite_linear():
    report = exhaustive_suite(Alphabet(12, 2), "linear", sample=50, seed=3)
    assert report.ok
    assert report.total == 50
    assert report.max_length <= 3


def test_suite_workers_agree():
    solo = exhaustive_suite(Alphabet(2, 2), "general4-flex", workers=1)
    multi = exhaustive_suite(Alphabet(2, 2), "general4-flex", workers=4)
    assert solo == multi


def test_suite_requires_sample_on_big_universes():
    with pytest.raises(ValueError):
        exhaustive_suite(Alphabet(2, 3), "benes")
    with pytest.raises(ValueError):
        exhaustive_suite(Alphabet(2, 3), "general4-sorted")
    with pytest.raises(ValueError):
        exhaustive_suite(Alphabet(2, 2), "sorting-network")


def test_suite_report_text():
    report = SuiteReport("benes", 2, 2, 24, (), ((3, 24),))
    text = report.to_text()
    assert "compiler=benes" in text
    assert "total=24" in text
    assert "failures=0" in text
    assert "max_length=3" in text
    assert "length_3=24" in text
    bad = SuiteReport("benes", 2, 2, 1, ("mapping (0, 1, 2, 3): boom",), ((3, 1),))
    assert not bad.ok
    assert "failure=mapping (0, 1, 2, 3): boom" in bad.to_text()

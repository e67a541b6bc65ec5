"""Closed-form predictions versus computed multiplier images."""

import pytest

from lpres.conjectures import minimum_class, predicted_dwyer
from lpres.lattices import AbelianInvariants
from lpres.multiplier import dwyer_range
from lpres.presentations import load_catalog


def test_grigorchuk_ranks():
    ranks = [predicted_dwyer("grigorchuk", c).rank() for c in range(1, 12)]
    assert ranks == [1, 2, 3, 3, 3, 5, 5, 5, 5, 5, 5]
    assert all(predicted_dwyer("grigorchuk", c).elementary_exponent() == 2 for c in range(2, 12))


def test_twisted_twin_ranks():
    ranks = [predicted_dwyer("twisted_twin", c).rank() for c in range(1, 8)]
    assert ranks == [2, 5, 7, 8, 8, 11, 11]


def test_supergroup_ranks():
    ranks = [predicted_dwyer("grigorchuk_supergroup", c).rank() for c in range(1, 6)]
    assert ranks == [3, 6, 7, 9, 9]


def test_basilica_invariants():
    expect = [
        AbelianInvariants(2, ()),
        AbelianInvariants(2, ()),
        AbelianInvariants(2, ()),
        AbelianInvariants(2, ()),
        AbelianInvariants(2, (4,)),
        AbelianInvariants(2, (4,)),
        AbelianInvariants(2, (16,)),
    ]
    assert [predicted_dwyer("basilica", c) for c in range(2, 9)] == expect


def test_bsv_invariants():
    expect = [
        AbelianInvariants(2, ()),
        AbelianInvariants(2, ()),
        AbelianInvariants(2, (2,)),
        AbelianInvariants(2, (2, 2)),
        AbelianInvariants(2, (4, 8)),
    ]
    assert [predicted_dwyer("bsv", c) for c in range(2, 7)] == expect


def test_torsion_is_a_divisor_chain():
    for name in ("basilica", "bsv"):
        for c in range(minimum_class(name), 40):
            torsion = predicted_dwyer(name, c).torsion
            for a, b in zip(torsion, torsion[1:]):
                assert b % a == 0


def test_predictions_track_growth():
    # Orders never drop along the filtration; ranks never drop either.
    for name in ("grigorchuk", "twisted_twin", "grigorchuk_supergroup"):
        ranks = [predicted_dwyer(name, c).rank() for c in range(1, 40)]
        assert all(a <= b for a, b in zip(ranks, ranks[1:]))


@pytest.mark.parametrize(
    "name, cmax",
    [("grigorchuk", 7), ("twisted_twin", 5), ("grigorchuk_supergroup", 5)],
)
def test_elementary_groups_match_computation(name, cmax):
    steps = dwyer_range(load_catalog(name), cmax)
    for step in steps:
        assert predicted_dwyer(name, step.nclass) == step.invariants


@pytest.mark.parametrize("name, cmax", [("basilica", 7), ("bsv", 6)])
def test_torsion_towers_match_computation(name, cmax):
    steps = dwyer_range(load_catalog(name), cmax)
    for step in steps:
        if step.nclass >= minimum_class(name):
            assert predicted_dwyer(name, step.nclass) == step.invariants


def test_domain_errors():
    with pytest.raises(ValueError):
        predicted_dwyer("basilica", 1)
    with pytest.raises(ValueError):
        predicted_dwyer("lamplighter", 3)
    with pytest.raises(ValueError):
        minimum_class("lamplighter")

import json

import pytest

from projquad import (
    Homomorphism,
    compose_homomorphisms,
    cycle_graph,
    cycle_to_stable_sets,
    homomorphism_from_json,
    homomorphism_to_json,
    iterated_schrijver_homomorphism,
    lift_homomorphism,
    mycielskian,
    schrijver_graph,
    schrijver_homomorphism,
    verify_homomorphism,
)
from projquad.errors import BadParameters


def test_cycle_to_stable_sets():
    hom = cycle_to_stable_sets(2)
    assert hom.source == cycle_graph(5)
    assert hom.target == schrijver_graph(5, 2)
    assert verify_homomorphism(hom).ok
    assert hom(0) == (1, 3)


def test_verify_catches_broken_map():
    c5 = cycle_graph(5)
    bad = Homomorphism(c5, c5, {v: 0 for v in c5.vertices})
    rep = verify_homomorphism(bad)
    assert not rep.ok
    assert any(v.code == "EdgeNotPreserved" for v in rep.violations)


def test_verify_catches_missing_vertex():
    c5 = cycle_graph(5)
    partial = Homomorphism(c5, c5, {0: 0})
    rep = verify_homomorphism(partial)
    assert any(v.code == "UnmappedVertex" for v in rep.violations)


def test_schrijver_homomorphism_small_values():
    hom = schrijver_homomorphism(6, 2)
    # the deepest shadow of the first base vertex, the top copy, and the apex
    assert hom(((1, 3), 2)) == (1, 3)
    assert hom(((1, 3), 1)) == (3, 6)
    assert hom("z") == (1, 5)
    assert verify_homomorphism(hom).ok


@pytest.mark.parametrize("n,k", [(6, 2), (7, 2), (8, 2), (8, 3), (9, 3)])
def test_schrijver_homomorphism_verified(n, k):
    hom = schrijver_homomorphism(n, k)
    assert hom.source == mycielskian(schrijver_graph(n - 1, k), k)
    assert hom.target == schrijver_graph(n, k)
    assert verify_homomorphism(hom).ok


def test_schrijver_homomorphism_rejects_tight_n():
    with pytest.raises(BadParameters):
        schrijver_homomorphism(4, 2)


def test_lift_homomorphism():
    base = cycle_to_stable_sets(2)
    lifted = lift_homomorphism(base, 2)
    assert lifted.source == mycielskian(cycle_graph(5), 2)
    assert lifted.target == mycielskian(schrijver_graph(5, 2), 2)
    assert verify_homomorphism(lifted).ok
    assert lifted("z") == "z"
    assert lifted((0, 1)) == ((1, 3), 1)


def test_compose_checks_interfaces():
    base = cycle_to_stable_sets(2)
    with pytest.raises(BadParameters):
        compose_homomorphisms(base, base)


def test_iterated_chain():
    for n, k in ((7, 2), (8, 3)):
        hom = iterated_schrijver_homomorphism(n, k)
        assert hom.target == schrijver_graph(n, k)
        assert verify_homomorphism(hom).ok


def test_iterated_base_case():
    hom = iterated_schrijver_homomorphism(5, 2)
    assert hom.source == cycle_graph(5)
    assert hom.target == schrijver_graph(5, 2)


def test_homomorphism_json_round_trip():
    hom = schrijver_homomorphism(6, 2)
    obj = json.loads(json.dumps(homomorphism_to_json(hom)))
    again = homomorphism_from_json(obj)
    assert again.source == hom.source
    assert again.target == hom.target
    assert again.mapping == hom.mapping

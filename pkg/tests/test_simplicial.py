import pytest

from oracles import chains_by_length, grid_leq, grid_points
from sdkappa.errors import NotCofibration, NotSimplicial
from sdkappa.poset import OrderMap, grid, total_order
from sdkappa.simplicial import (
    SimplicialMap,
    boundary,
    compose,
    delta,
    disjoint_union,
    epi_mono,
    find_isomorphism,
    identity_map,
    inclusion,
    nerve,
    nerve_map,
    nerve_product_iso,
    normalize,
    product,
    pushout,
    sset_from_json,
    sset_to_json,
    smap_from_json,
    smap_to_json,
)


def test_delta_counts():
    assert delta(2).counts() == [3, 3, 1]
    assert boundary(2).counts() == [3, 3]


def test_operator_helpers():
    epi, mono = epi_mono((0, 0, 2))
    assert epi == (0, 0, 1) and mono == (0, 2)
    assert compose((0, 2), (1, 1)) == (2, 2)
    assert normalize(("a", "a", "b")) == (("a", "b"), (0, 0, 1))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_product_counts_match_grid_chains(m, n):
    P = product(delta(m), delta(n))
    pts = grid_points(m, n)
    expected = [chains_by_length(pts, grid_leq, k + 1) for k in range(m + n + 1)]
    assert P.total.counts() == expected


def test_product_projections_and_pairing():
    P = product(delta(1), delta(2))
    assert P.pair(P.pr1, P.pr2) == identity_map(P.total)
    P.pr1.check()
    P.pr2.check()


def test_nerve_product_iso():
    V, W = total_order(1), total_order(1)
    P = product(nerve(V), nerve(W))
    NVW = nerve(grid(1, 1))
    iso = nerve_product_iso(P, V, W, NVW)
    iso.check()
    assert iso.is_isomorphism()


def test_simplicial_identities_hold():
    for X in (delta(3), product(delta(1), delta(1)).total, boundary(3)):
        X.check_identities()
        assert X.is_nonsingular()


def test_operator_functoriality_small():
    product(delta(1), delta(1)).total.check_operator_functoriality()


def test_map_check_catches_bad_face():
    D1 = delta(1)
    bad = SimplicialMap(D1, D1, {(0,): D1.simplex((0,)), (1,): D1.simplex((1,)), (0, 1): ((0, 1), (0, 1))})
    bad.check()
    worse = SimplicialMap(D1, D1, {(0,): D1.simplex((1,)), (1,): D1.simplex((1,)), (0, 1): ((0, 1), (0, 1))})
    with pytest.raises(NotSimplicial):
        worse.check()


def test_nerve_map_of_degeneracy():
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 0, 2: 1})
    f = nerve_map(phi)
    f.check()
    assert f.on((0, 1, 2)) == ((0, 1), (0, 0, 1))


def test_pushout_wedge_of_edges():
    pt, D1 = delta(0), delta(1)
    i = SimplicialMap(pt, D1, {(0,): D1.simplex((1,))})
    g = SimplicialMap(pt, D1, {(0,): D1.simplex((0,))})
    P = pushout(i, g)
    assert P.total.counts() == [3, 2]
    P.j_B.check()
    P.j_C.check()
    assert P.induced(P.j_B, P.j_C) == identity_map(P.total)


def test_pushout_needs_cofibration():
    D1, pt = delta(1), delta(0)
    collapse = SimplicialMap(D1, pt, {(0,): pt.simplex((0,)), (1,): pt.simplex((0,)), (0, 1): ((0,), (0, 0))})
    with pytest.raises(NotCofibration):
        pushout(collapse, identity_map(D1))


def test_crushing_an_edge_is_singular():
    D1, D2, pt = delta(1), delta(2), delta(0)
    e = SimplicialMap(D1, D2, {x: D2.simplex(x) for x in D1.nondegenerate()})
    g = SimplicialMap(D1, pt, {(0,): ((0,), (0,)), (1,): ((0,), (0,)), (0, 1): ((0,), (0, 0))})
    P = pushout(e, g)
    assert not P.total.is_nonsingular()
    P.total.check_identities()


def test_disjoint_union_and_inclusion():
    U = disjoint_union(delta(1), delta(0))
    assert U.counts() == [3, 1]
    inc = inclusion(boundary(2), delta(2))
    inc.check()
    assert inc.is_injective()


def test_find_isomorphism_between_relabelled_sets():
    X = product(delta(1), delta(1)).total
    Y = nerve(grid(1, 1))
    assert find_isomorphism(X, Y) is not None
    assert find_isomorphism(X, delta(2)) is None


def test_json_round_trip():
    X = product(delta(1), delta(1)).total
    Y = sset_from_json(sset_to_json(X))
    assert Y.counts() == X.counts()
    f = identity_map(delta(2))
    g = smap_from_json(smap_to_json(f))
    assert g.is_isomorphism()

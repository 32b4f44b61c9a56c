from itertools import product as cartesian

import pytest

from oracles import chains_by_length, grid_chains, nonempty_subsets
from sdkappa.poset import OrderMap, grid, total_order
from sdkappa.simplicial import delta, identity_map, nerve, nerve_map, product
from sdkappa.subdivision import (
    Kappa,
    b_map,
    improvement_map,
    last_vertex,
    nondeg_poset,
    sd,
    sd_map,
)


def subset_leq(a, b):
    return a <= b


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_sd_delta_counts_match_subset_chains(d):
    subsets = nonempty_subsets(d)
    expected = [chains_by_length(subsets, subset_leq, k + 1) for k in range(d + 1)]
    assert sd(delta(d)).counts() == expected


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_sd_of_prism_counts_match_chains_of_grid_chains(m, n):
    faces = grid_chains(m, n)
    expected = [chains_by_length(faces, subset_leq, k + 1) for k in range(m + n + 1)]
    assert sd(product(delta(m), delta(n)).total).counts() == expected


def test_kappa_square_frozen_counts():
    K = Kappa(delta(1), delta(1))
    assert K.sd_XY.counts() == [11, 22, 12]
    assert K.target.total.counts() == [9, 16, 8]
    K.map.check()


def test_kappa_target_matches_pair_chains():
    K = Kappa(delta(2), delta(1))
    pairs = list(cartesian(nonempty_subsets(2), nonempty_subsets(1)))
    leq = lambda a, b: a[0] <= b[0] and a[1] <= b[1]
    expected = [chains_by_length(pairs, leq, k + 1) for k in range(4)]
    assert K.target.total.counts() == expected


def test_kappa_with_a_point_is_an_isomorphism():
    K = Kappa(delta(1), delta(0))
    assert K.map.is_isomorphism()


def test_kappa_square_is_not_an_isomorphism():
    assert not Kappa(delta(1), delta(1)).map.is_isomorphism()


@pytest.mark.parametrize("X", [delta(2), product(delta(1), delta(1)).total])
def test_b_map_is_isomorphism_for_nonsingular(X):
    b = b_map(X)
    b.check()
    assert b.is_isomorphism()


def test_nondeg_poset_of_triangle():
    P = nondeg_poset(delta(2))
    assert len(P) == 7
    assert P.height() == 3


def test_last_vertex_on_delta_one():
    d = last_vertex(delta(1))
    d.check()
    assert d.on(((0, 1), ((0,), (0, 1)))) == ((0, 1), (0, 1))
    assert d.on(((0, 1), ((1,), (0, 1)))) == ((1,), (0, 0))


def test_sd_is_functorial_on_identity_and_composites():
    X = delta(2)
    assert sd_map(identity_map(X)) == identity_map(sd(X))
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 1, 2: 1})
    psi = OrderMap(total_order(1), total_order(0), {0: 0, 1: 0})
    f, g = nerve_map(phi), nerve_map(psi)
    lhs = sd_map(f.then(g))
    rhs = sd_map(f).then(sd_map(g, sd(f.target), lhs.target))
    assert lhs.values == rhs.values


def test_improvement_map_checks():
    f, _ = improvement_map(delta(1), delta(1))
    f.check()
    assert len(f.source.nondegenerate()) > 0


def test_nerve_of_grid_matches_prism():
    assert nerve(grid(1, 2)).counts() == product(delta(1), delta(2)).total.counts()

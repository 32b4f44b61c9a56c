import pytest

from oracles import cone_cylinder_counts, product_counts
from sdkappa.acceptance import sigma_example
from sdkappa.cylinders import (
    cylinder_map,
    iterated_reduction,
    ordinary_cylinder,
    reduced_cylinder,
    reduction_map,
    rho,
    terminal_maps,
    terminal_reduction,
    theta_sigma,
)
from sdkappa.poset import OrderMap, grid, total_order
from sdkappa.simplicial import delta, identity_map, nerve, nerve_map, product


def collapse(n):
    return OrderMap(total_order(n), total_order(0), {i: 0 for i in range(n + 1)})


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_terminal_cylinder_counts(r):
    expected = [1]
    for _ in range(r):
        expected = cone_cylinder_counts(expected)
    R = terminal_reduction(r)
    assert R.ordinary.total.counts() == expected
    assert R.reduced.total.counts() == delta(r).counts()


def test_terminal_maps_are_identities_of_a_point():
    maps = terminal_maps(3)
    assert len(maps) == 3 and all(len(f.source) == 1 for f in maps)


def test_ordinary_cylinder_structure():
    f = nerve_map(collapse(1))
    T = ordinary_cylinder(f)
    assert T.total.counts() == cone_cylinder_counts([2, 1])
    T.projection.check()
    T.coordinate.check()
    assert T.back.then(T.projection) == identity_map(f.target)
    assert T.front.then(T.projection) == f


def test_ordinary_cylinder_counts_and_euler_characteristic():
    f = nerve_map(OrderMap(total_order(2), total_order(1), {0: 0, 1: 1, 2: 1}))
    T = ordinary_cylinder(f)
    assert sum((-1) ** k * c for k, c in enumerate(T.total.counts())) == 1
    assert T.total.counts() == [
        a - b + c for a, b, c in zip(product_counts([3, 3, 1], [2, 1]), [3, 3, 1, 0], [2, 1, 0, 0])
    ]


def test_reduced_cylinder_is_nerve_of_mapping_cylinder():
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 1, 2: 1})
    M = reduced_cylinder(phi)
    assert len(M.poset) == 5
    assert M.total.counts() == nerve(M.poset).counts()
    M.front.check()
    M.back.check()
    assert M.front.then(M.projection) == M.source_map


def test_sigma_example():
    in_s0, in_s1 = sigma_example()
    assert (in_s0, in_s1) == (False, True)


def test_rho_on_corners():
    phi = collapse(1)
    P = reduced_cylinder(phi).poset
    r = rho(phi, P)
    assert r((1, 1)) == (1, 1)
    assert r((1, 0)) == (0, 0)


def test_reduction_map_coherence():
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 0, 2: 1})
    R = reduction_map(phi)
    R.red.check()
    assert R.ordinary.back.then(R.red) == R.reduced.back
    assert R.ordinary.projection == R.red.then(R.reduced.projection)
    assert R.ordinary.front.then(R.red) == R.reduced.front


def test_iterated_reduction_coherent_on_back_and_projection():
    maps = [collapse(1), OrderMap(grid(1, 1), total_order(1), {(a, b): max(a, b) for a, b in grid(1, 1)})]
    R = iterated_reduction(maps)
    R.red.check()
    assert R.reduced.total.counts() == nerve(R.reduced.cylinder.poset).counts()


def test_cylinder_map_identity():
    f = nerve_map(collapse(1))
    T = ordinary_cylinder(f)
    h = cylinder_map(T, T, identity_map(f.source))
    assert h == identity_map(T.total)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_theta_sigma_section(r):
    theta, sigma = theta_sigma(r)
    assert sigma.then(theta) == OrderMap.identity(theta.target)
    assert all(theta.source.leq(sigma(theta(x)), x) for x in theta.source)


def test_theta_needs_positive_r():
    with pytest.raises(ValueError):
        theta_sigma(0)

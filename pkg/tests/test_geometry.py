from fractions import Fraction
from itertools import combinations

import pytest

from sdkappa.engine import poset_homology
from sdkappa.errors import PointNotInBase, SingularInput
from sdkappa.geometry import (
    LCG,
    FiberIndex,
    FiberPolytope,
    RationalPoint,
    barycenter,
    check_reduction_sampled,
    check_simple_sampled,
    fiber_homotopy_report,
    realize,
    sample_fibers,
    sample_points,
)
from sdkappa.cylinders import reduction_map
from sdkappa.paths import path_poset
from sdkappa.poset import OrderMap, Poset, find_isomorphism, make_poset, total_order
from sdkappa.simplicial import SimplicialMap, delta, nerve, nerve_map, pushout
from sdkappa.subdivision import Kappa, last_vertex


def solve(rows, rhs):
    """Exact Gaussian elimination for a square system; None if singular."""
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def basic_feasible_solutions(Q):
    """Vertices of ``{t >= 0 : A t = b}`` by trying every column basis."""
    eqs = Q.equations()
    k, rows = Q.ambient_dim, len(eqs)
    found = set()
    for basis in combinations(range(k), rows):
        sol = solve([[row[j] for j in basis] for row, _ in eqs], [b for _, b in eqs])
        if sol is None or any(x < 0 for x in sol):
            continue
        t = [Fraction(0)] * k
        for j, x in zip(basis, sol):
            t[j] = x
        found.add(tuple(t))
    return found


@pytest.mark.parametrize(
    "blocks,point",
    [
        (((0, 1), (2,)), (Fraction(1, 3), Fraction(2, 3))),
        (((0, 2), (1, 3)), (Fraction(1, 2), Fraction(1, 2))),
        (((0, 1, 2), (3, 4)), (Fraction(1, 5), Fraction(4, 5))),
        (((0,), (1, 2), (3,)), (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))),
    ],
)
def test_polytope_vertices_match_basic_feasible_solutions(blocks, point):
    Q = FiberPolytope("tau", blocks, point)
    assert set(Q.vertices()) == basic_feasible_solutions(Q)
    assert Q.dim == sum(len(b) - 1 for b in blocks)


def test_rational_point_validation():
    with pytest.raises(PointNotInBase):
        RationalPoint("c", (Fraction(1, 2), Fraction(1, 3)))
    assert not RationalPoint("c", (0, 1)).interior


def test_carrier_moves_to_face():
    D2 = delta(2)
    p = RationalPoint((0, 1, 2), (Fraction(1, 2), 0, Fraction(1, 2))).carrier(D2)
    assert p.cell == (0, 2) and p.interior


def test_realize_rejects_singular():
    D1, D2, pt = delta(1), delta(2), delta(0)
    e = SimplicialMap(D1, D2, {x: D2.simplex(x) for x in D1.nondegenerate()})
    g = SimplicialMap(D1, pt, {(0,): ((0,), (0,)), (1,): ((0,), (0,)), (0, 1): ((0,), (0, 0))})
    with pytest.raises(SingularInput):
        realize(pushout(e, g).total)


def test_lcg_is_reproducible():
    a, b = LCG(5), LCG(5)
    assert [a.next() for _ in range(4)] == [b.next() for _ in range(4)]
    assert LCG(0).next() == 1013904223
    assert all(1 <= LCG(s).weight() <= 1000 for s in range(50))


@pytest.mark.parametrize("per_cell", [0, 2])
def test_sample_counts_and_interior(per_cell):
    B = delta(2)
    pts = sample_points(B, per_cell, seed=3)
    assert len(pts) == len(B.nondegenerate()) * (1 + per_cell)
    assert all(p.interior for p in pts)
    assert pts == sample_points(B, per_cell, seed=3)


def test_fold_is_refuted():
    crown = make_poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    top = make_poset(["x", "c", "d"], [("x", "c"), ("x", "d")])
    phi = OrderMap(crown, top, {"a": "x", "b": "x", "c": "c", "d": "d"})
    v = check_simple_sampled(nerve_map(phi), per_cell=1)
    assert v.negative


def test_last_vertex_sampled_simple():
    d = last_vertex(delta(2))
    v = check_simple_sampled(d, per_cell=2, seed=1)
    assert v.positive
    assert v.certificate.is_valid()


def test_kappa_fibres_square():
    K = Kappa(delta(1), delta(1))
    rep = sample_fibers(K.map, per_cell=1, seed=0)
    summary = rep.summary()
    assert summary["points"] == 2 * len(K.target.total.nondegenerate())
    assert summary["noncontractible"] == 0 and summary["unknown"] == 0


def chain_poset(P: Poset) -> Poset:
    chains = [frozenset(c) for c in P.chains()]
    return Poset.from_leq(chains, lambda a, b: a <= b)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_vertex_fibres_are_order_complexes_of_path_posets(m, n):
    K = Kappa(delta(m), delta(n))
    B = K.target.total
    index = FiberIndex(K.map)
    for v in B.nondegenerate(0):
        mu, nu = v[0][0], v[1][0]
        F = index.fiber(barycenter(B, v))
        P = path_poset(mu, nu, m, n).poset
        assert find_isomorphism(F.cells, chain_poset(P)) is not None


def test_fibre_homotopy_type_constant_on_open_cells():
    K = Kappa(delta(1), delta(1))
    B = K.target.total
    index = FiberIndex(K.map)
    for c in B.nondegenerate():
        labels = {fiber_homotopy_report(index.fiber(p)).label for p in sample_points(B, 3, 11, cells=[c])}
        homs = {repr(poset_homology(index.fiber(p).cells).to_json()) for p in sample_points(B, 3, 11, cells=[c])}
        assert len(labels) == 1 and len(homs) == 1


def test_polytope_vertices_satisfy_equations_on_samples():
    K = Kappa(delta(1), delta(1))
    index = FiberIndex(K.map)
    for p in sample_points(K.target.total, 2, 4):
        for Q in index.fiber(p).polytopes.values():
            assert all(Q.contains(x) for x in Q.vertices())


def test_reduction_sampled_simple():
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 0, 2: 1})
    assert check_reduction_sampled(reduction_map(phi), per_cell=1).positive


def test_realize_examples():
    assert len(realize(delta(1))) == 3
    from sdkappa.simplicial import product
    from sdkappa.subdivision import sd

    square = realize(product(delta(1), delta(1)).total)
    assert sum(1 for v in square.values() if len(v) == 3) == 2
    sub = product(sd(delta(1)), sd(delta(1))).total
    assert sum(1 for v in realize(sub).values() if len(v) == 1) == 9


def test_identity_fibre_is_a_point():
    from sdkappa.simplicial import identity_map

    f = identity_map(delta(2))
    p = RationalPoint((0, 1, 2), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
    assert fiber_homotopy_report(FiberIndex(f).fiber(p)).label == "point"


def test_kappa_boundary_fibres_are_points():
    K = Kappa(delta(1), delta(1))
    B = K.target.total
    index = FiberIndex(K.map)
    interior = [v for v in B.nondegenerate(0) if len(v[0][0]) == 2 and len(v[1][0]) == 2]
    assert fiber_homotopy_report(index.fiber(barycenter(B, interior[0]))).label == "segment"
    for v in B.nondegenerate(0):
        if v not in interior:
            assert fiber_homotopy_report(index.fiber(barycenter(B, v))).label == "point"


def test_two_point_fibre_is_not_contractible():
    from sdkappa.simplicial import disjoint_union

    D1 = delta(1)
    U = disjoint_union(D1, D1)
    fold = SimplicialMap(U, D1, {x: D1.simplex(x[1]) for x in U.nondegenerate()})
    F = FiberIndex(fold).fiber(barycenter(D1, (0, 1)))
    cls = fiber_homotopy_report(F)
    assert cls.verdict.negative and len(F.cells) == 2


def test_sample_count_example():
    assert len(sample_points(delta(2), 2, 7)) == 7 * 3

import pytest

from oracles import count_chains, grid_chains
from sdkappa.engine import contractible_verdict
from sdkappa.errors import BadCase, DegenerateChain, PointNotInBase, PointNotOnPath, ScaleGuard
from sdkappa.paths import (
    cylinder_comparison,
    enumerate_nondeg,
    f_sequence,
    interior_factorization_check,
    join_at,
    path_poset,
    path_poset_chain,
    q_cover,
    sd_pairs,
    split_at,
    split_chain,
    through,
)


def subset_leq(a, b):
    return a <= b


@pytest.mark.parametrize("m,n,size", [(1, 1, 11), (1, 2, 31), (2, 2, 103)])
def test_all_paths_counted_by_brute_force(m, n, size):
    C = enumerate_nondeg(m, n)
    assert len(C) == len(grid_chains(m, n)) == size


@pytest.mark.parametrize("m,n,chains", [(1, 1, 45), (1, 2, 397)])
def test_chains_of_path_poset(m, n, chains):
    C = enumerate_nondeg(m, n)
    assert sum(1 for _ in C.poset.chains()) == chains
    assert count_chains(grid_chains(m, n), subset_leq) == chains


@pytest.mark.slow
def test_chains_of_large_path_poset():
    assert count_chains(grid_chains(2, 2), subset_leq) == 5617
    assert sum(1 for _ in enumerate_nondeg(2, 2).poset.chains()) == 5617


def test_scale_guard_and_force():
    with pytest.raises(ScaleGuard):
        enumerate_nondeg(4, 4)
    assert len(enumerate_nondeg(3, 3, force=True)) == len(grid_chains(3, 3)) == 1007


def test_path_poset_counts():
    assert len(path_poset((0, 1), (0, 1, 2))) == 5
    assert len(path_poset((0,), (0, 1, 2, 3))) == 1


def test_path_poset_matches_projection_filter():
    mu, nu = (0, 2), (0, 1, 2)
    expected = [
        c for c in grid_chains(2, 2)
        if {p for p, _ in c} == set(mu) and {q for _, q in c} == set(nu)
    ]
    assert len(path_poset(mu, nu)) == len(expected)


@pytest.mark.parametrize("mu,nu", [((0, 1), (0, 1)), ((0, 1, 2), (0, 1)), ((0, 2), (0, 1, 2))])
def test_path_posets_are_contractible(mu, nu):
    assert contractible_verdict(path_poset(mu, nu).poset).positive


def test_sd_pair_counts():
    assert sum(1 for _ in sd_pairs(1, 1, 0)) == 9
    assert sum(1 for _ in sd_pairs(1, 1, 1)) == 16
    assert sum(1 for _ in sd_pairs(1, 1, 2)) == 8


def test_f_sequence_small():
    seq = f_sequence(((0,), (0, 1)), ((0,), (0, 1)))
    assert [len(L) for L in seq.layers] == [1, 3]
    assert cylinder_comparison(seq) == []
    assert interior_factorization_check(seq.z, seq.w)


def test_f_sequence_rejects_degenerate():
    with pytest.raises(DegenerateChain):
        f_sequence(((0,), (0,)), ((0,), (0,)))


def test_chain_poset_at_top_layer():
    P = path_poset_chain(((0,), (0, 1)), ((0,), (0, 1)))
    assert all(g[0] == (0, 0) for g in P.paths)


def test_split_join_round_trip():
    for g in grid_chains(2, 2):
        g = tuple(sorted(g))
        for pq in g:
            lo, hi = split_at(g, pq)
            assert join_at(lo, hi, pq) == g


def test_split_errors():
    with pytest.raises(PointNotOnPath):
        split_at(((0, 0), (1, 1)), (0, 1))
    with pytest.raises(PointNotInBase):
        split_chain(((0,), (0, 1)), ((0,), (0,)), (1, 0))


def test_split_chain_pieces():
    lo, hi = split_chain(((0, 1), (0, 1, 2)), ((0,), (0, 1)), (1, 0))
    assert lo == (((0, 1), (0, 1)), ((0,), (0,)))
    assert hi == (((0,), (0, 1)), ((0,), (0, 1)))


def test_q_cover_pieces_cover_ambient():
    cov = q_cover("base", m=1, n=1)
    covered = set().union(*(set(p.paths) for p in cov.pieces))
    assert covered == set(cov.ambient.paths)
    s2 = q_cover("s2", x=((0, 1, 2),), y=((0, 1),))
    assert len(s2.pieces) == 2
    with pytest.raises(BadCase):
        q_cover("s1", x=((0, 1, 2),), y=((0, 1),))


def test_through_filters():
    P = path_poset((0, 1), (0, 1))
    assert len(through(P, (1, 0))) == 1

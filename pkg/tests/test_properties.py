from hypothesis import given, settings
from hypothesis import strategies as st

from sdkappa.engine import Verdict, contractible_verdict, poset_homology, reconcile
from sdkappa.engine.verdicts import check_section_over_target, extremal_section
from sdkappa.geometry import sample_points
from sdkappa.paths import join_at, make_path, split_at
from sdkappa.poset import (
    OrderMap,
    core,
    iterated_cylinder,
    iterated_cylinder_inductive,
    make_poset,
    mapping_cylinder,
    replay_dismantling,
    total_order,
)
from sdkappa.simplicial import delta

SETTINGS = settings(max_examples=60, deadline=None)


@st.composite
def posets(draw, max_size=7):
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return make_poset(range(n), pairs)


@st.composite
def monotone_maps(draw, max_size=6):
    """A map from a random poset onto a chain, nondecreasing along a linear extension."""
    V = draw(posets(max_size))
    k = draw(st.integers(0, 3))
    steps = sorted(draw(st.lists(st.integers(0, k), min_size=len(V), max_size=len(V))))
    values = {v: steps[i] for i, v in enumerate(sorted(V))}
    used = sorted(set(values.values()))
    relabel = {c: i for i, c in enumerate(used)}
    W = total_order(len(used) - 1)
    return OrderMap(V, W, {v: relabel[c] for v, c in values.items()})


@SETTINGS
@given(posets())
def test_core_preserves_homology(P):
    C, trace = core(P)
    assert poset_homology(C).to_json() == poset_homology(P).to_json()
    assert set(replay_dismantling(P, trace).elements) == set(C.elements)


@SETTINGS
@given(posets())
def test_verdict_agrees_with_homology(P):
    v = contractible_verdict(P)
    h = poset_homology(P)
    if v.positive:
        assert h.is_trivial()
    if v.negative:
        assert not h.is_trivial()
    if v.certificate is not None:
        assert v.certificate.is_valid()


@SETTINGS
@given(posets())
def test_dual_has_same_homology(P):
    assert poset_homology(P.dual()).to_json() == poset_homology(P).to_json()


@SETTINGS
@given(monotone_maps())
def test_mapping_cylinder_identities(phi):
    cyl = mapping_cylinder(phi)
    assert cyl.front.then(cyl.projection) == phi
    assert cyl.back.then(cyl.projection) == OrderMap.identity(phi.target)
    assert contractible_verdict(cyl.poset).positive == contractible_verdict(phi.target).positive


@SETTINGS
@given(monotone_maps(), st.integers(0, 2))
def test_iterated_cylinder_direct_equals_inductive(phi2, k):
    W = phi2.target
    phi1 = OrderMap(W, total_order(0), {w: 0 for w in W})
    direct = iterated_cylinder([phi1, phi2])
    inductive = iterated_cylinder_inductive([phi1, phi2])
    assert direct.poset.relation() == inductive.poset.relation()


@SETTINGS
@given(monotone_maps(), st.sampled_from(["below", "above"]))
def test_extremal_sections_are_sections(phi, direction):
    s = extremal_section(phi, direction)
    if s is None:
        return
    assert all(phi(s(w)) == w for w in phi.target)
    v = check_section_over_target(phi, s, direction)
    if v.positive:
        assert v.certificate.is_valid()


@SETTINGS
@given(st.integers(0, 2**40), st.integers(0, 3), st.integers(0, 3))
def test_sample_points_are_interior(seed, per_cell, d):
    B = delta(d)
    pts = sample_points(B, per_cell, seed)
    assert len(pts) == len(B.nondegenerate()) * (per_cell + 1)
    assert all(p.interior and sum(p.coords) == 1 for p in pts)


@SETTINGS
@given(st.lists(st.sampled_from(["Simple", "NotSimple", "Unknown"]), min_size=1, max_size=5),
       st.integers(0, 3))
def test_unknown_never_changes_reconcile(kinds, extra):
    vs = [Verdict(k, stage=str(i)) for i, k in enumerate(kinds)]
    if "Simple" in kinds and "NotSimple" in kinds:
        return
    base = reconcile(*vs)
    padded = reconcile(*vs, *[Verdict("Unknown", stage="pad")] * extra)
    if base.definite:
        assert padded.kind == base.kind


@st.composite
def grid_paths(draw):
    steps = draw(st.lists(st.sampled_from([(1, 0), (0, 1), (1, 1)]), min_size=0, max_size=6))
    pts = [(0, 0)]
    for a, b in steps:
        pts.append((pts[-1][0] + a, pts[-1][1] + b))
    return make_path(pts)


@SETTINGS
@given(grid_paths(), st.data())
def test_split_then_join_is_identity(gamma, data):
    pq = data.draw(st.sampled_from(list(gamma)))
    lo, hi = split_at(gamma, pq)
    assert lo[-1] == pq and hi[0] == (0, 0)
    assert join_at(lo, hi, pq) == gamma

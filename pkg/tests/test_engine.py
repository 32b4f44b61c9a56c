from itertools import combinations

import pytest

from sdkappa.engine import (
    Verdict,
    check_section_over_target,
    contractible_verdict,
    criterion_wjr2416,
    iterated_reduction_simple,
    kappa_cellwise_report,
    poset_homology,
    reconcile,
    simplicial_homology,
    terminal_reduction_verdict,
)
from sdkappa.engine.certificates import (
    CertificateError,
    CollapseSequence,
    ConePoint,
    Gluing,
    HomologyRefutation,
    SectionOverTarget,
)
from sdkappa.engine.collapse import greedy_collapse, replay_collapse
from sdkappa.engine.homology import smith_diagonal
from sdkappa.engine.verdicts import VerdictLog, extremal_section, identity_certificate
from sdkappa.errors import InconsistentVerdict, ScaleGuard
from sdkappa.paths import f_sequence
from sdkappa.poset import OrderMap, antichain, grid, make_poset, total_order
from sdkappa.simplicial import delta


def closure(tops):
    out = set()
    for t in tops:
        for k in range(1, len(t) + 1):
            out.update(combinations(sorted(t), k))
    return out


# six-vertex real projective plane
RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
       (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def test_homology_of_hexagon():
    hexagon = closure([(i, (i + 1) % 6) for i in range(6)])
    h = simplicial_homology(hexagon)
    assert h.ranks.get(1) == 1 and h.ranks.get(0, 0) == 0


def test_homology_of_sphere_and_projective_plane():
    sphere = closure(combinations(range(4), 3))
    assert simplicial_homology(sphere).ranks.get(2) == 1
    h = simplicial_homology(closure(RP2))
    assert h.torsion.get(1) == (2,)
    assert not any(h.ranks.values())


def test_empty_complex_is_minus_one_sphere():
    assert simplicial_homology(()).ranks == {-1: 1}


def test_smith_diagonal():
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]


def test_poset_homology_of_two_points():
    assert poset_homology(antichain("ab")).ranks.get(0) == 1


def test_collapse_of_triangle_and_replay():
    tri = closure([(0, 1, 2)])
    steps, rest = greedy_collapse(tri)
    assert len(rest) == 1
    assert len(replay_collapse(tri, steps)) == 1
    CollapseSequence(tuple(tri), tuple(steps)).check()


def test_collapse_stuck_on_circle():
    circle = closure([(0, 1), (1, 2), (0, 2)])
    _, rest = greedy_collapse(circle)
    assert len(rest) > 1


def test_tampered_collapse_rejected():
    tri = closure([(0, 1, 2)])
    steps, _ = greedy_collapse(tri)
    bad = CollapseSequence(tuple(tri), tuple(reversed(steps)))
    assert not bad.is_valid()


@pytest.mark.parametrize(
    "poset,stage,positive",
    [
        (total_order(3), "cone", True),
        (make_poset("abcde", [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d")]), "dismantling", True),
        (make_poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]), "homology", False),
        (antichain(""), "empty", False),
    ],
)
def test_contractible_verdict_stages(poset, stage, positive):
    v = contractible_verdict(poset)
    assert v.stage == stage and v.positive == positive
    assert v.certificate.is_valid()


def test_cone_point_rejects_non_apex():
    P = make_poset("abc", [("a", "b"), ("a", "c")])
    ConePoint(P, "a").check()
    with pytest.raises(CertificateError):
        ConePoint(P, "b").check()


def test_homology_refutation_rejects_wrong_claim():
    hexagon = tuple(closure([(i, (i + 1) % 6) for i in range(6)]))
    good = simplicial_homology(hexagon)
    HomologyRefutation(hexagon, good).check()
    fake = simplicial_homology(tuple(closure([(0, 1)])))
    assert not HomologyRefutation(hexagon, fake).is_valid()


def test_reconcile_and_log():
    yes = Verdict("Simple", stage="a")
    no = Verdict("NotSimple", stage="b")
    unk = Verdict("Unknown", stage="c")
    assert reconcile(unk, yes) is yes
    assert reconcile(unk, no) is no
    with pytest.raises(InconsistentVerdict):
        reconcile(yes, no)
    log = VerdictLog()
    log.record("k", yes)
    with pytest.raises(InconsistentVerdict):
        log.record("k", no)


def test_sections():
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 0, 2: 1})
    low = extremal_section(phi, "below")
    assert low(0) == 0 and low(1) == 2
    assert check_section_over_target(phi, low, "below").positive
    high = extremal_section(phi, "above")
    assert not check_section_over_target(phi, high, "below").positive
    assert not SectionOverTarget(phi, high, "sideways").is_valid()


def test_identity_certificates():
    identity_certificate(total_order(2)).check()
    identity_certificate(delta(2)).check()


def test_criterion_on_collapse_map():
    phi = OrderMap(grid(1, 1), total_order(0), {x: 0 for x in grid(1, 1)})
    v = criterion_wjr2416(phi, sample=False)
    assert v.positive and v.certificate.is_valid()


def test_criterion_refutes_fold():
    crown = make_poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    top = make_poset(["x", "c", "d"], [("x", "c"), ("x", "d")])
    phi = OrderMap(crown, top, {"a": "x", "b": "x", "c": "c", "d": "d"})
    v = criterion_wjr2416(phi, sample=True)
    assert not v.positive


def test_iterated_reduction_tree():
    seq = f_sequence(((0,), (0, 1), (0, 1, 2)), ((0,), (0,), (0, 1)))
    v = iterated_reduction_simple(seq)
    assert v.positive and v.certificate.is_valid()


def test_tampered_gluing_rejected():
    seq = f_sequence(((0,), (0, 1)), ((0,), (0, 1)))
    cert = iterated_reduction_simple(seq).certificate
    broken = Gluing((cert,), "bad witness", witness=lambda: False)
    assert not broken.is_valid()


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_terminal_reduction_certified(r):
    v = terminal_reduction_verdict(r, concrete=True)
    assert v.positive


def test_kappa_report_square():
    rep = kappa_cellwise_report(1, 1)
    assert rep.complete and rep.overall.positive
    assert len(rep.cells) == 9 + 16 + 8
    assert all(c.interior_factorization and not c.cylinder_mismatches for c in rep.cells)


def test_kappa_report_partial_and_guard():
    rep = kappa_cellwise_report(1, 1, r_max=1)
    assert not rep.complete and rep.to_json()["coverage"] == "partial"
    with pytest.raises(ScaleGuard):
        kappa_cellwise_report(3, 3)

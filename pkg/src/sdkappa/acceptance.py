"""The acceptance criteria as runnable checks.

Each check returns ``(passed, detail)``.  :func:`run` times them against
their budgets and prints one line per criterion.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass

from .errors import SdKappaError


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: Callable[[], tuple[bool, str]]
    budget: float  # seconds
    stretch: bool = False


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    passed: bool
    detail: str
    seconds: float
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"[{status}] criterion {self.criterion.number:>2}: {self.criterion.title} ({self.seconds:.2f}s) {self.detail}"


# -- individual checks -------------------------------------------------------------------


def kappa_example() -> tuple[bool, str]:
    from .geometry import FiberIndex, barycenter, fiber_homotopy_report, sample_fibers
    from .simplicial import delta
    from .subdivision import Kappa

    K = Kappa(delta(1), delta(1))
    f = K.map
    n_src, n_tgt = len(f.source.nondegenerate(0)), len(f.target.nondegenerate(0))
    index = FiberIndex(f)
    interior = [v for v in f.target.nondegenerate(0) if _is_interior_vertex(v)]
    hits = [x for x in f.source.nondegenerate(0) if f.on(x)[0] in interior]
    report = sample_fibers(f, per_cell=5, seed=0, name="kappa(1,1)", index=index)
    labels = {r.fiber_class.label for r in report.records}
    centre = fiber_homotopy_report(index.fiber(barycenter(f.target, interior[0]))).label if len(interior) == 1 else None
    ok = (n_src, n_tgt, len(hits)) == (11, 9, 3) and labels <= {"point", "segment"} and centre == "segment"
    return ok, f"vertices {n_src}->{n_tgt}, {len(hits)} over the centre, fibres {sorted(labels)}, centre fibre {centre}"


def _is_interior_vertex(v) -> bool:
    """The vertex of ``Sd D[1] x Sd D[1]`` at the barycentre of both factors."""
    x, y, _ = v
    return x == ((0, 1), ((0, 1),)) and y == ((0, 1), ((0, 1),))


def face_pair_posets() -> tuple[bool, str]:
    from .engine.verdicts import contractible_verdict
    from .paths import faces, path_poset

    total, bad, stages = 0, [], {}
    for m in range(4):
        for n in range(4):
            for mu in faces(m):
                for nu in faces(n):
                    v = contractible_verdict(path_poset(mu, nu, m, n).poset)
                    if v.certificate is not None:
                        v.certificate.check()
                    total += 1
                    stages[v.stage] = stages.get(v.stage, 0) + 1
                    if not v.positive:
                        bad.append((m, n, mu, nu, v.kind))
    return not bad, f"{total} posets, stages {dict(sorted(stages.items()))}, failures {bad[:3]}"


def chain_posets() -> tuple[bool, str]:
    from .engine.verdicts import contractible_verdict
    from .paths import path_poset_chain, sd_pairs

    total, bad, stages = 0, [], {}
    for m in range(3):
        for n in range(3):
            for r in range(3):
                for z, w in sd_pairs(m, n, r, degenerate=True):
                    v = contractible_verdict(path_poset_chain(z, w, m, n).poset)
                    if v.certificate is not None:
                        v.certificate.check()
                    total += 1
                    stages[v.stage] = stages.get(v.stage, 0) + 1
                    if not v.positive:
                        bad.append((z, w, v.kind))
    return not bad, f"{total} chains, stages {dict(sorted(stages.items()))}, failures {bad[:3]}"


def _nondegenerate_cells(max_mn: int = 2, max_r: int = 2):
    from .paths import sd_pairs

    for m in range(max_mn + 1):
        for n in range(max_mn + 1):
            for r in range(max_r + 1):
                for z, w in sd_pairs(m, n, r):
                    yield m, n, z, w


def union_is_cylinder() -> tuple[bool, str]:
    from .paths import cylinder_comparison, f_sequence

    total, bad = 0, []
    for m, n, z, w in _nondegenerate_cells():
        problems = cylinder_comparison(f_sequence(z, w, m, n))
        total += 1
        if problems:
            bad.append((z, w, problems[0]))
    return not bad, f"{total} cells, {len(bad)} mismatches {bad[:2]}"


def interior_factorization() -> tuple[bool, str]:
    from .paths import interior_factorization_witnesses

    total, bad = 0, []
    for m, n, z, w in _nondegenerate_cells():
        wit = interior_factorization_witnesses(z, w, m, n)
        total += 1
        if wit:
            bad.append((z, w, wit[0]))
    return not bad, f"{total} cells, {len(bad)} with witnesses {bad[:2]}"


def sigma_example() -> tuple[bool, bool]:
    from .cylinders import reduced_cylinder
    from .poset import OrderMap, total_order

    V, W = total_order(2), total_order(1)
    chain = ((0, 0), (0, 1), (1, 1), (1, 2))
    present = []
    for values in ({0: 0, 1: 0, 2: 1}, {0: 0, 1: 1, 2: 1}):
        M = reduced_cylinder(OrderMap(V, W, values))
        present.append(chain in M.total.nondegenerate(3))
    return present[0], present[1]


def terminal_maps_check() -> tuple[bool, str]:
    from .cylinders import theta_sigma
    from .engine.verdicts import terminal_reduction_verdict

    verdicts = [terminal_reduction_verdict(r, concrete=True) for r in range(5)]
    certified = all(v.positive for v in verdicts)
    sections = True
    for r in range(1, 7):
        theta, sigma = theta_sigma(r)
        sections &= all(theta(sigma(j)) == j for j in sigma.source)
        sections &= all(theta.source.leq(sigma(theta(x)), x) for x in theta.source)
    in_s0, in_s1 = sigma_example()
    ok = certified and sections and not in_s0 and in_s1
    return ok, (f"T^r->M^r certified for r<=4: {certified}; theta/sigma identities for r<=6: {sections}; "
                f"chain in M(N s0): {in_s0}, in M(N s1): {in_s1}")


def iterated_reductions() -> tuple[bool, str]:
    from .engine.verdicts import iterated_reduction_simple
    from .paths import f_sequence

    total, bad, nodes = 0, [], 0
    for m, n, z, w in _nondegenerate_cells():
        try:
            v = iterated_reduction_simple(f_sequence(z, w, m, n), concrete=True)
        except SdKappaError as exc:
            bad.append((z, w, str(exc)))
            continue
        total += 1
        nodes += v.certificate.size()
        if not v.positive:
            bad.append((z, w, v.kind))
    return not bad, f"{total} sequences certified, {nodes} certificate nodes, failures {bad[:2]}"


def cross_validation() -> tuple[bool, str]:
    from .crossval import CrossValidation
    from .engine.verdicts import _rho_section, iterated_reduction_simple, terminal_reduction_certificate
    from .geometry import check_simple_sampled
    from .paths import f_sequence
    from .simplicial import delta
    from .subdivision import kappa

    cv = CrossValidation(per_cell=3, seed=0)
    for r in range(5):
        cv.add(terminal_reduction_certificate(r, concrete=True))
        if r >= 2:
            cv.add_reduction(_rho_section(r)[2])
    for m, n, z, w in _nondegenerate_cells():
        cv.add(iterated_reduction_simple(f_sequence(z, w, m, n)).certificate)
    kappa_bad = []
    points = 0
    for m in range(3):
        for n in range(3):
            v = check_simple_sampled(kappa(delta(m), delta(n)), per_cell=3, seed=0, name=f"kappa({m},{n})")
            points += v.certificate.report["points"]
            if not v.positive:
                kappa_bad.append((m, n, v.witness))
    s = cv.summary()
    ok = not cv.failures and not kappa_bad
    return ok, (f"{s['nerve_maps']} nerve maps, {s['reductions']} reductions, {s['simplicial_maps']} isomorphisms, "
                f"{s['points'] + points} points; failures {len(cv.failures) + len(kappa_bad)}")


def coherence() -> tuple[bool, str]:
    from .simplicial import delta, identity_map, product, product_map
    from .subdivision import Kappa, b_map, last_vertex

    b_iso = True
    last_ok = True
    for m in range(3):
        for n in range(3):
            X = product(delta(m), delta(n)).total
            b_iso &= b_map(X).is_isomorphism()
            K = Kappa(delta(m), delta(n))
            dXY = product_map(K.target, K.XY, last_vertex(K.X, K.sd_X), last_vertex(K.Y, K.sd_Y))
            last_ok &= K.map.then(dXY) == last_vertex(K.XY.total, K.sd_XY)
    glued = [sd_commutes_with_pushout(i, g) for i, g in gluing_fixtures()]
    ok = b_iso and last_ok and all(glued)
    return ok, f"b iso: {b_iso}; last vertex identity: {last_ok}; Sd vs pushouts: {glued}"


def gluing_fixtures():
    """Three pushout diagrams ``C <- A -> B`` given as ``(i, g)``."""
    from .simplicial import SimplicialMap, boundary, delta, inclusion

    pt, D1, D2 = delta(0), delta(1), delta(2)
    # Two edges joined at a vertex.
    i1 = SimplicialMap(pt, D1, {(0,): D1.simplex((1,))})
    g1 = SimplicialMap(pt, D1, {(0,): D1.simplex((0,))})
    # A triangle with one edge crushed to a point.
    e = SimplicialMap(D1, D2, {x: D2.simplex(x) for x in D1.nondegenerate()})
    g2 = SimplicialMap(D1, pt, {(0,): ((0,), (0,)), (1,): ((0,), (0,)), (0, 1): ((0,), (0, 0))})
    # A triangle glued to the boundary of another along its boundary.
    dD2 = boundary(2)
    i3 = inclusion(dD2, D2)
    g3 = inclusion(dD2, D2)
    return [(i1, g1), (e, g2), (i3, g3)]


def sd_commutes_with_pushout(i, g) -> bool:
    from .simplicial import pushout
    from .subdivision import sd, sd_map

    P = pushout(i, g)
    sdA, sdB, sdC, sdP = sd(i.source), sd(i.target), sd(g.target), sd(P.total)
    Q = pushout(sd_map(i, sdA, sdB), sd_map(g, sdA, sdC))
    comparison = Q.induced(sd_map(P.j_B, sdB, sdP), sd_map(P.j_C, sdC, sdP))
    comparison.check()
    return comparison.is_isomorphism()


def negative_controls() -> tuple[bool, str]:
    from .engine.verdicts import contractible_verdict
    from .geometry import check_simple_sampled
    from .poset import make_poset
    from .simplicial import SimplicialMap, delta, disjoint_union

    D1 = delta(1)
    U = disjoint_union(D1, D1)
    fold = SimplicialMap(U, D1, {x: D1.simplex(x[1]) for x in U.nondegenerate()})
    v = check_simple_sampled(fold, per_cell=1, seed=0, name="fold")
    two_points = v.kind == "NotSimple" and v.witness["homology"]["ranks"] == {"0": 1}
    square = make_poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    h = contractible_verdict(square)
    h1 = h.kind == "NotContractible" and h.certificate.homology.ranks.get(1) == 1
    if h.certificate is not None:
        h.certificate.check()
    return two_points and h1, f"fold: {v.kind} ({v.witness and v.witness['classification']}); square: {h.kind} {h.witness}"


def improvement_smoke() -> tuple[bool, str]:
    from .geometry import check_simple_sampled
    from .simplicial import delta
    from .subdivision import improvement_map

    f, _ = improvement_map(delta(1), delta(1))
    v = check_simple_sampled(f, per_cell=1, seed=0, name="improvement(1,1)")
    return v.positive, f"{v.kind}: {v.certificate.report['points']} points, classes {v.certificate.report['classes']}"


CRITERIA: list[Criterion] = [
    Criterion(1, "kappa on (1,1): counts and fibres", kappa_example, 5),
    Criterion(2, "face-pair path posets contractible, m,n<=3", face_pair_posets, 60),
    Criterion(3, "chain path posets contractible, r<=2, m,n<=2", chain_posets, 300),
    Criterion(4, "union of layers equals the iterated cylinder", union_is_cylinder, 600),
    Criterion(5, "interior factorization has no witness", interior_factorization, 600),
    Criterion(6, "terminal reductions, theta/sigma, cylinder example", terminal_maps_check, 600),
    Criterion(7, "iterated reductions certified", iterated_reductions, 600),
    Criterion(8, "sampled fibres agree with certificates", cross_validation, 600),
    Criterion(9, "b iso, Sd and pushouts, last vertex identity", coherence, 600),
    Criterion(10, "negative controls refute", negative_controls, 600),
    Criterion(11, "improvement map sampled simple", improvement_smoke, 600, stretch=True),
]


def evaluate(c: Criterion) -> Outcome:
    start = time.perf_counter()
    try:
        passed, detail = c.check()
    except Exception as exc:  # a crash is a failure, reported with its message
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if seconds > c.budget:
        passed, detail = False, f"over budget ({c.budget:.0f}s); " + detail
    return Outcome(c, passed, detail, seconds)


def run(quick: bool = False, echo: Callable[[str], None] = print) -> list[Outcome]:
    outcomes = []
    for c in CRITERIA:
        if quick and c.stretch:
            out = Outcome(c, True, "skipped in quick mode", 0.0, skipped=True)
        else:
            out = evaluate(c)
        echo(out.line())
        outcomes.append(out)
    return outcomes

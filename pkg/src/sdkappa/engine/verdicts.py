"""Verdict pipelines: contractibility of posets and simplicity of maps.

Each positive verdict carries a certificate that can be re-checked on its
own.  ``Unknown`` is a legitimate outcome whenever none of the available
mechanisms applies.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

from ..errors import EmptyResult, InconsistentVerdict, NotOrderPreserving, ScaleGuard, SequenceNotFromPaths
from ..poset import OrderMap, Poset, core, iterated_cylinder, iterated_projection, restrict_map, total_order
from ..simplicial import SimplicialMap
from .certificates import (
    Certificate,
    CertificateError,
    CollapseSequence,
    Composition,
    ConePoint,
    CriterionWJR2416,
    DismantlingTrace,
    Gluing,
    HomologyRefutation,
    PullbackCellwise,
    RightCancellation,
    SampledFibers,
    SectionOverTarget,
)
from .collapse import greedy_collapse
from .homology import order_complex, simplicial_homology

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
CONTRACTIBLE = "Contractible"
NOT_CONTRACTIBLE = "NotContractible"
UNKNOWN = "Unknown"

_POSITIVE = {SIMPLE, CONTRACTIBLE}
_NEGATIVE = {NOT_SIMPLE, NOT_CONTRACTIBLE}


@dataclass(frozen=True, eq=False)
class Verdict:
    kind: str
    certificate: Certificate | None = None
    witness: Any = None
    stage: str = ""

    @property
    def positive(self) -> bool:
        return self.kind in _POSITIVE

    @property
    def negative(self) -> bool:
        return self.kind in _NEGATIVE

    @property
    def definite(self) -> bool:
        return self.kind != UNKNOWN

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind, "stage": self.stage}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            out["witness"] = self.witness if isinstance(self.witness, (dict, list, str, int)) else repr(self.witness)
        return out


def reconcile(*verdicts: Verdict) -> Verdict:
    """Combine verdicts about the same object; a proof meeting a refutation is an internal error."""
    pos = [v for v in verdicts if v.positive]
    neg = [v for v in verdicts if v.negative]
    if pos and neg:
        raise InconsistentVerdict(f"{pos[0].kind} via {pos[0].stage} contradicts {neg[0].kind} via {neg[0].stage}")
    if pos:
        return pos[0]
    if neg:
        return neg[0]
    return verdicts[0] if verdicts else Verdict(UNKNOWN, stage="no evidence")


@dataclass
class VerdictLog:
    """Remembers verdicts by key and refuses contradictory ones."""

    entries: dict[Any, Verdict] = field(default_factory=dict)

    def record(self, key, verdict: Verdict) -> Verdict:
        if key in self.entries:
            verdict = reconcile(self.entries[key], verdict)
        self.entries[key] = verdict
        return verdict


# -- contractibility ------------------------------------------------------------


def contractible_verdict(V: Poset) -> Verdict:
    """Cone test, dismantling, collapsing and homology, in that order."""
    if len(V) == 0:
        h = simplicial_homology(())
        return Verdict(NOT_CONTRACTIBLE, HomologyRefutation((), h), "empty", stage="empty")
    for apex in (V.minimum(), V.maximum()):
        if apex is not None:
            return Verdict(CONTRACTIBLE, ConePoint(V, apex), stage="cone")
    C, trace = core(V)
    if len(C) == 1:
        return Verdict(CONTRACTIBLE, DismantlingTrace(V, tuple(trace)), stage="dismantling")
    simplices = tuple(order_complex(C))
    steps, rest = greedy_collapse(simplices)
    if len(rest) == 1:
        cert = DismantlingTrace(V, tuple(trace), CollapseSequence(simplices, tuple(steps)))
        return Verdict(CONTRACTIBLE, cert, stage="collapse")
    full = tuple(order_complex(V))
    h = simplicial_homology(full)
    if not h.is_trivial():
        return Verdict(NOT_CONTRACTIBLE, HomologyRefutation(full, h), h.to_json(), stage="homology")
    return Verdict(UNKNOWN, stage=f"core of size {len(C)} neither collapses nor has homology")


# -- sections over the target -----------------------------------------------------


def check_section_over_target(phi, sigma, direction: str) -> Verdict:
    cert = SectionOverTarget(phi, sigma, direction)
    try:
        cert.check()
    except CertificateError as exc:
        return Verdict(UNKNOWN, witness=str(exc), stage="section rejected")
    return Verdict(SIMPLE, cert, stage="section")


def identity_certificate(X) -> SectionOverTarget:
    if isinstance(X, Poset):
        idX = OrderMap.identity(X)
        return SectionOverTarget(idX, idX, "equal")
    from ..simplicial import identity_map

    idX = identity_map(X)
    return SectionOverTarget(idX, idX, "equal")


def isomorphism_certificate(f: SimplicialMap) -> SectionOverTarget:
    return SectionOverTarget(f, f.inverse(), "equal")


def extremal_section(phi: OrderMap, direction: str) -> OrderMap | None:
    """The only candidate section with ``s phi <= id`` (``below``) or ``>= id`` (``above``).

    It sends ``w`` to the minimum (maximum) of its fibre, when every fibre has one.
    """
    values = {}
    for w in phi.target:
        fib = phi.source.subposet(phi.fiber(w))
        pick = fib.minimum() if direction == "below" else fib.maximum()
        if pick is None:
            return None
        values[w] = pick
    try:
        return OrderMap(phi.target, phi.source, values)
    except NotOrderPreserving:
        return None


def section_verdict(phi: OrderMap, supplied: tuple[OrderMap, str] | None = None) -> Verdict:
    """Try a supplied section, then the two extremal ones."""
    if supplied is not None:
        v = check_section_over_target(phi, *supplied)
        if v.positive:
            return v
    for direction in ("below", "above"):
        s = extremal_section(phi, direction)
        if s is not None:
            v = check_section_over_target(phi, s, direction)
            if v.positive:
                return v
    return Verdict(UNKNOWN, stage="no section")


def criterion_wjr2416(phi: OrderMap, sections: Mapping | None = None, sample: bool = True,
                      per_cell: int = 1, seed: int = 0) -> Verdict:
    """``red : T(N phi) -> M(N phi)`` is simple iff every ``N(phi/v)`` is.

    ``sections[v]`` may supply ``(s, direction)`` for ``phi/v``.  Pieces without
    a section fall back to fibre sampling when ``sample`` is set; sampled
    evidence is recorded as such.
    """
    sections = sections or {}
    parts: dict = {}
    unknown = []
    for v in phi.source:
        sub = restrict_map(phi, v)
        verdict = section_verdict(sub, sections.get(v))
        if not verdict.positive and sample:
            verdict = sampled_order_map_verdict(sub, per_cell, seed)
            if verdict.negative:
                return Verdict(NOT_SIMPLE, verdict.certificate, {"element": repr(v), "fiber": verdict.witness},
                               stage="sampled refutation")
        if not verdict.positive:
            unknown.append(v)
            continue
        parts[v] = verdict.certificate
    if unknown:
        return Verdict(UNKNOWN, witness=[repr(v) for v in unknown], stage="criterion incomplete")
    cert = CriterionWJR2416(phi, parts)
    sampled = any(isinstance(c, SampledFibers) for c in parts.values())
    return Verdict(SIMPLE, cert, stage="criterion (sampled)" if sampled else "criterion")


def sampled_order_map_verdict(phi: OrderMap, per_cell: int = 1, seed: int = 0) -> Verdict:
    """Sample point inverses of ``|N phi|``."""
    from ..geometry import check_simple_sampled
    from ..simplicial import nerve, nerve_map

    f = nerve_map(phi, nerve(phi.source), nerve(phi.target))
    v = check_simple_sampled(f, per_cell=per_cell, seed=seed)
    if v.certificate is not None and isinstance(v.certificate, SampledFibers):
        cert = SampledFibers(v.certificate.report, v.certificate.recheck, subject=phi)
        return Verdict(v.kind, cert, v.witness, v.stage)
    return v


# -- iterated reductions ------------------------------------------------------------


def _above_section(phi_i: OrderMap, gamma, L) -> OrderMap:
    """``alpha -> alpha u (gamma \\ L)`` from ``F_{i-1}/phi_i(gamma)`` back into ``F_i/gamma``."""
    from ..paths import diff_paths, union_paths

    sub = restrict_map(phi_i, gamma)
    try:
        rest = diff_paths(gamma, L)
    except EmptyResult:
        rest = ()
    values = {}
    for alpha in sub.target:
        beta = union_paths(alpha, rest) if rest else alpha
        if beta not in sub.source:
            raise SequenceNotFromPaths(f"{beta} is not below {gamma} in the layer above")
        values[alpha] = beta
    try:
        return OrderMap(sub.target, sub.source, values)
    except NotOrderPreserving as exc:
        raise SequenceNotFromPaths(str(exc)) from None


def _first_step_certificate(phi_1: OrderMap, L0) -> CriterionWJR2416:
    parts = {}
    for gamma in phi_1.source:
        sub = restrict_map(phi_1, gamma)
        cert = SectionOverTarget(sub, _above_section(phi_1, gamma, L0), "above")
        try:
            cert.check()
        except CertificateError as exc:
            raise SequenceNotFromPaths(f"section over {gamma}: {exc}") from None
        parts[gamma] = cert
    return CriterionWJR2416(phi_1, parts)


def _psi_certificate(maps: list[OrderMap], L0) -> tuple[CriterionWJR2416, OrderMap]:
    """Certificate for ``psi_1 = phi_1 o pr`` on ``P(phi_r, ..., phi_2)``."""
    inner = iterated_cylinder(maps[1:])
    pr = iterated_projection(maps[1:], inner)
    phi_1 = maps[0]
    psi = pr.then(phi_1)
    parts = {}
    for g in inner.poset:
        sub = restrict_map(psi, g)
        pr_sub = restrict_map(pr, g)
        down = SectionOverTarget(pr_sub, OrderMap(pr_sub.target, pr_sub.source, {w: (0, w) for w in pr_sub.target}), "below")
        top = pr(g)
        up = SectionOverTarget(restrict_map(phi_1, top), _above_section(phi_1, top, L0), "above")
        parts[g] = Composition(down, up, subject=sub, description="pr/g then phi_1/pr(g)")
    cert = CriterionWJR2416(psi, parts)
    try:
        cert.check()
    except CertificateError as exc:
        raise SequenceNotFromPaths(str(exc)) from None
    return cert, psi


def _iterated_certificate(maps: list[OrderMap], Ls: list, base: Poset | None, concrete: bool) -> Certificate:
    r = len(maps)
    if r == 0:
        return identity_certificate(base)
    if r == 1:
        return _first_step_certificate(maps[0], Ls[0])
    inner = _iterated_certificate(maps[1:], Ls[1:], None, concrete)
    witness = _iterated_gluing_witness(maps) if concrete else None
    glue = Gluing((inner, identity_certificate(maps[0].target)), "T(f_1 o pr) over the inner reduction", witness)
    crit, _ = _psi_certificate(maps, Ls[0])
    return Composition(glue, crit, description="inner reduction glued, then reduction of psi_1")


def _iterated_gluing_witness(maps: list[OrderMap]) -> Callable[[], bool]:
    def verify() -> bool:
        from ..cylinders import iterated_reduction

        red = iterated_reduction(maps)
        red.red.check()
        return _cylinder_map_commutes(red.ordinary.package, red.step.ordinary, red.inner.red, red.first)

    return verify


def _cylinder_map_commutes(src, tgt, h: SimplicialMap, glued: SimplicialMap) -> bool:
    from ..simplicial import identity_map, product_map

    glued.check()
    hB = product_map(src.prod, tgt.prod, h, identity_map(src.prod.right)).then(tgt.glue.j_B)
    return src.glue.j_B.then(glued) == hB and src.glue.j_C.then(glued) == tgt.glue.j_C


def iterated_reduction_simple(seq, concrete: bool = False) -> Verdict:
    """Proof tree for ``red : T(f_r, ..., f_1) -> M(f_r, ..., f_1)`` of an F-sequence.

    With ``concrete`` the gluing steps also carry a check on the actual
    simplicial maps, which is much more expensive.
    """
    maps = list(seq.maps)
    Ls = [seq.L(i) for i in range(seq.r + 1)]
    cert = _iterated_certificate(maps, Ls, seq.layers[0], concrete)
    try:
        cert.check()
    except CertificateError as exc:
        raise SequenceNotFromPaths(str(exc)) from None
    return Verdict(SIMPLE, cert, stage=f"iterated reduction r={seq.r}")


# -- terminal cylinders -------------------------------------------------------------


def _rho_section(r: int):
    """``rho`` for ``psi : [r-1] -> *`` with its section ``(0, w) -> (min, 0)``, ``(1, v) -> (v, 1)``."""
    from ..cylinders import rho, terminal_maps

    maps = terminal_maps(r)
    inner = iterated_cylinder(maps[1:])
    psi = iterated_projection(maps[1:], inner).then(maps[0])
    from ..poset import mapping_cylinder

    P = mapping_cylinder(psi).poset
    rh = rho(psi, P)
    bottom = inner.poset.minimum()
    sigma = {x: (bottom, 0) if x[0] == 0 else (x[1], 1) for x in P}
    return rh, OrderMap(P, rh.source, sigma), psi


def _rho_matches_theta(r: int) -> Callable[[], bool]:
    from ..cylinders import theta_sigma

    def verify() -> bool:
        rh, _, _ = _rho_section(r)
        theta, _ = theta_sigma(r)
        # (i, pt) x t  <->  (i, t);  (0, pt) -> 0 and (1, (i, pt)) -> i + 1.
        to_theta = {((i, p), t): (i, t) for (i, p), t in rh.source}
        for x, y in rh.assignment.items():
            want = theta(to_theta[x])
            got = 0 if y[0] == 0 else y[1][0] + 1
            if want != got:
                return False
        return True

    return verify


_TERMINAL_CACHE: dict[tuple[int, bool], Certificate] = {}


def terminal_reduction_certificate(r: int, concrete: bool = True) -> Certificate:
    """Certificate that ``red : T^r -> M^r`` is simple."""
    key = (r, concrete)
    if key in _TERMINAL_CACHE:
        return _TERMINAL_CACHE[key]
    from ..cylinders import terminal_reduction

    if r <= 1:
        cert: Certificate = isomorphism_certificate(terminal_reduction(r).red)
    else:
        prev = terminal_reduction_certificate(r - 1, concrete)
        from ..cylinders import terminal_maps

        witness = _iterated_gluing_witness(terminal_maps(r)) if concrete else None
        glue = Gluing((prev, identity_certificate(total_order(0))), "T^r over the previous terminal reduction", witness)
        rh, sigma, psi = _rho_section(r)
        to_point = SectionOverTarget(psi, extremal_section(psi, "below"), "below")
        red_psi = Gluing(
            (SectionOverTarget(rh, sigma, "below"), to_point, identity_certificate(total_order(0))),
            "reduction of psi: N rho on the product, psi to the point",
            _rho_matches_theta(r),
        )
        cert = Composition(glue, red_psi, description="terminal reduction")
    _TERMINAL_CACHE[key] = cert
    return cert


def terminal_reduction_verdict(r: int, concrete: bool = True) -> Verdict:
    cert = terminal_reduction_certificate(r, concrete)
    try:
        cert.check()
    except CertificateError as exc:
        return Verdict(UNKNOWN, witness=str(exc), stage="terminal certificate rejected")
    return Verdict(SIMPLE, cert, stage=f"terminal r={r}")


# -- kappa, cell by cell --------------------------------------------------------------


KAPPA_CELL_LIMIT = 12


@dataclass
class CellResult:
    z: tuple
    w: tuple
    verdict: Verdict
    cylinder_mismatches: list[str]
    interior_factorization: bool
    layer_stages: list[str]

    def to_json(self) -> dict:
        return {
            "cell": {"z": [list(f) for f in self.z], "w": [list(f) for f in self.w]},
            "r": len(self.z) - 1,
            "verdict": self.verdict.kind,
            "stage": self.verdict.stage,
            "union_equals_cylinder": not self.cylinder_mismatches,
            "interior_factorization": self.interior_factorization,
            "layer_stages": self.layer_stages,
        }


@dataclass
class KappaReport:
    m: int
    n: int
    r_max: int
    cells: list[CellResult]
    overall: Verdict
    complete: bool

    def to_json(self, certificates: bool = False) -> dict:
        out = {
            "m": self.m,
            "n": self.n,
            "r_max": self.r_max,
            "coverage": "complete" if self.complete else "partial",
            "overall": self.overall.kind,
            "cells": [c.to_json() for c in self.cells],
        }
        if certificates and self.overall.certificate is not None:
            out["certificate"] = self.overall.certificate.to_json()
        return out


def _cell_certificate(seq, layer_certs: list[Certificate], red_cert: Certificate) -> Certificate:
    collapse = Gluing(tuple(layer_certs), "collapse each layer to a point: T(f_r..f_1) -> T^r")
    composite = Composition(collapse, terminal_reduction_certificate(seq.r, concrete=False),
                            description="T(f_r..f_1) -> T^r -> M^r")
    return RightCancellation(composite, red_cert, description="M(f_r..f_1) -> M^r")


def kappa_cellwise_report(m: int, n: int, r_max: int | None = None, force: bool = False) -> KappaReport:
    """Check ``kappa`` over every non-degenerate cell ``(z, w)`` with ``r <= r_max``."""
    from ..paths import cylinder_comparison, f_sequence, interior_factorization_check, sd_pairs

    if (m + 1) * (n + 1) > KAPPA_CELL_LIMIT and not force:
        raise ScaleGuard(f"kappa pipeline on [{m}]x[{n}] exceeds {KAPPA_CELL_LIMIT} grid points")
    top = m + n
    r_max = top if r_max is None else min(r_max, top)
    layer_cache: dict = {}
    cells: list[CellResult] = []
    certs: dict = {}
    checks: dict = {}
    failures = []
    for r in range(r_max + 1):
        for z, w in sd_pairs(m, n, r):
            seq = f_sequence(z, w, m, n)
            problems = cylinder_comparison(seq)
            factor_ok = interior_factorization_check(z, w, m, n)
            stages, layer_certs, ok = [], [], not problems and factor_ok
            for F in seq.layers:
                key = F.elements
                if key not in layer_cache:
                    layer_cache[key] = contractible_verdict(F)
                v = layer_cache[key]
                stages.append(v.stage)
                ok = ok and v.positive
                if v.certificate is not None:
                    layer_certs.append(v.certificate)
            try:
                red = iterated_reduction_simple(seq)
            except SequenceNotFromPaths as exc:
                red = Verdict(UNKNOWN, witness=str(exc), stage="no proof tree")
            if ok and red.positive:
                cert = _cell_certificate(seq, layer_certs, red.certificate)
                verdict = Verdict(SIMPLE, cert, stage="cellwise")
                certs[(z, w)] = cert
                checks[(z, w)] = _cell_probe(z, w, m, n)
            else:
                verdict = Verdict(UNKNOWN, witness=problems or None, stage="cell check failed")
                failures.append((z, w))
            cells.append(CellResult(z, w, verdict, problems, factor_ok, stages))
    complete = r_max == top
    if failures:
        overall = Verdict(UNKNOWN, witness=[{"z": z, "w": w} for z, w in failures], stage="cells without proof")
    else:
        expected = tuple(c for r in range(r_max + 1) for c in sd_pairs(m, n, r))
        cert = PullbackCellwise(certs, expected, checks)
        overall = Verdict(SIMPLE, cert, stage="cellwise" if complete else f"cellwise up to r={r_max}")
    return KappaReport(m, n, r_max, cells, overall, complete)


def _cell_probe(z, w, m, n) -> Callable[[], list]:
    from ..paths import cylinder_comparison, f_sequence, interior_factorization_check

    def probe() -> list:
        problems = cylinder_comparison(f_sequence(z, w, m, n))
        if not interior_factorization_check(z, w, m, n):
            problems.append("interior factorization fails")
        return problems

    return probe


def sequence_reduction_verdict(maps: list[OrderMap], base: Poset | None = None) -> Verdict:
    """Simplicity of the iterated reduction for an arbitrary sequence.

    Same tree shape as :func:`iterated_reduction_simple`, with every criterion
    step discharged by :func:`criterion_wjr2416`.
    """
    maps = list(maps)
    if not maps:
        if base is None:
            raise ValueError("r = 0 needs the base poset")
        return Verdict(SIMPLE, identity_certificate(base), stage="r=0")
    if len(maps) == 1:
        return criterion_wjr2416(maps[0])
    inner = sequence_reduction_verdict(maps[1:])
    if not inner.positive:
        return inner
    cyl = iterated_cylinder(maps[1:])
    psi = iterated_projection(maps[1:], cyl).then(maps[0])
    crit = criterion_wjr2416(psi)
    if not crit.positive:
        return crit
    glue = Gluing((inner.certificate, identity_certificate(maps[0].target)), "T(f_1 o pr) over the inner reduction",
                  _iterated_gluing_witness(maps))
    cert = Composition(glue, crit.certificate, description="inner reduction glued, then reduction of psi_1")
    cert.check()
    return Verdict(SIMPLE, cert, stage=f"iterated reduction r={len(maps)}")

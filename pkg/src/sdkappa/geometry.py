"""Exact point inverses of realized simplicial maps.

For a map ``f : X -> B`` of non-singular simplicial sets and a point ``b`` in
the open cell ``c`` of ``|B|`` (barycentric coordinates ``b_0..b_d``), the
point inverse is the union over source simplices ``tau`` with
``f(tau) = c . s`` of the polytopes

    Q_tau = { t >= 0 : sum_{i in s^-1(j)} t_i = b_j  for j = 0..d }

in the barycentric chart of ``tau``.  Each ``Q_tau`` is a product of
simplices; its vertices pick one index in every block ``s^-1(j)``, i.e. a
face of ``tau`` mapped isomorphically onto ``c``, and its faces are the
``Q_tau'`` of faces ``tau'`` of ``tau`` that still map onto ``c``.  The point
inverse is therefore a regular cell complex whose face poset is the set of
such ``tau`` ordered by the face relation, and its order complex is a
subdivision of the fibre.  All arithmetic uses ``Fraction``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .engine.certificates import SampledFibers
from .engine.homology import Homology, poset_homology
from .engine.verdicts import CONTRACTIBLE, NOT_CONTRACTIBLE, NOT_SIMPLE, SIMPLE, UNKNOWN, Verdict, contractible_verdict
from .errors import PointNotInBase, SingularInput
from .poset import Poset
from .simplicial import SimplicialMap, SimplicialSet
from .subdivision import nondeg_poset

# Numerical Recipes LCG constants.
LCG_A = 1664525
LCG_C = 1013904223
LCG_M = 2**32
WEIGHT_RANGE = 1000


def realize(X: SimplicialSet) -> dict[Any, tuple]:
    """Vertex tuple of every non-degenerate simplex; these are its barycentric axes."""
    if not X.is_nonsingular():
        raise SingularInput(f"{X.name} has a non-degenerate simplex with repeated vertices")
    return {x: X.vertices(x) for x in X.nondegenerate()}


@dataclass(frozen=True)
class RationalPoint:
    """A point of ``|B|`` given by barycentric coordinates on the cell ``cell``."""

    cell: Any
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if any(not isinstance(c, Fraction) for c in self.coords):
            object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if any(c < 0 for c in self.coords) or sum(self.coords) != 1:
            raise PointNotInBase("barycentric coordinates must be non-negative and sum to 1")

    @property
    def interior(self) -> bool:
        return all(c > 0 for c in self.coords)

    def carrier(self, B: SimplicialSet) -> RationalPoint:
        """The same point written on the open cell containing it."""
        if B.dim(self.cell) != len(self.coords) - 1:
            raise PointNotInBase(f"{len(self.coords)} coordinates for a {B.dim(self.cell)}-simplex")
        if self.interior:
            return self
        keep = tuple(i for i, c in enumerate(self.coords) if c > 0)
        face, _ = B.act(B.simplex(self.cell), keep)
        return RationalPoint(face, tuple(self.coords[i] for i in keep))

    def to_json(self) -> dict:
        return {"cell": repr(self.cell), "coords": [str(c) for c in self.coords]}


def barycenter(B: SimplicialSet, cell) -> RationalPoint:
    k = B.dim(cell) + 1
    return RationalPoint(cell, (Fraction(1, k),) * k)


@dataclass(frozen=True)
class FiberPolytope:
    """``Q_tau`` in the barycentric chart of ``host``; ``blocks[j] = s^-1(j)``."""

    host: Any
    blocks: tuple[tuple[int, ...], ...]
    point: tuple[Fraction, ...]

    @property
    def ambient_dim(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.blocks)

    def equations(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Rows ``(indicator, rhs)``: ``sum_i indicator_i t_i = rhs``; plus ``t >= 0``."""
        k = self.ambient_dim
        return [(tuple(1 if i in blk else 0 for i in range(k)), bj) for blk, bj in zip(self.blocks, self.point)]

    def contains(self, t: Sequence[Fraction]) -> bool:
        if len(t) != self.ambient_dim or any(x < 0 for x in t):
            return False
        return all(sum(a * x for a, x in zip(row, t)) == rhs for row, rhs in self.equations())

    def vertex_choices(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*self.blocks))

    def vertex(self, choice: Sequence[int]) -> tuple[Fraction, ...]:
        t = [Fraction(0)] * self.ambient_dim
        for i, bj in zip(choice, self.point):
            t[i] = bj
        return tuple(t)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        return [self.vertex(c) for c in self.vertex_choices()]


@dataclass
class FiberComplex:
    """The point inverse as a cell complex.

    ``cells`` is its face poset, labelled by host simplices; ``vertex_keys``
    maps each cell to the canonical keys of its vertices, a vertex being a
    ``(face label, coordinates)`` pair in the chart of that face.
    """

    point: RationalPoint
    polytopes: dict[Any, FiberPolytope]
    cells: Poset
    vertex_keys: dict[Any, frozenset]
    base_dim: int

    @property
    def is_empty(self) -> bool:
        return len(self.cells) == 0

    @property
    def vertices(self) -> list:
        return [x for x in self.cells if self.polytopes[x].dim == 0]

    @property
    def dim(self) -> int:
        return max((p.dim for p in self.polytopes.values()), default=-1)

    def structure_key(self) -> tuple:
        return tuple(sorted((repr(x), tuple(sorted(map(repr, self.vertex_keys[x])))) for x in self.cells))


class FiberIndex:
    """Pre-sorts the source simplices of ``f`` by the open cell they land in."""

    def __init__(self, f: SimplicialMap):
        self.f = f
        realize(f.source)
        realize(f.target)
        self.source_poset = nondeg_poset(f.source)
        self.by_cell: dict[Any, list] = {}
        for x in f.source.nondegenerate():
            c, _ = f.on(x)
            self.by_cell.setdefault(c, []).append(x)

    def fiber(self, b: RationalPoint) -> FiberComplex:
        X, B = self.f.source, self.f.target
        b = b.carrier(B)
        d = len(b.coords) - 1
        hosts = self.by_cell.get(b.cell, [])
        polytopes = {}
        for tau in hosts:
            _, s = self.f.on(tau)
            blocks = tuple(tuple(i for i, sj in enumerate(s) if sj == j) for j in range(d + 1))
            polytopes[tau] = FiberPolytope(tau, blocks, b.coords)
        vertex_keys = {}
        for tau, Q in polytopes.items():
            keys = set()
            for choice in Q.vertex_choices():
                face, degen = X.act(X.simplex(tau), choice)
                if degen != tuple(range(d + 1)):
                    raise SingularInput("a face of a non-degenerate simplex is degenerate")
                keys.add((face, b.coords))
            vertex_keys[tau] = frozenset(keys)
        cells = self.source_poset.subposet(hosts)
        return FiberComplex(b, polytopes, cells, vertex_keys, d)


def fiber(f: SimplicialMap, b: RationalPoint) -> FiberComplex:
    return FiberIndex(f).fiber(b)


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class FiberClass:
    label: str  # empty | point | segment | contractible | not contractible | unknown
    verdict: Verdict
    homology: Homology

    def to_json(self) -> dict:
        return {"classification": self.label, "homology": self.homology.to_json()}


def _is_path_graph(cells: Poset, vertices: list, edges: list, vertex_keys) -> bool:
    if len(cells) != len(vertices) + len(edges):
        return False
    adj: dict = {v: [] for v in vertices}
    index = {next(iter(vertex_keys[v])): v for v in vertices}
    for e in edges:
        ends = [index[k] for k in vertex_keys[e]]
        if len(ends) != 2:
            return False
        a, b = ends
        adj[a].append(b)
        adj[b].append(a)
    if any(len(nb) > 2 for nb in adj.values()) or len(edges) != len(vertices) - 1:
        return False
    seen, stack = set(), [vertices[0]]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(adj[v])
    return len(seen) == len(vertices)


def classify_cells(cells: Poset, dims: dict, vertex_keys: dict | None = None) -> FiberClass:
    """Homotopy classification of a regular cell complex given by its face poset."""
    h = poset_homology(cells)
    if len(cells) == 0:
        return FiberClass("empty", contractible_verdict(cells), h)
    vertices = [x for x in cells if dims[x] == 0]
    if len(cells) == 1 and vertices:
        return FiberClass("point", Verdict(CONTRACTIBLE, stage="point"), h)
    edges = [x for x in cells if dims[x] == 1]
    if vertex_keys is not None and vertices and _is_path_graph(cells, vertices, edges, vertex_keys):
        return FiberClass("segment", Verdict(CONTRACTIBLE, stage="segment"), h)
    v = contractible_verdict(cells)
    if v.positive:
        return FiberClass("contractible", v, h)
    if v.negative:
        return FiberClass("not contractible", v, h)
    return FiberClass("unknown", v, h)


def fiber_homotopy_report(F: FiberComplex) -> FiberClass:
    dims = {x: F.polytopes[x].dim for x in F.cells}
    return classify_cells(F.cells, dims, F.vertex_keys)


# -- sampling -----------------------------------------------------------------------


class LCG:
    """``x -> (a x + c) mod 2^32``; weights come from the high bits."""

    def __init__(self, seed: int):
        self.state = seed % LCG_M

    def next(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) % LCG_M
        return self.state

    def weight(self) -> int:
        return (self.next() >> 16) % WEIGHT_RANGE + 1


def sample_points(B: SimplicialSet, per_cell: int, seed: int, cells: Iterable | None = None) -> list[RationalPoint]:
    """Barycentre plus ``per_cell`` random interior points for each cell, in a fixed order."""
    realize(B)
    rng = LCG(seed)
    out = []
    for c in (B.nondegenerate() if cells is None else cells):
        out.append(barycenter(B, c))
        k = B.dim(c) + 1
        for _ in range(per_cell):
            w = [rng.weight() for _ in range(k)]
            total = sum(w)
            out.append(RationalPoint(c, tuple(Fraction(x, total) for x in w)))
    return out


@dataclass
class PointRecord:
    point: RationalPoint
    fiber_class: FiberClass

    def to_json(self) -> dict:
        out = {"cell": repr(self.point.cell), "point": [str(c) for c in self.point.coords]}
        out.update(self.fiber_class.to_json())
        return out


@dataclass
class FiberReport:
    name: str
    records: list[PointRecord] = field(default_factory=list)

    def counts(self) -> dict:
        return dict(sorted(Counter(r.fiber_class.label for r in self.records).items()))

    def summary(self) -> dict:
        bad = sum(1 for r in self.records if r.fiber_class.verdict.negative)
        unknown = sum(1 for r in self.records if not r.fiber_class.verdict.definite)
        return {"map": self.name, "points": len(self.records), "noncontractible": bad, "unknown": unknown,
                "classes": self.counts()}

    def to_json(self) -> dict:
        return {"summary": self.summary(), "points": [r.to_json() for r in self.records]}

    def csv_rows(self) -> list[list[str]]:
        rows = [["cell", "point", "classification", "homology"]]
        for r in self.records:
            j = r.to_json()
            rows.append([j["cell"], " ".join(j["point"]), j["classification"],
                         ";".join(f"H{k}={v}" for k, v in j["homology"]["ranks"].items())])
        return rows


def sample_fibers(f: SimplicialMap, per_cell: int = 3, seed: int = 0, name: str = "f",
                  index: FiberIndex | None = None) -> FiberReport:
    index = index or FiberIndex(f)
    report = FiberReport(name)
    cache: dict = {}
    for b in sample_points(f.target, per_cell, seed):
        F = index.fiber(b)
        for tau, Q in F.polytopes.items():
            for v in Q.vertices():
                if not Q.contains(v):
                    raise AssertionError(f"vertex {v} of the fibre polytope in {tau!r} violates its equations")
        key = F.structure_key()
        if key not in cache:
            cache[key] = fiber_homotopy_report(F)
        report.records.append(PointRecord(b, cache[key]))
    return report


def _verdict_from_report(report: FiberReport, recheck) -> Verdict:
    summary = report.summary()
    cert = SampledFibers(summary, recheck)
    for r in report.records:
        if r.fiber_class.verdict.negative:
            return Verdict(NOT_SIMPLE, cert, r.to_json(), stage="sampled refutation")
    if summary["unknown"]:
        return Verdict(UNKNOWN, cert, stage="sampled, some fibres undecided")
    return Verdict(SIMPLE, cert, stage="sampled")


def check_simple_sampled(f: SimplicialMap, per_cell: int = 3, seed: int = 0, name: str = "f") -> Verdict:
    """Evidence for simplicity: classify the fibres over sampled points."""
    report = sample_fibers(f, per_cell, seed, name)
    return _verdict_from_report(report, lambda: sample_fibers(f, per_cell, seed, name).summary())


# -- reduction maps out of singular cylinders ----------------------------------------


def reduction_fiber_class(red, b: RationalPoint, front: FiberIndex | None = None,
                          back: FiberIndex | None = None) -> FiberClass:
    """Point inverse of ``red : T(N phi) -> M(N phi)``.

    ``T`` is a quotient of ``NV x Delta[1] u NW`` where ``NV x {0}`` is glued to
    ``NW``.  Over ``b`` the part in ``NW`` is at most one point, so the fibre is
    the fibre ``F_1`` in the product with its bottom part ``F_0`` collapsed to
    that point (or ``F_1`` itself when ``NW`` misses ``b``).  Up to homotopy
    this is ``F_1`` with a cone on ``F_0``.
    """
    front = front or FiberIndex(red.n_rho)
    back = back or FiberIndex(red.reduced.back)
    F1 = front.fiber(b)
    FW = back.fiber(b)
    if len(FW.cells) > 1:
        raise SingularInput("the back inclusion should be injective")
    dims = {x: F1.polytopes[x].dim for x in F1.cells}
    if FW.is_empty:
        return classify_cells(F1.cells, dims, F1.vertex_keys)
    prod = red.ordinary.prod
    bottom = [x for x in F1.cells if set(prod.right.vertices(x[1])) == {prod.right.nondegenerate(0)[0]}]
    apex = ("apex",)
    elements = list(F1.cells.elements) + [apex]
    cells = Poset.from_leq(elements, lambda a, c: a == c or (c == apex and a in bottom)
                           or (a != apex and c != apex and F1.cells.leq(a, c)))
    dims[apex] = 0
    if bottom:
        return classify_cells(cells, dims, None)
    return classify_cells(cells, dims, {**F1.vertex_keys, apex: frozenset({apex})})


def check_reduction_sampled(red, per_cell: int = 3, seed: int = 0, name: str = "red") -> Verdict:
    def run() -> FiberReport:
        front, back = FiberIndex(red.n_rho), FiberIndex(red.reduced.back)
        report = FiberReport(name)
        for b in sample_points(red.reduced.total, per_cell, seed):
            report.records.append(PointRecord(b, reduction_fiber_class(red, b, front, back)))
        return report

    report = run()
    return _verdict_from_report(report, lambda: run().summary())
